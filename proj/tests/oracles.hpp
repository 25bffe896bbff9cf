#pragma once

// Independent from-the-definition evaluators used to check the library.
// Nothing here calls into the code paths it verifies.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "coocnet/graph.hpp"
#include "coocnet/similarity.hpp"

namespace coocnet::testing {

inline std::string vertex_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "v%04zu", i);
  return buf;
}

/// G(n, p) with integer weights uniform in [1, max_weight]; vertex i is "v%04d"
/// so ids coincide with generation order.
inline CoocGraph random_graph(std::mt19937_64& rng, std::size_t n, double p, EdgeWeight max_weight = 9) {
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<EdgeWeight> weight(1, max_weight);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(vertex_name(i));
  std::vector<WeightedEdge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (edge(rng)) edges.push_back({u, v, weight(rng)});
  return CoocGraph::from_edges(EntityKind::GivenName, std::move(names), std::move(edges));
}

inline CoocGraph graph_from(std::vector<std::string> names,
                            std::initializer_list<std::tuple<int, int, EdgeWeight>> edges) {
  std::vector<WeightedEdge> list;
  for (auto [u, v, w] : edges) list.push_back({VertexId(u), VertexId(v), w});
  return CoocGraph::from_edges(EntityKind::GivenName, std::move(names), std::move(list));
}

/// Dense weight matrix (0 = no edge) with neighborhoods cached as sets.
struct DenseGraph {
  std::size_t n = 0;
  std::vector<std::vector<double>> w;
  std::vector<std::set<int>> gammas;

  explicit DenseGraph(const CoocGraph& g) : n(g.vertex_count()), w(n, std::vector<double>(n, 0.0)), gammas(n) {
    for (const auto& e : g.edges()) w[e.u][e.v] = w[e.v][e.u] = static_cast<double>(e.weight);
    for (int x = 0; x < int(n); ++x)
      for (int z = 0; z < int(n); ++z)
        if (w[x][z] > 0) gammas[x].insert(z);
  }
  const std::set<int>& gamma(int x) const { return gammas[x]; }
  double strength(int x) const { return std::accumulate(w[x].begin(), w[x].end(), 0.0); }
};

/// Exact fraction with 128-bit parts; enough for n <= 50 harmonic-type sums.
struct Fraction {
  __int128 num = 0;
  __int128 den = 1;
  static __int128 gcd(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }
  Fraction(__int128 n = 0, __int128 d = 1) : num(n), den(d) { reduce(); }
  void reduce() {
    const __int128 g = gcd(num, den);
    num /= g;
    den /= g;
  }
  Fraction operator+(const Fraction& o) const { return Fraction(num * o.den + o.num * den, den * o.den); }
  double value() const { return static_cast<double>(static_cast<long double>(num) / static_cast<long double>(den)); }
};

/// Unweighted JC, RA, LHN as exact fractions; nullopt for the irrational ones.
inline std::optional<Fraction> exact_similarity(const DenseGraph& d, SimilarityMetric m, int x, int y) {
  if (m.weighted) return std::nullopt;
  const auto& gx = d.gamma(x);
  const auto& gy = d.gamma(y);
  std::vector<int> common, uni;
  std::set_intersection(gx.begin(), gx.end(), gy.begin(), gy.end(), std::back_inserter(common));
  std::set_union(gx.begin(), gx.end(), gy.begin(), gy.end(), std::back_inserter(uni));
  switch (m.family) {
    case SimilarityFamily::Jaccard:
      return uni.empty() ? Fraction(0) : Fraction(__int128(common.size()), __int128(uni.size()));
    case SimilarityFamily::LHN:
      return gx.empty() || gy.empty() ? Fraction(0) : Fraction(__int128(common.size()), __int128(gx.size() * gy.size()));
    case SimilarityFamily::ResourceAllocation: {
      Fraction sum(0);
      for (int z : common) sum = sum + Fraction(1, __int128(d.gamma(z).size()));
      return sum;
    }
    default:
      return std::nullopt;
  }
}

/// Every metric straight from its defining formula.
inline double brute_similarity(const DenseGraph& d, SimilarityMetric m, int x, int y) {
  const auto& gx = d.gamma(x);
  const auto& gy = d.gamma(y);
  std::vector<int> common, uni;
  std::set_intersection(gx.begin(), gx.end(), gy.begin(), gy.end(), std::back_inserter(common));
  std::set_union(gx.begin(), gx.end(), gy.begin(), gy.end(), std::back_inserter(uni));
  const double c = double(common.size());
  const double dx = double(gx.size()), dy = double(gy.size());
  double sum = 0.0;
  if (!m.weighted) {
    switch (m.family) {
      case SimilarityFamily::Jaccard: return uni.empty() ? 0.0 : c / double(uni.size());
      case SimilarityFamily::Cosine: return dx * dy == 0 ? 0.0 : c / (std::sqrt(dx) * std::sqrt(dy));
      case SimilarityFamily::LHN: return dx * dy == 0 ? 0.0 : c / (dx * dy);
      case SimilarityFamily::ResourceAllocation:
        for (int z : common) sum += 1.0 / double(d.gamma(z).size());
        return sum;
      case SimilarityFamily::AdamicAdar:
        for (int z : common) sum += 1.0 / std::log(double(d.gamma(z).size()));
        return sum;
    }
  }
  switch (m.family) {
    case SimilarityFamily::Jaccard: {
      double den = 0;
      for (int a : gx) den += d.w[a][x];
      for (int b : gy) den += d.w[b][y];
      for (int z : common) sum += (d.w[x][z] + d.w[y][z]) / den;
      return sum;
    }
    case SimilarityFamily::ResourceAllocation:
      for (int z : common) {
        double s = 0;
        for (int cz : d.gamma(z)) s += d.w[z][cz];
        sum += (d.w[x][z] + d.w[y][z]) / s;
      }
      return sum;
    case SimilarityFamily::AdamicAdar:
      for (int z : common) {
        double s = 0;
        for (int cz : d.gamma(z)) s += d.w[z][cz];
        sum += (d.w[x][z] + d.w[y][z]) / std::log(1 + s);
      }
      return sum;
    case SimilarityFamily::Cosine: {
      double qx = 0, qy = 0;
      for (int a : gx) qx += d.w[x][a] * d.w[x][a];
      for (int b : gy) qy += d.w[y][b] * d.w[y][b];
      for (int z : common) sum += d.w[x][z] * d.w[y][z] / (std::sqrt(qx) * std::sqrt(qy));
      return sum;
    }
    case SimilarityFamily::LHN: break;
  }
  return std::nan("");
}

/// Literal double sum of the graph covariance over all n² entries.
inline double dense_covariance(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2) {
  const double n2 = double(a1.size());
  const double mu1 = a1.mean(), mu2 = a2.mean();
  double sum = 0;
  for (Eigen::Index i = 0; i < a1.rows(); ++i)
    for (Eigen::Index j = 0; j < a1.cols(); ++j) sum += (a1(i, j) - mu1) * (a2(i, j) - mu2);
  return sum / (n2 - 1);
}

inline double dense_correlation(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2) {
  return dense_covariance(a1, a2) / std::sqrt(dense_covariance(a1, a1) * dense_covariance(a2, a2));
}

/// Dense adjacency of g restricted to `names` (in that order).
inline Eigen::MatrixXd dense_on(const CoocGraph& g, const std::vector<std::string>& names, bool binarize) {
  const auto n = Eigen::Index(names.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      auto u = g.find(names[i]);
      auto v = g.find(names[j]);
      if (!u || !v) continue;
      if (auto w = g.weight(*u, *v)) a(i, j) = binarize ? 1.0 : double(*w);
    }
  return a;
}

/// Exhaustive QAP: fraction of all n! permutations with rho >= rho_observed.
inline double exhaustive_qap_fraction(const Eigen::MatrixXd& a1, const Eigen::MatrixXd& a2) {
  const double observed = dense_correlation(a1, a2);
  std::vector<int> perm(a1.rows());
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t total = 0, ge = 0;
  do {
    Eigen::MatrixXd p(a2.rows(), a2.cols());
    for (Eigen::Index i = 0; i < a2.rows(); ++i)
      for (Eigen::Index j = 0; j < a2.cols(); ++j) p(i, j) = a2(perm[i], perm[j]);
    ++total;
    if (dense_correlation(a1, p) >= observed - 1e-12) ++ge;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return double(ge) / double(total);
}

/// Union-find components, independent of the BFS labelling in the library.
struct BruteStats {
  std::size_t n = 0, m = 0, wcc = 0, largest = 0;
  double density = 0;
};

inline BruteStats brute_stats(const DenseGraph& d) {
  BruteStats s;
  s.n = d.n;
  std::vector<std::size_t> parent(d.n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < d.n; ++i)
    for (std::size_t j = i + 1; j < d.n; ++j)
      if (d.w[i][j] > 0) {
        ++s.m;
        parent[find(i)] = find(j);
      }
  std::vector<std::size_t> size(d.n, 0);
  for (std::size_t i = 0; i < d.n; ++i) ++size[find(i)];
  for (std::size_t c : size)
    if (c > 0) {
      ++s.wcc;
      s.largest = std::max(s.largest, c);
    }
  s.density = d.n < 2 ? 0.0 : 2.0 * double(s.m) / (double(d.n) * double(d.n - 1));
  return s;
}

/// All-pairs hop distances by Floyd-Warshall; -1 = unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const DenseGraph& d) {
  const int inf = 1 << 28;
  std::vector<std::vector<int>> dist(d.n, std::vector<int>(d.n, inf));
  for (std::size_t i = 0; i < d.n; ++i) {
    dist[i][i] = 0;
    for (std::size_t j = 0; j < d.n; ++j)
      if (d.w[i][j] > 0) dist[i][j] = 1;
  }
  for (std::size_t k = 0; k < d.n; ++k)
    for (std::size_t i = 0; i < d.n; ++i)
      for (std::size_t j = 0; j < d.n; ++j) dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
  for (auto& row : dist)
    for (int& x : row)
      if (x >= inf) x = -1;
  return dist;
}

inline std::size_t triangle_count(const CoocGraph& g) {
  std::size_t t = 0;
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (VertexId v : g.neighbors(u))
      if (v > u)
        for (VertexId w : g.neighbors(v))
          if (w > v && g.weight(u, w)) ++t;
  return t;
}

inline std::vector<std::size_t> degree_sequence(const CoocGraph& g) {
  std::vector<std::size_t> d;
  for (VertexId v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
  std::sort(d.begin(), d.end());
  return d;
}

inline std::vector<EdgeWeight> weight_multiset(const CoocGraph& g) {
  std::vector<EdgeWeight> w;
  for (const auto& e : g.edges()) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace coocnet::testing
