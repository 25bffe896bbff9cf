#include "coocnet/qap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coocnet/nullmodel.hpp"
#include "coocnet/parallel.hpp"

namespace coocnet {

AlignedGraphs align_common(const CoocGraph& g1, const CoocGraph& g2) {
  AlignedGraphs a;
  for (const auto& name : g1.vertices())
    if (g2.find(name)) a.common.push_back(name);
  if (a.common.size() < 2)
    throw DataError("graph covariance needs at least 2 common vertices, found " + std::to_string(a.common.size()));
  a.g1 = induced_subgraph(g1, a.common).graph;
  a.g2 = induced_subgraph(g2, a.common).graph;
  return a;
}

double graph_covariance(const CoocGraph& g1, const CoocGraph& g2, bool binarize) {
  const AlignedGraphs a = align_common(g1, g2);
  return graph_covariance<double>(adjacency_matrix<double>(a.g1, binarize), adjacency_matrix<double>(a.g2, binarize));
}

double graph_correlation(const CoocGraph& g1, const CoocGraph& g2, bool binarize) {
  const AlignedGraphs a = align_common(g1, g2);
  return graph_correlation<double>(adjacency_matrix<double>(a.g1, binarize),
                                   adjacency_matrix<double>(a.g2, binarize));
}

namespace {

// Permutation-invariant parts of the correlation: sums over all entries.
struct Moments {
  double n2 = 0;
  double sum1 = 0, sum2 = 0;
  double var1 = 0, var2 = 0;  // already divided by (n² - 1)
};

double entry(EdgeWeight w, bool binarize) { return binarize ? 1.0 : static_cast<double>(w); }

Moments moments(const AlignedGraphs& a, bool binarize) {
  Moments m;
  m.n2 = static_cast<double>(a.size()) * static_cast<double>(a.size());
  double sq1 = 0, sq2 = 0;
  for (const auto& e : a.g1.edges()) {
    const double x = entry(e.weight, binarize);
    m.sum1 += 2 * x;
    sq1 += 2 * x * x;
  }
  for (const auto& e : a.g2.edges()) {
    const double x = entry(e.weight, binarize);
    m.sum2 += 2 * x;
    sq2 += 2 * x * x;
  }
  m.var1 = (sq1 - m.sum1 * m.sum1 / m.n2) / (m.n2 - 1);
  m.var2 = (sq2 - m.sum2 * m.sum2 / m.n2) / (m.n2 - 1);
  if (!(m.var1 > 0) || !(m.var2 > 0))
    throw DataError("graph correlation is undefined: an adjacency matrix has zero variance on the common vertex set");
  return m;
}

double correlation_from_cross(const Moments& m, double cross) {
  const double cov = (cross - m.sum1 * m.sum2 / m.n2) / (m.n2 - 1);
  return cov / std::sqrt(m.var1 * m.var2);
}

// Σ_ij A1[i,j] A2[π(i),π(j)] over the stored edges of A1.
double permuted_cross(const AlignedGraphs& a, std::span<const VertexId> perm, bool binarize) {
  double cross = 0;
  for (const auto& e : a.g1.edges()) {
    if (auto w2 = a.g2.weight(perm[e.u], perm[e.v])) cross += 2 * entry(e.weight, binarize) * entry(*w2, binarize);
  }
  return cross;
}

}  // namespace

double permuted_correlation(const AlignedGraphs& aligned, std::span<const VertexId> permutation, bool binarize) {
  if (permutation.size() != aligned.size()) throw std::invalid_argument("permutation size mismatch");
  return correlation_from_cross(moments(aligned, binarize), permuted_cross(aligned, permutation, binarize));
}

QapResult qap_test(const CoocGraph& g1, const CoocGraph& g2, std::size_t permutations, RngSeed seed, bool binarize,
                   unsigned threads) {
  if (permutations < 1) throw std::invalid_argument("qap: permutations must be >= 1");
  const AlignedGraphs a = align_common(g1, g2);
  const Moments m = moments(a, binarize);
  std::vector<VertexId> identity(a.size());
  for (VertexId i = 0; i < identity.size(); ++i) identity[i] = i;

  QapResult r;
  r.rho_observed = correlation_from_cross(m, permuted_cross(a, identity, binarize));
  r.permutations = permutations;
  r.common_vertices = a.size();

  std::vector<char> at_least(permutations, 0);
  parallel_for(permutations, threads, [&](std::size_t p) {
    const auto perm = random_permutation(a.size(), derive_seed(seed, p));
    at_least[p] = correlation_from_cross(m, permuted_cross(a, perm, binarize)) >= r.rho_observed;
  });
  r.count_ge = static_cast<std::size_t>(std::count(at_least.begin(), at_least.end(), 1));
  r.p_fraction = static_cast<double>(r.count_ge) / static_cast<double>(permutations);
  return r;
}

}  // namespace coocnet
