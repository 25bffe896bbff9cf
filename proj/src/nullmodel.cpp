#include "coocnet/nullmodel.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace coocnet {
namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (b < a) std::swap(a, b);
  return (std::uint64_t{a} << 32) | b;
}

}  // namespace

std::int64_t default_rewire_iterations(const CoocGraph& g) {
  return 10 * static_cast<std::int64_t>(g.edge_count());
}

CoocGraph rewire(const CoocGraph& g, std::int64_t iterations, RngSeed seed, RewireReport* report) {
  if (iterations < 0) throw std::invalid_argument("rewire: iterations must be >= 0");
  if (g.edge_count() < 2) throw std::invalid_argument("rewire: graph needs at least two edges");

  std::vector<WeightedEdge> edges = g.edges();
  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const auto& e : edges) present.insert(edge_key(e.u, e.v));

  Engine rng = make_engine(seed);
  std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::int64_t accepted = 0;
  for (std::int64_t it = 0; it < iterations; ++it) {
    const std::size_t i = pick(rng);
    std::size_t j = pick(rng);
    const bool flip = coin(rng) == 1;
    if (i == j) continue;
    WeightedEdge& first = edges[i];
    WeightedEdge& second = edges[j];
    const VertexId u1 = first.u, v1 = first.v;
    const VertexId u2 = flip ? second.v : second.u;
    const VertexId v2 = flip ? second.u : second.v;
    if (u1 == v2 || u2 == v1) continue;
    const auto new_a = edge_key(u1, v2);
    const auto new_b = edge_key(u2, v1);
    if (present.contains(new_a) || present.contains(new_b)) continue;
    present.erase(edge_key(u1, v1));
    present.erase(edge_key(u2, v2));
    present.insert(new_a);
    present.insert(new_b);
    first.u = u1;
    first.v = v2;
    second.u = u2;
    second.v = v1;
    ++accepted;
  }
  if (report) *report = {iterations, accepted};

  std::vector<std::string> names(g.vertices().begin(), g.vertices().end());
  return CoocGraph::from_edges(g.kind(), std::move(names), std::move(edges), g.source());
}

std::vector<VertexId> random_permutation(std::size_t n, RngSeed seed) {
  std::vector<VertexId> perm(n);
  std::iota(perm.begin(), perm.end(), VertexId{0});
  Engine rng = make_engine(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

CoocGraph relabel(const CoocGraph& g, std::span<const VertexId> permutation) {
  const std::size_t n = g.vertex_count();
  if (permutation.size() != n) throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<bool> seen(n, false);
  std::vector<std::string> names(n);
  for (VertexId v = 0; v < n; ++v) {
    const VertexId p = permutation[v];
    if (p >= n || seen[p]) throw std::invalid_argument("relabel: not a permutation");
    seen[p] = true;
    names[v] = g.name(p);
  }
  return CoocGraph::from_edges(g.kind(), std::move(names), g.edges(), g.source());
}

CoocGraph shuffle_labels(const CoocGraph& g, RngSeed seed) {
  return relabel(g, random_permutation(g.vertex_count(), seed));
}

}  // namespace coocnet
