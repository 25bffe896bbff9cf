#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coocnet/graph.hpp"
#include "coocnet/random.hpp"

namespace coocnet {

struct RewireReport {
  std::int64_t attempted = 0;
  std::int64_t accepted = 0;
};

/// 10 * |E| swap attempts.
std::int64_t default_rewire_iterations(const CoocGraph& g);

/// Degree-preserving edge swaps. Each attempt picks two distinct edges
/// (u1,v1), (u2,v2) (the second in random orientation) and replaces them with
/// (u1,v2), (u2,v1) unless that creates a self-loop or an existing edge.
/// Rejected attempts count toward `iterations`. A swapped edge keeps the weight
/// of the edge it replaces, so the weight multiset is preserved.
/// Requires at least two edges and iterations >= 0 (std::invalid_argument).
CoocGraph rewire(const CoocGraph& g, std::int64_t iterations, RngSeed seed,
                 RewireReport* report = nullptr);

/// Uniformly random permutation of [0, n).
std::vector<VertexId> random_permutation(std::size_t n, RngSeed seed);

/// Vertex v of `g` takes the name of vertex permutation[v]; edges and weights
/// stay on the same positions. The identity permutation returns g unchanged.
CoocGraph relabel(const CoocGraph& g, std::span<const VertexId> permutation);

/// relabel with a uniformly random permutation.
CoocGraph shuffle_labels(const CoocGraph& g, RngSeed seed);

}  // namespace coocnet
