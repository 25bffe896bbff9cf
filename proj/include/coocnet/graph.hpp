#pragma once

#include <Eigen/SparseCore>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coocnet/corpus.hpp"
#include "coocnet/lexicon.hpp"
#include "coocnet/types.hpp"

namespace coocnet {

struct WeightedEdge {
  VertexId u;
  VertexId v;
  EdgeWeight weight;
  bool operator==(const WeightedEdge&) const = default;
};

/// Weighted undirected co-occurrence graph.
///
/// Vertices are entity names sorted by code point, so a vertex id is the rank
/// of its name. Adjacency is stored as CSR with neighbors sorted by id; every
/// edge appears in both endpoint rows with the same weight. No self-loops, all
/// weights >= 1. Immutable once built.
class CoocGraph {
 public:
  CoocGraph() = default;

  /// `edges` index into `vertices`. Names must be distinct; self-loops, zero
  /// weights and repeated pairs are rejected with DataError.
  static CoocGraph from_edges(EntityKind kind, std::vector<std::string> vertices,
                              std::vector<WeightedEdge> edges, std::string source = {});

  EntityKind kind() const { return kind_; }
  const std::string& source() const { return source_; }

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::span<const std::string> vertices() const { return names_; }
  const std::string& name(VertexId v) const { return names_[v]; }
  std::optional<VertexId> find(std::string_view name) const;
  /// Throws UnknownEntityError.
  VertexId require(std::string_view name) const;

  std::span<const VertexId> neighbors(VertexId v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::span<const EdgeWeight> weights(VertexId v) const {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  /// Sum of incident edge weights.
  EdgeWeight strength(VertexId v) const;
  std::optional<EdgeWeight> weight(VertexId u, VertexId v) const;

  /// Edges with u < v, sorted by (u, v).
  std::vector<WeightedEdge> edges() const;

  /// Same names, edges and weights. Source tags are ignored.
  bool operator==(const CoocGraph& other) const;

 private:
  EntityKind kind_ = EntityKind::GivenName;
  std::string source_;
  std::vector<std::string> names_;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<EdgeWeight> weights_;
};

/// One edge per counted pair with weight = pair count. Vertices are the
/// entities with frequency >= min_frequency (isolated ones included); pairs
/// touching a dropped entity are dropped too.
CoocGraph build_graph(const CoocCounts& counts, const EntityLexicon& lexicon,
                      std::uint64_t min_frequency = 1, std::string source = {});

struct GraphStats {
  std::size_t n = 0;
  std::size_t m = 0;
  double density = 0.0;
  std::size_t wcc_count = 0;
  std::size_t largest_wcc = 0;
  bool operator==(const GraphStats&) const = default;
};

/// density = 2m / (n(n-1)), or 0 when n < 2.
double density(std::size_t n, std::size_t m);
GraphStats stats(const CoocGraph& g);

/// Component label per vertex (labels numbered in order of first vertex) and
/// the size of each component.
struct Components {
  std::vector<std::uint32_t> label;
  std::vector<std::size_t> sizes;
  std::size_t count() const { return sizes.size(); }
  std::size_t largest() const;
};

Components weak_components(const CoocGraph& g);

/// Strongly connected components of a directed graph on n vertices given as
/// arcs (from, to). Iterative Tarjan.
Components strong_components(std::size_t n, std::span<const std::pair<VertexId, VertexId>> arcs);

struct InducedSubgraph {
  CoocGraph graph;
  std::size_t dropped = 0;  // requested names that are not vertices of g
};

/// G restricted to `names`: only edges with both endpoints kept, weights
/// preserved. Unknown names are skipped and counted.
InducedSubgraph induced_subgraph(const CoocGraph& g, std::span<const std::string> names);

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Unweighted BFS distances from `source`; kUnreachable where not reached or
/// farther than `max_depth`.
std::vector<std::uint32_t> bfs_distances(const CoocGraph& g, VertexId source,
                                         std::uint32_t max_depth = kUnreachable);

/// Reachable vertices only, keyed by vertex id. Throws UnknownEntityError.
std::map<VertexId, std::uint32_t> shortest_path_lengths(const CoocGraph& g, std::string_view source);

/// Symmetric adjacency matrix, 1 per edge when `binarize`, else the weight.
template <typename Scalar>
Eigen::SparseMatrix<Scalar> adjacency_matrix(const CoocGraph& g, bool binarize = true) {
  const auto n = static_cast<Eigen::Index>(g.vertex_count());
  Eigen::SparseMatrix<Scalar> a(n, n);
  Eigen::VectorXi reserve(n);
  for (VertexId v = 0; v < g.vertex_count(); ++v) reserve[v] = static_cast<int>(g.degree(v));
  a.reserve(reserve);
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto nbrs = g.neighbors(v);
    auto ws = g.weights(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      a.insert(nbrs[k], v) = binarize ? Scalar(1) : static_cast<Scalar>(ws[k]);
  }
  a.makeCompressed();
  return a;
}

// Graph TSV file:
//   # cooc-graph v1 kind=<names|cities>
//   u<TAB>v<TAB>weight      (u < v by code point; lines sorted)
//   u<TAB><TAB>0            (isolated vertices, sorted, after the edges)
void write_graph(std::ostream& out, const CoocGraph& g);
CoocGraph read_graph(std::istream& in, std::string_view source_name = "<input>");
void write_graph_file(const std::filesystem::path& path, const CoocGraph& g);
CoocGraph read_graph_file(const std::filesystem::path& path);

}  // namespace coocnet
