#include "coocnet/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace coocnet {

CoocGraph CoocGraph::from_edges(EntityKind kind, std::vector<std::string> vertices,
                                std::vector<WeightedEdge> edges, std::string source) {
  const std::size_t n = vertices.size();
  if (n > std::numeric_limits<VertexId>::max()) throw DataError("too many vertices");
  std::vector<VertexId> order(n);
  std::iota(order.begin(), order.end(), VertexId{0});
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) { return vertices[a] < vertices[b]; });
  std::vector<VertexId> rank(n);
  for (VertexId r = 0; r < n; ++r) rank[order[r]] = r;

  CoocGraph g;
  g.kind_ = kind;
  g.source_ = std::move(source);
  g.names_.reserve(n);
  for (VertexId r = 0; r < n; ++r) {
    if (r > 0 && vertices[order[r]] == g.names_.back())
      throw DataError("duplicate vertex '" + vertices[order[r]] + "'");
    g.names_.push_back(std::move(vertices[order[r]]));
  }

  for (auto& e : edges) {
    if (e.u >= n || e.v >= n) throw DataError("edge endpoint out of range");
    if (e.u == e.v) throw DataError("self-loop on '" + g.names_[rank[e.u]] + "'");
    if (e.weight == 0) throw DataError("zero weight on edge '" + g.names_[rank[e.u]] + "' - '" + g.names_[rank[e.v]] + "'");
    e.u = rank[e.u];
    e.v = rank[e.v];
    if (e.v < e.u) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw DataError("repeated edge '" + g.names_[edges[i].u] + "' - '" + g.names_[edges[i].v] + "'");

  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : edges) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.targets_.resize(g.offsets_[n]);
  g.weights_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Sorted (u, v) order fills every row in ascending neighbor order.
  for (const auto& e : edges) {
    g.targets_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.weight;
    g.targets_[cursor[e.v]] = e.u;
    g.weights_[cursor[e.v]++] = e.weight;
  }
  return g;
}

std::optional<VertexId> CoocGraph::find(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name,
                             [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
  if (it == names_.end() || *it != name) return std::nullopt;
  return static_cast<VertexId>(it - names_.begin());
}

VertexId CoocGraph::require(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw UnknownEntityError("unknown vertex '" + std::string(name) + "'");
}

EdgeWeight CoocGraph::strength(VertexId v) const {
  auto ws = weights(v);
  return std::accumulate(ws.begin(), ws.end(), EdgeWeight{0});
}

std::optional<EdgeWeight> CoocGraph::weight(VertexId u, VertexId v) const {
  auto nbrs = neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return weights(u)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::vector<WeightedEdge> CoocGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < vertex_count(); ++u) {
    auto nbrs = neighbors(u);
    auto ws = weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      if (u < nbrs[k]) out.push_back({u, nbrs[k], ws[k]});
  }
  return out;
}

bool CoocGraph::operator==(const CoocGraph& other) const {
  return kind_ == other.kind_ && names_ == other.names_ && offsets_ == other.offsets_ &&
         targets_ == other.targets_ && weights_ == other.weights_;
}

CoocGraph build_graph(const CoocCounts& counts, const EntityLexicon& lexicon, std::uint64_t min_frequency,
                      std::string source) {
  if (counts.entity_count() != lexicon.size())
    throw DataError("co-occurrence counts do not belong to this lexicon");
  constexpr VertexId kDropped = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> vertex_of(lexicon.size(), kDropped);
  std::vector<std::string> names;
  for (EntityId id = 0; id < lexicon.size(); ++id) {
    if (counts.frequency(id) >= std::max<std::uint64_t>(1, min_frequency)) {
      vertex_of[id] = static_cast<VertexId>(names.size());
      names.push_back(lexicon.surface(id));
    }
  }
  std::vector<WeightedEdge> edges;
  for (const auto& p : counts.sorted_pairs()) {
    const VertexId u = vertex_of[p.first];
    const VertexId v = vertex_of[p.second];
    if (u != kDropped && v != kDropped) edges.push_back({u, v, p.count});
  }
  return CoocGraph::from_edges(lexicon.kind(), std::move(names), std::move(edges), std::move(source));
}

double density(std::size_t n, std::size_t m) {
  if (n < 2) return 0.0;
  return 2.0 * static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

std::size_t Components::largest() const {
  return sizes.empty() ? 0 : *std::max_element(sizes.begin(), sizes.end());
}

Components weak_components(const CoocGraph& g) {
  const std::size_t n = g.vertex_count();
  Components c;
  c.label.assign(n, kUnreachable);
  std::vector<VertexId> stack;
  for (VertexId root = 0; root < n; ++root) {
    if (c.label[root] != kUnreachable) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    std::size_t size = 0;
    c.label[root] = id;
    stack.push_back(root);
    while (!stack.empty()) {
      const VertexId v = stack.back();
      stack.pop_back();
      ++size;
      for (VertexId w : g.neighbors(v)) {
        if (c.label[w] == kUnreachable) {
          c.label[w] = id;
          stack.push_back(w);
        }
      }
    }
    c.sizes.push_back(size);
  }
  return c;
}

Components strong_components(std::size_t n, std::span<const std::pair<VertexId, VertexId>> arcs) {
  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& [from, to] : arcs) {
    if (from >= n || to >= n) throw DataError("arc endpoint out of range");
    ++offsets[from + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<VertexId> targets(arcs.size());
  {
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [from, to] : arcs) targets[cursor[from]++] = to;
  }

  constexpr std::uint32_t kUnvisited = kUnreachable;
  std::vector<std::uint32_t> index(n, kUnvisited), low(n, 0), raw_label(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<VertexId> tarjan_stack;
  std::vector<std::pair<VertexId, std::size_t>> call_stack;  // (vertex, next arc)
  std::uint32_t next_index = 0;
  std::uint32_t components = 0;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call_stack.push_back({root, offsets[root]});
    index[root] = low[root] = next_index++;
    tarjan_stack.push_back(root);
    on_stack[root] = true;
    while (!call_stack.empty()) {
      auto& [v, arc] = call_stack.back();
      if (arc < offsets[v + 1]) {
        const VertexId w = targets[arc++];
        if (index[w] == kUnvisited) {
          index[w] = low[w] = next_index++;
          tarjan_stack.push_back(w);
          on_stack[w] = true;
          call_stack.push_back({w, offsets[w]});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const VertexId done = v;
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const VertexId parent = call_stack.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        VertexId w;
        do {
          w = tarjan_stack.back();
          tarjan_stack.pop_back();
          on_stack[w] = false;
          raw_label[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }

  // Renumber by first vertex so labels do not depend on traversal order.
  Components c;
  c.label.assign(n, 0);
  std::vector<std::uint32_t> renumber(components, kUnvisited);
  for (VertexId v = 0; v < n; ++v) {
    auto& id = renumber[raw_label[v]];
    if (id == kUnvisited) {
      id = static_cast<std::uint32_t>(c.sizes.size());
      c.sizes.push_back(0);
    }
    c.label[v] = id;
    ++c.sizes[id];
  }
  return c;
}

GraphStats stats(const CoocGraph& g) {
  GraphStats s;
  s.n = g.vertex_count();
  s.m = g.edge_count();
  s.density = density(s.n, s.m);
  const Components c = weak_components(g);
  s.wcc_count = c.count();
  s.largest_wcc = c.largest();
  return s;
}

InducedSubgraph induced_subgraph(const CoocGraph& g, std::span<const std::string> names) {
  InducedSubgraph result;
  std::vector<VertexId> keep;
  keep.reserve(names.size());
  for (const auto& name : names) {
    if (auto v = g.find(name)) keep.push_back(*v);
    else ++result.dropped;
  }
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  constexpr VertexId kOut = std::numeric_limits<VertexId>::max();
  std::vector<VertexId> local(g.vertex_count(), kOut);
  std::vector<std::string> kept_names;
  kept_names.reserve(keep.size());
  for (VertexId i = 0; i < keep.size(); ++i) {
    local[keep[i]] = i;
    kept_names.push_back(g.name(keep[i]));
  }
  std::vector<WeightedEdge> edges;
  for (VertexId u : keep) {
    auto nbrs = g.neighbors(u);
    auto ws = g.weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      if (u < nbrs[k] && local[nbrs[k]] != kOut) edges.push_back({local[u], local[nbrs[k]], ws[k]});
  }
  result.graph = CoocGraph::from_edges(g.kind(), std::move(kept_names), std::move(edges), g.source());
  return result;
}

std::vector<std::uint32_t> bfs_distances(const CoocGraph& g, VertexId source, std::uint32_t max_depth) {
  if (source >= g.vertex_count()) throw UnknownEntityError("BFS source out of range");
  std::vector<std::uint32_t> dist(g.vertex_count(), kUnreachable);
  std::vector<VertexId> frontier{source}, next;
  dist[source] = 0;
  std::uint32_t depth = 0;
  while (!frontier.empty() && depth < max_depth) {
    ++depth;
    next.clear();
    for (VertexId v : frontier)
      for (VertexId w : g.neighbors(v))
        if (dist[w] == kUnreachable) {
          dist[w] = depth;
          next.push_back(w);
        }
    frontier.swap(next);
  }
  return dist;
}

std::map<VertexId, std::uint32_t> shortest_path_lengths(const CoocGraph& g, std::string_view source) {
  const auto dist = bfs_distances(g, g.require(source));
  std::map<VertexId, std::uint32_t> out;
  for (VertexId v = 0; v < dist.size(); ++v)
    if (dist[v] != kUnreachable) out.emplace(v, dist[v]);
  return out;
}

}  // namespace coocnet
