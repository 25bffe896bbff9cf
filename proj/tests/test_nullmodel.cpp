#include <doctest.h>

#include <random>
#include <set>

#include "coocnet/nullmodel.hpp"
#include "oracles.hpp"

using namespace coocnet;
using namespace coocnet::testing;

namespace {

CoocGraph complete(std::size_t n) {
  std::vector<std::string> names;
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) names.push_back(vertex_name(i));
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v, EdgeWeight(u + v + 1)});
  return CoocGraph::from_edges(EntityKind::GivenName, names, edges);
}

std::vector<std::size_t> degrees_by_vertex(const CoocGraph& g) {
  std::vector<std::size_t> d;
  for (VertexId v = 0; v < g.vertex_count(); ++v) d.push_back(g.degree(v));
  return d;
}

std::multiset<std::size_t> component_sizes(const CoocGraph& g) {
  auto c = weak_components(g);
  return {c.sizes.begin(), c.sizes.end()};
}

}  // namespace

TEST_CASE("rewire preserves degrees, edge count and weights") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::uniform_int_distribution<std::size_t> size(4, 60);
    auto g = random_graph(rng, size(rng), 0.15);
    if (g.edge_count() < 2) continue;
    RewireReport report;
    auto r = rewire(g, default_rewire_iterations(g), RngSeed{std::uint64_t(trial)}, &report);
    CHECK(degrees_by_vertex(r) == degrees_by_vertex(g));
    CHECK(r.edge_count() == g.edge_count());
    CHECK(weight_multiset(r) == weight_multiset(g));
    CHECK(std::equal(r.vertices().begin(), r.vertices().end(), g.vertices().begin(), g.vertices().end()));
    CHECK(report.attempted == default_rewire_iterations(g));
    CHECK(report.accepted <= report.attempted);
  }
}

TEST_CASE("rewire actually moves edges") {
  std::mt19937_64 rng(1);
  auto g = random_graph(rng, 100, 0.05);
  RewireReport report;
  auto r = rewire(g, default_rewire_iterations(g), RngSeed{5}, &report);
  CHECK(report.accepted > 0);
  CHECK_FALSE(r == g);
}

TEST_CASE("complete graph is a rewire fixed point") {
  auto k4 = complete(4);
  RewireReport report;
  auto r = rewire(k4, 1000, RngSeed{42}, &report);
  CHECK(r == k4);
  CHECK(report.accepted == 0);
}

TEST_CASE("rewiring a 4-cycle yields a 4-cycle") {
  auto c4 = graph_from({"a", "b", "c", "d"}, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {0, 3, 4}});
  bool changed = false;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto r = rewire(c4, 1, RngSeed{seed});
    CHECK(r.edge_count() == 4);
    for (VertexId v = 0; v < 4; ++v) CHECK(r.degree(v) == 2);
    CHECK(weak_components(r).count() == 1);
    changed = changed || !(r == c4);
  }
  CHECK(changed);
}

TEST_CASE("rewire input validation and determinism") {
  auto c4 = graph_from({"a", "b", "c", "d"}, {{0, 1, 1}, {1, 2, 2}, {2, 3, 3}, {0, 3, 4}});
  CHECK_THROWS_AS(rewire(c4, -1, RngSeed{1}), std::invalid_argument);
  CHECK_THROWS_AS(rewire(graph_from({"a", "b"}, {{0, 1, 1}}), 10, RngSeed{1}), std::invalid_argument);
  CHECK(rewire(c4, 0, RngSeed{1}) == c4);

  std::mt19937_64 rng(8);
  auto g = random_graph(rng, 50, 0.1);
  CHECK(rewire(g, 500, RngSeed{99}) == rewire(g, 500, RngSeed{99}));
  CHECK_FALSE(rewire(g, 500, RngSeed{99}) == rewire(g, 500, RngSeed{100}));
}

TEST_CASE("shuffle preserves isomorphism invariants") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<std::size_t> size(2, 200);
    const std::size_t n = size(rng);
    auto g = random_graph(rng, n, 4.0 / double(n));
    auto s = shuffle_labels(g, RngSeed{std::uint64_t(trial)});
    CHECK(degree_sequence(s) == degree_sequence(g));
    CHECK(triangle_count(s) == triangle_count(g));
    CHECK(weight_multiset(s) == weight_multiset(g));
    CHECK(stats(s) == stats(g));
    CHECK(component_sizes(s) == component_sizes(g));
  }
}

TEST_CASE("shuffle fixtures") {
  auto edge = graph_from({"a", "b", "c"}, {{0, 1, 5}});
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto s = shuffle_labels(edge, RngSeed{seed});
    REQUIRE(s.edge_count() == 1);
    CHECK(s.edges()[0].weight == 5);
  }

  auto tri = graph_from({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CHECK(shuffle_labels(tri, RngSeed{3}) == tri);

  std::mt19937_64 rng(4);
  auto g = random_graph(rng, 30, 0.2);
  std::vector<VertexId> identity(g.vertex_count());
  std::iota(identity.begin(), identity.end(), VertexId{0});
  CHECK(relabel(g, identity) == g);
  CHECK(shuffle_labels(g, RngSeed{12}) == shuffle_labels(g, RngSeed{12}));

  std::vector<VertexId> bad(g.vertex_count(), 0);
  CHECK_THROWS_AS(relabel(g, bad), std::invalid_argument);
}

TEST_CASE("relabel moves names, not structure") {
  auto path = graph_from({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 2}});
  std::vector<VertexId> perm = {2, 0, 1};  // vertex 0 takes name c, 1 takes a, 2 takes b
  auto r = relabel(path, perm);
  CHECK(r.weight(r.require("c"), r.require("a")) == 1);
  CHECK(r.weight(r.require("a"), r.require("b")) == 2);
  CHECK(r.degree(r.require("a")) == 2);
}

TEST_CASE("random permutation is a permutation") {
  auto p = random_permutation(1000, RngSeed{77});
  std::vector<VertexId> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  for (VertexId i = 0; i < 1000; ++i) CHECK(sorted[i] == i);
  CHECK(p == random_permutation(1000, RngSeed{77}));
  CHECK(random_permutation(0, RngSeed{1}).empty());
}
