#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "coocnet/centrality.hpp"
#include "coocnet/nullmodel.hpp"
#include "oracles.hpp"

using namespace coocnet;
using namespace coocnet::testing;

namespace {

CoocGraph connected_random(std::mt19937_64& rng, std::size_t n, double p) {
  // random graph plus a spanning path so it is connected
  std::bernoulli_distribution edge(p);
  std::uniform_int_distribution<EdgeWeight> weight(1, 9);
  std::vector<std::string> names;
  std::vector<WeightedEdge> edges;
  for (std::size_t i = 0; i < n; ++i) names.push_back(vertex_name(i));
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (v == u + 1 || edge(rng)) edges.push_back({u, v, weight(rng)});
  return CoocGraph::from_edges(EntityKind::GivenName, names, edges);
}

}  // namespace

TEST_CASE("degree centrality") {
  auto star = graph_from({"c", "l1", "l2", "l3", "iso"}, {{0, 1, 1}, {0, 2, 9}, {0, 3, 1}});
  auto d = degree_centrality(star);
  CHECK(d.score("c") == 3.0);
  CHECK(d.score("l2") == 1.0);
  CHECK(d.score("iso") == 0.0);
  CHECK_FALSE(d.score("nobody"));

  auto tri = degree_centrality(graph_from({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(tri.scores[i] == 2.0);
}

TEST_CASE("eigenvector centrality on a path") {
  auto p3 = graph_from({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}});
  auto c = eigenvector_centrality(p3);
  CHECK(c.converged);
  CHECK(std::abs(*c.score("a") - 0.5) < 1e-5);
  CHECK(std::abs(*c.score("b") - std::sqrt(0.5)) < 1e-5);
  CHECK(std::abs(*c.score("c") - 0.5) < 1e-5);
}

TEST_CASE("eigenvector centrality on a star") {
  auto s4 = graph_from({"c", "x", "y", "z"}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  auto c = eigenvector_centrality(s4);
  CHECK(c.converged);
  CHECK(std::abs(*c.score("c") - 1 / std::sqrt(2.0)) < 1e-6);
  for (auto leaf : {"x", "y", "z"}) CHECK(std::abs(*c.score(leaf) - 1 / std::sqrt(6.0)) < 1e-6);
}

TEST_CASE("eigenvector centrality on regular graphs is uniform") {
  // cycle C6 (bipartite, so a plain power iteration would oscillate)
  std::vector<std::string> names;
  std::vector<WeightedEdge> edges;
  for (VertexId i = 0; i < 6; ++i) {
    names.push_back(vertex_name(i));
    edges.push_back({i, VertexId((i + 1) % 6), 1});
  }
  auto c = eigenvector_centrality(CoocGraph::from_edges(EntityKind::GivenName, names, edges));
  CHECK(c.converged);
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(std::abs(c.scores[i] - 1 / std::sqrt(6.0)) < 1e-9);
}

TEST_CASE("eigenvector residual is small on random connected graphs") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    std::uniform_int_distribution<std::size_t> size(5, 150);
    std::uniform_real_distribution<double> p(0.02, 0.3);
    auto g = connected_random(rng, size(rng), p(rng));
    for (bool weighted : {false, true}) {
      PowerIterationOptions opt;
      opt.weighted = weighted;
      auto c = eigenvector_centrality(g, opt);
      CHECK(c.converged);
      CHECK(c.residual < 10 * opt.tolerance);
      CHECK(std::abs(c.scores.norm() - 1.0) < 1e-12);
      CHECK(c.scores.minCoeff() > 0.0);
      // independent check of the residual
      Eigen::MatrixXd a = Eigen::MatrixXd(adjacency_matrix<double>(g, !weighted));
      Eigen::VectorXd ax = a * c.scores;
      const double lambda = c.scores.dot(ax);
      CHECK((ax - lambda * c.scores).norm() < 10 * opt.tolerance);
    }
  }
}

TEST_CASE("eigenvector centrality ignores weight scale") {
  std::mt19937_64 rng(12);
  auto g = connected_random(rng, 40, 0.1);
  std::vector<WeightedEdge> scaled = g.edges();
  for (auto& e : scaled) e.weight *= 7;
  std::vector<std::string> names(g.vertices().begin(), g.vertices().end());
  auto g7 = CoocGraph::from_edges(g.kind(), names, scaled);
  CHECK((eigenvector_centrality(g).scores - eigenvector_centrality(g7).scores).norm() < 1e-9);
  PowerIterationOptions w;
  w.weighted = true;
  CHECK((eigenvector_centrality(g, w).scores - eigenvector_centrality(g7, w).scores).norm() < 1e-8);
}

TEST_CASE("eigenvector centrality edge cases") {
  CHECK_THROWS_AS(eigenvector_centrality(graph_from({"a", "b"}, {})), std::invalid_argument);
  auto two = graph_from({"a", "b", "c", "d", "e"}, {{0, 1, 1}, {2, 3, 1}, {3, 4, 1}, {2, 4, 1}});
  auto c = eigenvector_centrality(two);
  CHECK(c.converged);
  // the triangle dominates; the lone edge decays towards zero
  CHECK(*c.score("a") < 1e-3);
  CHECK(std::abs(*c.score("c") - 1 / std::sqrt(3.0)) < 1e-6);

  PowerIterationOptions tight;
  tight.max_iterations = 2;
  tight.tolerance = 1e-15;
  std::mt19937_64 rng(3);
  auto r = eigenvector_centrality(connected_random(rng, 30, 0.2), tight);
  CHECK_FALSE(r.converged);
  CHECK(r.iterations == 2);
}

TEST_CASE("popularity passes frequencies through") {
  EntityLexicon lex(EntityKind::GivenName, {"Absent", "Paul", "Peter"});
  std::vector<ContextRecord> ctx = {{0, {"Peter", "Paul"}}, {1, {"Peter", "Paul"}}, {2, {"Peter"}}};
  auto pop = popularity(count_cooccurrences(ctx, lex), lex);
  CHECK(pop.score("Peter") == 3.0);
  CHECK(pop.score("Paul") == 2.0);
  CHECK_FALSE(pop.score("Absent"));
  CHECK(popularity(CoocCounts(lex.size()), lex).scores.size() == 0);

  std::istringstream in("# coocnet frequencies\nPeter\t3\nPaul\t2\n");
  auto read = read_popularity(in);
  CHECK(read.labels == std::vector<std::string>{"Paul", "Peter"});
  CHECK(read.score("Peter") == 3.0);
  std::istringstream bad("Peter three\n");
  CHECK_THROWS_AS(read_popularity(bad), DataError);
  std::istringstream dup("Peter\t3\nPeter\t4\n");
  CHECK_THROWS_AS(read_popularity(dup), DataError);
}

TEST_CASE("degree pair profile") {
  std::mt19937_64 rng(21);
  auto g = random_graph(rng, 80, 0.08);
  for (const auto& row : degree_pair_profile(g, g)) CHECK(row.mean_degree == double(row.degree));

  auto g1 = graph_from({"v", "a", "b", "c", "d"}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
  std::vector<std::string> names2 = {"v", "p", "q", "r", "s", "t", "u", "w"};
  std::vector<WeightedEdge> e2;
  for (VertexId i = 1; i < 8; ++i) e2.push_back({0, i, 1});
  auto g2 = CoocGraph::from_edges(EntityKind::GivenName, names2, e2);
  auto rows = degree_pair_profile(g1, g2);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].degree == 4);
  CHECK(rows[0].mean_degree == 7.0);
  CHECK(rows[0].count == 1);

  CHECK_THROWS_AS(degree_pair_profile(g1, graph_from({"zz"}, {})), DataError);
}

TEST_CASE("degree profile counts cover the overlap and the null flattens it") {
  std::mt19937_64 rng(8);
  auto g1 = random_graph(rng, 150, 0.05);
  // g2 = g1 plus noise on a subset of names so the degrees correlate
  auto e = g1.edges();
  std::vector<std::string> names(g1.vertices().begin(), g1.vertices().end());
  for (int i = 0; i < 20; ++i) names.push_back("extra" + std::to_string(i));
  auto g2 = CoocGraph::from_edges(EntityKind::GivenName, names, e);
  auto rows = degree_pair_profile(g1, g2, 10, RngSeed{4}, 4);
  std::size_t total = 0;
  for (auto& r : rows) total += r.count;
  CHECK(total == 150);

  // self comparison: real curve is the diagonal, the shuffled one is flat near the mean degree
  double mean_g2 = 0;
  for (VertexId v = 0; v < g2.vertex_count(); ++v) mean_g2 += double(g2.degree(v));
  mean_g2 /= double(g2.vertex_count());
  double real_var = 0, null_var = 0, weight = 0;
  for (auto& r : rows) {
    REQUIRE(r.null_mean);
    real_var += double(r.count) * std::pow(r.mean_degree - mean_g2, 2);
    null_var += double(r.count) * std::pow(*r.null_mean - mean_g2, 2);
    weight += double(r.count);
  }
  CHECK(null_var / weight < 0.25 * real_var / weight);

  auto again = degree_pair_profile(g1, g2, 10, RngSeed{4}, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(*rows[i].null_mean == *again[i].null_mean);
}
