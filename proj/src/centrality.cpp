#include "coocnet/centrality.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <stdexcept>

#include "coocnet/nullmodel.hpp"
#include "coocnet/parallel.hpp"

namespace coocnet {

CentralityMetric parse_centrality_metric(std::string_view name) {
  if (name == "degree") return CentralityMetric::Degree;
  if (name == "eigenvector") return CentralityMetric::Eigenvector;
  if (name == "popularity") return CentralityMetric::Popularity;
  throw DataError("unknown centrality metric '" + std::string(name) + "'");
}

std::optional<double> CentralityVector::score(std::string_view label) const {
  auto it = std::lower_bound(labels.begin(), labels.end(), label,
                             [](const std::string& a, std::string_view b) { return std::string_view(a) < b; });
  if (it == labels.end() || *it != label) return std::nullopt;
  return scores[it - labels.begin()];
}

namespace {

CentralityVector labelled(const CoocGraph& g, CentralityMetric metric) {
  CentralityVector c;
  c.metric = metric;
  c.labels.assign(g.vertices().begin(), g.vertices().end());
  c.scores.resize(static_cast<Eigen::Index>(g.vertex_count()));
  return c;
}

}  // namespace

CentralityVector degree_centrality(const CoocGraph& g) {
  CentralityVector c = labelled(g, CentralityMetric::Degree);
  for (VertexId v = 0; v < g.vertex_count(); ++v) c.scores[v] = static_cast<double>(g.degree(v));
  return c;
}

CentralityVector eigenvector_centrality(const CoocGraph& g, const PowerIterationOptions& options) {
  if (g.edge_count() == 0) throw std::invalid_argument("eigenvector centrality needs at least one edge");
  const Eigen::SparseMatrix<double> a = adjacency_matrix<double>(g, !options.weighted);
  auto r = principal_eigenvector<double>(a, options.tolerance, options.max_iterations);
  CentralityVector c = labelled(g, CentralityMetric::Eigenvector);
  c.weighted = options.weighted;
  c.scores = r.vector.cwiseMax(0.0);
  c.scores /= c.scores.norm();
  c.iterations = r.iterations;
  c.converged = r.converged;
  c.residual = eigen_residual<double>(a, c.scores);
  return c;
}

CentralityVector popularity(const CoocCounts& counts, const EntityLexicon& lexicon) {
  if (counts.entity_count() != lexicon.size()) throw DataError("co-occurrence counts do not belong to this lexicon");
  CentralityVector c;
  c.metric = CentralityMetric::Popularity;
  std::vector<double> scores;
  for (EntityId id = 0; id < lexicon.size(); ++id) {
    if (counts.frequency(id) == 0) continue;
    c.labels.push_back(lexicon.surface(id));
    scores.push_back(static_cast<double>(counts.frequency(id)));
  }
  c.scores = Eigen::Map<const Eigen::VectorXd>(scores.data(), static_cast<Eigen::Index>(scores.size()));
  return c;
}

CentralityVector read_popularity(std::istream& in, std::string_view source_name) {
  std::vector<std::pair<std::string, double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.find('\t');
    std::uint64_t freq = 0;
    const char* first = tab == std::string::npos ? nullptr : line.data() + tab + 1;
    const char* last = line.data() + line.size();
    if (!first || std::from_chars(first, last, freq).ptr != last)
      throw DataError(std::string(source_name) + ":" + std::to_string(line_no) + ": expected entity<TAB>frequency");
    if (freq > 0) rows.emplace_back(line.substr(0, tab), static_cast<double>(freq));
  }
  std::sort(rows.begin(), rows.end());
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (rows[i].first == rows[i - 1].first)
      throw DataError(std::string(source_name) + ": repeated entity '" + rows[i].first + "'");
  CentralityVector c;
  c.metric = CentralityMetric::Popularity;
  c.scores.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    c.labels.push_back(rows[i].first);
    c.scores[static_cast<Eigen::Index>(i)] = rows[i].second;
  }
  return c;
}

namespace {

struct CommonDegrees {
  std::vector<std::size_t> degree1;
  std::vector<VertexId> in_g2;  // vertex id in g2 of each common vertex
};

CommonDegrees common_degrees(const CoocGraph& g1, const CoocGraph& g2) {
  CommonDegrees c;
  for (VertexId v = 0; v < g1.vertex_count(); ++v) {
    if (auto w = g2.find(g1.name(v))) {
      c.degree1.push_back(g1.degree(v));
      c.in_g2.push_back(*w);
    }
  }
  if (c.degree1.empty()) throw DataError("degree profile: the graphs share no vertices");
  return c;
}

// k -> (sum of g2 degrees, count)
std::map<std::size_t, std::pair<double, std::size_t>> profile_sums(const CommonDegrees& c, const CoocGraph& g2) {
  std::map<std::size_t, std::pair<double, std::size_t>> sums;
  for (std::size_t i = 0; i < c.degree1.size(); ++i) {
    auto& [sum, count] = sums[c.degree1[i]];
    sum += static_cast<double>(g2.degree(c.in_g2[i]));
    ++count;
  }
  return sums;
}

}  // namespace

std::vector<DegreeProfileRow> degree_pair_profile(const CoocGraph& g1, const CoocGraph& g2) {
  const CommonDegrees common = common_degrees(g1, g2);
  std::vector<DegreeProfileRow> rows;
  for (const auto& [k, acc] : profile_sums(common, g2))
    rows.push_back({k, acc.first / static_cast<double>(acc.second), acc.second, std::nullopt});
  return rows;
}

std::vector<DegreeProfileRow> degree_pair_profile(const CoocGraph& g1, const CoocGraph& g2, std::size_t replicas,
                                                  RngSeed seed, unsigned threads) {
  auto rows = degree_pair_profile(g1, g2);
  if (replicas == 0) return rows;
  std::vector<std::vector<double>> replica_means(replicas);
  parallel_for(replicas, threads, [&](std::size_t r) {
    const CoocGraph shuffled = shuffle_labels(g2, derive_seed(seed, r));
    // Shuffling keeps g2's name set, so the common vertex set is unchanged.
    const CommonDegrees common = common_degrees(g1, shuffled);
    for (const auto& [k, acc] : profile_sums(common, shuffled))
      replica_means[r].push_back(acc.first / static_cast<double>(acc.second));
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    double sum = 0.0;
    for (const auto& means : replica_means) sum += means[i];
    rows[i].null_mean = sum / static_cast<double>(replicas);
  }
  return rows;
}

}  // namespace coocnet
