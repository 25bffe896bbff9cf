#include "coocnet/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coocnet/parallel.hpp"

namespace coocnet {

SimilarityMetric SimilarityMetric::make(SimilarityFamily family, bool weighted) {
  if (family == SimilarityFamily::LHN && weighted)
    throw std::invalid_argument("the LHN similarity has no weighted variant");
  return {family, weighted};
}

SimilarityMetric SimilarityMetric::parse(std::string_view name, bool weighted) {
  if (name == "jaccard") return make(SimilarityFamily::Jaccard, weighted);
  if (name == "ra") return make(SimilarityFamily::ResourceAllocation, weighted);
  if (name == "aa") return make(SimilarityFamily::AdamicAdar, weighted);
  if (name == "cosine") return make(SimilarityFamily::Cosine, weighted);
  if (name == "lhn") return make(SimilarityFamily::LHN, weighted);
  throw std::invalid_argument("unknown similarity metric '" + std::string(name) + "'");
}

std::string_view SimilarityMetric::name() const {
  switch (family) {
    case SimilarityFamily::Jaccard: return "jaccard";
    case SimilarityFamily::ResourceAllocation: return "ra";
    case SimilarityFamily::AdamicAdar: return "aa";
    case SimilarityFamily::Cosine: return "cosine";
    case SimilarityFamily::LHN: return "lhn";
  }
  return "?";
}

std::vector<SimilarityMetric> all_similarity_metrics() {
  std::vector<SimilarityMetric> out;
  for (auto f : {SimilarityFamily::Jaccard, SimilarityFamily::ResourceAllocation, SimilarityFamily::AdamicAdar,
                 SimilarityFamily::Cosine}) {
    out.push_back({f, false});
    out.push_back({f, true});
  }
  out.push_back({SimilarityFamily::LHN, false});
  return out;
}

SimilarityIndex::SimilarityIndex(const CoocGraph& g, SimilarityMetric metric)
    : graph_(&g), metric_(SimilarityMetric::make(metric.family, metric.weighted)) {
  const std::size_t n = g.vertex_count();
  strength_.resize(n);
  root_square_sum_.resize(n);
  for (VertexId v = 0; v < n; ++v) {
    double s = 0.0, q = 0.0;
    for (EdgeWeight w : g.weights(v)) {
      const auto wd = static_cast<double>(w);
      s += wd;
      q += wd * wd;
    }
    strength_[v] = s;
    root_square_sum_[v] = std::sqrt(q);
  }
}

double SimilarityIndex::term(VertexId x, VertexId z, EdgeWeight wxz, EdgeWeight wyz) const {
  (void)x;
  const double a = static_cast<double>(wxz);
  const double b = static_cast<double>(wyz);
  const auto dz = static_cast<double>(graph_->degree(z));
  if (!metric_.weighted) {
    switch (metric_.family) {
      case SimilarityFamily::ResourceAllocation: return 1.0 / dz;
      case SimilarityFamily::AdamicAdar: {
        const double l = std::log(dz);
        return l > 0.0 ? 1.0 / l : 0.0;
      }
      default: return 1.0;
    }
  }
  switch (metric_.family) {
    case SimilarityFamily::Jaccard: return a + b;
    case SimilarityFamily::ResourceAllocation: return strength_[z] > 0.0 ? (a + b) / strength_[z] : 0.0;
    case SimilarityFamily::AdamicAdar: return (a + b) / std::log(1.0 + strength_[z]);
    case SimilarityFamily::Cosine: return a * b;
    case SimilarityFamily::LHN: break;
  }
  return 0.0;
}

double SimilarityIndex::finish(VertexId x, VertexId y, double acc) const {
  if (acc == 0.0) return 0.0;
  const auto dx = static_cast<double>(graph_->degree(x));
  const auto dy = static_cast<double>(graph_->degree(y));
  auto ratio = [](double num, double den) { return den > 0.0 ? num / den : 0.0; };
  if (!metric_.weighted) {
    switch (metric_.family) {
      case SimilarityFamily::Jaccard: return ratio(acc, dx + dy - acc);
      case SimilarityFamily::Cosine: return ratio(acc, std::sqrt(dx) * std::sqrt(dy));
      case SimilarityFamily::LHN: return ratio(acc, dx * dy);
      default: return acc;
    }
  }
  switch (metric_.family) {
    case SimilarityFamily::Jaccard: return ratio(acc, strength_[x] + strength_[y]);
    case SimilarityFamily::Cosine: return ratio(acc, root_square_sum_[x] * root_square_sum_[y]);
    default: return acc;
  }
}

double SimilarityIndex::operator()(VertexId x, VertexId y) const {
  if (x >= graph_->vertex_count() || y >= graph_->vertex_count())
    throw UnknownEntityError("similarity: vertex out of range");
  auto nx = graph_->neighbors(x);
  auto ny = graph_->neighbors(y);
  auto wx = graph_->weights(x);
  auto wy = graph_->weights(y);
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  while (i < nx.size() && j < ny.size()) {
    if (nx[i] < ny[j]) {
      ++i;
    } else if (ny[j] < nx[i]) {
      ++j;
    } else {
      acc += term(x, nx[i], wx[i], wy[j]);
      ++i;
      ++j;
    }
  }
  return finish(x, y, acc);
}

void SimilarityIndex::scores_from(VertexId x, std::vector<VertexId>& partners, std::vector<double>& values) const {
  // Two-hop walk x -> z -> y. z ascends in the outer loop, so each acc[y]
  // receives its terms in the same order as the pairwise merge above.
  const std::size_t n = graph_->vertex_count();
  if (scratch_acc_.size() != n) {
    scratch_acc_.assign(n, 0.0);
    scratch_seen_.assign(n, 0);
  }
  partners.clear();
  values.clear();
  auto nx = graph_->neighbors(x);
  auto wx = graph_->weights(x);
  for (std::size_t i = 0; i < nx.size(); ++i) {
    const VertexId z = nx[i];
    auto nz = graph_->neighbors(z);
    auto wz = graph_->weights(z);
    for (std::size_t k = 0; k < nz.size(); ++k) {
      const VertexId y = nz[k];
      if (!scratch_seen_[y]) {
        scratch_seen_[y] = 1;
        partners.push_back(y);
      }
      scratch_acc_[y] += term(x, z, wx[i], wz[k]);
    }
  }
  std::sort(partners.begin(), partners.end());
  values.reserve(partners.size());
  for (VertexId y : partners) {
    values.push_back(finish(x, y, scratch_acc_[y]));
    scratch_acc_[y] = 0.0;
    scratch_seen_[y] = 0;
  }
}

namespace {

double metric_by_name(const CoocGraph& g, SimilarityMetric m, std::string_view x, std::string_view y) {
  const VertexId a = g.require(x);
  const VertexId b = g.require(y);
  return SimilarityIndex(g, m)(a, b);
}

}  // namespace

double jaccard(const CoocGraph& g, std::string_view x, std::string_view y, bool weighted) {
  return metric_by_name(g, {SimilarityFamily::Jaccard, weighted}, x, y);
}
double resource_allocation(const CoocGraph& g, std::string_view x, std::string_view y, bool weighted) {
  return metric_by_name(g, {SimilarityFamily::ResourceAllocation, weighted}, x, y);
}
double adamic_adar(const CoocGraph& g, std::string_view x, std::string_view y, bool weighted) {
  return metric_by_name(g, {SimilarityFamily::AdamicAdar, weighted}, x, y);
}
double cosine(const CoocGraph& g, std::string_view x, std::string_view y, bool weighted) {
  return metric_by_name(g, {SimilarityFamily::Cosine, weighted}, x, y);
}
double lhn(const CoocGraph& g, std::string_view x, std::string_view y) {
  return metric_by_name(g, {SimilarityFamily::LHN, false}, x, y);
}
double similarity(const CoocGraph& g, SimilarityMetric metric, std::string_view x, std::string_view y) {
  return metric_by_name(g, metric, x, y);
}

void all_pairs_scores(const CoocGraph& g, SimilarityMetric metric, double threshold, PairUniverse universe,
                      const SimScoreSink& sink, unsigned threads) {
  const std::size_t n = g.vertex_count();
  if (n < 2) return;
  constexpr std::size_t kBlock = 256;
  constexpr std::size_t kBlocksPerWave = 64;
  const auto blocks = make_blocks(n, kBlock);
  const bool zeros_pass = universe == PairUniverse::AllPairs && threshold <= 0.0;
  for (std::size_t wave = 0; wave < blocks.size(); wave += kBlocksPerWave) {
    const std::size_t wave_end = std::min(blocks.size(), wave + kBlocksPerWave);
    std::vector<std::vector<SimScore>> out(wave_end - wave);
    parallel_for(out.size(), threads, [&](std::size_t b) {
      const SimilarityIndex index(g, metric);
      std::vector<VertexId> partners;
      std::vector<double> values;
      auto& chunk = out[b];
      for (std::size_t x = blocks[wave + b].begin; x < blocks[wave + b].end; ++x) {
        const auto u = static_cast<VertexId>(x);
        index.scores_from(u, partners, values);
        std::size_t p = 0;
        while (p < partners.size() && partners[p] <= u) ++p;
        if (zeros_pass) {
          for (VertexId v = u + 1; v < n; ++v) {
            double value = 0.0;
            if (p < partners.size() && partners[p] == v) value = values[p++];
            if (value >= threshold) chunk.push_back({u, v, value});
          }
        } else {
          for (; p < partners.size(); ++p)
            if (values[p] >= threshold) chunk.push_back({u, partners[p], values[p]});
        }
      }
    });
    for (const auto& chunk : out)
      for (const auto& s : chunk) sink(s);
  }
}

std::vector<SimScore> all_pairs_scores(const CoocGraph& g, SimilarityMetric metric, double threshold,
                                       PairUniverse universe, unsigned threads) {
  std::vector<SimScore> out;
  all_pairs_scores(g, metric, threshold, universe, [&](const SimScore& s) { out.push_back(s); }, threads);
  return out;
}

std::vector<SimScore> top_k(const CoocGraph& g, SimilarityMetric metric, VertexId u, std::size_t k) {
  if (u >= g.vertex_count()) throw UnknownEntityError("top-k: vertex out of range");
  const SimilarityIndex index(g, metric);
  std::vector<VertexId> partners;
  std::vector<double> values;
  index.scores_from(u, partners, values);
  std::vector<SimScore> scores;
  for (std::size_t i = 0; i < partners.size(); ++i)
    if (partners[i] != u) scores.push_back({u, partners[i], values[i]});
  // Names sort like ids, so ties break by name.
  std::sort(scores.begin(), scores.end(), [](const SimScore& a, const SimScore& b) {
    return a.value != b.value ? a.value > b.value : a.v < b.v;
  });
  if (scores.size() > k) scores.resize(k);
  return scores;
}

}  // namespace coocnet
