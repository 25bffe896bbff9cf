#include "coocnet/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <stdexcept>

#include "coocnet/nullmodel.hpp"
#include "coocnet/parallel.hpp"

namespace coocnet {

PairValue category_reference(const CoocGraph& g, const CategoryMatrix& categories) {
  auto rows = std::make_shared<std::vector<std::optional<std::size_t>>>();
  rows->reserve(g.vertex_count());
  for (const auto& name : g.vertices()) rows->push_back(categories.find(name));
  return [rows, &categories](VertexId u, VertexId v) -> std::optional<double> {
    const auto& a = (*rows)[u];
    const auto& b = (*rows)[v];
    if (!a || !b) return std::nullopt;
    return category_cosine(categories, *a, *b);
  };
}

PairValue geo_reference(const CoocGraph& g, const GeoTable& geo) {
  auto points = std::make_shared<std::vector<std::optional<GeoPoint>>>();
  points->reserve(g.vertex_count());
  for (const auto& name : g.vertices()) points->push_back(geo.find(name));
  return [points](VertexId u, VertexId v) -> std::optional<double> {
    const auto& a = (*points)[u];
    const auto& b = (*points)[v];
    if (!a || !b) return std::nullopt;
    return haversine_km(*a, *b);
  };
}

std::size_t BinnedCurve::observations() const {
  std::size_t total = 0;
  for (const auto& r : rows) total += r.count;
  return total;
}

BinnedCurve bin_pairs(std::span<const std::pair<double, double>> scored, std::size_t bin_count) {
  if (bin_count == 0) throw std::invalid_argument("bin count must be >= 1");
  if (scored.empty()) throw DataError("no evaluable pairs: graph and reference share no scored pairs");
  BinnedCurve curve;
  curve.bin_count = bin_count;
  curve.lo = std::numeric_limits<double>::infinity();
  curve.hi = -std::numeric_limits<double>::infinity();
  for (const auto& [score, ref] : scored) {
    curve.lo = std::min(curve.lo, score);
    curve.hi = std::max(curve.hi, score);
  }
  const double width = (curve.hi - curve.lo) / static_cast<double>(bin_count);
  std::vector<double> sums(bin_count, 0.0);
  std::vector<std::size_t> counts(bin_count, 0);
  for (const auto& [score, ref] : scored) {
    std::size_t bin = 0;
    if (width > 0.0) {
      const double pos = std::floor((score - curve.lo) / width);
      bin = pos <= 0.0 ? 0 : std::min(bin_count - 1, static_cast<std::size_t>(pos));
    }
    sums[bin] += ref;
    ++counts[bin];
  }
  curve.rows.resize(bin_count);
  for (std::size_t b = 0; b < bin_count; ++b) {
    auto& row = curve.rows[b];
    row.index = b;
    row.center = curve.lo + (static_cast<double>(b) + 0.5) * width;
    row.count = counts[b];
    row.mean = counts[b] ? sums[b] / static_cast<double>(counts[b]) : std::numeric_limits<double>::quiet_NaN();
  }
  return curve;
}

BinnedCurve binned_curve(const CoocGraph& g, SimilarityMetric metric, const PairValue& reference,
                         const BinningOptions& options) {
  const std::size_t n = g.vertex_count();
  const auto blocks = make_blocks(n, 128);
  std::vector<std::vector<std::pair<double, double>>> per_block(blocks.size());
  parallel_for(blocks.size(), options.threads, [&](std::size_t b) {
    const SimilarityIndex index(g, metric);
    std::vector<VertexId> partners;
    std::vector<double> values;
    auto& out = per_block[b];
    for (std::size_t x = blocks[b].begin; x < blocks[b].end; ++x) {
      const auto u = static_cast<VertexId>(x);
      index.scores_from(u, partners, values);
      std::size_t p = 0;
      while (p < partners.size() && partners[p] <= u) ++p;
      if (options.include_zeros > 0.0) {
        Engine rng = make_engine(derive_seed(options.seed, x));
        std::bernoulli_distribution keep(std::min(1.0, options.include_zeros));
        for (VertexId v = u + 1; v < n; ++v) {
          if (p < partners.size() && partners[p] == v) {
            if (auto ref = reference(u, v)) out.emplace_back(values[p], *ref);
            ++p;
          } else if (keep(rng)) {
            if (auto ref = reference(u, v)) out.emplace_back(0.0, *ref);
          }
        }
      } else {
        for (; p < partners.size(); ++p)
          if (auto ref = reference(u, partners[p])) out.emplace_back(values[p], *ref);
      }
    }
  });
  std::vector<std::pair<double, double>> scored;
  for (auto& block : per_block) scored.insert(scored.end(), block.begin(), block.end());
  return bin_pairs(scored, options.bins);
}

namespace {

struct DistanceSums {
  std::vector<double> sum;
  std::vector<std::size_t> count;
  explicit DistanceSums(std::uint32_t max_d) : sum(max_d + 1, 0.0), count(max_d + 1, 0) {}
};

std::vector<DistanceRow> profile_rows(const CoocGraph& g, const PairValue& value, std::span<const VertexId> sources,
                                      bool all_sources, std::uint32_t max_d, unsigned threads) {
  const auto blocks = make_blocks(sources.size(), 32);
  std::vector<DistanceSums> partial(blocks.size(), DistanceSums(max_d));
  parallel_for(blocks.size(), threads, [&](std::size_t b) {
    auto& acc = partial[b];
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const VertexId s = sources[i];
      const auto dist = bfs_distances(g, s, max_d);
      for (VertexId v = all_sources ? s + 1 : 0; v < dist.size(); ++v) {
        const std::uint32_t d = dist[v];
        if (d == kUnreachable || d == 0) continue;
        if (auto x = value(s, v)) {
          acc.sum[d] += *x;
          ++acc.count[d];
        }
      }
    }
  });
  DistanceSums total(max_d);
  for (const auto& p : partial)
    for (std::uint32_t d = 1; d <= max_d; ++d) {
      total.sum[d] += p.sum[d];
      total.count[d] += p.count[d];
    }
  std::vector<DistanceRow> rows;
  for (std::uint32_t d = 1; d <= max_d; ++d)
    if (total.count[d] > 0) rows.push_back({d, total.sum[d] / static_cast<double>(total.count[d]), total.count[d]});
  return rows;
}

}  // namespace

std::optional<double> DistanceProfile::null_mean(std::uint32_t d) const {
  for (const auto& r : null_rows)
    if (r.distance == d) return r.mean;
  return std::nullopt;
}

DistanceProfile distance_profile(const CoocGraph& g, const PairValue& value, const DistanceOptions& options) {
  if (options.max_distance < 1) throw std::invalid_argument("max distance must be >= 1");
  const std::size_t n = g.vertex_count();
  std::vector<VertexId> sources(n);
  std::iota(sources.begin(), sources.end(), VertexId{0});
  const bool all_sources = !options.source_sample || *options.source_sample >= n;
  if (!all_sources) {
    // First k entries of a seeded permutation, kept in id order.
    sources = random_permutation(n, derive_seed(options.seed, 0xD157));
    sources.resize(*options.source_sample);
    std::sort(sources.begin(), sources.end());
  }

  DistanceProfile profile;
  profile.low_count_threshold = options.low_count_threshold;
  profile.rows = profile_rows(g, value, sources, all_sources, options.max_distance, options.threads);

  std::vector<double> null_sum(options.max_distance + 1, 0.0);
  std::vector<std::size_t> null_seen(options.max_distance + 1, 0);
  std::vector<std::size_t> null_pairs(options.max_distance + 1, 0);
  for (std::size_t r = 0; r < options.null_replicas; ++r) {
    const CoocGraph shuffled = shuffle_labels(g, derive_seed(options.seed, r));
    for (const auto& row : profile_rows(shuffled, value, sources, all_sources, options.max_distance, options.threads)) {
      null_sum[row.distance] += row.mean;
      ++null_seen[row.distance];
      null_pairs[row.distance] += row.count;
    }
  }
  for (std::uint32_t d = 1; d <= options.max_distance; ++d)
    if (null_seen[d] > 0)
      profile.null_rows.push_back({d, null_sum[d] / static_cast<double>(null_seen[d]), null_pairs[d] / null_seen[d]});
  return profile;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  auto ranks = [n](std::span<const double> v) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(n);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace coocnet
