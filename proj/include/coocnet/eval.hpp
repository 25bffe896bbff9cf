#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "coocnet/graph.hpp"
#include "coocnet/random.hpp"
#include "coocnet/reference.hpp"
#include "coocnet/similarity.hpp"

namespace coocnet {

/// Reference value for a vertex pair, or nullopt when the reference does not
/// cover both vertices. Must be safe to call concurrently. Vertex ids refer to
/// the graph the oracle was built for; label-shuffled copies of that graph
/// share its id -> name mapping.
using PairValue = std::function<std::optional<double>(VertexId, VertexId)>;

/// category_cosine of the two vertex names.
PairValue category_reference(const CoocGraph& g, const CategoryMatrix& categories);
/// geo_distance in km of the two vertex names.
PairValue geo_reference(const CoocGraph& g, const GeoTable& geo);

struct BinRow {
  std::size_t index = 0;
  double center = 0.0;
  double mean = 0.0;  // NaN when count == 0
  std::size_t count = 0;
};

/// Equidistant bins over [lo, hi], the observed score range. The last bin
/// includes its right edge; a zero-width range puts everything in bin 0.
struct BinnedCurve {
  std::size_t bin_count = 0;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<BinRow> rows;
  std::size_t observations() const;
};

/// (score, reference) pairs -> per-bin mean reference. Throws DataError on an
/// empty input and std::invalid_argument on bin_count == 0.
BinnedCurve bin_pairs(std::span<const std::pair<double, double>> scored, std::size_t bin_count);

struct BinningOptions {
  std::size_t bins = 1000;
  /// Fraction of zero-score pairs (no common neighbor) sampled into the curve.
  double include_zeros = 0.0;
  RngSeed seed{};
  unsigned threads = 1;
};

/// Bins every pair sharing a neighbor (plus the sampled zero stratum) that
/// the reference covers.
BinnedCurve binned_curve(const CoocGraph& g, SimilarityMetric metric, const PairValue& reference,
                         const BinningOptions& options = {});

struct DistanceRow {
  std::uint32_t distance = 0;
  double mean = 0.0;
  std::size_t count = 0;
};

struct DistanceProfile {
  std::vector<DistanceRow> rows;
  /// Per distance, mean over null replicas of each replica's mean.
  std::vector<DistanceRow> null_rows;
  std::size_t low_count_threshold = 1000;

  /// Null mean for distance d, if any replica reached it.
  std::optional<double> null_mean(std::uint32_t d) const;
  bool low_confidence(const DistanceRow& row) const { return row.count < low_count_threshold; }
};

struct DistanceOptions {
  std::uint32_t max_distance = 8;
  std::size_t null_replicas = 10;
  RngSeed seed{};
  /// BFS from a uniform sample of this many sources instead of all vertices.
  std::optional<std::size_t> source_sample;
  std::size_t low_count_threshold = 1000;
  unsigned threads = 1;
};

/// Mean reference value of vertex pairs at each shortest-path distance
/// 1..max_distance, for g and for label-shuffled replicas of g. With all
/// sources each unordered pair counts once; with sampled sources, every
/// (source, target) pair counts.
DistanceProfile distance_profile(const CoocGraph& g, const PairValue& value, const DistanceOptions& options = {});

/// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace coocnet
