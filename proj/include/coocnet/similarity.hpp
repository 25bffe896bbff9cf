#pragma once

#include <cstddef>
#include <functional>
#include <string_view>
#include <vector>

#include "coocnet/graph.hpp"

namespace coocnet {

enum class SimilarityFamily { Jaccard, ResourceAllocation, AdamicAdar, Cosine, LHN };

/// A neighborhood similarity and whether it uses edge weights.
/// LHN has no weighted form.
struct SimilarityMetric {
  SimilarityFamily family = SimilarityFamily::Cosine;
  bool weighted = false;

  /// Throws std::invalid_argument for weighted LHN.
  static SimilarityMetric make(SimilarityFamily family, bool weighted);
  /// jaccard | ra | aa | cosine | lhn
  static SimilarityMetric parse(std::string_view name, bool weighted);
  std::string_view name() const;
  bool operator==(const SimilarityMetric&) const = default;
};

/// All nine metric variants.
std::vector<SimilarityMetric> all_similarity_metrics();

struct SimScore {
  VertexId u;
  VertexId v;
  double value;
};

/// Vertex similarity over a fixed graph with per-vertex aggregates
/// (degree, strength, squared-weight norm) computed once.
///
/// With Γ the neighborhood, w the weight, s(v) = Σ_c w(v,c) and z ranging
/// over Γ(x) ∩ Γ(y):
///
///   JC   |Γx∩Γy| / |Γx∪Γy|           ~JC  Σ (w(x,z)+w(y,z)) / (s(x)+s(y))
///   RA   Σ 1/|Γz|                    ~RA  Σ (w(x,z)+w(y,z)) / s(z)
///   AA   Σ 1/ln|Γz|                  ~AA  Σ (w(x,z)+w(y,z)) / ln(1+s(z))
///   COS  |Γx∩Γy| / (√|Γx| √|Γy|)     ~COS Σ w(x,z)w(y,z) / (√Σ w(x,a)² √Σ w(y,b)²)
///   LHN  |Γx∩Γy| / (|Γx| |Γy|)
///
/// A zero denominator yields 0. Common neighbors are visited in ascending id
/// order so every evaluation path sums terms identically.
class SimilarityIndex {
 public:
  SimilarityIndex(const CoocGraph& g, SimilarityMetric metric);

  const CoocGraph& graph() const { return *graph_; }
  SimilarityMetric metric() const { return metric_; }

  double operator()(VertexId x, VertexId y) const;

  /// Scores of x against every vertex sharing a neighbor with it (x itself
  /// included when it has neighbors). `partners` comes back sorted.
  void scores_from(VertexId x, std::vector<VertexId>& partners, std::vector<double>& values) const;

 private:
  double term(VertexId x, VertexId z, EdgeWeight wxz, EdgeWeight wyz) const;
  double finish(VertexId x, VertexId y, double accumulated) const;

  const CoocGraph* graph_;
  SimilarityMetric metric_;
  std::vector<double> strength_;
  std::vector<double> root_square_sum_;
  // Per-instance scratch for scores_from; one index per thread.
  mutable std::vector<double> scratch_acc_;
  mutable std::vector<char> scratch_seen_;
};

// Name-based single-pair entry points. Unknown names throw UnknownEntityError.
double jaccard(const CoocGraph& g, std::string_view x, std::string_view y, bool weighted = false);
double resource_allocation(const CoocGraph& g, std::string_view x, std::string_view y, bool weighted = false);
double adamic_adar(const CoocGraph& g, std::string_view x, std::string_view y, bool weighted = false);
double cosine(const CoocGraph& g, std::string_view x, std::string_view y, bool weighted = false);
double lhn(const CoocGraph& g, std::string_view x, std::string_view y);
double similarity(const CoocGraph& g, SimilarityMetric metric, std::string_view x, std::string_view y);

enum class PairUniverse { AllPairs, CommonNeighborPairs };

using SimScoreSink = std::function<void(const SimScore&)>;

/// Every unordered pair u < v with score >= threshold, in (u, v) order.
/// CommonNeighborPairs only visits pairs sharing a neighbor (all others score
/// 0). Output is identical for every thread count.
void all_pairs_scores(const CoocGraph& g, SimilarityMetric metric, double threshold, PairUniverse universe,
                      const SimScoreSink& sink, unsigned threads = 1);
std::vector<SimScore> all_pairs_scores(const CoocGraph& g, SimilarityMetric metric, double threshold,
                                       PairUniverse universe, unsigned threads = 1);

/// The k best partners of u (excluding u), by descending score then name.
std::vector<SimScore> top_k(const CoocGraph& g, SimilarityMetric metric, VertexId u, std::size_t k);

}  // namespace coocnet
