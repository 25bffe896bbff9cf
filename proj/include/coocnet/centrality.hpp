#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coocnet/corpus.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/random.hpp"

namespace coocnet {

enum class CentralityMetric { Degree, Eigenvector, Popularity };

CentralityMetric parse_centrality_metric(std::string_view name);

/// Scores aligned with `labels`.
struct CentralityVector {
  CentralityMetric metric = CentralityMetric::Degree;
  std::vector<std::string> labels;
  Eigen::VectorXd scores;
  bool weighted = false;
  // Power iteration only.
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;

  std::optional<double> score(std::string_view label) const;
};

/// |Γ(v)| for every vertex.
CentralityVector degree_centrality(const CoocGraph& g);

struct PowerIterationOptions {
  double tolerance = 1e-10;
  int max_iterations = 1000;
  bool weighted = false;
};

template <typename Scalar>
struct PowerIterationResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> vector;
  Scalar eigenvalue = 0;
  int iterations = 0;
  Scalar residual = 0;  // ||A x - lambda x|| of the iterate that triggered the stop
  bool converged = false;
};

/// Power iteration on A + I. The shift keeps bipartite graphs from oscillating
/// and does not change eigenvectors. Stops once the Rayleigh residual of the
/// current iterate drops below `tolerance`, then returns the next iterate.
template <typename Scalar>
PowerIterationResult<Scalar> principal_eigenvector(const Eigen::SparseMatrix<Scalar>& a, Scalar tolerance,
                                                   int max_iterations) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Eigen::Index n = a.rows();
  PowerIterationResult<Scalar> r;
  if (n == 0) {
    r.converged = true;
    return r;
  }
  Vector x = Vector::Constant(n, Scalar(1) / std::sqrt(Scalar(n)));
  Vector ax(n);
  for (r.iterations = 1; r.iterations <= max_iterations; ++r.iterations) {
    ax.noalias() = a * x;
    const Scalar lambda = x.dot(ax);
    r.residual = (ax - lambda * x).norm();
    ax += x;
    const Scalar norm = ax.norm();
    if (norm == Scalar(0)) break;
    x = ax / norm;
    if (r.residual < tolerance) {
      r.converged = true;
      break;
    }
  }
  r.iterations = std::min(r.iterations, max_iterations);
  r.eigenvalue = x.dot(a * x);
  r.vector = std::move(x);
  return r;
}

template <typename Scalar>
Scalar eigen_residual(const Eigen::SparseMatrix<Scalar>& a, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) {
  const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> ax = a * x;
  const Scalar lambda = x.dot(ax) / x.squaredNorm();
  return (ax - lambda * x).norm() / x.norm();
}

/// Eigenvector centrality on the binarized adjacency (or the weighted one when
/// options.weighted). Scores are nonnegative with unit L2 norm. Requires at
/// least one edge. Non-convergence is reported in the result, not thrown.
CentralityVector eigenvector_centrality(const CoocGraph& g, const PowerIterationOptions& options = {});

/// Corpus frequency of every entity that occurred at least once.
CentralityVector popularity(const CoocCounts& counts, const EntityLexicon& lexicon);

/// Popularity from a frequency TSV (`entity<TAB>frequency`) as written by
/// write_frequencies. Rows with frequency 0 are skipped.
CentralityVector read_popularity(std::istream& in, std::string_view source_name = "<input>");

struct DegreeProfileRow {
  std::size_t degree = 0;       // degree k in g1
  double mean_degree = 0.0;     // mean degree in g2 over common vertices with g1-degree k
  std::size_t count = 0;
  std::optional<double> null_mean;  // same, averaged over shuffled g2 replicas
};

/// Rows sorted by k over V(g1) ∩ V(g2). Throws DataError if the overlap is empty.
std::vector<DegreeProfileRow> degree_pair_profile(const CoocGraph& g1, const CoocGraph& g2);

/// As above with a label-shuffle null baseline over `replicas` copies of g2.
std::vector<DegreeProfileRow> degree_pair_profile(const CoocGraph& g1, const CoocGraph& g2,
                                                  std::size_t replicas, RngSeed seed, unsigned threads = 1);

}  // namespace coocnet
