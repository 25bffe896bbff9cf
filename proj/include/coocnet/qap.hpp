#pragma once

#include <Eigen/SparseCore>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coocnet/graph.hpp"
#include "coocnet/random.hpp"

namespace coocnet {

/// Both graphs induced on their common vertex set U, indexed identically
/// (common names in code point order).
struct AlignedGraphs {
  std::vector<std::string> common;
  CoocGraph g1;
  CoocGraph g2;
  std::size_t size() const { return common.size(); }
};

/// Throws DataError when |U| < 2.
AlignedGraphs align_common(const CoocGraph& g1, const CoocGraph& g2);

/// Graph covariance over all n² entries, diagonal included:
///   cov = 1/(n²-1) Σ_ij (A1[i,j] - μ1)(A2[i,j] - μ2)
/// evaluated sparsely as (Σ A1∘A2 - ΣA1 ΣA2 / n²) / (n² - 1).
template <typename Scalar>
Scalar graph_covariance(const Eigen::SparseMatrix<Scalar>& a1, const Eigen::SparseMatrix<Scalar>& a2) {
  const Scalar n2 = Scalar(a1.rows()) * Scalar(a1.cols());
  const Scalar cross = a1.cwiseProduct(a2).sum();
  return (cross - a1.sum() * a2.sum() / n2) / (n2 - Scalar(1));
}

/// cov(A1, A2) / sqrt(var(A1) var(A2)); throws DataError on zero variance.
template <typename Scalar>
Scalar graph_correlation(const Eigen::SparseMatrix<Scalar>& a1, const Eigen::SparseMatrix<Scalar>& a2) {
  const Scalar v1 = graph_covariance(a1, a1);
  const Scalar v2 = graph_covariance(a2, a2);
  if (!(v1 > Scalar(0)) || !(v2 > Scalar(0)))
    throw DataError("graph correlation is undefined: an adjacency matrix has zero variance");
  return graph_covariance(a1, a2) / std::sqrt(v1 * v2);
}

/// On the common vertex set; entries are 1/0 when `binarize`, else weights.
double graph_covariance(const CoocGraph& g1, const CoocGraph& g2, bool binarize = true);
double graph_correlation(const CoocGraph& g1, const CoocGraph& g2, bool binarize = true);

struct QapResult {
  double rho_observed = 0.0;
  std::size_t permutations = 0;
  std::size_t count_ge = 0;  // permutations with rho >= rho_observed
  double p_fraction = 0.0;
  std::size_t common_vertices = 0;
};

/// Correlation on U after relabeling A2 by `permutation` (i -> permutation[i]
/// on both rows and columns), without materializing the permuted matrix.
/// `aligned` must come from align_common.
double permuted_correlation(const AlignedGraphs& aligned, std::span<const VertexId> permutation, bool binarize);

/// QAP test: compares rho(G1|U, G2|U) against `permutations` uniformly random
/// simultaneous row/column permutations of A2. Replica r uses
/// derive_seed(seed, r), so results do not depend on `threads`.
QapResult qap_test(const CoocGraph& g1, const CoocGraph& g2, std::size_t permutations, RngSeed seed,
                   bool binarize = true, unsigned threads = 1);

}  // namespace coocnet
