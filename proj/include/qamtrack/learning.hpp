#pragma once

#include <span>

#include "qamtrack/pattern.hpp"
#include "qamtrack/types.hpp"

namespace qamtrack {

// Pattern-overlap matrix C(mu, nu) = (1/N) sum_k xi^mu_k xi^nu_k.
// Symmetric with unit diagonal for bipolar patterns; entries in [-1, 1].
struct CovarianceMatrix {
  Matrix entries;

  Index size() const { return entries.rows(); }
};

// N x N symmetric coupling matrix produced by a learning rule. When
// bipartite, key-key and value-value blocks are exactly zero and key_length
// records the partition point (keys occupy indices [0, key_length)).
struct WeightMatrix {
  Matrix entries;
  bool bipartite = false;
  Index key_length = 0;

  Index size() const { return entries.rows(); }
};

CovarianceMatrix covariance(std::span<const BipolarPattern> patterns);

// Moore-Penrose pseudo-inverse via symmetric eigendecomposition. Eigenvalues
// with |lambda| < tol * |lambda|_max are treated as zero; the number dropped
// is reported through `dropped` when non-null (rank-deficiency warning).
Matrix pseudo_inverse(const CovarianceMatrix& c, double tol = 1e-10,
                      int* dropped = nullptr);

// W = (1/N) Xi C^+ Xi^T. Equals the orthogonal projector onto the pattern
// span when C is invertible, which makes every encoded pattern a global
// minimizer of -s^T W s with value -N.
WeightMatrix projection_weights(std::span<const BipolarPattern> patterns);
WeightMatrix projection_weights(const PatternLibrary& lib);

// Projection rule with key-key and value-value blocks zeroed out, leaving
// only key<->value couplings. Requires K >= 1.
WeightMatrix bipartite_projection_weights(const PatternLibrary& lib);

struct RescaleResult {
  WeightMatrix weights;
  double theta = 0.0;
  double factor = 1.0;
};

// Multiplies W and theta by 3 / (4 W_max), W_max being the largest entry of
// W. Pure uniform scaling: the argmin set of any derived problem is
// unchanged. Throws when W has no strictly positive entry.
RescaleResult rescale(const WeightMatrix& w, double theta);

}  // namespace qamtrack
