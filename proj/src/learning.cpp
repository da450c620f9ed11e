#include "qamtrack/learning.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qamtrack {

namespace {

// Patterns as columns of an N x p matrix.
Matrix pattern_matrix(std::span<const BipolarPattern> patterns) {
  if (patterns.empty()) {
    throw std::invalid_argument("learning rule: need at least one pattern");
  }
  const Index n = patterns[0].size();
  Matrix xi(n, static_cast<Index>(patterns.size()));
  for (std::size_t mu = 0; mu < patterns.size(); ++mu) {
    if (patterns[mu].size() != n) {
      throw std::invalid_argument("learning rule: pattern lengths differ");
    }
    xi.col(static_cast<Index>(mu)) = patterns[mu].spins();
  }
  return xi;
}

}  // namespace

CovarianceMatrix covariance(std::span<const BipolarPattern> patterns) {
  const Matrix xi = pattern_matrix(patterns);
  const double n = static_cast<double>(xi.rows());
  Matrix c = (xi.transpose() * xi) / n;
  c = ((c + c.transpose()) / 2.0).eval();  // exact symmetry
  return CovarianceMatrix{std::move(c)};
}

Matrix pseudo_inverse(const CovarianceMatrix& c, double tol, int* dropped) {
  const Matrix& m = c.entries;
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("pseudo_inverse: matrix must be square");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("pseudo_inverse: eigendecomposition failed");
  }
  const Vector& values = solver.eigenvalues();
  const double lambda_max = values.cwiseAbs().maxCoeff();
  const double cut = tol * lambda_max;
  Vector inv_values = Vector::Zero(values.size());
  int discarded = 0;
  for (Index i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) < cut || values[i] == 0.0) {
      ++discarded;
    } else {
      inv_values[i] = 1.0 / values[i];
    }
  }
  if (dropped) *dropped = discarded;
  return solver.eigenvectors() * inv_values.asDiagonal() *
         solver.eigenvectors().transpose();
}

WeightMatrix projection_weights(std::span<const BipolarPattern> patterns) {
  const Matrix xi = pattern_matrix(patterns);
  const double n = static_cast<double>(xi.rows());
  const CovarianceMatrix c = covariance(patterns);
  const Matrix c_inv = pseudo_inverse(c);
  Matrix w = (xi * c_inv * xi.transpose()) / n;
  w = ((w + w.transpose()) / 2.0).eval();
  return WeightMatrix{std::move(w), false, 0};
}

WeightMatrix projection_weights(const PatternLibrary& lib) {
  const auto patterns = lib.encoded_all();
  WeightMatrix w = projection_weights(std::span<const BipolarPattern>(patterns));
  w.key_length = lib.key_length();
  return w;
}

WeightMatrix bipartite_projection_weights(const PatternLibrary& lib) {
  const Index k = lib.key_length();
  if (k < 1) {
    throw std::invalid_argument(
        "bipartite_projection_weights: library has no keys (K = 0)");
  }
  WeightMatrix w = projection_weights(lib);
  const Index n = w.size();
  w.entries.topLeftCorner(k, k).setZero();          // key-key
  w.entries.bottomRightCorner(n - k, n - k).setZero();  // value-value
  w.bipartite = true;
  w.key_length = k;
  return w;
}

RescaleResult rescale(const WeightMatrix& w, double theta) {
  const double w_max = w.entries.maxCoeff();
  if (!(w_max > 0.0)) {
    throw std::invalid_argument("rescale: weight matrix has no positive entry");
  }
  const double factor = 3.0 / (4.0 * w_max);
  WeightMatrix scaled = w;
  scaled.entries *= factor;
  return RescaleResult{std::move(scaled), theta * factor, factor};
}

}  // namespace qamtrack
