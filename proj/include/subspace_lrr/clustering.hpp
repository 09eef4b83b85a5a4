#pragma once

#include "subspace_lrr/common.hpp"

#include <cstdint>

namespace slrr {

/// Added to zero-degree rows so D^{-1/2} stays finite.
inline constexpr double kDegreeFloor = 1e-12;

/// Symmetric nonnegative N x N affinity.
class AffinityMatrix {
 public:
  /// Validates symmetry (1e-12 relative) and nonnegativity.
  explicit AffinityMatrix(Matrix w);

  const Matrix& matrix() const { return w_; }
  Index n() const { return w_.rows(); }
  bool zero_diagonal() const { return zero_diagonal_; }

 private:
  Matrix w_;
  bool zero_diagonal_ = false;
};

/// W = (|Z| + |Z^T|) / 2 with the diagonal zeroed.
AffinityMatrix affinity_from_coefficients(const Matrix& z);

/// Gaussian kernel exp(-d^2 / (2 sigma^2)) on raw observations, zero diagonal.
/// sigma <= 0 selects the median pairwise distance.
AffinityMatrix gaussian_affinity(const Matrix& points_as_columns, double sigma = 0.0);

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 300;
  double rel_tol = 1e-6;
};

struct KMeansResult {
  Labels labels;
  Matrix centers;  // k x d
  double inertia = 0.0;
};

/// Lloyd iteration from k-means++ seeds; best of `restarts` runs seeded seed + r.
KMeansResult kmeans_fit(const Matrix& rows, int k, std::uint64_t seed, const KMeansOptions& opts = {});
Labels kmeans(const Matrix& rows, int k, std::uint64_t seed);

/// Row-normalized eigenvectors of the k smallest eigenvalues of I - D^{-1/2} W D^{-1/2}.
Matrix spectral_embedding(const AffinityMatrix& w, int k);

/// Normalized-cut spectral clustering followed by seeded k-means on the embedding rows.
Labels ncut_spectral(const AffinityMatrix& w, int k, std::uint64_t seed);

}  // namespace slrr
