#include "subspace_lrr/clustering.hpp"

#include "subspace_lrr/hypergraph.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace slrr {

namespace {

double uniform01(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

// k-means++ seeding; falls back to the lowest unused row when all remaining mass is zero.
Matrix plus_plus_seeds(const Matrix& rows, int k, std::mt19937_64& gen) {
  const Index n = rows.rows();
  Matrix centers(k, rows.cols());
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  Index first = std::min<Index>(static_cast<Index>(uniform01(gen) * static_cast<double>(n)), n - 1);
  centers.row(0) = rows.row(first);
  chosen[static_cast<std::size_t>(first)] = true;

  Vector d2 = (rows.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index pick = -1;
    if (total > 0.0) {
      const double target = uniform01(gen) * total;
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (d2(i) > 0.0 && acc > target) {
          pick = i;
          break;
        }
      }
      if (pick < 0)
        for (Index i = n - 1; i >= 0; --i)
          if (d2(i) > 0.0) {
            pick = i;
            break;
          }
    } else {
      for (Index i = 0; i < n; ++i)
        if (!chosen[static_cast<std::size_t>(i)]) {
          pick = i;
          break;
        }
    }
    chosen[static_cast<std::size_t>(pick)] = true;
    centers.row(c) = rows.row(pick);
    d2 = d2.cwiseMin((rows.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

KMeansResult lloyd(const Matrix& rows, Matrix centers, const KMeansOptions& opts) {
  const Index n = rows.rows();
  const Index k = centers.rows();
  KMeansResult res;
  res.labels.assign(static_cast<std::size_t>(n), 0);
  Vector dist(n);
  double prev_inertia = std::numeric_limits<double>::infinity();

  for (int it = 0; it < opts.max_iter; ++it) {
    for (Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (Index c = 0; c < k; ++c) {
        const double d = (rows.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      res.labels[static_cast<std::size_t>(i)] = best;
      dist(i) = best_d;
    }
    const double inertia = dist.sum();

    Matrix sums = Matrix::Zero(k, rows.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      sums.row(res.labels[static_cast<std::size_t>(i)]) += rows.row(i);
      ++counts[static_cast<std::size_t>(res.labels[static_cast<std::size_t>(i)])];
    }
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // Empty cluster: move it onto the point worst served by its current center.
        Index far = 0;
        dist.maxCoeff(&far);
        centers.row(c) = rows.row(far);
        dist(far) = 0.0;
      }
    }

    const bool settled = std::abs(prev_inertia - inertia) <= opts.rel_tol * std::max(inertia, 1e-300);
    prev_inertia = inertia;
    if (settled) break;
  }

  // Final assignment against the final centers.
  res.inertia = 0.0;
  for (Index i = 0; i < n; ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < k; ++c) {
      const double d = (rows.row(i) - centers.row(c)).squaredNorm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    res.labels[static_cast<std::size_t>(i)] = best;
    res.inertia += best_d;
  }
  res.centers = std::move(centers);
  return res;
}

}  // namespace

AffinityMatrix::AffinityMatrix(Matrix w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols()) throw InvalidInput("affinity matrix must be square");
  if (!w_.allFinite()) throw InvalidInput("affinity matrix has non-finite entries");
  if (w_.size() > 0) {
    if (w_.minCoeff() < 0.0) throw InvalidInput("affinity matrix has negative entries");
    const double scale = std::max(w_.cwiseAbs().maxCoeff(), 1e-300);
    if ((w_ - w_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
      throw InvalidInput("affinity matrix is not symmetric");
  }
  zero_diagonal_ = w_.size() == 0 || w_.diagonal().cwiseAbs().maxCoeff() == 0.0;
}

AffinityMatrix affinity_from_coefficients(const Matrix& z) {
  if (z.rows() != z.cols()) throw InvalidInput("coefficient matrix must be square");
  if (!z.allFinite()) throw InvalidInput("coefficient matrix has non-finite entries");
  Matrix w = 0.5 * (z.cwiseAbs() + z.transpose().cwiseAbs());
  w.diagonal().setZero();
  return AffinityMatrix(std::move(w));
}

AffinityMatrix gaussian_affinity(const Matrix& points_as_columns, double sigma) {
  const ObservationMatrix y(points_as_columns);
  const Matrix dist = pairwise_distances(y);
  if (!(sigma > 0.0)) {
    std::vector<double> values;
    for (Index j = 0; j < y.n(); ++j)
      for (Index i = j + 1; i < y.n(); ++i) values.push_back(dist(i, j));
    if (values.empty()) throw InvalidInput("gaussian affinity needs at least two points");
    auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    sigma = std::max(*mid, 1e-12);
  }
  Matrix w = (-dist.array().square() / (2.0 * sigma * sigma)).exp().matrix();
  w.diagonal().setZero();
  return AffinityMatrix(std::move(w));
}

KMeansResult kmeans_fit(const Matrix& rows, int k, std::uint64_t seed, const KMeansOptions& opts) {
  if (k < 1 || k > rows.rows()) throw InvalidParameter("k-means needs 1 <= k <= number of rows");
  if (!rows.allFinite()) throw InvalidInput("k-means input has non-finite entries");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < std::max(opts.restarts, 1); ++r) {
    std::mt19937_64 gen(seed + static_cast<std::uint64_t>(r));
    KMeansResult run = lloyd(rows, plus_plus_seeds(rows, k, gen), opts);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

Labels kmeans(const Matrix& rows, int k, std::uint64_t seed) { return kmeans_fit(rows, k, seed).labels; }

Matrix spectral_embedding(const AffinityMatrix& w, int k) {
  const Index n = w.n();
  if (k < 1 || k > n) throw InvalidParameter("spectral embedding needs 1 <= k <= N");
  Vector degree = w.matrix().rowwise().sum();
  for (Index i = 0; i < n; ++i)
    if (degree(i) <= 0.0) degree(i) = kDegreeFloor;
  const Vector inv_sqrt = degree.cwiseSqrt().cwiseInverse();

  Matrix lsym = -(inv_sqrt.asDiagonal() * w.matrix() * inv_sqrt.asDiagonal());
  lsym.diagonal().array() += 1.0;
  lsym = (0.5 * (lsym + lsym.transpose())).eval();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(lsym);
  if (eig.info() != Eigen::Success) throw NumericalError("eigensolver failed on normalized Laplacian");
  Matrix emb = eig.eigenvectors().leftCols(k);
  for (Index i = 0; i < n; ++i) {
    const double nr = emb.row(i).norm();
    if (nr > 0.0) emb.row(i) /= nr;
  }
  return emb;
}

Labels ncut_spectral(const AffinityMatrix& w, int k, std::uint64_t seed) {
  if (k < 1 || k > w.n()) throw InvalidParameter("ncut needs 1 <= k <= N");
  return kmeans(spectral_embedding(w, k), k, seed);
}

}  // namespace slrr
