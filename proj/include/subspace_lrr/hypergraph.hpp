#pragma once

#include "subspace_lrr/common.hpp"

#include <Eigen/Sparse>

#include <vector>

namespace slrr {

/// Pairwise-distance sums below this are clamped before inverting into an edge weight.
inline constexpr double kDistanceFloor = 1e-12;

struct Hyperedge {
  std::vector<Index> vertices;  // strictly increasing
  double weight = 0.0;

  std::size_t cardinality() const { return vertices.size(); }
};

/// Sparse edge list standing in for the order-P adjacency tensor.
class Hypergraph {
 public:
  Hypergraph(Index n, std::vector<Hyperedge> edges);

  Index n() const { return n_; }
  const std::vector<Hyperedge>& edges() const { return edges_; }
  std::size_t max_cardinality() const { return p_; }
  bool empty() const { return edges_.empty(); }

 private:
  Index n_;
  std::vector<Hyperedge> edges_;
  std::size_t p_ = 0;
};

/// Symmetric PSD N x N operator whose quadratic form tr(Z L Z^T) is the locality penalty.
class LocalityOperator {
 public:
  explicit LocalityOperator(Matrix matrix);
  static LocalityOperator zero(Index n);

  const Matrix& matrix() const { return dense_; }
  const Eigen::SparseMatrix<double>& sparse() const { return sparse_; }
  double spectral_norm() const { return norm_; }
  Index n() const { return dense_.rows(); }
  bool is_zero() const { return sparse_.nonZeros() == 0; }

  /// tr(Z L Z^T).
  double quadratic_form(const Matrix& z) const;

 private:
  Matrix dense_;
  Eigen::SparseMatrix<double> sparse_;
  double norm_ = 0.0;
};

enum class EpsMode { Absolute, Quantile };

struct EpsilonBall {
  EpsMode mode = EpsMode::Absolute;
  double value = 0.05;  // radius (absolute) or q in (0,1) (quantile)
};

/// Euclidean distances between all column pairs.
Matrix pairwise_distances(const ObservationMatrix& y);

/// Linear-interpolated q-quantile of the distances over unordered pairs i < j.
double distance_quantile(const ObservationMatrix& y, double q);

/// Radius actually used by `epsilon_ball_hyperedges` for this input.
double resolve_radius(const ObservationMatrix& y, const EpsilonBall& eps);

double hyperedge_weight(const std::vector<Index>& vertices, const ObservationMatrix& y);

/// One candidate edge per vertex: the vertex plus every point strictly inside the ball.
/// Singletons are dropped and identical vertex sets merged.
Hypergraph epsilon_ball_hyperedges(const ObservationMatrix& y, const EpsilonBall& eps);

std::size_t max_cardinality(const Hypergraph& h);

/// Clique expansion: sum over edges of a(e) (|e| diag(1_e) - 1_e 1_e^T).
LocalityOperator locality_operator_from_hypergraph(const Hypergraph& h);

/// Indices of the k nearest other columns of `i`, nearest first, ties to the lower index.
std::vector<Index> nearest_neighbors(const Matrix& distances, Index i, Index k);

/// L = D - W for the OR-symmetrized binary kNN graph.
LocalityOperator knn_graph_laplacian(const ObservationMatrix& y, Index k);

/// D_v - H W D_e^{-1} H^T with one unit-weight edge {i} + kNN(i) per vertex.
LocalityOperator knn_hypergraph_laplacian(const ObservationMatrix& y, Index k);

}  // namespace slrr
