#include "subspace_lrr/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace slrr {

namespace {

void require_points(const ObservationMatrix& y) {
  if (y.n() < 2) throw InvalidInput("locality structure needs at least two observations");
  if (!y.data().allFinite()) throw InvalidInput("observation matrix has non-finite entries");
}

void require_k(const ObservationMatrix& y, Index k) {
  require_points(y);
  if (k < 1 || k > y.n() - 1)
    throw InvalidParameter("k must lie in [1, N-1], got " + std::to_string(k));
}

}  // namespace

Hypergraph::Hypergraph(Index n, std::vector<Hyperedge> edges) : n_(n), edges_(std::move(edges)) {
  std::set<std::vector<Index>> seen;
  for (const auto& e : edges_) {
    if (e.vertices.size() < 2) throw InvalidEdge("hyperedge needs at least two vertices");
    for (std::size_t i = 0; i < e.vertices.size(); ++i) {
      if (e.vertices[i] < 0 || e.vertices[i] >= n_) throw InvalidEdge("hyperedge vertex out of range");
      if (i > 0 && e.vertices[i] <= e.vertices[i - 1])
        throw InvalidEdge("hyperedge vertices must be strictly increasing");
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) throw InvalidEdge("hyperedge weight must be positive");
    if (!seen.insert(e.vertices).second) throw InvalidEdge("duplicate hyperedge");
    p_ = std::max(p_, e.vertices.size());
  }
}

LocalityOperator::LocalityOperator(Matrix matrix) : dense_(std::move(matrix)) {
  if (dense_.rows() != dense_.cols()) throw InvalidInput("locality operator must be square");
  if (!dense_.allFinite()) throw InvalidInput("locality operator has non-finite entries");
  sparse_ = dense_.sparseView();
  sparse_.makeCompressed();
  norm_ = is_zero() ? 0.0 : slrr::spectral_norm(dense_);
}

LocalityOperator LocalityOperator::zero(Index n) { return LocalityOperator(Matrix::Zero(n, n)); }

double LocalityOperator::quadratic_form(const Matrix& z) const {
  return (z * sparse_).cwiseProduct(z).sum();
}

Matrix pairwise_distances(const ObservationMatrix& y) {
  const Matrix& d = y.data();
  const Index n = y.n();
  Matrix out = Matrix::Zero(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = j + 1; i < n; ++i) {
      const double dist = (d.col(i) - d.col(j)).norm();
      out(i, j) = dist;
      out(j, i) = dist;
    }
  return out;
}

double distance_quantile(const ObservationMatrix& y, double q) {
  require_points(y);
  if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("distance quantile must lie in (0,1)");
  const Matrix dist = pairwise_distances(y);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(y.n() * (y.n() - 1) / 2));
  for (Index j = 0; j < y.n(); ++j)
    for (Index i = j + 1; i < y.n(); ++i) values.push_back(dist(i, j));
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double resolve_radius(const ObservationMatrix& y, const EpsilonBall& eps) {
  if (eps.mode == EpsMode::Quantile) return distance_quantile(y, eps.value);
  if (!(eps.value > 0.0) || !std::isfinite(eps.value)) throw InvalidParameter("epsilon must be positive");
  return eps.value;
}

double hyperedge_weight(const std::vector<Index>& vertices, const ObservationMatrix& y) {
  const std::size_t c = vertices.size();
  if (c < 2) throw InvalidEdge("hyperedge weight needs at least two vertices");
  double pair_sum = 0.0;
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = a + 1; b < c; ++b)
      pair_sum += (y.point(vertices[a]) - y.point(vertices[b])).squaredNorm();
  pair_sum = std::max(pair_sum, kDistanceFloor);
  return 1.0 / (static_cast<double>(c) * pair_sum);
}

Hypergraph epsilon_ball_hyperedges(const ObservationMatrix& y, const EpsilonBall& eps) {
  require_points(y);
  const double radius = resolve_radius(y, eps);
  const Matrix dist = pairwise_distances(y);

  std::set<std::vector<Index>> candidates;
  for (Index i = 0; i < y.n(); ++i) {
    std::vector<Index> members;
    for (Index j = 0; j < y.n(); ++j)
      if (j == i || dist(i, j) < radius) members.push_back(j);
    if (members.size() >= 2) candidates.insert(std::move(members));
  }

  std::vector<Hyperedge> edges;
  edges.reserve(candidates.size());
  for (const auto& members : candidates) edges.push_back({members, hyperedge_weight(members, y)});
  return Hypergraph(y.n(), std::move(edges));
}

std::size_t max_cardinality(const Hypergraph& h) { return h.max_cardinality(); }

LocalityOperator locality_operator_from_hypergraph(const Hypergraph& h) {
  if (h.n() < 2) throw InvalidInput("hypergraph needs at least two vertices");
  Matrix l = Matrix::Zero(h.n(), h.n());
  for (const auto& e : h.edges()) {
    const double c = static_cast<double>(e.cardinality());
    for (Index a : e.vertices) {
      l(a, a) += e.weight * c;
      for (Index b : e.vertices) l(a, b) -= e.weight;
    }
  }
  return LocalityOperator(std::move(l));
}

std::vector<Index> nearest_neighbors(const Matrix& distances, Index i, Index k) {
  std::vector<Index> order(static_cast<std::size_t>(distances.rows()));
  std::iota(order.begin(), order.end(), Index{0});
  order.erase(order.begin() + i);
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return distances(i, a) < distances(i, b); });
  order.resize(static_cast<std::size_t>(k));
  return order;
}

LocalityOperator knn_graph_laplacian(const ObservationMatrix& y, Index k) {
  require_k(y, k);
  const Matrix dist = pairwise_distances(y);
  Matrix w = Matrix::Zero(y.n(), y.n());
  for (Index i = 0; i < y.n(); ++i)
    for (Index j : nearest_neighbors(dist, i, k)) {
      w(i, j) = 1.0;
      w(j, i) = 1.0;
    }
  Matrix l = -w;
  l.diagonal() = w.rowwise().sum();
  return LocalityOperator(std::move(l));
}

LocalityOperator knn_hypergraph_laplacian(const ObservationMatrix& y, Index k) {
  require_k(y, k);
  const Index n = y.n();
  const Matrix dist = pairwise_distances(y);

  // Incidence H (n x n edges), unit edge weights, edge degree |e| = k + 1.
  Matrix h = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    h(i, i) = 1.0;
    for (Index j : nearest_neighbors(dist, i, k)) h(j, i) = 1.0;
  }
  const Vector edge_degree = h.colwise().sum().transpose();
  const Vector vertex_degree = h.rowwise().sum();

  Matrix l = -(h * edge_degree.cwiseInverse().asDiagonal() * h.transpose());
  l.diagonal() += vertex_degree;
  l = (0.5 * (l + l.transpose())).eval();
  return LocalityOperator(std::move(l));
}

}  // namespace slrr
