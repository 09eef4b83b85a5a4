#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "subspace_lrr/hypergraph.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

using namespace slrr;

namespace {

ObservationMatrix line(std::initializer_list<double> xs) {
  Matrix m(1, static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) m(0, i++) = x;
  return ObservationMatrix(m);
}

std::vector<std::vector<Index>> vertex_sets(const Hypergraph& h) {
  std::vector<std::vector<Index>> out;
  for (const auto& e : h.edges()) out.push_back(e.vertices);
  return out;
}

// Unordered pairs that share at least one edge.
std::set<std::pair<Index, Index>> co_members(const Hypergraph& h) {
  std::set<std::pair<Index, Index>> out;
  for (const auto& e : h.edges())
    for (std::size_t a = 0; a < e.vertices.size(); ++a)
      for (std::size_t b = a + 1; b < e.vertices.size(); ++b) out.insert({e.vertices[a], e.vertices[b]});
  return out;
}

}  // namespace

TEST_CASE("epsilon ball on three collinear points") {
  const Hypergraph h = epsilon_ball_hyperedges(line({0.0, 0.04, 0.08}), {EpsMode::Absolute, 0.05});
  const std::vector<std::vector<Index>> expected{{0, 1}, {0, 1, 2}, {1, 2}};
  CHECK(vertex_sets(h) == expected);
  CHECK(h.max_cardinality() == 3);
  CHECK(h.edges()[0].weight == doctest::Approx(1.0 / (2.0 * 0.04 * 0.04)));
}

TEST_CASE("epsilon ball with distant points is empty") {
  const Hypergraph h = epsilon_ball_hyperedges(line({0.0, 0.05}), {EpsMode::Absolute, 0.05});
  CHECK(h.empty());
  CHECK(h.max_cardinality() == 0);
  CHECK(max_cardinality(h) == 0);
}

TEST_CASE("identical points collapse to one clamped edge") {
  const ObservationMatrix y(Matrix::Constant(2, 5, 1.5));
  const Hypergraph h = epsilon_ball_hyperedges(y, {EpsMode::Absolute, 0.01});
  REQUIRE(h.edges().size() == 1);
  CHECK(h.edges()[0].vertices == std::vector<Index>{0, 1, 2, 3, 4});
  CHECK(h.max_cardinality() == 5);
  CHECK(h.edges()[0].weight == doctest::Approx(0.2 / kDistanceFloor));
}

TEST_CASE("epsilon ball errors") {
  const ObservationMatrix y = line({0.0, 1.0});
  CHECK_THROWS_AS(epsilon_ball_hyperedges(y, {EpsMode::Absolute, 0.0}), InvalidParameter);
  CHECK_THROWS_AS(epsilon_ball_hyperedges(y, {EpsMode::Absolute, -1.0}), InvalidParameter);
  CHECK_THROWS_AS(epsilon_ball_hyperedges(y, {EpsMode::Quantile, 1.0}), InvalidParameter);
  CHECK_THROWS_AS(epsilon_ball_hyperedges(line({0.0}), {EpsMode::Absolute, 1.0}), InvalidInput);
  Matrix bad(1, 2);
  bad << 0.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(ObservationMatrix{bad}, InvalidInput);
}

TEST_CASE("quantile radius interpolates pairwise distances") {
  // Pair distances 1, 2, 3.
  const ObservationMatrix y = line({0.0, 1.0, 3.0});
  CHECK(distance_quantile(y, 0.5) == doctest::Approx(2.0));
  CHECK(distance_quantile(y, 0.25) == doctest::Approx(1.5));
  CHECK(resolve_radius(y, {EpsMode::Absolute, 0.7}) == 0.7);
  const Hypergraph h = epsilon_ball_hyperedges(y, {EpsMode::Quantile, 0.25});
  CHECK(vertex_sets(h) == std::vector<std::vector<Index>>{{0, 1}});
}

TEST_CASE("hyperedge weight examples") {
  CHECK(hyperedge_weight({0, 1}, line({0.0, 0.5})) == doctest::Approx(2.0));
  Matrix tri(2, 3);
  tri << 0.0, 1.0, 0.5, 0.0, 0.0, std::sqrt(3.0) / 2.0;
  CHECK(hyperedge_weight({0, 1, 2}, ObservationMatrix(tri)) == doctest::Approx(1.0 / 9.0));
  CHECK(hyperedge_weight({0, 1}, line({2.0, 2.0})) == doctest::Approx(0.5e12));
  CHECK_THROWS_AS(hyperedge_weight({0}, line({0.0, 1.0})), InvalidEdge);
}

TEST_CASE("hypergraph invariants are enforced") {
  CHECK_THROWS_AS(Hypergraph(3, {{{0}, 1.0}}), InvalidEdge);
  CHECK_THROWS_AS(Hypergraph(3, {{{1, 0}, 1.0}}), InvalidEdge);
  CHECK_THROWS_AS(Hypergraph(3, {{{0, 3}, 1.0}}), InvalidEdge);
  CHECK_THROWS_AS(Hypergraph(3, {{{0, 1}, 0.0}}), InvalidEdge);
  CHECK_THROWS_AS(Hypergraph(3, {{{0, 1}, 1.0}, {{0, 1}, 2.0}}), InvalidEdge);
  const Hypergraph h(3, {{{0, 1}, 1.0}, {{0, 1, 2}, 1.0}});
  CHECK(max_cardinality(h) == 3);
  CHECK(max_cardinality(Hypergraph(4, {{{0, 1, 2, 3}, 1.0}})) == 4);
}

TEST_CASE("clique expansion examples") {
  Matrix two = Matrix::Zero(4, 4);
  two.topLeftCorner(2, 2) << 3.0, -3.0, -3.0, 3.0;
  CHECK(locality_operator_from_hypergraph(Hypergraph(4, {{{0, 1}, 3.0}})).matrix().isApprox(two));

  Matrix three = 3.0 * Matrix::Identity(3, 3) - Matrix::Ones(3, 3);
  CHECK(locality_operator_from_hypergraph(Hypergraph(3, {{{0, 1, 2}, 1.0}})).matrix().isApprox(three));

  const LocalityOperator empty = locality_operator_from_hypergraph(Hypergraph(4, {}));
  CHECK(empty.matrix() == Matrix::Zero(4, 4));
  CHECK(empty.is_zero());
  CHECK(empty.spectral_norm() == 0.0);
}

TEST_CASE("clique expansion quadratic form matches brute-force hyperedge sums") {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + static_cast<Index>(gen() % 7);
    const Hypergraph h = oracle::random_hypergraph(gen, n);
    const LocalityOperator l = locality_operator_from_hypergraph(h);
    const Matrix z = oracle::random_matrix(n, n, gen);
    const double expected = oracle::hyperedge_sum(h, z);
    CHECK(std::abs(l.quadratic_form(z) - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
    CHECK(std::abs((z * l.matrix() * z.transpose()).trace() - expected) <= 1e-10 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("every constructor yields a symmetric PSD operator with zero row sums") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 3 + static_cast<Index>(gen() % 48);
    const ObservationMatrix y(oracle::random_matrix(2 + static_cast<Index>(gen() % 3), n, gen));
    const Index k = 1 + static_cast<Index>(gen() % (n - 1));
    const double q = 0.02 + 0.3 * static_cast<double>(gen() % 100) / 100.0;
    for (const LocalityOperator& l :
         {locality_operator_from_hypergraph(epsilon_ball_hyperedges(y, {EpsMode::Quantile, q})),
          knn_graph_laplacian(y, k), knn_hypergraph_laplacian(y, k)}) {
      const oracle::OperatorCheck c = oracle::check_operator(l.matrix());
      CHECK(c.symmetric());
      CHECK(c.zero_rows());
      CHECK(c.psd());
    }
  }
}

TEST_CASE("cached spectral norm matches the largest eigenvalue") {
  std::mt19937_64 gen(8);
  const ObservationMatrix y(oracle::random_matrix(2, 30, gen));
  const LocalityOperator l = knn_hypergraph_laplacian(y, 4);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(l.matrix(), Eigen::EigenvaluesOnly);
  CHECK(l.spectral_norm() == doctest::Approx(eig.eigenvalues().maxCoeff()).epsilon(1e-8));
}

TEST_CASE("epsilon ball is permutation equivariant") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 4 + static_cast<Index>(gen() % 20);
    const Matrix pts = oracle::random_matrix(2, n, gen);
    std::vector<Index> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    Matrix permuted(2, n);
    for (Index i = 0; i < n; ++i) permuted.col(i) = pts.col(perm[i]);  // new column i is old perm[i]

    const EpsilonBall eps{EpsMode::Absolute, 0.8};
    const Hypergraph a = epsilon_ball_hyperedges(ObservationMatrix(pts), eps);
    const Hypergraph b = epsilon_ball_hyperedges(ObservationMatrix(permuted), eps);

    std::set<std::vector<Index>> mapped;
    for (const auto& e : b.edges()) {
      std::vector<Index> v;
      for (Index i : e.vertices) v.push_back(perm[i]);
      std::sort(v.begin(), v.end());
      mapped.insert(v);
    }
    const auto sets = vertex_sets(a);
    CHECK(mapped == std::set<std::vector<Index>>(sets.begin(), sets.end()));
  }
}

TEST_CASE("enlarging epsilon never drops a co-membership") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    const ObservationMatrix y(oracle::random_matrix(2, 25, gen));
    std::set<std::pair<Index, Index>> previous;
    for (double eps : {0.1, 0.3, 0.6, 1.0, 2.0}) {
      const auto current = co_members(epsilon_ball_hyperedges(y, {EpsMode::Absolute, eps}));
      CHECK(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
      previous = current;
    }
  }
}

TEST_CASE("kNN graph Laplacian examples") {
  Matrix expected(3, 3);
  expected << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  CHECK(knn_graph_laplacian(line({0.0, 1.0, 3.0}), 1).matrix() == expected);

  Matrix pair(2, 2);
  pair << 1, -1, -1, 1;
  CHECK(knn_graph_laplacian(line({0.0, 1.0}), 1).matrix() == pair);

  std::mt19937_64 gen(4);
  const Index n = 9;
  const ObservationMatrix y(oracle::random_matrix(3, n, gen));
  const Matrix complete = static_cast<double>(n) * Matrix::Identity(n, n) - Matrix::Ones(n, n);
  CHECK(knn_graph_laplacian(y, n - 1).matrix() == complete);

  CHECK_THROWS_AS(knn_graph_laplacian(y, 0), InvalidParameter);
  CHECK_THROWS_AS(knn_graph_laplacian(y, n), InvalidParameter);
}

TEST_CASE("kNN hypergraph Laplacian examples") {
  Matrix pair(2, 2);
  pair << 1, -1, -1, 1;
  CHECK(knn_hypergraph_laplacian(line({0.0, 1.0}), 1).matrix().isApprox(pair));

  Matrix expected(3, 3);
  expected << 1, -1, 0, -1, 1.5, -0.5, 0, -0.5, 0.5;
  CHECK(knn_hypergraph_laplacian(line({0.0, 1.0, 3.0}), 1).matrix().isApprox(expected));
  CHECK_THROWS_AS(knn_hypergraph_laplacian(line({0.0, 1.0, 3.0}), 3), InvalidParameter);
}

TEST_CASE("nearest neighbors break ties by lower index") {
  // Vertex 1 is equidistant from 0 and 2.
  const Matrix d = pairwise_distances(line({0.0, 1.0, 2.0}));
  CHECK(nearest_neighbors(d, 1, 1) == std::vector<Index>{0});
  CHECK(nearest_neighbors(d, 1, 2) == std::vector<Index>{0, 2});
  CHECK(nearest_neighbors(d, 0, 2) == std::vector<Index>{1, 2});
}
