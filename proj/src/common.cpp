#include "subspace_lrr/common.hpp"

#include <cmath>
#include <random>

namespace slrr {

ObservationMatrix::ObservationMatrix(Matrix data) : data_(std::move(data)) {
  if (!data_.allFinite()) throw InvalidInput("observation matrix has non-finite entries");
}

double spectral_norm(const Matrix& a, double rel_tol, int max_iter) {
  if (a.size() == 0) return 0.0;
  const Matrix gram = a.rows() < a.cols() ? Matrix(a * a.transpose()) : Matrix(a.transpose() * a);

  // Fixed-seed start vector; a constant vector would sit in the null space of a Laplacian.
  std::mt19937 gen(0x5eed);
  Vector v(gram.rows());
  for (Index i = 0; i < v.size(); ++i) v(i) = static_cast<double>(gen()) / gen.max() - 0.5;
  double nv = v.norm();
  if (nv == 0.0) return 0.0;
  v /= nv;

  double lambda = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    Vector w = gram * v;
    const double next = v.dot(w);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (it > 0 && std::abs(next - lambda) <= rel_tol * std::abs(next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace slrr
