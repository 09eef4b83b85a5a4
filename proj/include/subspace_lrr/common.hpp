#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace slrr {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Error categories shared by every module. Each maps onto a CLI exit code.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidEdge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// M x N data matrix whose columns are observations.
class ObservationMatrix {
 public:
  ObservationMatrix() = default;
  explicit ObservationMatrix(Matrix data);

  const Matrix& data() const { return data_; }
  Index m() const { return data_.rows(); }
  Index n() const { return data_.cols(); }
  auto point(Index i) const { return data_.col(i); }

 private:
  Matrix data_;
};

/// Cluster assignments, one entry per observation.
using Labels = std::vector<int>;

/// Largest singular value by power iteration on the smaller Gram matrix.
/// Converges to `rel_tol` relative change or stops after `max_iter` sweeps.
double spectral_norm(const Matrix& a, double rel_tol = 1e-10, int max_iter = 1000);

}  // namespace slrr
