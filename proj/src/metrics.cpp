#include "subspace_lrr/metrics.hpp"

#include <algorithm>
#include <limits>

namespace slrr {

std::vector<int> hungarian(const Matrix& cost) {
  if (cost.rows() != cost.cols()) throw InvalidInput("assignment cost matrix must be square");
  if (!cost.allFinite()) throw InvalidInput("assignment cost matrix has non-finite entries");
  const int n = static_cast<int>(cost.rows());
  if (n == 0) return {};

  // Shortest augmenting path with row/column potentials; 1-based with a virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const int r = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double reduced = cost(r - 1, c - 1) - u[r] - v[c];
        if (reduced < minv[c]) {
          minv[c] = reduced;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (int c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<int> assignment(n, -1);
  for (int c = 1; c <= n; ++c) assignment[match[c] - 1] = c - 1;
  return assignment;
}

Matrix confusion_matrix(const Labels& pred, const Labels& truth) {
  if (pred.size() != truth.size()) throw InvalidInput("label vectors differ in length");
  int k = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (pred[i] < 0 || truth[i] < 0) throw InvalidInput("labels must be nonnegative");
    k = std::max({k, pred[i] + 1, truth[i] + 1});
  }
  Matrix counts = Matrix::Zero(k, k);
  for (std::size_t i = 0; i < pred.size(); ++i) counts(pred[i], truth[i]) += 1.0;
  return counts;
}

double accuracy(const Labels& pred, const Labels& truth) {
  const Matrix counts = confusion_matrix(pred, truth);
  if (pred.empty()) return 1.0;
  const Matrix cost = (counts.maxCoeff() - counts.array()).matrix();
  const std::vector<int> match = hungarian(cost);
  double hits = 0.0;
  for (std::size_t r = 0; r < match.size(); ++r) hits += counts(static_cast<Index>(r), match[r]);
  return hits / static_cast<double>(pred.size());
}

}  // namespace slrr
