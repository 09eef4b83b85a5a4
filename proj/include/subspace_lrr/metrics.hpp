#pragma once

#include "subspace_lrr/common.hpp"

#include <vector>

namespace slrr {

/// Minimum-cost perfect assignment on a square cost matrix (Kuhn-Munkres, O(k^3)).
/// Returns `assignment` with assignment[row] = column.
std::vector<int> hungarian(const Matrix& cost);

/// Confusion counts: rows are predicted labels, columns true labels, padded square.
Matrix confusion_matrix(const Labels& pred, const Labels& truth);

/// Fraction of points whose predicted label agrees with the truth under the best
/// one-to-one relabeling of the predicted clusters.
double accuracy(const Labels& pred, const Labels& truth);

}  // namespace slrr
