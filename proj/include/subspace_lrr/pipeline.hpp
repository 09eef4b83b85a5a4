#pragma once

#include "subspace_lrr/clustering.hpp"
#include "subspace_lrr/datasets.hpp"
#include "subspace_lrr/hypergraph.hpp"
#include "subspace_lrr/solver.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace slrr {

enum class Method { KMeans, NCut, Lrr, GraphLrr, Lrlrr, TlrLrr };

std::string_view method_name(Method m);
/// Throws InvalidParameter on an unknown name.
Method parse_method(std::string_view name);
bool uses_solver(Method m);

/// Everything that shapes a run besides the data, k and seed.
struct RunConfig {
  SolverConfig solver;
  EpsilonBall eps{EpsMode::Absolute, 0.05};
  int knn_k = 5;
};

struct RunResult {
  Labels labels;
  std::optional<double> accuracy;
  std::optional<SolveReport> solve;  // absent for kmeans / ncut
  double radius = 0.0;               // resolved epsilon (tlr-lrr only)
  std::size_t max_cardinality = 0;   // tlr-lrr only
  std::size_t hyperedges = 0;        // tlr-lrr only
  double wall_ms = 0.0;
};

/// Locality operator for a solver-backed method (zero for plain LRR).
LocalityOperator build_locality(const ObservationMatrix& y, Method m, const RunConfig& cfg);

/// Solver configuration actually used: plain LRR forces beta = 0.
SolverConfig effective_solver_config(Method m, const RunConfig& cfg);

RunResult run_method(const LabeledDataset& data, Method m, int k, const RunConfig& cfg, std::uint64_t seed,
                     const IterationObserver& observer = {});

}  // namespace slrr
