#pragma once

#include "subspace_lrr/report.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace slrr {

/// Frozen parameters of the synthetic suite. Mirrored in config/synthetic.json.
struct SyntheticSuiteConfig {
  int moons_per_class = 100;
  double moons_noise = 0.08;  // best tlr-lrr accuracy over noise 0.04..0.10
  int circles_per_class = 66;
  std::array<double, 3> circle_radii{1.0, 2.0, 3.0};
  double circles_noise = 0.05;
  RunConfig run;  // shared by every solver-backed cell
};

SyntheticSuiteConfig synthetic_suite_config();

struct BenchmarkCell {
  std::string dataset;
  Method method;
  RunReport report;
  double reference = 0.0;  // reference accuracy for this cell, 0 when none
  double floor = 0.0;      // minimum acceptable accuracy, 0 when none
  bool miss() const;
};

struct BenchmarkResult {
  std::vector<BenchmarkCell> cells;
  /// method,dataset,accuracy,reference,floor,converged,iterations,status
  std::string summary_csv() const;
  const BenchmarkCell& cell(std::string_view dataset, Method m) const;
};

/// The two synthetic datasets, generated from the suite seed.
std::vector<LabeledDataset> synthetic_datasets(const SyntheticSuiteConfig& cfg, std::uint64_t seed);

using CellObserver = std::function<void(const BenchmarkCell&)>;

/// Runs six methods on both datasets; cell seeds are seed + cell index.
BenchmarkResult run_synthetic_benchmark(const SyntheticSuiteConfig& cfg, std::uint64_t seed,
                                        const CellObserver& on_cell = {});

/// Writes reports/<dataset>__<method>.json, heatmaps/<dataset>__<method>.csv (solver
/// methods only) and summary.csv under `out_dir`.
void write_benchmark(const BenchmarkResult& result, const std::filesystem::path& out_dir);

}  // namespace slrr
