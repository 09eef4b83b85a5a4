#pragma once

#include "subspace_lrr/common.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace slrr {

struct LabeledDataset {
  ObservationMatrix observations;
  std::optional<Labels> labels;
  std::string name;
  std::map<std::string, double> generator_params;
};

/// Two interleaved unit half-circles; angles on an even grid over [0, pi], Gaussian noise.
LabeledDataset two_moons(int n_per_moon = 100, double noise_sigma = 0.06, std::uint64_t seed = 0);

/// Three concentric circles; angles on an even grid over [0, 2 pi), Gaussian noise.
LabeledDataset three_circles(int n_per_circle = 66, std::array<double, 3> radii = {1.0, 2.0, 3.0},
                             double noise_sigma = 0.05, std::uint64_t seed = 0);

struct SubspaceOptions {
  int n_subspaces = 3;
  int subspace_dim = 2;
  int ambient_dim = 10;
  int n_per_subspace = 30;
  double outlier_fraction = 0.01;
  double outlier_scale = 1.0;
};

/// Points drawn from random linear subspaces, with a fraction of columns replaced by
/// Gaussian outliers. Outlier columns keep the label of the subspace they replaced and
/// are listed in generator_params as outlier_<i> = column.
LabeledDataset linear_subspaces(const SubspaceOptions& opts, std::uint64_t seed);

/// Comma-delimited text: header dim_0..dim_{M-1}[,label], then one observation per line.
void save_dataset(const LabeledDataset& d, const std::filesystem::path& path);
LabeledDataset load_dataset(const std::filesystem::path& path);

void write_dataset(const LabeledDataset& d, std::ostream& out);
LabeledDataset read_dataset(std::istream& in, const std::string& name = "");

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

}  // namespace slrr
