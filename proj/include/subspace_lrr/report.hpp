#pragma once

#include "subspace_lrr/pipeline.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace slrr {

using Json = nlohmann::ordered_json;

/// Everything needed to replay one run.
struct RunReport {
  std::string method;
  std::string dataset;
  std::map<std::string, double> generator_params;
  std::uint64_t seed = 0;
  int k = 0;
  RunConfig config;
  RunResult result;
};

Json to_json(const SolverConfig& cfg);
Json to_json(const RunConfig& cfg);
Json to_json(const RunReport& report);

/// Overlays the keys present in `j` onto `cfg`; unknown keys are rejected.
void apply_json(const Json& j, RunConfig& cfg);
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});

std::string_view eps_mode_name(EpsMode m);
EpsMode parse_eps_mode(std::string_view name);

/// Pretty JSON with round-trip doubles, newline terminated.
std::string dump(const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Dense whitespace-free CSV grid of a matrix (round-trip formatting), one row per line.
std::string matrix_grid(const Matrix& m);

}  // namespace slrr
