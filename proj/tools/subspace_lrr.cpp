// subspace-lrr: generate synthetic datasets, cluster a dataset file with one method,
// or run the synthetic benchmark suite.
//
// Exit codes: 0 success, 2 usage/input error, 3 solver did not converge (report written).

#include "subspace_lrr/benchmark.hpp"
#include "subspace_lrr/datasets.hpp"
#include "subspace_lrr/pipeline.hpp"
#include "subspace_lrr/report.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kNotConverged = 3;

struct GenerateArgs {
  std::string dataset;
  std::optional<int> n;
  std::optional<double> noise;
  std::vector<double> radii{1.0, 2.0, 3.0};
  std::uint64_t seed = 0;
  std::string out;
};

struct ClusterArgs {
  std::string input;
  std::string method;
  int k = 2;
  std::string config;
  std::uint64_t seed = 0;
  std::string report;
  std::string heatmap;
  bool log = false;
  // Overrides; applied after the config file.
  std::optional<double> lambda, beta, gamma, eps1, eps2, mu0, mu_max, rho0, eta_margin, eps;
  std::optional<int> max_iter, knn;
  std::optional<std::string> eps_mode;
};

struct BenchmarkArgs {
  std::string suite = "synthetic";
  std::string out_dir;
  std::uint64_t seed = 0;
  bool quiet = false;
};

void fail(const std::string& stage, const std::string& what) {
  std::cerr << "subspace-lrr: " << stage << ": " << what << '\n';
}

int run_generate(const GenerateArgs& a) {
  slrr::LabeledDataset d;
  try {
    if (a.dataset == "two-moons") {
      d = slrr::two_moons(a.n.value_or(100), a.noise.value_or(0.06), a.seed);
    } else if (a.dataset == "three-circles") {
      if (a.radii.size() != 3) throw slrr::InvalidParameter("--radii needs exactly three values");
      d = slrr::three_circles(a.n.value_or(66), {a.radii[0], a.radii[1], a.radii[2]}, a.noise.value_or(0.05),
                              a.seed);
    } else {
      throw slrr::InvalidParameter("unknown dataset '" + a.dataset + "' (expected two-moons or three-circles)");
    }
  } catch (const std::exception& e) {
    fail("generate", e.what());
    return kUsage;
  }
  try {
    slrr::save_dataset(d, a.out);
  } catch (const std::exception& e) {
    fail("generate: write output", e.what());
    return kUsage;
  }
  return kOk;
}

slrr::RunConfig cluster_config(const ClusterArgs& a) {
  slrr::RunConfig cfg;
  if (!a.config.empty()) cfg = slrr::load_run_config(a.config, cfg);
  auto set = [](const auto& opt, auto& field) {
    if (opt) field = *opt;
  };
  set(a.lambda, cfg.solver.lambda);
  set(a.beta, cfg.solver.beta);
  set(a.gamma, cfg.solver.gamma);
  set(a.eps1, cfg.solver.eps1);
  set(a.eps2, cfg.solver.eps2);
  set(a.mu0, cfg.solver.mu0);
  set(a.mu_max, cfg.solver.mu_max);
  set(a.rho0, cfg.solver.rho0);
  set(a.eta_margin, cfg.solver.eta_margin);
  set(a.max_iter, cfg.solver.max_iter);
  set(a.knn, cfg.knn_k);
  set(a.eps, cfg.eps.value);
  if (a.eps_mode) cfg.eps.mode = slrr::parse_eps_mode(*a.eps_mode);
  cfg.solver.validate();
  return cfg;
}

int run_cluster(const ClusterArgs& a) {
  slrr::Method method{};
  slrr::RunConfig cfg;
  try {
    method = slrr::parse_method(a.method);
    cfg = cluster_config(a);
  } catch (const std::exception& e) {
    fail("cluster: configuration", e.what());
    return kUsage;
  }

  slrr::LabeledDataset data;
  try {
    data = slrr::load_dataset(a.input);
  } catch (const std::exception& e) {
    fail("cluster: load input", e.what());
    return kUsage;
  }

  slrr::IterationObserver log;
  if (a.log)
    log = [](const slrr::SolverState& s, double residual, const slrr::IterationChange& h) {
      std::cerr << "iter " << s.k << " residual " << residual << " change " << h.max() << " mu " << s.mu << '\n';
    };

  slrr::RunReport report;
  report.method = a.method;
  report.dataset = data.name;
  report.generator_params = data.generator_params;
  report.seed = a.seed;
  report.k = a.k;
  report.config = cfg;
  report.config.solver = slrr::effective_solver_config(method, cfg);
  try {
    report.result = slrr::run_method(data, method, a.k, cfg, a.seed, log);
  } catch (const std::exception& e) {
    fail(std::string("cluster: run ") + a.method, e.what());
    return kUsage;
  }

  try {
    slrr::write_text(a.report, slrr::dump(slrr::to_json(report)));
    if (!a.heatmap.empty() && report.result.solve)
      slrr::write_text(a.heatmap, slrr::matrix_grid(report.result.solve->z));
  } catch (const std::exception& e) {
    fail("cluster: write report", e.what());
    return kUsage;
  }

  if (report.result.accuracy) std::cout << "accuracy " << slrr::format_double(*report.result.accuracy) << '\n';
  if (report.result.solve && !report.result.solve->converged) {
    std::cerr << "subspace-lrr: cluster: solver stopped at max_iter without converging\n";
    return kNotConverged;
  }
  return kOk;
}

int run_benchmark(const BenchmarkArgs& a) {
  if (a.suite != "synthetic") {
    fail("benchmark", "unknown suite '" + a.suite + "' (expected synthetic)");
    return kUsage;
  }
  const slrr::SyntheticSuiteConfig cfg = slrr::synthetic_suite_config();
  slrr::CellObserver progress;
  if (!a.quiet)
    progress = [](const slrr::BenchmarkCell& c) {
      const auto& r = c.report.result;
      std::cerr << c.dataset << " " << c.report.method << " accuracy "
                << (r.accuracy ? slrr::format_double(*r.accuracy) : "n/a") << " (" << r.wall_ms << " ms)\n";
    };
  slrr::BenchmarkResult result;
  try {
    result = slrr::run_synthetic_benchmark(cfg, a.seed, progress);
  } catch (const std::exception& e) {
    fail("benchmark: run", e.what());
    return kUsage;
  }
  try {
    slrr::write_benchmark(result, a.out_dir);
  } catch (const std::exception& e) {
    fail("benchmark: write output", e.what());
    return kUsage;
  }
  std::cout << result.summary_csv();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Low-rank representation subspace clustering with hypergraph locality"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a synthetic dataset file");
  generate->add_option("dataset", gen.dataset, "two-moons | three-circles")->required();
  generate->add_option("--n", gen.n, "Points per moon / circle");
  generate->add_option("--noise", gen.noise, "Gaussian noise standard deviation");
  generate->add_option("--radii", gen.radii, "Three circle radii")->delimiter(',');
  generate->add_option("--seed", gen.seed, "Noise seed");
  generate->add_option("--out", gen.out, "Output dataset path")->required();

  ClusterArgs cl;
  auto* cluster = app.add_subcommand("cluster", "Cluster a dataset file and write a JSON report");
  cluster->add_option("--input", cl.input, "Dataset file")->required();
  cluster->add_option("--method", cl.method, "kmeans | ncut | lrr | graph-lrr | lrlrr | tlr-lrr")->required();
  cluster->add_option("--k", cl.k, "Number of clusters")->required();
  cluster->add_option("--config", cl.config, "JSON config file");
  cluster->add_option("--seed", cl.seed, "Clustering seed");
  cluster->add_option("--report", cl.report, "Report output path")->required();
  cluster->add_option("--heatmap", cl.heatmap, "Write the coefficient matrix as a CSV grid");
  cluster->add_flag("--log", cl.log, "Log one residual line per solver iteration");
  cluster->add_option("--lambda", cl.lambda);
  cluster->add_option("--beta", cl.beta);
  cluster->add_option("--gamma", cl.gamma);
  cluster->add_option("--eps1", cl.eps1);
  cluster->add_option("--eps2", cl.eps2);
  cluster->add_option("--mu0", cl.mu0);
  cluster->add_option("--mu-max", cl.mu_max);
  cluster->add_option("--rho0", cl.rho0);
  cluster->add_option("--eta-margin", cl.eta_margin);
  cluster->add_option("--max-iter", cl.max_iter);
  cluster->add_option("--knn", cl.knn, "k of the kNN graph / hypergraph baselines");
  cluster->add_option("--eps", cl.eps, "Epsilon-ball radius, or quantile with --eps-mode quantile");
  cluster->add_option("--eps-mode", cl.eps_mode, "absolute | quantile");

  BenchmarkArgs bench;
  auto* benchmark = app.add_subcommand("benchmark", "Run the synthetic benchmark suite");
  benchmark->add_option("--suite", bench.suite, "synthetic");
  benchmark->add_option("--out-dir", bench.out_dir, "Output directory")->required();
  benchmark->add_option("--seed", bench.seed, "Suite seed");
  benchmark->add_flag("--quiet", bench.quiet, "No per-cell progress lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*generate) return run_generate(gen);
  if (*cluster) return run_cluster(cl);
  return run_benchmark(bench);
}
