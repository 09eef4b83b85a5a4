#include "subspace_lrr/benchmark.hpp"

#include <sstream>

namespace slrr {

namespace {

constexpr std::array<Method, 6> kSuiteMethods{Method::KMeans, Method::NCut,  Method::Lrr,
                                              Method::GraphLrr, Method::Lrlrr, Method::TlrLrr};

// Reference accuracies per (dataset, method); graph-lrr has none.
double reference_accuracy(std::string_view dataset, Method m) {
  const bool moons = dataset == "two-moons";
  switch (m) {
    case Method::KMeans: return moons ? 0.54 : 0.33;
    case Method::NCut: return moons ? 0.58 : 0.41;
    case Method::Lrr: return moons ? 0.61 : 0.45;
    case Method::Lrlrr: return moons ? 0.94 : 0.45;
    case Method::TlrLrr: return moons ? 0.99 : 0.98;
    default: return 0.0;
  }
}

double accuracy_floor(std::string_view dataset, Method m) {
  if (m != Method::TlrLrr) return 0.0;
  return dataset == "two-moons" ? 0.95 : 0.90;
}

}  // namespace

SyntheticSuiteConfig synthetic_suite_config() {
  SyntheticSuiteConfig cfg;
  cfg.run.eps = {EpsMode::Quantile, 0.05};
  return cfg;
}

bool BenchmarkCell::miss() const {
  return floor > 0.0 && (!report.result.accuracy || *report.result.accuracy < floor);
}

std::string BenchmarkResult::summary_csv() const {
  std::ostringstream out;
  out << "method,dataset,accuracy,reference,floor,converged,iterations,status\n";
  for (const auto& c : cells) {
    const RunResult& r = c.report.result;
    out << c.report.method << ',' << c.dataset << ',' << (r.accuracy ? format_double(*r.accuracy) : "") << ','
        << (c.reference > 0.0 ? format_double(c.reference) : "") << ','
        << (c.floor > 0.0 ? format_double(c.floor) : "") << ','
        << (r.solve ? (r.solve->converged ? "true" : "false") : "") << ','
        << (r.solve ? r.solve->iterations : 0) << ',' << (c.floor > 0.0 ? (c.miss() ? "miss" : "ok") : "-")
        << '\n';
  }
  return out.str();
}

const BenchmarkCell& BenchmarkResult::cell(std::string_view dataset, Method m) const {
  for (const auto& c : cells)
    if (c.dataset == dataset && c.method == m) return c;
  throw InvalidParameter("no benchmark cell for " + std::string(dataset) + "/" + std::string(method_name(m)));
}

std::vector<LabeledDataset> synthetic_datasets(const SyntheticSuiteConfig& cfg, std::uint64_t seed) {
  return {two_moons(cfg.moons_per_class, cfg.moons_noise, seed),
          three_circles(cfg.circles_per_class, cfg.circle_radii, cfg.circles_noise, seed + 1)};
}

BenchmarkResult run_synthetic_benchmark(const SyntheticSuiteConfig& cfg, std::uint64_t seed,
                                        const CellObserver& on_cell) {
  BenchmarkResult result;
  std::uint64_t cell_index = 0;
  for (const LabeledDataset& data : synthetic_datasets(cfg, seed)) {
    int k = 0;
    for (int label : *data.labels) k = std::max(k, label + 1);
    for (Method m : kSuiteMethods) {
      const std::uint64_t cell_seed = seed + cell_index++;
      BenchmarkCell cell{data.name, m, {}, reference_accuracy(data.name, m), accuracy_floor(data.name, m)};
      RunReport& rep = cell.report;
      rep.method = std::string(method_name(m));
      rep.dataset = data.name;
      rep.generator_params = data.generator_params;
      rep.seed = cell_seed;
      rep.k = k;
      rep.config = cfg.run;
      rep.config.solver = effective_solver_config(m, cfg.run);
      rep.result = run_method(data, m, k, cfg.run, cell_seed);
      if (on_cell) on_cell(cell);
      result.cells.push_back(std::move(cell));
    }
  }
  return result;
}

void write_benchmark(const BenchmarkResult& result, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir / "reports", ec);
  if (!ec) fs::create_directories(out_dir / "heatmaps", ec);
  if (ec) throw InvalidInput("cannot create '" + out_dir.string() + "': " + ec.message());

  for (const auto& c : result.cells) {
    const std::string stem = c.dataset + "__" + c.report.method;
    write_text(out_dir / "reports" / (stem + ".json"), dump(to_json(c.report)));
    if (c.report.result.solve) write_text(out_dir / "heatmaps" / (stem + ".csv"), matrix_grid(c.report.result.solve->z));
  }
  write_text(out_dir / "summary.csv", result.summary_csv());
}

}  // namespace slrr
