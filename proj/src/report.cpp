#include "subspace_lrr/report.hpp"

#include "subspace_lrr/datasets.hpp"

#include <fstream>
#include <sstream>

namespace slrr {

namespace {

template <typename T>
void take(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void reject_unknown(const Json& j, std::initializer_list<std::string_view> known, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto k : known) ok = ok || key == k;
    if (!ok) throw InvalidParameter("unknown config key '" + key + "' in " + where);
  }
}

Json history(const std::vector<double>& v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

}  // namespace

std::string_view eps_mode_name(EpsMode m) { return m == EpsMode::Absolute ? "absolute" : "quantile"; }

EpsMode parse_eps_mode(std::string_view name) {
  if (name == "absolute") return EpsMode::Absolute;
  if (name == "quantile") return EpsMode::Quantile;
  throw InvalidParameter("unknown epsilon mode '" + std::string(name) + "'");
}

Json to_json(const SolverConfig& cfg) {
  return Json{{"lambda", cfg.lambda}, {"beta", cfg.beta},     {"gamma", cfg.gamma},
              {"eps1", cfg.eps1},     {"eps2", cfg.eps2},     {"mu0", cfg.mu0},
              {"mu_max", cfg.mu_max}, {"rho0", cfg.rho0},     {"max_iter", cfg.max_iter},
              {"eta_margin", cfg.eta_margin}};
}

Json to_json(const RunConfig& cfg) {
  return Json{{"solver", to_json(cfg.solver)},
              {"epsilon", {{"mode", eps_mode_name(cfg.eps.mode)}, {"value", cfg.eps.value}}},
              {"knn_k", cfg.knn_k}};
}

Json to_json(const RunReport& report) {
  const RunResult& r = report.result;
  Json params = Json::object();
  for (const auto& [key, value] : report.generator_params) params[key] = value;

  Json j;
  j["method"] = report.method;
  j["dataset"] = {{"name", report.dataset}, {"generator_params", params}};
  j["seed"] = report.seed;
  j["k"] = report.k;
  j["config"] = to_json(report.config);
  j["affinity"] = "(|Z| + |Z^T|) / 2, zero diagonal";
  j["accuracy"] = r.accuracy ? Json(*r.accuracy) : Json(nullptr);
  if (r.solve) {
    j["converged"] = r.solve->converged;
    j["iterations"] = r.solve->iterations;
    j["final_mu"] = r.solve->final_mu;
    j["residual_history"] = history(r.solve->residual_history);
    j["change_history"] = history(r.solve->change_history);
  } else {
    j["converged"] = nullptr;
    j["iterations"] = 0;
  }
  if (report.method == method_name(Method::TlrLrr)) {
    j["hypergraph"] = {{"radius", r.radius}, {"hyperedges", r.hyperedges}, {"max_cardinality", r.max_cardinality}};
  }
  j["wall_time_ms"] = r.wall_ms;
  j["labels"] = r.labels;
  return j;
}

void apply_json(const Json& j, RunConfig& cfg) {
  if (!j.is_object()) throw InvalidParameter("config must be a JSON object");
  reject_unknown(j, {"solver", "epsilon", "knn_k"}, "config");
  if (j.contains("solver")) {
    const Json& s = j.at("solver");
    reject_unknown(s, {"lambda", "beta", "gamma", "eps1", "eps2", "mu0", "mu_max", "rho0", "max_iter", "eta_margin"},
                   "solver");
    take(s, "lambda", cfg.solver.lambda);
    take(s, "beta", cfg.solver.beta);
    take(s, "gamma", cfg.solver.gamma);
    take(s, "eps1", cfg.solver.eps1);
    take(s, "eps2", cfg.solver.eps2);
    take(s, "mu0", cfg.solver.mu0);
    take(s, "mu_max", cfg.solver.mu_max);
    take(s, "rho0", cfg.solver.rho0);
    take(s, "max_iter", cfg.solver.max_iter);
    take(s, "eta_margin", cfg.solver.eta_margin);
  }
  if (j.contains("epsilon")) {
    const Json& e = j.at("epsilon");
    reject_unknown(e, {"mode", "value"}, "epsilon");
    if (e.contains("mode")) cfg.eps.mode = parse_eps_mode(e.at("mode").get<std::string>());
    take(e, "value", cfg.eps.value);
  }
  take(j, "knn_k", cfg.knn_k);
}

RunConfig load_run_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("malformed config '" + path.string() + "': " + e.what());
  }
  try {
    apply_json(j, base);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidParameter("bad config value in '" + path.string() + "': " + e.what());
  }
  return base;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw InvalidInput("failed writing '" + path.string() + "'");
}

std::string matrix_grid(const Matrix& m) {
  std::ostringstream out;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_double(m(r, c));
    out << '\n';
  }
  return out.str();
}

}  // namespace slrr
