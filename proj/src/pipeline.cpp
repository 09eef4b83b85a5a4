#include "subspace_lrr/pipeline.hpp"

#include "subspace_lrr/metrics.hpp"

#include <array>
#include <chrono>

namespace slrr {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
    {Method::KMeans, "kmeans"},
    {Method::NCut, "ncut"},
    {Method::Lrr, "lrr"},
    {Method::GraphLrr, "graph-lrr"},
    {Method::Lrlrr, "lrlrr"},
    {Method::TlrLrr, "tlr-lrr"},
}};

}  // namespace

std::string_view method_name(Method m) {
  for (const auto& [method, name] : kMethodNames)
    if (method == m) return name;
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& [method, n] : kMethodNames)
    if (n == name) return method;
  throw InvalidParameter("unknown method '" + std::string(name) + "'");
}

bool uses_solver(Method m) { return m != Method::KMeans && m != Method::NCut; }

LocalityOperator build_locality(const ObservationMatrix& y, Method m, const RunConfig& cfg) {
  switch (m) {
    case Method::GraphLrr:
      return knn_graph_laplacian(y, cfg.knn_k);
    case Method::Lrlrr:
      return knn_hypergraph_laplacian(y, cfg.knn_k);
    case Method::TlrLrr:
      return locality_operator_from_hypergraph(epsilon_ball_hyperedges(y, cfg.eps));
    default:
      return LocalityOperator::zero(y.n());
  }
}

SolverConfig effective_solver_config(Method m, const RunConfig& cfg) {
  SolverConfig s = cfg.solver;
  if (m == Method::Lrr) s.beta = 0.0;
  return s;
}

RunResult run_method(const LabeledDataset& data, Method m, int k, const RunConfig& cfg, std::uint64_t seed,
                     const IterationObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  const ObservationMatrix& y = data.observations;
  RunResult out;

  switch (m) {
    case Method::KMeans:
      out.labels = kmeans(y.data().transpose(), k, seed);
      break;
    case Method::NCut:
      out.labels = ncut_spectral(gaussian_affinity(y.data()), k, seed);
      break;
    default: {
      if (m == Method::TlrLrr) {
        const Hypergraph h = epsilon_ball_hyperedges(y, cfg.eps);
        out.radius = resolve_radius(y, cfg.eps);
        out.max_cardinality = h.max_cardinality();
        out.hyperedges = h.edges().size();
        out.solve = solve(y, locality_operator_from_hypergraph(h), effective_solver_config(m, cfg), observer);
      } else {
        out.solve = solve(y, build_locality(y, m, cfg), effective_solver_config(m, cfg), observer);
      }
      out.labels = ncut_spectral(affinity_from_coefficients(out.solve->z), k, seed);
      break;
    }
  }

  if (data.labels) out.accuracy = accuracy(out.labels, *data.labels);
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace slrr
