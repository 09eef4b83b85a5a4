#pragma once

#include "subspace_lrr/common.hpp"
#include "subspace_lrr/hypergraph.hpp"

#include <functional>
#include <vector>

namespace slrr {

struct SolverConfig {
  double lambda = 0.01;   // l1 weight on J
  double beta = 10.0;     // locality weight
  double gamma = 1.1;     // l1 weight on E
  double eps1 = 1e-6;     // relative feasibility tolerance
  double eps2 = 1e-4;     // iterate-change tolerance
  double mu0 = 1e-2;
  double mu_max = 1e10;
  double rho0 = 1.1;
  int max_iter = 1000;
  double eta_margin = 1.02;

  /// Throws InvalidParameter when a field is out of its domain.
  void validate() const;
};

/// Iterates of the linearized ADMM loop.
struct SolverState {
  Matrix z;   // N x N, nuclear-norm variable
  Matrix j;   // N x N, l1 + nonnegativity variable
  Matrix e;   // M x N error
  Matrix m1;  // M x N multiplier for Y = YZ + E
  Matrix m2;  // N x N multiplier for Z = J
  double mu = 0.0;
  int k = 0;

  static SolverState initial(Index m, Index n, double mu0);
};

/// Cached per-problem quantities: ||Y||_2 and ||L||_2 never change during a solve.
struct Problem {
  Problem(const ObservationMatrix& y, const LocalityOperator& l);

  const ObservationMatrix& y;
  const LocalityOperator& l;
  double y_norm2;  // spectral norm of Y
  double y_fro;    // Frobenius norm of Y
};

struct IterationChange {
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
  double max() const;
};

struct SolveReport {
  Matrix z;
  Matrix e;
  bool converged = false;
  int iterations = 0;
  std::vector<double> residual_history;
  std::vector<double> change_history;
  std::vector<double> mu_history;
  double final_mu = 0.0;
};

/// Elementwise soft threshold sgn(x) max(|x| - tau, 0).
Matrix shrink(const Matrix& x, double tau);

/// Singular value thresholding: proximal operator of tau * nuclear norm.
Matrix svt(const Matrix& a, double tau);

/// Gradient of the smooth part of the Z-subproblem at state.z.
Matrix grad_q(const SolverState& state, const LocalityOperator& l, const ObservationMatrix& y,
              const SolverConfig& cfg);

/// eta_margin * (2 beta ||L||_2 + mu (1 + ||Y||_2^2)).
double step_size(double beta, const LocalityOperator& l, double mu, double y_norm2, double eta_margin);
double step_size(double beta, const LocalityOperator& l, double mu, const ObservationMatrix& y,
                 double eta_margin);

Matrix update_z(const SolverState& state, const Problem& problem, const SolverConfig& cfg);
/// Uses state.z as the freshly updated Z.
Matrix update_e(const SolverState& state, const ObservationMatrix& y, const SolverConfig& cfg);
/// Uses state.z as the freshly updated Z.
Matrix update_j(const SolverState& state, const SolverConfig& cfg);

struct MultiplierUpdate {
  Matrix m1;
  Matrix m2;
  double mu = 0.0;
};

/// Dual ascent with penalty mu_k, then mu_{k+1} = min(mu_max, rho mu_k).
MultiplierUpdate update_multipliers(const SolverState& state, const ObservationMatrix& y,
                                    const SolverConfig& cfg, const IterationChange& h);

/// ||Y - YZ - E||_F / ||Y||_F.
double relative_residual(const SolverState& state, const ObservationMatrix& y);

bool check_convergence(const SolverState& state, const ObservationMatrix& y, const SolverConfig& cfg,
                       const IterationChange& h);

/// Called after every completed iteration; used by tests and the CLI log.
using IterationObserver = std::function<void(const SolverState&, double residual, const IterationChange&)>;

/// Runs the LADMM loop from all-zero iterates. Non-convergence is reported, not thrown.
SolveReport solve(const ObservationMatrix& y, const LocalityOperator& l, const SolverConfig& cfg,
                  const IterationObserver& observer = {});

}  // namespace slrr
