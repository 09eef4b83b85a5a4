#include "subspace_lrr/solver.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>

namespace slrr {

void SolverConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidParameter("lambda must be >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw InvalidParameter("beta must be >= 0");
  if (!positive(gamma)) throw InvalidParameter("gamma must be > 0");
  if (!positive(eps1) || !positive(eps2)) throw InvalidParameter("tolerances must be > 0");
  if (!positive(mu0)) throw InvalidParameter("mu0 must be > 0");
  if (!(mu_max >= mu0)) throw InvalidParameter("mu_max must be >= mu0");
  if (!(rho0 > 1.0) || !std::isfinite(rho0)) throw InvalidParameter("rho0 must be > 1");
  if (max_iter < 1) throw InvalidParameter("max_iter must be >= 1");
  if (!(eta_margin > 1.0) || !std::isfinite(eta_margin)) throw InvalidParameter("eta_margin must be > 1");
}

SolverState SolverState::initial(Index m, Index n, double mu0) {
  SolverState s;
  s.z = Matrix::Zero(n, n);
  s.j = Matrix::Zero(n, n);
  s.e = Matrix::Zero(m, n);
  s.m1 = Matrix::Zero(m, n);
  s.m2 = Matrix::Zero(n, n);
  s.mu = mu0;
  s.k = 0;
  return s;
}

Problem::Problem(const ObservationMatrix& y_, const LocalityOperator& l_)
    : y(y_), l(l_), y_norm2(spectral_norm(y_.data())), y_fro(y_.data().norm()) {
  if (l.n() != y.n()) throw InvalidInput("locality operator dimension does not match observation count");
}

double IterationChange::max() const { return std::max({h1, h2, h3}); }

Matrix shrink(const Matrix& x, double tau) {
  if (!(tau >= 0.0)) throw InvalidParameter("shrinkage threshold must be >= 0");
  return x.unaryExpr([tau](double v) {
    const double mag = std::abs(v) - tau;
    return mag > 0.0 ? std::copysign(mag, v) : 0.0;
  });
}

Matrix svt(const Matrix& a, double tau) {
  if (!(tau >= 0.0)) throw InvalidParameter("SVT threshold must be >= 0");
  if (!a.allFinite()) throw NumericalError("SVT input has non-finite entries");
  if (a.size() == 0) return a;
  Eigen::BDCSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) throw NumericalError("SVD failed to converge");
  const Vector& sigma = svd.singularValues();
  Index keep = 0;
  while (keep < sigma.size() && sigma(keep) > tau) ++keep;
  if (keep == 0) return Matrix::Zero(a.rows(), a.cols());
  const Vector shrunk = (sigma.head(keep).array() - tau).matrix();
  return svd.matrixU().leftCols(keep) * shrunk.asDiagonal() * svd.matrixV().leftCols(keep).transpose();
}

Matrix grad_q(const SolverState& state, const LocalityOperator& l, const ObservationMatrix& y,
              const SolverConfig& cfg) {
  const Matrix& yd = y.data();
  const double mu = state.mu;
  // -mu Y^T (Y - YZ - E + M1/mu) + mu (Z - J + M2/mu), with the 1/mu folded out.
  const Matrix dual1 = mu * (yd - yd * state.z - state.e) + state.m1;
  Matrix g = -(yd.transpose() * dual1) + mu * (state.z - state.j) + state.m2;
  if (cfg.beta != 0.0 && !l.is_zero()) g.noalias() += (2.0 * cfg.beta) * (state.z * l.sparse());
  return g;
}

double step_size(double beta, const LocalityOperator& l, double mu, double y_norm2, double eta_margin) {
  return eta_margin * (2.0 * beta * l.spectral_norm() + mu * (1.0 + y_norm2 * y_norm2));
}

double step_size(double beta, const LocalityOperator& l, double mu, const ObservationMatrix& y,
                 double eta_margin) {
  return step_size(beta, l, mu, spectral_norm(y.data()), eta_margin);
}

Matrix update_z(const SolverState& state, const Problem& problem, const SolverConfig& cfg) {
  const double eta = step_size(cfg.beta, problem.l, state.mu, problem.y_norm2, cfg.eta_margin);
  const Matrix arg = state.z - grad_q(state, problem.l, problem.y, cfg) / eta;
  return svt(arg, 1.0 / eta);
}

Matrix update_e(const SolverState& state, const ObservationMatrix& y, const SolverConfig& cfg) {
  const Matrix& yd = y.data();
  return shrink(yd - yd * state.z + state.m1 / state.mu, cfg.gamma / state.mu);
}

Matrix update_j(const SolverState& state, const SolverConfig& cfg) {
  return shrink(state.z + state.m2 / state.mu, cfg.lambda / state.mu).cwiseMax(0.0);
}

MultiplierUpdate update_multipliers(const SolverState& state, const ObservationMatrix& y,
                                    const SolverConfig& cfg, const IterationChange& h) {
  const Matrix& yd = y.data();
  MultiplierUpdate out;
  out.m1 = state.m1 + state.mu * (yd - yd * state.z - state.e);
  out.m2 = state.m2 + state.mu * (state.z - state.j);
  const double rho = h.max() <= cfg.eps2 ? cfg.rho0 : 1.0;
  out.mu = std::min(cfg.mu_max, rho * state.mu);
  return out;
}

double relative_residual(const SolverState& state, const ObservationMatrix& y) {
  const Matrix& yd = y.data();
  const double denom = yd.norm();
  if (denom == 0.0) throw InvalidInput("observation matrix has zero Frobenius norm");
  return (yd - yd * state.z - state.e).norm() / denom;
}

bool check_convergence(const SolverState& state, const ObservationMatrix& y, const SolverConfig& cfg,
                       const IterationChange& h) {
  return relative_residual(state, y) < cfg.eps1 && h.max() <= cfg.eps2;
}

SolveReport solve(const ObservationMatrix& y, const LocalityOperator& l, const SolverConfig& cfg,
                  const IterationObserver& observer) {
  cfg.validate();
  if (y.n() < 2) throw InvalidInput("solver needs at least two observations");
  if (!y.data().allFinite()) throw InvalidInput("observation matrix has non-finite entries");
  if (y.data().norm() == 0.0) throw InvalidInput("observation matrix has zero Frobenius norm");
  const Problem problem(y, l);

  SolverState state = SolverState::initial(y.m(), y.n(), cfg.mu0);
  SolveReport report;
  for (int k = 1; k <= cfg.max_iter; ++k) {
    const double eta = step_size(cfg.beta, l, state.mu, problem.y_norm2, cfg.eta_margin);

    SolverState next = state;
    next.k = k;
    next.z = update_z(state, problem, cfg);
    next.e = update_e(next, y, cfg);
    next.j = update_j(next, cfg);

    const IterationChange h{eta * (next.z - state.z).norm(), state.mu * (next.j - state.j).norm(),
                            state.mu * (next.e - state.e).norm()};
    const double residual = relative_residual(next, y);
    const bool converged = residual < cfg.eps1 && h.max() <= cfg.eps2;

    MultiplierUpdate mult = update_multipliers(next, y, cfg, h);
    next.m1 = std::move(mult.m1);
    next.m2 = std::move(mult.m2);
    next.mu = mult.mu;
    if (!next.z.allFinite() || !next.e.allFinite() || !next.m1.allFinite() || !next.m2.allFinite())
      throw NumericalError("solver iterates became non-finite at iteration " + std::to_string(k));

    report.residual_history.push_back(residual);
    report.change_history.push_back(h.max());
    report.mu_history.push_back(next.mu);
    state = std::move(next);
    if (observer) observer(state, residual, h);
    if (converged) {
      report.converged = true;
      break;
    }
  }
  report.iterations = state.k;
  report.final_mu = state.mu;
  report.z = std::move(state.z);
  report.e = std::move(state.e);
  return report;
}

}  // namespace slrr
