#include "groupquant/evolution.hpp"

#include <Eigen/LU>

#include "groupquant/calculus.hpp"
#include "groupquant/errors.hpp"

namespace gq {

void validate_evolution_problem(const EvolutionProblem& problem, int time_samples) {
  // The generator of a parabolic problem must make -Re K(t) strongly elliptic
  // up to a bounded shift: the unit shift moves mass between the Garding
  // constants only, so we certify Re(-K(t)) + 1 on the scanned C2 grid.
  for (int s = 0; s < time_samples; ++s) {
    const double t = problem.horizon * s / std::max(1, time_samples - 1);
    MatrixSymbol k = problem.generator(problem.time_independent ? 0.0 : t);
    MatrixSymbol shifted =
        k.scaled(-1.0).plus(identity_symbol(problem.model, k.band(), k.in_dim()));
    GardingCertificate cert =
        garding_constants(shifted, problem.order, {0.0, 1.0, 10.0, 100.0}, false);
    if (!(cert.C1 > 0.0))
      throw EllipticityError("evolution generator fails the parabolicity check",
                             "t = " + std::to_string(t));
    if (problem.time_independent) break;
  }
}

Trajectory solve(const EvolutionProblem& problem) {
  Trajectory traj;
  const int steps = std::max(1, int(std::llround(problem.horizon / problem.dt)));
  const double dt = problem.horizon / steps;

  CoeffOperator id = CoeffOperator::identity(problem.model, problem.band, problem.initial.fiber_dim);
  CoeffOperator k_op = id, lhs_inv = id, rhs = id;
  bool ops_ready = false;
  auto build_ops = [&](double t_half) {
    CoeffOperator k = CoeffOperator::from_symbol(problem.generator(t_half));
    lhs_inv = id.plus(k, -0.5 * dt).inverse();
    rhs = id.plus(k, 0.5 * dt);
    k_op = k;
    ops_ready = true;
  };

  FourierCoefficients u = problem.initial;
  traj.times.push_back(0.0);
  traj.states.push_back(u);
  traj.l2_norms.push_back(plancherel_norm(u));
  traj.sobolev_half_norms.push_back(sobolev_norm(u, 0.5 * problem.order, WeightKind::Subelliptic));
  traj.defects.push_back(tau_invariance_defect(problem.bundle, u));

  for (int n = 0; n < steps; ++n) {
    const double t_half = (n + 0.5) * dt;
    if (!ops_ready || !problem.time_independent) build_ops(problem.time_independent ? 0.0 : t_half);
    FourierCoefficients stage = rhs.apply(u);
    if (problem.forcing) {
      FourierCoefficients f = problem.forcing(t_half);
      for (std::size_t idx = 0; idx < stage.data.size(); ++idx)
        stage.data[idx] += dt * f.data[idx];
    }
    FourierCoefficients next = lhs_inv.apply(stage);
    if (!next.data.empty()) {
      for (const auto& mcoef : next.data)
        if (!mcoef.allFinite())
          throw std::runtime_error("linear solve failed at step " + std::to_string(n + 1));
    }
    u = std::move(next);
    traj.times.push_back((n + 1) * dt);
    traj.states.push_back(u);
    traj.l2_norms.push_back(plancherel_norm(u));
    traj.sobolev_half_norms.push_back(
        sobolev_norm(u, 0.5 * problem.order, WeightKind::Subelliptic));
    traj.defects.push_back(tau_invariance_defect(problem.bundle, u));
  }
  return traj;
}

EnergyCertificate energy_certificate(const Trajectory& traj, const EvolutionProblem& problem) {
  EnergyCertificate cert;
  const std::size_t n = traj.states.size();
  if (n < 2) throw std::invalid_argument("trajectory too short for a certificate");
  const double dt = traj.times[1] - traj.times[0];

  // discrete residual (d_t - K) u at half steps; equals the applied forcing by
  // construction of the stepping, and vanishes for unforced runs
  double integral = 0.0;
  CoeffOperator k0 = CoeffOperator::from_symbol(problem.generator(0.0));
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double t_half = 0.5 * (traj.times[j] + traj.times[j + 1]);
    const CoeffOperator k = problem.time_independent
                                ? k0
                                : CoeffOperator::from_symbol(problem.generator(t_half));
    FourierCoefficients mid = traj.states[j];
    for (std::size_t idx = 0; idx < mid.data.size(); ++idx)
      mid.data[idx] = 0.5 * (traj.states[j].data[idx] + traj.states[j + 1].data[idx]);
    FourierCoefficients kmid = k.apply(mid);
    FourierCoefficients resid = kmid;
    for (std::size_t idx = 0; idx < resid.data.size(); ++idx)
      resid.data[idx] =
          (traj.states[j + 1].data[idx] - traj.states[j].data[idx]) / dt - kmid.data[idx];
    const double r = plancherel_norm(resid);
    integral += dt * r * r;
  }
  cert.residual_integral = integral;

  const double u0sq = traj.l2_norms.front() * traj.l2_norms.front();
  double maxsq = 0.0;
  for (double v : traj.l2_norms) maxsq = std::max(maxsq, v * v);
  cert.max_ratio = (u0sq > 0) ? maxsq / u0sq : 0.0;

  const std::vector<double> c_grid = {1.0, 2.0, 4.0, 8.0, 16.0, 100.0};
  const std::vector<double> cp_grid = {0.0, 1.0, 10.0, 100.0, 1000.0};
  for (double c : c_grid) {
    for (double cp : cp_grid) {
      bool ok = true;
      for (double v : traj.l2_norms)
        if (v * v > c * u0sq + cp * integral + 1e-12 * (1.0 + u0sq)) {
          ok = false;
          break;
        }
      if (ok) {
        cert.C = c;
        cert.Cprime = cp;
        cert.holds = true;
        return cert;
      }
    }
  }
  return cert;
}

}  // namespace gq
