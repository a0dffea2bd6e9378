#ifndef GROUPQUANT_EVOLUTION_HPP
#define GROUPQUANT_EVOLUTION_HPP

#include "groupquant/bundle.hpp"
#include "groupquant/garding.hpp"

namespace gq {

// Parabolic Cauchy problem du/dt = K(t, x, D) u + f on a homogeneous bundle,
// solved by Crank-Nicolson on the truncated Peter-Weyl coefficients.
struct EvolutionProblem {
  std::shared_ptr<const GroupModel> model;
  BundleSpec bundle;
  int band = 0;
  double order = 2.0;  // order m of K
  std::function<MatrixSymbol(double)> generator;  // K(t)
  bool time_independent = true;
  std::function<FourierCoefficients(double)> forcing;  // empty: unforced
  FourierCoefficients initial;
  double horizon = 1.0;
  double dt = 1e-3;
};

// Validates the paper's parabolicity hypothesis: -Re K(t) (unit-shifted)
// passes the Garding machinery at sampled times. Throws EllipticityError.
void validate_evolution_problem(const EvolutionProblem& problem, int time_samples = 3);

struct Trajectory {
  std::vector<double> times;
  std::vector<FourierCoefficients> states;
  std::vector<double> l2_norms;
  std::vector<double> sobolev_half_norms;  // order m/2 subelliptic norm
  std::vector<double> defects;             // tau-invariance defect per step
};

Trajectory solve(const EvolutionProblem& problem);

struct EnergyCertificate {
  double C = 0.0;
  double Cprime = 0.0;
  double residual_integral = 0.0;  // discrete int ||(d_t - K) u||^2 dt
  double max_ratio = 0.0;          // max_t ||u(t)||^2 / ||u(0)||^2 (unforced view)
  bool holds = false;
};

// Smallest (C, C') on fixed grids with ||u(t)||^2 <= C ||u(0)||^2 + C' integral.
EnergyCertificate energy_certificate(const Trajectory& traj, const EvolutionProblem& problem);

}  // namespace gq

#endif
