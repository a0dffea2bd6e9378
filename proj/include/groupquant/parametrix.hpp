#ifndef GROUPQUANT_PARAMETRIX_HPP
#define GROUPQUANT_PARAMETRIX_HPP

#include "groupquant/calculus.hpp"

namespace gq {

struct ParametrixReport {
  MatrixSymbol parametrix;  // sum_{k<=N} b_0 r^k
  double ellipticity_bound = 0.0;   // sup || M^m (x) a^{-1} ||
  double condition_number = 0.0;    // worst pointwise condition of a(x,xi)
  std::vector<double> residual_l2;  // || I - a # S_k ||_{L2}, k = 0..N
  std::vector<double> residual_seminorm;  // in the class of order -(k+1)(rho-delta)
};

// Neumann parametrix b_0 = a^{-1}, r = I - a # b_0, b = sum b_0 r^k. The
// residual operator after k terms is exactly r^{k+1} on the truncated space.
ParametrixReport parametrix(const MatrixSymbol& sigma_a, const SymbolClassSpec& spec, int N);

struct ParameterEllipticityReport {
  double bound = 0.0;  // sup over sampled lambda of the weighted resolvent norm
  std::vector<double> lambdas;
  std::vector<double> profile;  // per-lambda sup
};

// sup_lambda sup_(x,xi) || (|lambda|^{1/m} + M)^m (x) (a - lambda)^{-1} || over
// sampled lambda on the ray arg = angle, |lambda| in [lo, hi] (log-spaced).
ParameterEllipticityReport parameter_ellipticity_check(const MatrixSymbol& sigma_a, double m,
                                                       double angle, double lo, double hi,
                                                       int samples);

}  // namespace gq

#endif
