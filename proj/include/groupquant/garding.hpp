#ifndef GROUPQUANT_GARDING_HPP
#define GROUPQUANT_GARDING_HPP

#include "groupquant/calculus.hpp"

namespace gq {

struct GardingCertificate {
  double order = 0.0;
  double hypothesis_bound = 0.0;  // sup || M^m (x) A(x,xi)^{-1} ||, A = (a + a*)/2
  double C1 = 0.0;
  double C2 = 0.0;
  double min_eigenvalue = 0.0;  // the achieved minimum at the certified pair
  int band = 0;
  std::vector<std::pair<double, double>> scan;  // (C2, C1(C2))
  FourierCoefficients witness;                  // minimizing u
};

// Certifies Re(a(x,D)u, u) >= C1 ||u||^2_{m/2, subelliptic} - C2 ||u||^2 on the
// truncated space via a generalized eigenvalue problem. C2 is scanned over a
// fixed grid; the certificate reports the smallest C2 whose C1 is positive.
// check_hypothesis toggles the pointwise strong-ellipticity precondition.
GardingCertificate garding_constants(const MatrixSymbol& sigma_a, double m,
                                     const std::vector<double>& c2_grid = {0.0, 1.0, 10.0, 100.0},
                                     bool check_hypothesis = true);

}  // namespace gq

#endif
