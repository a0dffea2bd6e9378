#ifndef GROUPQUANT_CONTOUR_HPP
#define GROUPQUANT_CONTOUR_HPP

#include "groupquant/pw_matrix.hpp"

namespace gq {

// Quadrature nodes/weights realizing sigma_F = -(1/2 pi i) sum_j w_j F(z_j) (a - z_j)^{-1}.
// All factories orient the nodes counterclockwise around the positive spectrum.
struct Contour {
  std::vector<Complex> nodes;
  std::vector<Complex> weights;  // complex dz increments
  std::string descriptor;

  // Closed circle around the real interval [lo, hi], trapezoid nodes. For
  // entire or constant F at moderate spectral spread.
  static Contour spectrum_circle(double lo, double hi, int count, double margin = 1.5);

  // Boundary of the keyhole region around the ray arg z = pi (and the
  // eps-disk at the origin): two rays at angles +-ray_angle with log-spaced
  // Gauss nodes, joined by an eps-arc passing right of the origin, truncated
  // at radius R. For F decaying like |z|^s, s < 0, holomorphic off the ray.
  static Contour resolvent_keyhole(double eps, double ray_angle, double R, int count);

  // Right-opening parabola z(u) = x0 + mu u^2 + i c u crossing the real axis
  // left of the spectrum; the exp(-t z) factor gives Gaussian decay along the
  // arms. For semigroup-type F (the paper's left-opening region boundary seen
  // from the spectrum side).
  static Contour heat_parabola(double x0, double t, double lambda_min, int count);
};

struct FunctionalCalculusResult {
  MatrixSymbol symbol;
  double min_spectral_distance = 0.0;  // closest contour node to the truncated spectrum
};

// Dunford-Riesz calculus on the truncated dual. Invariant symbols use the
// pointwise resolvent (a(xi) - z)^{-1}; sampled symbols solve on the truncated
// operator matrix and re-extract the symbol.
FunctionalCalculusResult functional_calculus(const MatrixSymbol& sigma_a,
                                             const std::function<Complex(Complex)>& F,
                                             const Contour& contour);

}  // namespace gq

#endif
