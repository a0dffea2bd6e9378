#include "groupquant/contour.hpp"

#include <Eigen/Eigenvalues>
#include <numbers>

#include "groupquant/errors.hpp"

namespace gq {

namespace {

constexpr double kPi = std::numbers::pi;

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
  // nodes/weights on [0,1] derived from the [-1,1] rule
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / pp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[i] = 0.5 * (1.0 - t);
    x[n - 1 - i] = 0.5 * (1.0 + t);
    w[i] = w[n - 1 - i] = 1.0 / ((1.0 - t * t) * pp * pp);
  }
}

}  // namespace

Contour Contour::spectrum_circle(double lo, double hi, int count, double margin) {
  Contour c;
  const double center = 0.5 * (lo + hi);
  const double radius = margin * 0.5 * (hi - lo) + 1.0;
  c.descriptor = "circle(center=" + std::to_string(center) + ",radius=" + std::to_string(radius) +
                 ",M=" + std::to_string(count) + ")";
  for (int j = 0; j < count; ++j) {
    const double th = 2.0 * kPi * j / count;
    const Complex z = center + radius * std::polar(1.0, th);
    const Complex dz = radius * Complex(0, 1) * std::polar(1.0, th) * (2.0 * kPi / count);
    c.nodes.push_back(z);
    c.weights.push_back(dz);
  }
  return c;
}

Contour Contour::resolvent_keyhole(double eps, double ray_angle, double R, int count) {
  if (eps <= 0.0 || R <= eps) throw std::invalid_argument("keyhole needs 0 < eps < R");
  if (ray_angle <= 0.0 || ray_angle >= kPi)
    throw std::invalid_argument("keyhole ray angle must lie in (0, pi)");
  Contour c;
  c.descriptor = "keyhole(eps=" + std::to_string(eps) + ",angle=" + std::to_string(ray_angle) +
                 ",R=" + std::to_string(R) + ",M=" + std::to_string(count) + ")";
  const int n_arc = std::max(12, count / 8);
  const int n_ray = std::max(8, (count - n_arc) / 2);
  std::vector<double> gx, gw;
  gauss_legendre_01(n_ray, gx, gw);
  const double u0 = std::log(eps), u1 = std::log(R);

  // Orientation: counterclockwise around the spectrum on the right, i.e. a
  // downward crossing of the real axis at +eps.
  // upper ray z = x e^{+i psi}, traversed inward (R -> eps)
  for (int j = n_ray - 1; j >= 0; --j) {
    const double u = u0 + (u1 - u0) * gx[j];
    const Complex dir = std::polar(1.0, ray_angle);
    c.nodes.push_back(std::exp(u) * dir);
    c.weights.push_back(-std::exp(u) * dir * (u1 - u0) * gw[j]);
  }
  // eps-arc from +ray_angle down through 0 to -ray_angle (right of the origin)
  std::vector<double> ax, aw;
  gauss_legendre_01(n_arc, ax, aw);
  for (int j = 0; j < n_arc; ++j) {
    const double th = ray_angle - 2.0 * ray_angle * ax[j];
    const Complex z = eps * std::polar(1.0, th);
    c.nodes.push_back(z);
    c.weights.push_back(-Complex(0, 1) * z * 2.0 * ray_angle * aw[j]);
  }
  // lower ray outward (eps -> R)
  for (int j = 0; j < n_ray; ++j) {
    const double u = u0 + (u1 - u0) * gx[j];
    const Complex dir = std::polar(1.0, -ray_angle);
    c.nodes.push_back(std::exp(u) * dir);
    c.weights.push_back(std::exp(u) * dir * (u1 - u0) * gw[j]);
  }
  return c;
}

Contour Contour::heat_parabola(double x0, double t, double lambda_min, int count) {
  if (t <= 0.0) throw std::invalid_argument("heat contour needs t > 0");
  if (x0 <= 0.0 || x0 >= lambda_min)
    throw std::invalid_argument("parabola vertex must lie in (0, lambda_min)");
  Contour c;
  // mu u^2 reaching ~38/t kills exp(-t z) at the truncation. The slope is set
  // at the pole threshold c^2 = 4 mu (lambda_min - x0): every eigenvalue then
  // sits at parametric distance >= c/(2 mu) from the integration line.
  const double mu = 1.0;
  const double U = std::sqrt(38.0 / (t * mu));
  const double slope = 2.0 * std::sqrt(mu * (lambda_min - x0));
  c.descriptor = "parabola(x0=" + std::to_string(x0) + ",t=" + std::to_string(t) +
                 ",U=" + std::to_string(U) + ",M=" + std::to_string(count) + ")";
  for (int j = 0; j < count; ++j) {
    // downward traversal: counterclockwise around the spectrum to the right
    const double u = U - 2.0 * U * (j + 0.5) / count;
    c.nodes.push_back(Complex(x0 + mu * u * u, slope * u));
    c.weights.push_back(Complex(2.0 * mu * u, slope) * (-2.0 * U / count));
  }
  return c;
}

FunctionalCalculusResult functional_calculus(const MatrixSymbol& sigma_a,
                                             const std::function<Complex(Complex)>& F,
                                             const Contour& contour) {
  if (sigma_a.in_dim() != sigma_a.out_dim())
    throw std::invalid_argument("functional calculus needs a square fiber");
  FunctionalCalculusResult res;
  const Complex pref = Complex(0, 1) / (2.0 * kPi);  // -(1/2 pi i) = i/(2 pi)

  if (!sigma_a.is_sampled()) {
    // spectrum distance check per block
    double mind = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < sigma_a.dual().size(); ++j) {
      Eigen::ComplexEigenSolver<MatrixXcd> es(sigma_a.block(0, int(j)), false);
      for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        for (const Complex& z : contour.nodes)
          mind = std::min(mind, std::abs(es.eigenvalues()[k] - z));
    }
    res.min_spectral_distance = mind;
    if (!(mind > 1e-9))
      throw EllipticityError("contour touches the truncated spectrum (placement error)",
                             contour.descriptor);
    MatrixSymbol out = sigma_a.scaled(0.0);
    for (std::size_t j = 0; j < sigma_a.dual().size(); ++j) {
      const MatrixXcd a = sigma_a.block(0, int(j));
      MatrixXcd acc = MatrixXcd::Zero(a.rows(), a.cols());
      const MatrixXcd id = MatrixXcd::Identity(a.rows(), a.cols());
      for (std::size_t n = 0; n < contour.nodes.size(); ++n) {
        const Complex fz = F(contour.nodes[n]);
        if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag()))
          throw std::runtime_error("F evaluation failed on the contour");
        acc += pref * contour.weights[n] * fz *
               (a - contour.nodes[n] * id).partialPivLu().inverse();
      }
      out.set_block(0, int(j), acc);
    }
    res.symbol = std::move(out);
    return res;
  }

  // sampled path: resolvents of the truncated operator matrix
  CoeffOperator a_op = CoeffOperator::from_symbol(sigma_a);
  const MatrixXcd a = a_op.dense();
  Eigen::ComplexEigenSolver<MatrixXcd> es(a, false);
  double mind = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    for (const Complex& z : contour.nodes)
      mind = std::min(mind, std::abs(es.eigenvalues()[k] - z));
  res.min_spectral_distance = mind;
  if (!(mind > 1e-9))
    throw EllipticityError("contour touches the truncated spectrum (placement error)",
                           contour.descriptor);
  MatrixXcd acc = MatrixXcd::Zero(a.rows(), a.cols());
  const MatrixXcd id = MatrixXcd::Identity(a.rows(), a.cols());
  for (std::size_t n = 0; n < contour.nodes.size(); ++n) {
    const Complex fz = F(contour.nodes[n]);
    if (!std::isfinite(fz.real()) || !std::isfinite(fz.imag()))
      throw std::runtime_error("F evaluation failed on the contour");
    acc += pref * contour.weights[n] * fz * (a - contour.nodes[n] * id).partialPivLu().inverse();
  }
  CoeffOperator f_op = CoeffOperator::from_dense(sigma_a.model(), sigma_a.band(),
                                                 sigma_a.in_dim(), sigma_a.out_dim(), acc);
  res.symbol = f_op.to_symbol(sigma_a.xgrid());
  return res;
}

}  // namespace gq
