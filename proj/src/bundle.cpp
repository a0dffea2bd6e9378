#include "groupquant/bundle.hpp"

#include <numbers>
#include <random>

#include "groupquant/errors.hpp"

namespace gq {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// K-quadrature rule fine enough for weights up to |mu| <= mu_max (half-angle
// units) against irreps up to the band.
std::vector<double> k_angles(const GroupModel& model, int band, int mu_max) {
  SubgroupInfo k = model.subgroup();
  if (k.trivial) return {0.0};
  const int n = std::max<int>(16, 4 * band + 2 * mu_max + 4);
  std::vector<double> a(n);
  for (int i = 0; i < n; ++i) a[i] = k.period * i / n;
  return a;
}

}  // namespace

BundleSpec make_trivial_bundle(const std::shared_ptr<const GroupModel>& model, int dim) {
  BundleSpec b;
  b.model = model;
  b.dim = dim;
  b.id = "trivial";
  b.tau = [dim](double) { return MatrixXcd::Identity(dim, dim); };
  b.max_weight = 0;
  return b;
}

BundleSpec make_weight_bundle(const std::shared_ptr<const GroupModel>& model, int two_q) {
  if (model->subgroup().trivial)
    throw std::invalid_argument("weight bundles need a nontrivial subgroup K");
  BundleSpec b;
  b.model = model;
  b.dim = 1;
  b.id = "weight:" + std::to_string(two_q);
  // orientation: the projected subspace consists of the weight two_q rows
  b.tau = [two_q](double angle) {
    MatrixXcd m(1, 1);
    m(0, 0) = std::polar(1.0, 0.5 * two_q * angle);
    return m;
  };
  b.max_weight = std::abs(two_q);
  return b;
}

BundleSpec make_form_bundle(const std::shared_ptr<const GroupModel>& model, int p) {
  const int m = model->lie_basis().split_index;
  if (p < 0 || p > m) throw std::invalid_argument("form degree out of range");
  if (model->subgroup().trivial || p == 0 || p == m) {
    // trivial isotropy action: Lambda^0 and the top power (det of a rotation)
    BundleSpec b = make_trivial_bundle(model, p == 0 ? 1 : (p == m ? 1 : 1));
    b.id = "forms:" + std::to_string(p);
    return b;
  }
  if (m != 2 || p != 1)
    throw std::invalid_argument("form bundles are shipped for the S^2 quotient only");
  BundleSpec b;
  b.model = model;
  b.dim = 2;
  b.id = "forms:1";
  // Ad(exp(t Y3)) rotates (Y1, Y2) by t; the dual action on (dY1, dY2) is the
  // same rotation.
  b.tau = [](double t) {
    MatrixXcd m(2, 2);
    m << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    return m;
  };
  b.max_weight = 2;  // eigenweights e^{+-it} = half-angle units +-2
  return b;
}

MatrixSymbol projector_symbol(const BundleSpec& bundle, int band) {
  const auto& model = *bundle.model;
  MatrixSymbol p = MatrixSymbol::invariant(bundle.model, band, bundle.dim, bundle.dim);
  if (model.subgroup().trivial) return identity_symbol(bundle.model, band, bundle.dim);
  auto angles = k_angles(model, band, bundle.max_weight);
  const double w = 1.0 / double(angles.size());
  for (double a : angles) {
    MatrixXcd tau = bundle.tau_at(a);
    GroupElement k = model.subgroup_element(a);
    for (std::size_t j = 0; j < p.dual().size(); ++j) {
      MatrixXcd xi_k = model.irrep_matrix(p.dual()[j], k);
      // sigma_P(input j -> output i, xi) += tau(k)_{ij} xi(k) / |K|
      for (int i = 0; i < bundle.dim; ++i)
        for (int jj = 0; jj < bundle.dim; ++jj) p.at(jj, i, 0, int(j)) += w * tau(i, jj) * xi_k;
    }
  }
  return p;
}

FourierCoefficients subgroup_average(const BundleSpec& bundle, const FourierCoefficients& c) {
  if (c.fiber_dim != bundle.dim)
    throw std::invalid_argument("fiber dimension mismatch in subgroup average");
  MatrixSymbol p = projector_symbol(bundle, c.band);
  FourierCoefficients out = zero_coefficients(c.model, c.band, c.fiber_dim);
  for (int r = 0; r < bundle.dim; ++r)
    for (std::size_t j = 0; j < p.dual().size(); ++j) {
      MatrixXcd acc = MatrixXcd::Zero(p.dual()[j].dim, p.dual()[j].dim);
      for (int i = 0; i < bundle.dim; ++i) acc += p.at(i, r, 0, int(j)) * c.at(i, int(j));
      out.at(r, int(j)) = acc;
    }
  return out;
}

VectorField subgroup_average(const BundleSpec& bundle, const VectorField& f, int band) {
  return inverse(subgroup_average(bundle, forward(f, band)), f.grid);
}

double tau_invariance_defect(const BundleSpec& bundle, const FourierCoefficients& c,
                             int samples_k) {
  const auto& model = *c.model;
  if (model.subgroup().trivial) return 0.0;
  SubgroupInfo info = model.subgroup();
  auto dual = model.enumerate_dual(c.band);
  double defect = 0.0;
  for (int s = 0; s < samples_k; ++s) {
    const double angle = info.period * s / samples_k;
    MatrixXcd tau = bundle.tau_at(angle);
    GroupElement k = model.subgroup_element(angle);
    for (std::size_t j = 0; j < dual.size(); ++j) {
      MatrixXcd xik_star = model.irrep_matrix(dual[j], k).adjoint();
      for (int i = 0; i < bundle.dim; ++i) {
        MatrixXcd rhs = MatrixXcd::Zero(dual[j].dim, dual[j].dim);
        for (int jj = 0; jj < bundle.dim; ++jj) rhs += tau(i, jj) * c.at(jj, int(j));
        defect = std::max(defect, (c.at(i, int(j)) - xik_star * rhs).cwiseAbs().maxCoeff());
      }
    }
  }
  return defect;
}

MatrixSymbol project_symbol(const MatrixSymbol& sigma, const BundleSpec& tau_in,
                            const BundleSpec& omega_out) {
  if (sigma.in_dim() != tau_in.dim || sigma.out_dim() != omega_out.dim)
    throw std::invalid_argument("bundle fiber dimensions do not match the symbol");
  MatrixSymbol p_in = projector_symbol(tau_in, sigma.band());
  MatrixSymbol p_out = projector_symbol(omega_out, sigma.band());
  return p_out.pointwise_product(sigma).pointwise_product(p_in);
}

double kernel_invariance_defect(const MatrixSymbol& sigma, const BundleSpec& tau_in,
                                const BundleSpec& omega_out, int samples, std::uint64_t seed,
                                int samples_k) {
  const auto model = sigma.model();
  SubgroupInfo info = model->subgroup();
  if (info.trivial) samples_k = 1;
  // right-convolution kernel per (i, r): R(x, z) = sum_xi d Tr[xi(z) sigma(i,r,x,xi)];
  // K(x, y) = R(x, y^{-1} x)
  auto dual = sigma.dual();
  auto kernel = [&](const GroupElement& x, const GroupElement& y, std::size_t x_index) {
    GroupElement z = model->multiply(model->inverse(y), x);
    MatrixXcd k(sigma.out_dim(), sigma.in_dim());
    std::vector<MatrixXcd> xi_z(dual.size());
    for (std::size_t j = 0; j < dual.size(); ++j) xi_z[j] = model->irrep_matrix(dual[j], z);
    for (int i = 0; i < sigma.in_dim(); ++i)
      for (int r = 0; r < sigma.out_dim(); ++r) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < dual.size(); ++j)
          acc += double(dual[j].dim) * (xi_z[j] * sigma.at(i, r, x_index, int(j))).trace();
        k(r, i) = acc;
      }
    return k;
  };

  std::mt19937_64 rng(seed);
  double defect = 0.0, scale = 0.0;
  for (int s = 0; s < samples; ++s) {
    GroupElement x, y;
    std::size_t x_index = 0;
    if (sigma.is_sampled()) {
      x_index = rng() % sigma.xgrid()->size();
      x = sigma.xgrid()->nodes[x_index];
    } else {
      x = model->random_element(rng());
    }
    y = model->random_element(rng());
    MatrixXcd k0 = kernel(x, y, x_index);
    scale = std::max(scale, k0.cwiseAbs().maxCoeff());
    for (int a1 = 0; a1 < samples_k; ++a1)
      for (int a2 = 0; a2 < samples_k; ++a2) {
        const double t1 = info.trivial ? 0.0 : info.period * a1 / samples_k;
        const double t2 = info.trivial ? 0.0 : info.period * a2 / samples_k;
        GroupElement k1 = model->subgroup_element(t1);
        GroupElement k2 = model->subgroup_element(t2);
        if (sigma.is_sampled() && (a1 != 0 || a2 != 0)) continue;  // x k1 must stay on-grid
        MatrixXcd lhs = omega_out.tau_at(t1) *
                        kernel(model->multiply(x, k1), model->multiply(y, k2), x_index) *
                        tau_in.tau_at(t2).inverse();
        defect = std::max(defect, (k0 - lhs).cwiseAbs().maxCoeff());
      }
  }
  return scale > 0 ? defect / scale : 0.0;
}

double symbol_invariance_defect(const MatrixSymbol& sigma, const BundleSpec& omega_out,
                                int samples_k, int samples_x, std::uint64_t seed) {
  const auto model = sigma.model();
  SubgroupInfo info = model->subgroup();
  if (info.trivial) return 0.0;
  auto dual = sigma.dual();
  std::mt19937_64 rng(seed);

  // sampled symbols: evaluate sigma(., x k, .) through the x-Fourier series
  std::vector<std::vector<MatrixXcd>> xcoeff;  // per (i,r,j): coefficients of x-dependence
  auto xdual = model->enumerate_dual(sigma.is_sampled() ? sigma.x_band() : 0);
  if (sigma.is_sampled()) {
    xcoeff.resize(std::size_t(sigma.in_dim()) * sigma.out_dim() * dual.size());
    for (int i = 0; i < sigma.in_dim(); ++i)
      for (int r = 0; r < sigma.out_dim(); ++r)
        for (std::size_t j = 0; j < dual.size(); ++j) {
          const int d = dual[j].dim;
          std::vector<MatrixXcd> entry(xdual.size() * std::size_t(d) * d);
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) {
              VectorXcd vals(Eigen::Index(sigma.xgrid()->size()));
              for (std::size_t x = 0; x < sigma.xgrid()->size(); ++x)
                vals[Eigen::Index(x)] = sigma.at(i, r, x, int(j))(a, b);
              std::vector<MatrixXcd> xc;
              model->forward_scalar(*sigma.xgrid(), vals, sigma.x_band(), xc);
              for (std::size_t e = 0; e < xdual.size(); ++e)
                entry[e * std::size_t(d) * d + std::size_t(a) * d + b] = xc[e];
            }
          xcoeff[(std::size_t(i) * sigma.out_dim() + r) * dual.size() + j] = std::move(entry);
        }
  }
  auto sigma_at = [&](int i, int r, std::size_t j, const GroupElement& g,
                      std::size_t grid_index) -> MatrixXcd {
    if (!sigma.is_sampled()) return sigma.at(i, r, 0, int(j));
    (void)grid_index;
    const int d = dual[j].dim;
    MatrixXcd out(d, d);
    const auto& entry = xcoeff[(std::size_t(i) * sigma.out_dim() + r) * dual.size() + j];
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        std::vector<MatrixXcd> xc(xdual.size());
        for (std::size_t e = 0; e < xdual.size(); ++e)
          xc[e] = entry[e * std::size_t(d) * d + std::size_t(a) * d + b];
        out(a, b) = model->inverse_at(g, xc, sigma.x_band());
      }
    return out;
  };

  double defect = 0.0, scale = std::max(1e-300, sigma.max_abs());
  const std::size_t nx = sigma.is_sampled() ? std::min<std::size_t>(samples_x, sigma.x_count()) : 1;
  for (std::size_t xs = 0; xs < nx; ++xs) {
    std::size_t x_index = sigma.is_sampled() ? rng() % sigma.x_count() : 0;
    GroupElement x =
        sigma.is_sampled() ? sigma.xgrid()->nodes[x_index] : model->random_element(rng());
    for (int s = 0; s < samples_k; ++s) {
      const double t = info.period * s / samples_k;
      GroupElement k = model->subgroup_element(t);
      GroupElement xk = model->multiply(x, k);
      MatrixXcd omega = omega_out.tau_at(t);
      for (std::size_t j = 0; j < dual.size(); ++j) {
        MatrixXcd xi_k = model->irrep_matrix(dual[j], k);
        for (int i = 0; i < sigma.in_dim(); ++i)
          for (int r = 0; r < sigma.out_dim(); ++r) {
            MatrixXcd rhs = MatrixXcd::Zero(dual[j].dim, dual[j].dim);
            for (int rp = 0; rp < sigma.out_dim(); ++rp)
              rhs += omega(r, rp) * sigma_at(i, rp, j, xk, x_index);
            rhs = xi_k * rhs;
            defect = std::max(
                defect, (sigma_at(i, r, j, x, x_index) - rhs).cwiseAbs().maxCoeff());
          }
      }
    }
  }
  return defect / scale;
}

// --- kappa_tau ---------------------------------------------------------------

GroupElement coset_representative(const GroupModel& model, const GroupElement& g) {
  if (model.subgroup().trivial) return g;
  // S^2: write g = rep * k with rep = exp(phi Y3) exp(theta Y2) (Euler gamma = 0)
  const double angle = coset_angle(model, g);
  return model.multiply(g, model.inverse(model.subgroup_element(angle)));
}

double coset_angle(const GroupModel& model, const GroupElement& g) {
  if (model.subgroup().trivial) return 0.0;
  // residual Euler gamma of the ZYZ decomposition; right K-multiplication adds
  // to gamma, so g exp(-gamma Y3) is a consistent coset representative
  const Complex u00(g[0], -g[3]);
  const Complex u10(g[2], -g[1]);
  const double c = std::abs(u00), s = std::abs(u10);
  const double psi = (c > 1e-300) ? -std::arg(u00) : 0.0;
  const double chi = (s > 1e-300) ? std::arg(u10) : 0.0;
  double gamma = psi - chi;
  while (gamma < 0) gamma += 2.0 * kTwoPi;
  while (gamma >= 2.0 * kTwoPi) gamma -= 2.0 * kTwoPi;
  return gamma;
}

SectionField make_section(const BundleSpec& bundle, const VectorField& f, int band, double tol) {
  SectionField s;
  s.bundle = bundle;
  s.field = f;
  s.defect = tau_invariance_defect(bundle, forward(f, band));
  if (s.defect > tol)
    throw InvarianceError("field is not tau-invariant within tolerance (defect " +
                          std::to_string(s.defect) + ")");
  return s;
}

SectionField kappa_tau(const BundleSpec& bundle,
                       const std::function<VectorXcd(const GroupElement&)>& values, int band,
                       const std::shared_ptr<const QuadratureGrid>& grid, double tol) {
  const auto& model = *bundle.model;
  VectorField f;
  f.model = bundle.model;
  f.grid = grid;
  f.values.resize(Eigen::Index(grid->size()), bundle.dim);
  for (std::size_t x = 0; x < grid->size(); ++x) {
    const GroupElement& g = grid->nodes[x];
    const double angle = coset_angle(model, g);
    GroupElement rep = model.multiply(g, model.inverse(model.subgroup_element(angle)));
    // kappa_tau(s)(g) = tau(k(g))^{-1} v(g K)
    f.values.row(Eigen::Index(x)) = (bundle.tau_at(angle).inverse() * values(rep)).transpose();
  }
  return make_section(bundle, f, band, tol);
}

VectorXcd kappa_tau_inverse(const SectionField& s, int band, const GroupElement& rep_point,
                            double tol) {
  FourierCoefficients c = forward(s.field, band);
  const double defect = tau_invariance_defect(s.bundle, c);
  if (defect > tol)
    throw InvarianceError("kappa_tau inverse needs a tau-invariant field (defect " +
                          std::to_string(defect) + ")");
  return evaluate(c, rep_point);
}

SectionField bundle_apply(const MatrixSymbol& sigma, const SectionField& s,
                          const BundleSpec& out_bundle, int band, double defect_threshold,
                          bool waive_check) {
  if (!waive_check) {
    const double kd = kernel_invariance_defect(sigma, s.bundle, out_bundle, 10, 2027);
    if (kd > defect_threshold)
      throw InvarianceError("symbol does not map tau-invariant to omega-invariant functions "
                            "(kernel defect " + std::to_string(kd) + ")");
  }
  SectionField out;
  out.bundle = out_bundle;
  out.field = quantize_apply(sigma, s.field);
  out.defect = tau_invariance_defect(out_bundle, forward(out.field, band));
  return out;
}

SectionField bundle_apply(const MatrixSymbol& sigma, const SectionField& s, int band,
                          double defect_threshold, bool waive_check) {
  return bundle_apply(sigma, s, s.bundle, band, defect_threshold, waive_check);
}

VectorField homogeneous_quantize(const MatrixSymbol& sigma, const VectorField& f_lifted,
                                 int band) {
  if (sigma.in_dim() != 1 || sigma.out_dim() != 1)
    throw std::invalid_argument("homogeneous quantisation is the scalar (trivial tau) case");
  BundleSpec triv = make_trivial_bundle(sigma.model());
  FourierCoefficients c = forward(f_lifted, band);
  const double defect = tau_invariance_defect(triv, c);
  if (defect > 1e-6)
    throw InvarianceError("lifted function is not right-K-invariant (defect " +
                          std::to_string(defect) + ")");
  return quantize_apply(sigma, f_lifted);
}

}  // namespace gq
