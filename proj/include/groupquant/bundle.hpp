#ifndef GROUPQUANT_BUNDLE_HPP
#define GROUPQUANT_BUNDLE_HPP

#include "groupquant/symbol.hpp"

namespace gq {

// Homogeneous bundle G x_tau E0 described by the unitary K-representation tau.
// K is a circle parameterized by one angle (see SubgroupInfo); tau(angle) is
// the fiber matrix.
struct BundleSpec {
  std::shared_ptr<const GroupModel> model;
  int dim = 1;
  std::string id = "trivial";
  std::function<MatrixXcd(double)> tau;
  int max_weight = 0;  // largest |mu| (half-angle units) in tau; sizes K-rules

  MatrixXcd tau_at(double angle) const { return tau(angle); }
};

BundleSpec make_trivial_bundle(const std::shared_ptr<const GroupModel>& model, int dim = 1);
// weight-q character of U(1) in SU(2): tau(angle) = exp(-i q angle / 2) with
// the integer label two_q = 2q matching the half-integer weight lattice.
BundleSpec make_weight_bundle(const std::shared_ptr<const GroupModel>& model, int two_q);
// Lambda^p Ad|_K on Lambda^p (g/k)^* (x) C; fiber dim C(m, p).
BundleSpec make_form_bundle(const std::shared_ptr<const GroupModel>& model, int p);

// tau-invariant function on G, fiber dim d_tau; the kappa_tau picture of a
// section. The invariance defect is measured on the Fourier side.
struct SectionField {
  VectorField field;
  BundleSpec bundle;
  double defect = 0.0;
};

// Invariant symbol of the projector P f(g) = int_K tau(k) f(gk) dk.
MatrixSymbol projector_symbol(const BundleSpec& bundle, int band);

// P applied on the Fourier side (exact on band-limited fields).
VectorField subgroup_average(const BundleSpec& bundle, const VectorField& f, int band);
FourierCoefficients subgroup_average(const BundleSpec& bundle, const FourierCoefficients& c);

// max over sampled k of || f_hat(i,xi) - xi(k)^* (tau(k) f)_hat(i,xi) ||.
double tau_invariance_defect(const BundleSpec& bundle, const FourierCoefficients& c,
                             int samples_k = 16);

// Composition P_omega o quantize(sigma) o P_tau: the canonical realization of
// a symbol as a bundle operator.
MatrixSymbol project_symbol(const MatrixSymbol& sigma, const BundleSpec& tau_in,
                            const BundleSpec& omega_out);

// max defect of K_A(g,y) = omega(k1) K_A(g k1, y k2) tau(k2)^{-1} over sampled
// group pairs and a K x K grid, relative to the kernel scale.
double kernel_invariance_defect(const MatrixSymbol& sigma, const BundleSpec& tau_in,
                                const BundleSpec& omega_out, int samples, std::uint64_t seed,
                                int samples_k = 6);

// Defect of the symbol identity sigma(i,r,x,xi) =
// xi(k) sum_{r'} omega(k)_{r r'} sigma(i,r',x k,xi) (the k2 = e case of the
// kernel characterization; the omega factor drops for trivial omega).
double symbol_invariance_defect(const MatrixSymbol& sigma, const BundleSpec& omega_out,
                                int samples_k = 8, int samples_x = 4, std::uint64_t seed = 7);

// --- kappa_tau transfer ------------------------------------------------------

// Base-point chart data for M = G/K: canonical coset representative and the
// residual K-angle of a group element.
GroupElement coset_representative(const GroupModel& model, const GroupElement& g);
double coset_angle(const GroupModel& model, const GroupElement& g);

// Section from fiber values given in the canonical trivialization x -> [rep(x), v(x)]:
// kappa_tau(s)(g) = tau(k(g))^{-1} v(rep-coset of g).
SectionField kappa_tau(const BundleSpec& bundle,
                       const std::function<VectorXcd(const GroupElement& rep)>& values, int band,
                       const std::shared_ptr<const QuadratureGrid>& grid, double tol = 1e-8);
// Fiber values at canonical representatives (band-limited evaluation);
// enforces the invariance tolerance.
VectorXcd kappa_tau_inverse(const SectionField& s, int band, const GroupElement& rep_point,
                            double tol = 1e-8);

SectionField make_section(const BundleSpec& bundle, const VectorField& f, int band,
                          double tol = 1e-8);

// Applies a symbol through kappa_tau with the invariance pre-check.
SectionField bundle_apply(const MatrixSymbol& sigma, const SectionField& s,
                          const BundleSpec& out_bundle, int band, double defect_threshold = 1e-6,
                          bool waive_check = false);
SectionField bundle_apply(const MatrixSymbol& sigma, const SectionField& s, int band,
                          double defect_threshold = 1e-6, bool waive_check = false);

// Scalar quantisation on M = G/K (trivial tau/omega specialization).
VectorField homogeneous_quantize(const MatrixSymbol& sigma, const VectorField& f_lifted, int band);

}  // namespace gq

#endif
