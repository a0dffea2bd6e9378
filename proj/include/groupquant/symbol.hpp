#ifndef GROUPQUANT_SYMBOL_HPP
#define GROUPQUANT_SYMBOL_HPP

#include <functional>
#include <optional>
#include <string>

#include "groupquant/fourier.hpp"

namespace gq {

// Which Hormander class a symbol is measured against.
struct SymbolClassSpec {
  double order = 0.0;
  double rho = 1.0;
  double delta = 0.0;
  WeightKind kind = WeightKind::Subelliptic;
};

// Word in the built-in strongly admissible difference family: matrix
// coefficient deviations of a fundamental irrep (k = +-1 characters on the
// torus, l = 1/2 on SU(2)). alpha is a multi-index over the family members.
struct DifferenceWord {
  std::vector<int> alpha;

  int total() const {
    int s = 0;
    for (int a : alpha) s += a;
    return s;
  }
};

int difference_family_size(const GroupModel& model);
std::string difference_family_id(const GroupModel& model);
// Value of the family member w at a group element.
Complex difference_q(const GroupModel& model, int w, const GroupElement& g);

// Matrix-valued symbol sigma(i, r, x, xi). Invariant symbols have no x
// dependence; sampled symbols carry their x-grid and a declared band limit of
// the x-dependence (x_band) used by spectral x-derivatives.
class MatrixSymbol {
public:
  MatrixSymbol() = default;

  static MatrixSymbol invariant(std::shared_ptr<const GroupModel> model, int band, int in_dim,
                                int out_dim);
  static MatrixSymbol sampled(std::shared_ptr<const GroupModel> model, int band, int in_dim,
                              int out_dim, std::shared_ptr<const QuadratureGrid> xgrid,
                              int x_band);

  bool is_sampled() const { return sampled_; }
  int band() const { return band_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  int x_band() const { return x_band_; }
  std::size_t x_count() const { return sampled_ ? xgrid_->size() : 1; }
  const std::shared_ptr<const GroupModel>& model() const { return model_; }
  const std::shared_ptr<const QuadratureGrid>& xgrid() const { return xgrid_; }
  const std::vector<IrrepId>& dual() const { return dual_; }

  const MatrixXcd& at(int i, int r, std::size_t x, int j) const { return data_[flat(i, r, x, j)]; }
  MatrixXcd& at(int i, int r, std::size_t x, int j) { return data_[flat(i, r, x, j)]; }

  // Block matrix over (r, i) at fixed (x, xi): rows r * d, cols i * d. This is
  // the matrix the calculus composes and inverts pointwise.
  MatrixXcd block(std::size_t x, int j) const;
  void set_block(std::size_t x, int j, const MatrixXcd& b);

  MatrixSymbol scaled(Complex factor) const;
  MatrixSymbol plus(const MatrixSymbol& other, Complex factor = 1.0) const;
  // Pointwise product contracted over the middle fiber index (this on the left).
  MatrixSymbol pointwise_product(const MatrixSymbol& rhs) const;
  // Fiber-swapped pointwise matrix adjoint sigma*(i, s) = sigma(s, i)^dagger.
  MatrixSymbol pointwise_adjoint() const;
  MatrixSymbol truncated(int band) const;

  double max_abs() const;
  double distance(const MatrixSymbol& other) const;

private:
  std::size_t flat(int i, int r, std::size_t x, int j) const {
    return ((std::size_t(i) * out_dim_ + r) * x_count() + x) * dual_.size() + j;
  }

  std::shared_ptr<const GroupModel> model_;
  int band_ = 0;
  int in_dim_ = 1, out_dim_ = 1;
  bool sampled_ = false;
  int x_band_ = 0;
  std::shared_ptr<const QuadratureGrid> xgrid_;
  std::vector<IrrepId> dual_;
  std::vector<MatrixXcd> data_;
};

// --- constructors for the operators the calculus ships with ---------------

MatrixSymbol identity_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                             int fiber_dim = 1);
MatrixSymbol laplacian_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                              int fiber_dim = 1);
MatrixSymbol sub_laplacian_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                  int fiber_dim = 1);
MatrixSymbol weight_symbol(const std::shared_ptr<const GroupModel>& model, int band, double s,
                           WeightKind kind, int fiber_dim = 1);
MatrixSymbol generator_symbol(const std::shared_ptr<const GroupModel>& model, int band, int j,
                              int fiber_dim = 1);
// Multiplication by the End(E0,F0)-valued function given per grid node.
MatrixSymbol multiplication_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                   const std::shared_ptr<const QuadratureGrid>& grid,
                                   const std::vector<MatrixXcd>& values, int x_band);
// Scalar multiplication operator from a pointwise function handle.
MatrixSymbol multiplication_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                   const std::shared_ptr<const QuadratureGrid>& grid,
                                   const std::function<Complex(const GroupElement&)>& phi,
                                   int x_band);
// Invariant symbol from a per-irrep diagonal function of the weights.
MatrixSymbol spectral_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                             const std::function<Complex(double)>& f_of_lambda, int fiber_dim = 1);

MatrixSymbol random_invariant_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                     int in_dim, int out_dim, double order, std::uint64_t seed);
MatrixSymbol random_sampled_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                   int in_dim, int out_dim, double order, int x_band,
                                   std::uint64_t seed,
                                   std::shared_ptr<const QuadratureGrid> grid = nullptr);

// --- core operations --------------------------------------------------------

// Af(x) = sum_{i,r,xi} d_xi Tr[xi(x) sigma(i,r,x,xi) f_hat(i,xi)] e_r.
VectorField quantize_apply(const MatrixSymbol& sigma, const VectorField& f);

using FieldOperator = std::function<VectorField(const VectorField&)>;

// sigma_A(i0,r0,x,xi) = xi(x)^* e_{r0}^*[A(xi otimes e_{i0})(x)], evaluated on
// the given grid. Collapses to an invariant symbol when the x-variation is
// below collapse_tol (pass a negative tolerance to keep the sampled form).
MatrixSymbol extract_symbol(const FieldOperator& op, const std::shared_ptr<const GroupModel>& model,
                            int band, int in_dim, int out_dim,
                            const std::shared_ptr<const QuadratureGrid>& grid,
                            double collapse_tol = 1e-10, int x_band = -1);

// Difference operator Delta_q^alpha via the right-convolution kernel: inverse
// transform in xi, multiply by q^alpha, re-transform. The result is reported
// at a reduced band so no truncated irrep contaminates the output.
MatrixSymbol difference(const MatrixSymbol& sigma, const DifferenceWord& alpha);

// Canonical x-derivative over the Lie basis, beta = (b_1..b_n), computed
// spectrally on the declared x-band. Invariant symbols map to zero.
MatrixSymbol x_derivative(const MatrixSymbol& sigma, const std::vector<int>& beta);

struct SeminormResult {
  double value = 0.0;
  int band = 0;  // band the sup was taken over (after difference reduction)
};

// sup over (i,r,x,xi<=band) of the largest singular value of
//   M^(gamma + rho|alpha| - delta|beta| - m) . d^beta Delta^alpha sigma . M^(-gamma).
SeminormResult seminorm(const MatrixSymbol& sigma, const SymbolClassSpec& spec,
                        const DifferenceWord& alpha, const std::vector<int>& beta, double gamma);

// Weighted sup without derivatives/differences applied (helper for reports).
double weighted_sup(const MatrixSymbol& sigma, double left_power, double right_power,
                    WeightKind kind);

}  // namespace gq

#endif
