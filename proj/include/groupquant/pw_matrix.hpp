#ifndef GROUPQUANT_PW_MATRIX_HPP
#define GROUPQUANT_PW_MATRIX_HPP

#include "groupquant/symbol.hpp"

namespace gq {

// A linear operator on the truncated coefficient space, in the weighted
// coordinates y(i, xi, u, v) = sqrt(d_xi) f_hat(i, xi)_{uv} in which the
// Plancherel norm is the Euclidean norm. Invariant symbols act block
// diagonally per irrep (one (out*d) x (in*d) block each); everything else is
// stored densely. Matrix adjoints in these coordinates are exact L2 adjoints.
class CoeffOperator {
public:
  static CoeffOperator from_symbol(const MatrixSymbol& sigma);
  static CoeffOperator identity(const std::shared_ptr<const GroupModel>& model, int band,
                                int fiber_dim);
  static CoeffOperator from_dense(const std::shared_ptr<const GroupModel>& model, int band,
                                  int in_dim, int out_dim, MatrixXcd m);

  bool is_block() const { return !blocks_.empty(); }
  int band() const { return band_; }
  int in_dim() const { return in_dim_; }
  int out_dim() const { return out_dim_; }
  const std::shared_ptr<const GroupModel>& model() const { return model_; }

  FourierCoefficients apply(const FourierCoefficients& c) const;
  CoeffOperator compose(const CoeffOperator& inner) const;  // this after inner
  CoeffOperator adjoint() const;
  CoeffOperator plus(const CoeffOperator& other, Complex factor = 1.0) const;
  CoeffOperator scaled(Complex factor) const;
  CoeffOperator shifted(Complex z) const;  // this - z I (square operators)
  CoeffOperator inverse() const;
  CoeffOperator hermitian_part() const;

  double operator_norm() const;

  // Dense matrix in the weighted coordinates (materializes blocks if needed).
  MatrixXcd dense() const;
  const std::vector<MatrixXcd>& blocks() const { return blocks_; }

  Eigen::Index coeff_dim(int fiber_dim) const;
  VectorXcd pack(const FourierCoefficients& c) const;
  FourierCoefficients unpack(const VectorXcd& y, int fiber_dim) const;

  // Symbol of the operator, re-extracted on the given grid through the
  // quantize/extract pair.
  MatrixSymbol to_symbol(const std::shared_ptr<const QuadratureGrid>& grid,
                         double collapse_tol = 1e-10, int x_band = -1) const;
  VectorField apply_field(const VectorField& f) const;

private:
  std::shared_ptr<const GroupModel> model_;
  int band_ = 0;
  int in_dim_ = 1, out_dim_ = 1;
  std::vector<IrrepId> dual_;
  std::vector<MatrixXcd> blocks_;  // invariant case: one per irrep
  MatrixXcd dense_;                // otherwise
};

}  // namespace gq

#endif
