#include "groupquant/pw_matrix.hpp"

#include <Eigen/SVD>

#include "groupquant/errors.hpp"
#include "groupquant/parallel.hpp"

namespace gq {

namespace {

// flat offset bookkeeping: per fiber index i, irreps in dual order, matrices
// column-major, all scaled by sqrt(d)
struct Layout {
  std::vector<Eigen::Index> offset;  // per irrep, within one fiber block
  Eigen::Index per_fiber = 0;

  explicit Layout(const std::vector<IrrepId>& dual) {
    offset.reserve(dual.size());
    for (const auto& xi : dual) {
      offset.push_back(per_fiber);
      per_fiber += Eigen::Index(xi.dim) * xi.dim;
    }
  }
};

}  // namespace

CoeffOperator CoeffOperator::from_symbol(const MatrixSymbol& sigma) {
  CoeffOperator op;
  op.model_ = sigma.model();
  op.band_ = sigma.band();
  op.in_dim_ = sigma.in_dim();
  op.out_dim_ = sigma.out_dim();
  op.dual_ = sigma.dual();
  if (!sigma.is_sampled()) {
    op.blocks_.resize(op.dual_.size());
    for (std::size_t j = 0; j < op.dual_.size(); ++j) op.blocks_[j] = sigma.block(0, int(j));
    return op;
  }
  // dense build: push every weighted basis coefficient through the
  // quantisation and transform back
  const auto model = sigma.model();
  const auto grid = sigma.xgrid();
  Layout ly(op.dual_);
  const Eigen::Index nin = ly.per_fiber * sigma.in_dim();
  const Eigen::Index nout = ly.per_fiber * sigma.out_dim();
  op.dense_ = MatrixXcd::Zero(nout, nin);
  for (int i0 = 0; i0 < sigma.in_dim(); ++i0)
    for (std::size_t j0 = 0; j0 < op.dual_.size(); ++j0) {
      const int d0 = op.dual_[j0].dim;
      // P_r(x) = xi0(x) sigma(i0, r, x, xi0) once per output fiber index
      std::vector<MatrixXcd> prod(grid->size());
      for (int r = 0; r < sigma.out_dim(); ++r) {
        parallel_for(grid->size(), [&](std::size_t x) {
          prod[x] = model->irrep_matrix(op.dual_[j0], grid->nodes[x]) *
                    sigma.at(i0, r, x, int(j0));
        });
        for (int u0 = 0; u0 < d0; ++u0)
          for (int v0 = 0; v0 < d0; ++v0) {
            VectorXcd field(Eigen::Index(grid->size()));
            for (std::size_t x = 0; x < grid->size(); ++x)
              field[Eigen::Index(x)] = double(d0) * prod[x](v0, u0);
            std::vector<MatrixXcd> out_coeff;
            model->forward_scalar(*grid, field, op.band_, out_coeff);
            const Eigen::Index col = Eigen::Index(i0) * ly.per_fiber + ly.offset[j0] +
                                     Eigen::Index(v0) * d0 + u0;
            const double wcol = std::sqrt(double(d0));
            for (std::size_t j = 0; j < op.dual_.size(); ++j) {
              const int d = op.dual_[j].dim;
              const double wrow = std::sqrt(double(d));
              for (int v = 0; v < d; ++v)
                for (int u = 0; u < d; ++u)
                  op.dense_(Eigen::Index(r) * ly.per_fiber + ly.offset[j] + Eigen::Index(v) * d + u,
                            col) = wrow / wcol * out_coeff[j](u, v);
            }
          }
      }
    }
  return op;
}

CoeffOperator CoeffOperator::identity(const std::shared_ptr<const GroupModel>& model, int band,
                                      int fiber_dim) {
  return from_symbol(identity_symbol(model, band, fiber_dim));
}

CoeffOperator CoeffOperator::from_dense(const std::shared_ptr<const GroupModel>& model, int band,
                                        int in_dim, int out_dim, MatrixXcd m) {
  CoeffOperator op;
  op.model_ = model;
  op.band_ = band;
  op.in_dim_ = in_dim;
  op.out_dim_ = out_dim;
  op.dual_ = model->enumerate_dual(band);
  Layout ly(op.dual_);
  if (m.rows() != ly.per_fiber * out_dim || m.cols() != ly.per_fiber * in_dim)
    throw std::invalid_argument("dense operator matrix has the wrong shape");
  op.dense_ = std::move(m);
  return op;
}

Eigen::Index CoeffOperator::coeff_dim(int fiber_dim) const {
  Layout ly(dual_);
  return ly.per_fiber * fiber_dim;
}

VectorXcd CoeffOperator::pack(const FourierCoefficients& c) const {
  Layout ly(dual_);
  VectorXcd y = VectorXcd::Zero(ly.per_fiber * c.fiber_dim);
  for (int i = 0; i < c.fiber_dim; ++i)
    for (std::size_t j = 0; j < dual_.size(); ++j) {
      const int d = dual_[j].dim;
      const double w = std::sqrt(double(d));
      const MatrixXcd& m = c.at(i, int(j));
      for (int v = 0; v < d; ++v)
        for (int u = 0; u < d; ++u)
          y[Eigen::Index(i) * ly.per_fiber + ly.offset[j] + Eigen::Index(v) * d + u] = w * m(u, v);
    }
  return y;
}

FourierCoefficients CoeffOperator::unpack(const VectorXcd& y, int fiber_dim) const {
  FourierCoefficients c = zero_coefficients(model_, band_, fiber_dim);
  Layout ly(dual_);
  for (int i = 0; i < fiber_dim; ++i)
    for (std::size_t j = 0; j < dual_.size(); ++j) {
      const int d = dual_[j].dim;
      const double w = std::sqrt(double(d));
      for (int v = 0; v < d; ++v)
        for (int u = 0; u < d; ++u)
          c.at(i, int(j))(u, v) =
              y[Eigen::Index(i) * ly.per_fiber + ly.offset[j] + Eigen::Index(v) * d + u] / w;
    }
  return c;
}

FourierCoefficients CoeffOperator::apply(const FourierCoefficients& c) const {
  if (c.band != band_ || c.fiber_dim != in_dim_)
    throw ResolutionError("coefficient operator applied across bands or fiber dims");
  if (is_block()) {
    FourierCoefficients out = zero_coefficients(model_, band_, out_dim_);
    for (std::size_t j = 0; j < dual_.size(); ++j) {
      const int d = dual_[j].dim;
      for (int r = 0; r < out_dim_; ++r) {
        MatrixXcd acc = MatrixXcd::Zero(d, d);
        for (int i = 0; i < in_dim_; ++i) acc += blocks_[j].block(r * d, i * d, d, d) * c.at(i, int(j));
        out.at(r, int(j)) = acc;
      }
    }
    return out;
  }
  return unpack(dense_ * pack(c), out_dim_);
}

VectorField CoeffOperator::apply_field(const VectorField& f) const {
  FourierCoefficients c = forward(f, band_);
  return gq::inverse(apply(c), f.grid);
}

MatrixXcd CoeffOperator::dense() const {
  if (!is_block()) return dense_;
  Layout ly(dual_);
  MatrixXcd m = MatrixXcd::Zero(ly.per_fiber * out_dim_, ly.per_fiber * in_dim_);
  for (std::size_t j = 0; j < dual_.size(); ++j) {
    const int d = dual_[j].dim;
    for (int r = 0; r < out_dim_; ++r)
      for (int i = 0; i < in_dim_; ++i) {
        const MatrixXcd blk = blocks_[j].block(r * d, i * d, d, d);
        // left matrix multiplication acts column by column of f_hat
        for (int v = 0; v < d; ++v)
          m.block(Eigen::Index(r) * ly.per_fiber + ly.offset[j] + Eigen::Index(v) * d,
                  Eigen::Index(i) * ly.per_fiber + ly.offset[j] + Eigen::Index(v) * d, d, d) = blk;
      }
  }
  return m;
}

CoeffOperator CoeffOperator::compose(const CoeffOperator& inner) const {
  if (inner.band_ != band_ || inner.out_dim_ != in_dim_)
    throw ResolutionError("operator composition across bands or fiber dims");
  CoeffOperator op;
  op.model_ = model_;
  op.band_ = band_;
  op.in_dim_ = inner.in_dim_;
  op.out_dim_ = out_dim_;
  op.dual_ = dual_;
  if (is_block() && inner.is_block()) {
    op.blocks_.resize(dual_.size());
    for (std::size_t j = 0; j < dual_.size(); ++j) op.blocks_[j] = blocks_[j] * inner.blocks_[j];
    return op;
  }
  op.dense_ = dense() * inner.dense();
  return op;
}

CoeffOperator CoeffOperator::adjoint() const {
  CoeffOperator op;
  op.model_ = model_;
  op.band_ = band_;
  op.in_dim_ = out_dim_;
  op.out_dim_ = in_dim_;
  op.dual_ = dual_;
  if (is_block()) {
    op.blocks_.resize(dual_.size());
    for (std::size_t j = 0; j < dual_.size(); ++j) op.blocks_[j] = blocks_[j].adjoint();
    return op;
  }
  op.dense_ = dense_.adjoint();
  return op;
}

CoeffOperator CoeffOperator::plus(const CoeffOperator& other, Complex factor) const {
  if (other.band_ != band_ || other.in_dim_ != in_dim_ || other.out_dim_ != out_dim_)
    throw ResolutionError("operator sum across bands or fiber dims");
  CoeffOperator op;
  op.model_ = model_;
  op.band_ = band_;
  op.in_dim_ = in_dim_;
  op.out_dim_ = out_dim_;
  op.dual_ = dual_;
  if (is_block() && other.is_block()) {
    op.blocks_.resize(dual_.size());
    for (std::size_t j = 0; j < dual_.size(); ++j)
      op.blocks_[j] = blocks_[j] + factor * other.blocks_[j];
    return op;
  }
  op.dense_ = dense() + factor * other.dense();
  return op;
}

CoeffOperator CoeffOperator::scaled(Complex factor) const {
  CoeffOperator op = *this;
  for (auto& b : op.blocks_) b *= factor;
  if (!op.is_block()) op.dense_ *= factor;
  return op;
}

CoeffOperator CoeffOperator::shifted(Complex z) const {
  if (in_dim_ != out_dim_) throw std::invalid_argument("shift needs a square operator");
  CoeffOperator op = *this;
  if (is_block()) {
    for (auto& b : op.blocks_) b -= z * MatrixXcd::Identity(b.rows(), b.cols());
    return op;
  }
  op.dense_ = dense_ - z * MatrixXcd::Identity(dense_.rows(), dense_.cols());
  return op;
}

CoeffOperator CoeffOperator::inverse() const {
  if (in_dim_ != out_dim_) throw std::invalid_argument("inverse needs a square operator");
  CoeffOperator op = *this;
  if (is_block()) {
    for (std::size_t j = 0; j < dual_.size(); ++j) {
      Eigen::PartialPivLU<MatrixXcd> lu(blocks_[j]);
      const MatrixXcd inv = lu.inverse();
      if (!inv.allFinite())
        throw EllipticityError("singular block in operator inverse",
                               "irrep index " + std::to_string(j));
      op.blocks_[j] = inv;
    }
    return op;
  }
  Eigen::PartialPivLU<MatrixXcd> lu(dense_);
  op.dense_ = lu.inverse();
  if (!op.dense_.allFinite()) throw EllipticityError("singular dense operator inverse");
  return op;
}

CoeffOperator CoeffOperator::hermitian_part() const {
  if (in_dim_ != out_dim_) throw std::invalid_argument("hermitian part needs a square operator");
  return plus(adjoint(), 1.0).scaled(0.5);
}

double CoeffOperator::operator_norm() const {
  if (is_block()) {
    double m = 0.0;
    for (const auto& b : blocks_) {
      Eigen::JacobiSVD<MatrixXcd> svd(b);
      m = std::max(m, svd.singularValues()(0));
    }
    return m;
  }
  Eigen::BDCSVD<MatrixXcd> svd(dense_);
  return svd.singularValues()(0);
}

MatrixSymbol CoeffOperator::to_symbol(const std::shared_ptr<const QuadratureGrid>& grid,
                                      double collapse_tol, int x_band) const {
  if (is_block()) {
    // block operators are invariant symbols already
    MatrixSymbol s = MatrixSymbol::invariant(model_, band_, in_dim_, out_dim_);
    for (std::size_t j = 0; j < dual_.size(); ++j) s.set_block(0, int(j), blocks_[j]);
    return s;
  }
  FieldOperator op = [this](const VectorField& f) { return apply_field(f); };
  return extract_symbol(op, model_, band_, in_dim_, out_dim_, grid, collapse_tol, x_band);
}

}  // namespace gq
