#include "groupquant/symbol.hpp"

#include <random>

#include "groupquant/errors.hpp"
#include "groupquant/parallel.hpp"

namespace gq {

MatrixSymbol MatrixSymbol::invariant(std::shared_ptr<const GroupModel> model, int band, int in_dim,
                                     int out_dim) {
  MatrixSymbol s;
  s.model_ = std::move(model);
  s.band_ = band;
  s.in_dim_ = in_dim;
  s.out_dim_ = out_dim;
  s.sampled_ = false;
  s.dual_ = s.model_->enumerate_dual(band);
  s.data_.reserve(std::size_t(in_dim) * out_dim * s.dual_.size());
  for (int i = 0; i < in_dim; ++i)
    for (int r = 0; r < out_dim; ++r)
      for (const auto& xi : s.dual_) s.data_.push_back(MatrixXcd::Zero(xi.dim, xi.dim));
  return s;
}

MatrixSymbol MatrixSymbol::sampled(std::shared_ptr<const GroupModel> model, int band, int in_dim,
                                   int out_dim, std::shared_ptr<const QuadratureGrid> xgrid,
                                   int x_band) {
  MatrixSymbol s;
  s.model_ = std::move(model);
  s.band_ = band;
  s.in_dim_ = in_dim;
  s.out_dim_ = out_dim;
  s.sampled_ = true;
  s.x_band_ = x_band;
  s.xgrid_ = std::move(xgrid);
  s.dual_ = s.model_->enumerate_dual(band);
  s.data_.assign(std::size_t(in_dim) * out_dim * s.xgrid_->size() * s.dual_.size(), MatrixXcd());
  for (int i = 0; i < in_dim; ++i)
    for (int r = 0; r < out_dim; ++r)
      for (std::size_t x = 0; x < s.xgrid_->size(); ++x)
        for (std::size_t j = 0; j < s.dual_.size(); ++j)
          s.data_[s.flat(i, r, x, int(j))] = MatrixXcd::Zero(s.dual_[j].dim, s.dual_[j].dim);
  return s;
}

MatrixXcd MatrixSymbol::block(std::size_t x, int j) const {
  const int d = dual_[j].dim;
  MatrixXcd b(std::size_t(out_dim_) * d, std::size_t(in_dim_) * d);
  for (int r = 0; r < out_dim_; ++r)
    for (int i = 0; i < in_dim_; ++i) b.block(r * d, i * d, d, d) = at(i, r, x, j);
  return b;
}

void MatrixSymbol::set_block(std::size_t x, int j, const MatrixXcd& b) {
  const int d = dual_[j].dim;
  for (int r = 0; r < out_dim_; ++r)
    for (int i = 0; i < in_dim_; ++i) at(i, r, x, j) = b.block(r * d, i * d, d, d);
}

MatrixSymbol MatrixSymbol::scaled(Complex factor) const {
  MatrixSymbol s = *this;
  for (auto& m : s.data_) m *= factor;
  return s;
}

MatrixSymbol MatrixSymbol::plus(const MatrixSymbol& other, Complex factor) const {
  if (other.band_ != band_ || other.in_dim_ != in_dim_ || other.out_dim_ != out_dim_ ||
      other.sampled_ != sampled_ || other.x_count() != x_count())
    throw ResolutionError("mixed-band or mixed-grid symbol arithmetic is not allowed");
  MatrixSymbol s = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) s.data_[k] += factor * other.data_[k];
  return s;
}

MatrixSymbol MatrixSymbol::pointwise_product(const MatrixSymbol& rhs) const {
  // this = sigma_B (outer), rhs = sigma_A (inner): block(BA) = block(B) block(A)
  if (rhs.out_dim_ != in_dim_) throw std::invalid_argument("fiber dimension mismatch in product");
  if (rhs.band_ != band_) throw ResolutionError("mixed-band symbol product is not allowed");
  const bool samp = sampled_ || rhs.sampled_;
  if (sampled_ && rhs.sampled_ && xgrid_->size() != rhs.xgrid_->size())
    throw ResolutionError("sampled symbol product needs a common x-grid");
  MatrixSymbol out;
  if (samp) {
    auto grid = sampled_ ? xgrid_ : rhs.xgrid_;
    out = MatrixSymbol::sampled(model_, band_, rhs.in_dim_, out_dim_, grid,
                                std::max(x_band_, rhs.x_band_));
  } else {
    out = MatrixSymbol::invariant(model_, band_, rhs.in_dim_, out_dim_);
  }
  for (std::size_t x = 0; x < out.x_count(); ++x) {
    const std::size_t xl = sampled_ ? x : 0, xr = rhs.sampled_ ? x : 0;
    for (std::size_t j = 0; j < dual_.size(); ++j)
      out.set_block(x, int(j), block(xl, int(j)) * rhs.block(xr, int(j)));
  }
  return out;
}

MatrixSymbol MatrixSymbol::pointwise_adjoint() const {
  MatrixSymbol out = *this;
  std::swap(out.in_dim_, out.out_dim_);
  for (std::size_t x = 0; x < x_count(); ++x)
    for (std::size_t j = 0; j < dual_.size(); ++j)
      out.set_block(x, int(j), block(x, int(j)).adjoint());
  return out;
}

MatrixSymbol MatrixSymbol::truncated(int band) const {
  if (band == band_) return *this;
  if (band > band_) throw ResolutionError("cannot extend a symbol to a larger band");
  MatrixSymbol out;
  if (sampled_)
    out = MatrixSymbol::sampled(model_, band, in_dim_, out_dim_, xgrid_, x_band_);
  else
    out = MatrixSymbol::invariant(model_, band, in_dim_, out_dim_);
  // match irreps by label: index positions differ between bands
  std::vector<int> src(out.dual_.size());
  for (std::size_t j = 0; j < out.dual_.size(); ++j)
    src[j] = model_->irrep_index(out.dual_[j], band_);
  for (int i = 0; i < in_dim_; ++i)
    for (int r = 0; r < out_dim_; ++r)
      for (std::size_t x = 0; x < x_count(); ++x)
        for (std::size_t j = 0; j < out.dual_.size(); ++j)
          out.at(i, r, x, int(j)) = at(i, r, x, src[j]);
  return out;
}

double MatrixSymbol::max_abs() const {
  double m = 0.0;
  for (const auto& mat : data_) m = std::max(m, mat.cwiseAbs().maxCoeff());
  return m;
}

double MatrixSymbol::distance(const MatrixSymbol& other) const {
  // entrywise max distance over the common band
  const int b = std::min(band_, other.band_);
  MatrixSymbol a = truncated(b), c = other.truncated(b);
  if (a.data_.size() != c.data_.size())
    throw ResolutionError("symbol distance needs matching shapes");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data_.size(); ++k)
    m = std::max(m, (a.data_[k] - c.data_[k]).cwiseAbs().maxCoeff());
  return m;
}

// --- constructors -----------------------------------------------------------

MatrixSymbol identity_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                             int fiber_dim) {
  MatrixSymbol s = MatrixSymbol::invariant(model, band, fiber_dim, fiber_dim);
  for (int i = 0; i < fiber_dim; ++i)
    for (std::size_t j = 0; j < s.dual().size(); ++j)
      s.at(i, i, 0, int(j)) = MatrixXcd::Identity(s.dual()[j].dim, s.dual()[j].dim);
  return s;
}

MatrixSymbol spectral_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                             const std::function<Complex(double)>& f_of_lambda, int fiber_dim) {
  MatrixSymbol s = MatrixSymbol::invariant(model, band, fiber_dim, fiber_dim);
  for (int i = 0; i < fiber_dim; ++i)
    for (std::size_t j = 0; j < s.dual().size(); ++j) {
      const double lam = model->laplace_eigenvalue(s.dual()[j]);
      s.at(i, i, 0, int(j)) =
          f_of_lambda(lam) * MatrixXcd::Identity(s.dual()[j].dim, s.dual()[j].dim);
    }
  return s;
}

MatrixSymbol laplacian_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                              int fiber_dim) {
  return spectral_symbol(model, band, [](double lam) { return Complex(lam, 0.0); }, fiber_dim);
}

MatrixSymbol sub_laplacian_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                  int fiber_dim) {
  MatrixSymbol s = MatrixSymbol::invariant(model, band, fiber_dim, fiber_dim);
  for (int i = 0; i < fiber_dim; ++i)
    for (std::size_t j = 0; j < s.dual().size(); ++j)
      s.at(i, i, 0, int(j)) =
          model->sub_laplacian_diagonal(s.dual()[j]).cast<Complex>().asDiagonal();
  return s;
}

MatrixSymbol weight_symbol(const std::shared_ptr<const GroupModel>& model, int band, double s,
                           WeightKind kind, int fiber_dim) {
  MatrixSymbol sym = MatrixSymbol::invariant(model, band, fiber_dim, fiber_dim);
  for (int i = 0; i < fiber_dim; ++i)
    for (std::size_t j = 0; j < sym.dual().size(); ++j)
      sym.at(i, i, 0, int(j)) =
          model->weight_diagonal(sym.dual()[j], s, kind).cast<Complex>().asDiagonal();
  return sym;
}

MatrixSymbol generator_symbol(const std::shared_ptr<const GroupModel>& model, int band, int j,
                              int fiber_dim) {
  MatrixSymbol s = MatrixSymbol::invariant(model, band, fiber_dim, fiber_dim);
  for (int i = 0; i < fiber_dim; ++i)
    for (std::size_t jj = 0; jj < s.dual().size(); ++jj)
      s.at(i, i, 0, int(jj)) = model->vector_field_symbol(j, s.dual()[jj]);
  return s;
}

MatrixSymbol multiplication_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                   const std::shared_ptr<const QuadratureGrid>& grid,
                                   const std::vector<MatrixXcd>& values, int x_band) {
  if (values.size() != grid->size())
    throw std::invalid_argument("multiplication symbol needs one fiber matrix per grid node");
  const int out_dim = int(values.front().rows());
  const int in_dim = int(values.front().cols());
  MatrixSymbol s = MatrixSymbol::sampled(model, band, in_dim, out_dim, grid, x_band);
  for (std::size_t x = 0; x < grid->size(); ++x)
    for (int i = 0; i < in_dim; ++i)
      for (int r = 0; r < out_dim; ++r)
        for (std::size_t j = 0; j < s.dual().size(); ++j)
          s.at(i, r, x, int(j)) =
              values[x](r, i) * MatrixXcd::Identity(s.dual()[j].dim, s.dual()[j].dim);
  return s;
}

MatrixSymbol multiplication_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                   const std::shared_ptr<const QuadratureGrid>& grid,
                                   const std::function<Complex(const GroupElement&)>& phi,
                                   int x_band) {
  std::vector<MatrixXcd> values(grid->size());
  for (std::size_t x = 0; x < grid->size(); ++x) {
    values[x] = MatrixXcd(1, 1);
    values[x](0, 0) = phi(grid->nodes[x]);
  }
  return multiplication_symbol(model, band, grid, values, x_band);
}

MatrixSymbol random_invariant_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                     int in_dim, int out_dim, double order, std::uint64_t seed) {
  MatrixSymbol s = MatrixSymbol::invariant(model, band, in_dim, out_dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < in_dim; ++i)
    for (int r = 0; r < out_dim; ++r)
      for (std::size_t j = 0; j < s.dual().size(); ++j) {
        const double w = std::pow(1.0 + model->laplace_eigenvalue(s.dual()[j]), 0.5 * order);
        MatrixXcd& m = s.at(i, r, 0, int(j));
        for (Eigen::Index a = 0; a < m.rows(); ++a)
          for (Eigen::Index b = 0; b < m.cols(); ++b) m(a, b) = w * Complex(gauss(rng), gauss(rng));
      }
  return s;
}

MatrixSymbol random_sampled_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                   int in_dim, int out_dim, double order, int x_band,
                                   std::uint64_t seed,
                                   std::shared_ptr<const QuadratureGrid> grid) {
  if (!grid) grid = std::make_shared<QuadratureGrid>(model->quadrature(2 * (band + x_band)));
  MatrixSymbol s = MatrixSymbol::sampled(model, band, in_dim, out_dim, grid, x_band);
  std::mt19937_64 rng(seed);
  // per (i,r,xi,entry): a random x-band-limited scalar function on the grid
  for (int i = 0; i < in_dim; ++i)
    for (int r = 0; r < out_dim; ++r)
      for (std::size_t j = 0; j < s.dual().size(); ++j) {
        const double w = std::pow(1.0 + model->laplace_eigenvalue(s.dual()[j]), 0.5 * order);
        const int d = s.dual()[j].dim;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            FourierCoefficients xc = random_coefficients(model, x_band, 1, rng());
            VectorField xf = inverse(xc, grid);
            for (std::size_t x = 0; x < grid->size(); ++x)
              s.at(i, r, x, int(j))(a, b) = w * xf.values(Eigen::Index(x), 0);
          }
      }
  return s;
}

// --- quantisation ------------------------------------------------------------

VectorField quantize_apply(const MatrixSymbol& sigma, const VectorField& f) {
  if (sigma.in_dim() != f.fiber_dim())
    throw std::invalid_argument("symbol input fiber dimension does not match the field");
  if (sigma.is_sampled() && sigma.xgrid()->size() != f.grid->size())
    throw ResolutionError("sampled symbol and field live on different grids");
  FourierCoefficients fh = forward(f, sigma.band());
  const auto& dual = sigma.dual();
  VectorField out;
  out.model = f.model;
  out.grid = f.grid;
  out.values = MatrixXcd::Zero(f.values.rows(), sigma.out_dim());

  if (!sigma.is_sampled()) {
    // invariant path: per (r), coefficients sum_i sigma(i,r,xi) f_hat(i,xi)
    for (int r = 0; r < sigma.out_dim(); ++r) {
      std::vector<MatrixXcd> coeff(dual.size());
      for (std::size_t j = 0; j < dual.size(); ++j) {
        MatrixXcd acc = MatrixXcd::Zero(dual[j].dim, dual[j].dim);
        for (int i = 0; i < sigma.in_dim(); ++i) acc += sigma.at(i, r, 0, int(j)) * fh.at(i, int(j));
        coeff[j] = acc;
      }
      VectorXcd col;
      f.model->inverse_scalar(*f.grid, coeff, sigma.band(), col);
      out.values.col(r) = col;
    }
    return out;
  }

  // sampled path: pointwise sums with per-node irrep evaluation
  const auto* model = f.model.get();
  parallel_for(f.grid->size(), [&](std::size_t x) {
    std::vector<MatrixXcd> xi_x(dual.size());
    for (std::size_t j = 0; j < dual.size(); ++j)
      xi_x[j] = model->irrep_matrix(dual[j], f.grid->nodes[x]);
    for (int r = 0; r < sigma.out_dim(); ++r) {
      Complex acc = 0.0;
      for (int i = 0; i < sigma.in_dim(); ++i)
        for (std::size_t j = 0; j < dual.size(); ++j)
          acc += double(dual[j].dim) *
                 (xi_x[j] * sigma.at(i, r, x, int(j)) * fh.at(i, int(j))).trace();
      out.values(Eigen::Index(x), r) = acc;
    }
  });
  return out;
}

}  // namespace gq
