#include "groupquant/fourier.hpp"

#include <random>

#include "groupquant/errors.hpp"
#include "groupquant/parallel.hpp"

namespace gq {

FourierCoefficients zero_coefficients(const std::shared_ptr<const GroupModel>& model, int band,
                                      int fiber_dim) {
  FourierCoefficients c;
  c.model = model;
  c.band = band;
  c.fiber_dim = fiber_dim;
  auto dual = model->enumerate_dual(band);
  c.data.reserve(dual.size() * fiber_dim);
  for (int i = 0; i < fiber_dim; ++i)
    for (const auto& xi : dual) c.data.push_back(MatrixXcd::Zero(xi.dim, xi.dim));
  return c;
}

FourierCoefficients forward(const VectorField& f, int band) {
  if (!f.model || !f.grid) throw std::invalid_argument("field is not attached to a model/grid");
  if (f.grid->band < 2 * band)
    throw ResolutionError("forward transform needs grid exactness >= 2*band (grid band " +
                          std::to_string(f.grid->band) + ", requested band " +
                          std::to_string(band) + ")");
  FourierCoefficients c = zero_coefficients(f.model, band, f.fiber_dim());
  const std::size_t nd = c.dual_size();
  for (int i = 0; i < f.fiber_dim(); ++i) {
    std::vector<MatrixXcd> comp;
    f.model->forward_scalar(*f.grid, f.values.col(i), band, comp);
    for (std::size_t j = 0; j < nd; ++j) c.at(i, static_cast<int>(j)) = comp[j];
  }
  return c;
}

VectorField inverse(const FourierCoefficients& c, const std::shared_ptr<const QuadratureGrid>& grid) {
  VectorField f;
  f.model = c.model;
  f.grid = grid;
  f.values.resize(static_cast<Eigen::Index>(grid->size()), c.fiber_dim);
  const std::size_t nd = c.dual_size();
  for (int i = 0; i < c.fiber_dim; ++i) {
    std::vector<MatrixXcd> comp(nd);
    for (std::size_t j = 0; j < nd; ++j) comp[j] = c.at(i, static_cast<int>(j));
    VectorXcd col;
    c.model->inverse_scalar(*grid, comp, c.band, col);
    f.values.col(i) = col;
  }
  return f;
}

VectorXcd evaluate(const FourierCoefficients& c, const GroupElement& g) {
  auto dual = c.model->enumerate_dual(c.band);
  VectorXcd out = VectorXcd::Zero(c.fiber_dim);
  for (int i = 0; i < c.fiber_dim; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < dual.size(); ++j)
      acc += double(dual[j].dim) * (c.model->irrep_matrix(dual[j], g) * c.at(i, int(j))).trace();
    out[i] = acc;
  }
  return out;
}

double plancherel_norm(const FourierCoefficients& c) {
  auto dual = c.model->enumerate_dual(c.band);
  double s = 0.0;
  for (int i = 0; i < c.fiber_dim; ++i)
    for (std::size_t j = 0; j < dual.size(); ++j)
      s += dual[j].dim * c.at(i, int(j)).squaredNorm();
  return std::sqrt(s);
}

Complex coefficient_inner(const FourierCoefficients& f, const FourierCoefficients& g) {
  if (f.band != g.band || f.fiber_dim != g.fiber_dim)
    throw ResolutionError("coefficient inner product needs matching band and fiber dimension");
  auto dual = f.model->enumerate_dual(f.band);
  Complex s = 0.0;
  for (int i = 0; i < f.fiber_dim; ++i)
    for (std::size_t j = 0; j < dual.size(); ++j)
      s += double(dual[j].dim) * (g.at(i, int(j)).adjoint() * f.at(i, int(j))).trace();
  return s;
}

double grid_l2_norm(const VectorField& f) {
  double s = 0.0;
  for (Eigen::Index x = 0; x < f.values.rows(); ++x)
    s += f.grid->weights[x] * f.values.row(x).squaredNorm();
  return std::sqrt(s);
}

Complex grid_inner(const VectorField& f, const VectorField& g) {
  Complex s = 0.0;
  for (Eigen::Index x = 0; x < f.values.rows(); ++x)
    s += f.grid->weights[x] * (g.values.row(x).conjugate() * f.values.row(x).transpose())(0, 0);
  return s;
}

FourierCoefficients random_coefficients(const std::shared_ptr<const GroupModel>& model, int band,
                                        int fiber_dim, std::uint64_t seed) {
  FourierCoefficients c = zero_coefficients(model, band, fiber_dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto dual = model->enumerate_dual(band);
  for (int i = 0; i < fiber_dim; ++i)
    for (std::size_t j = 0; j < dual.size(); ++j) {
      MatrixXcd& m = c.at(i, int(j));
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index cc = 0; cc < m.cols(); ++cc) m(r, cc) = Complex(gauss(rng), gauss(rng));
      m /= double(dual[j].dim);  // keep the field amplitude O(1)
    }
  return c;
}

VectorField random_field(const std::shared_ptr<const GroupModel>& model, int band, int fiber_dim,
                         std::uint64_t seed, int grid_band) {
  FourierCoefficients c = random_coefficients(model, band, fiber_dim, seed);
  if (grid_band < 0) grid_band = 2 * band;
  auto grid = std::make_shared<QuadratureGrid>(model->quadrature(grid_band));
  return inverse(c, grid);
}

}  // namespace gq
