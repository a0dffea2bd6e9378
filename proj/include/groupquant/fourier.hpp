#ifndef GROUPQUANT_FOURIER_HPP
#define GROUPQUANT_FOURIER_HPP

#include <memory>
#include <vector>

#include "groupquant/group.hpp"

namespace gq {

// Fiber-valued function sampled on a quadrature grid. values is (nodes x fiber).
struct VectorField {
  std::shared_ptr<const GroupModel> model;
  std::shared_ptr<const QuadratureGrid> grid;
  MatrixXcd values;

  int fiber_dim() const { return static_cast<int>(values.cols()); }
  std::size_t nodes() const { return grid ? grid->size() : 0; }
};

// The object f_hat(i, xi): per fiber index i and irrep xi, a d_xi x d_xi matrix.
struct FourierCoefficients {
  std::shared_ptr<const GroupModel> model;
  int band = 0;
  int fiber_dim = 0;
  // data[i * dual_size + j] for irrep index j in enumerate_dual(band)
  std::vector<MatrixXcd> data;

  const MatrixXcd& at(int i, int j) const { return data[std::size_t(i) * dual_size() + j]; }
  MatrixXcd& at(int i, int j) { return data[std::size_t(i) * dual_size() + j]; }
  std::size_t dual_size() const { return data.size() / std::size_t(fiber_dim); }
};

FourierCoefficients zero_coefficients(const std::shared_ptr<const GroupModel>& model, int band,
                                      int fiber_dim);

// f_hat(i, xi) = int e_i^*(f(x)) xi(x)^* dx. Requires grid exactness >= 2*band
// for band-limited inputs.
FourierCoefficients forward(const VectorField& f, int band);

// Peter-Weyl sum truncated at the coefficient band, evaluated on a grid.
VectorField inverse(const FourierCoefficients& c, const std::shared_ptr<const QuadratureGrid>& grid);

// Pointwise evaluation of the truncated series at an arbitrary group element.
VectorXcd evaluate(const FourierCoefficients& c, const GroupElement& g);

double plancherel_norm(const FourierCoefficients& c);

// sum_i sum_xi d_xi Tr[g_hat(i,xi)^* f_hat(i,xi)] -- the polarized Parseval form.
Complex coefficient_inner(const FourierCoefficients& f, const FourierCoefficients& g);

double grid_l2_norm(const VectorField& f);
Complex grid_inner(const VectorField& f, const VectorField& g);

// Random band-limited field with unit-scale coefficients (deterministic in seed).
VectorField random_field(const std::shared_ptr<const GroupModel>& model, int band, int fiber_dim,
                         std::uint64_t seed, int grid_band = -1);

FourierCoefficients random_coefficients(const std::shared_ptr<const GroupModel>& model, int band,
                                        int fiber_dim, std::uint64_t seed);

}  // namespace gq

#endif
