// Hormander-class seminorms: weighted sups of exact singular values over the
// truncated dual, the x-grid, and the fiber indices. The sup is always
// reported together with the band it was taken over.

#include <Eigen/SVD>

#include "groupquant/symbol.hpp"

namespace gq {

namespace {

double op_norm(const MatrixXcd& m) {
  if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
  Eigen::JacobiSVD<MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

double weighted_sup(const MatrixSymbol& sigma, double left_power, double right_power,
                    WeightKind kind) {
  const auto& model = *sigma.model();
  const auto& dual = sigma.dual();
  double sup = 0.0;
  for (std::size_t j = 0; j < dual.size(); ++j) {
    Eigen::VectorXd wl = model.weight_diagonal(dual[j], left_power, kind);
    Eigen::VectorXd wr = model.weight_diagonal(dual[j], right_power, kind);
    for (int i = 0; i < sigma.in_dim(); ++i)
      for (int r = 0; r < sigma.out_dim(); ++r)
        for (std::size_t x = 0; x < sigma.x_count(); ++x) {
          MatrixXcd m = wl.cast<Complex>().asDiagonal() * sigma.at(i, r, x, int(j)) *
                        wr.cast<Complex>().asDiagonal();
          sup = std::max(sup, op_norm(m));
        }
  }
  return sup;
}

SeminormResult seminorm(const MatrixSymbol& sigma, const SymbolClassSpec& spec,
                        const DifferenceWord& alpha, const std::vector<int>& beta, double gamma) {
  int abs_beta = 0;
  for (int b : beta) abs_beta += b;
  MatrixSymbol work = sigma;
  if (alpha.total() > 0) work = difference(work, alpha);
  if (abs_beta > 0) work = x_derivative(work, beta);
  const double lp = gamma + spec.rho * alpha.total() - spec.delta * abs_beta - spec.order;
  SeminormResult res;
  res.band = work.band();
  res.value = weighted_sup(work, lp, -gamma, spec.kind);
  return res;
}

}  // namespace gq
