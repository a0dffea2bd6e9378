#include "groupquant/parametrix.hpp"

#include <Eigen/SVD>

#include "groupquant/errors.hpp"

namespace gq {

namespace {

std::string witness_string(const MatrixSymbol& sigma, std::size_t x, int j) {
  std::string s = "irrep index " + std::to_string(j);
  if (sigma.is_sampled()) s += ", grid node " + std::to_string(x);
  return s;
}

// pointwise inverse symbol b0(x, xi) = a(x, xi)^{-1} with ellipticity data
MatrixSymbol pointwise_inverse(const MatrixSymbol& a, double m, double* bound, double* cond) {
  if (a.in_dim() != a.out_dim())
    throw std::invalid_argument("pointwise inversion needs a square fiber");
  MatrixSymbol b = a;
  *bound = 0.0;
  *cond = 0.0;
  const auto& model = *a.model();
  for (std::size_t x = 0; x < a.x_count(); ++x)
    for (std::size_t j = 0; j < a.dual().size(); ++j) {
      MatrixXcd blk = a.block(x, int(j));
      Eigen::JacobiSVD<MatrixXcd> svd(blk, Eigen::ComputeThinU | Eigen::ComputeThinV);
      const double smin = svd.singularValues()(svd.singularValues().size() - 1);
      if (smin < 1e-14 * std::max(1.0, svd.singularValues()(0)))
        throw EllipticityError("symbol is not invertible (ellipticity violation)",
                               witness_string(a, x, int(j)));
      *cond = std::max(*cond, svd.singularValues()(0) / smin);
      MatrixXcd inv = blk.inverse();
      b.set_block(x, int(j), inv);
      // sup of || M^m (x) a^{-1} ||: weight acts on the irrep factor
      Eigen::VectorXd w = model.weight_diagonal(a.dual()[j], m, WeightKind::Subelliptic);
      const int d = a.dual()[j].dim;
      MatrixXcd weighted = inv;
      for (int r = 0; r < a.out_dim(); ++r)
        for (int u = 0; u < d; ++u) weighted.row(r * d + u) *= w[u];
      Eigen::JacobiSVD<MatrixXcd> svd2(weighted);
      *bound = std::max(*bound, svd2.singularValues()(0));
    }
  return b;
}

}  // namespace

ParametrixReport parametrix(const MatrixSymbol& sigma_a, const SymbolClassSpec& spec, int N) {
  if (N < 0) throw std::invalid_argument("parametrix order must be nonnegative");
  ParametrixReport rep;
  MatrixSymbol b0 = pointwise_inverse(sigma_a, spec.order, &rep.ellipticity_bound,
                                      &rep.condition_number);

  const int band = sigma_a.band();
  CoeffOperator a_op = CoeffOperator::from_symbol(sigma_a);
  CoeffOperator b0_op = CoeffOperator::from_symbol(b0);
  CoeffOperator id = CoeffOperator::identity(sigma_a.model(), band, sigma_a.in_dim());
  CoeffOperator r_op = id.plus(a_op.compose(b0_op), -1.0);

  std::shared_ptr<const QuadratureGrid> grid = sigma_a.xgrid();
  if (!grid)
    grid = std::make_shared<QuadratureGrid>(sigma_a.model()->quadrature(2 * band));

  CoeffOperator partial = b0_op;     // S_k = b0 (I + r + ... + r^k)
  CoeffOperator rpow = r_op;         // r^{k+1}
  for (int k = 0; k <= N; ++k) {
    // residual operator after S_k is exactly r^{k+1}
    rep.residual_l2.push_back(rpow.operator_norm());
    const double ord = -(k + 1) * (spec.rho - spec.delta);
    MatrixSymbol resid = rpow.to_symbol(grid);
    rep.residual_seminorm.push_back(weighted_sup(resid, -ord, 0.0, spec.kind));
    if (k < N) {
      partial = partial.plus(b0_op.compose(rpow));
      rpow = rpow.compose(r_op);
    }
  }
  rep.parametrix = partial.to_symbol(grid);
  return rep;
}

ParameterEllipticityReport parameter_ellipticity_check(const MatrixSymbol& sigma_a, double m,
                                                       double angle, double lo, double hi,
                                                       int samples) {
  if (samples < 1 || lo <= 0.0 || hi < lo)
    throw std::invalid_argument("parameter ellipticity needs 0 < lo <= hi and samples >= 1");
  ParameterEllipticityReport rep;
  const auto& model = *sigma_a.model();
  for (int s = 0; s < samples; ++s) {
    const double t = (samples == 1) ? 0.0 : double(s) / (samples - 1);
    const double r = lo * std::pow(hi / lo, t);
    const Complex lambda = std::polar(r, angle);
    double sup = 0.0;
    for (std::size_t x = 0; x < sigma_a.x_count(); ++x)
      for (std::size_t j = 0; j < sigma_a.dual().size(); ++j) {
        const int d = sigma_a.dual()[j].dim;
        MatrixXcd blk = sigma_a.block(x, int(j));
        blk -= lambda * MatrixXcd::Identity(blk.rows(), blk.cols());
        Eigen::JacobiSVD<MatrixXcd> svd(blk, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const double smin = svd.singularValues()(svd.singularValues().size() - 1);
        if (smin < 1e-14 * std::max(1.0, svd.singularValues()(0)))
          throw EllipticityError("a - lambda is singular on the sampled curve",
                                 "lambda = (" + std::to_string(lambda.real()) + "," +
                                     std::to_string(lambda.imag()) + "), " +
                                     witness_string(sigma_a, x, int(j)));
        MatrixXcd res = blk.inverse();
        Eigen::VectorXd nu2 =
            model.weight_diagonal(sigma_a.dual()[j], 2.0, WeightKind::Subelliptic);
        for (int rr = 0; rr < sigma_a.out_dim(); ++rr)
          for (int u = 0; u < d; ++u) {
            // (|lambda|^{1/m} + (1 + nu^2)^{1/2})^m acting on the irrep factor
            const double w = std::pow(std::pow(r, 1.0 / m) + std::sqrt(nu2[u]), m);
            res.row(rr * d + u) *= w;
          }
        Eigen::JacobiSVD<MatrixXcd> svd2(res);
        sup = std::max(sup, svd2.singularValues()(0));
      }
    rep.lambdas.push_back(r);
    rep.profile.push_back(sup);
    rep.bound = std::max(rep.bound, sup);
  }
  return rep;
}

}  // namespace gq
