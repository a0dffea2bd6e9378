// Difference operators Delta_q on the dual side and spectral x-derivatives.
//
// A difference word multiplies the right-convolution kernel by the product of
// family functions q and re-transforms. The built-in strongly admissible
// family consists of the matrix-coefficient deviations of a fundamental irrep:
// the k = +1 and k = -1 characters per circle factor on the torus, and the
// four entries of l = 1/2 on SU(2). The result is reported at a reduced band
// so that no truncated irrep contaminates the retained coefficients.

#include "groupquant/errors.hpp"
#include "groupquant/parallel.hpp"
#include "groupquant/symbol.hpp"

namespace gq {

int difference_family_size(const GroupModel& model) {
  if (model.name() == "SU2") return 4;
  return 2 * model.lie_basis().dim;  // torus: +-1 character per circle factor
}

std::string difference_family_id(const GroupModel& model) {
  if (model.name() == "SU2") return "su2-fundamental-l=1/2";
  return "torus-characters-k=+-1";
}

Complex difference_q(const GroupModel& model, int w, const GroupElement& g) {
  if (model.name() == "SU2") {
    IrrepId half{{1}, 2};
    MatrixXcd xi0 = model.irrep_matrix(half, g);
    const int u = w / 2, v = w % 2;
    return xi0(u, v) - (u == v ? 1.0 : 0.0);
  }
  const int n = model.lie_basis().dim;
  if (w < 0 || w >= 2 * n) throw std::invalid_argument("difference family index out of range");
  const int axis = w / 2;
  const int sign = (w % 2 == 0) ? 1 : -1;
  return std::polar(1.0, sign * g[axis]) - 1.0;
}

namespace {

// band reduction per unit of difference order: the torus fundamental characters
// shift by one; the SU(2) fundamental couples neighbours at distance 1/2, so
// two orders cost one (integer) band unit.
int reduced_band(const GroupModel& model, int band, int order) {
  int drop = (model.name() == "SU2") ? (order + 1) / 2 : order;
  return band - drop;
}

}  // namespace

MatrixSymbol difference(const MatrixSymbol& sigma, const DifferenceWord& alpha) {
  const auto& model = *sigma.model();
  const int fam = difference_family_size(model);
  if (static_cast<int>(alpha.alpha.size()) != fam)
    throw std::invalid_argument("difference word length does not match the family size");
  const int order = alpha.total();
  if (order == 0) return sigma;
  const int out_band = reduced_band(model, sigma.band(), order);
  if (out_band < 0)
    throw ResolutionError("difference order exceeds the available band (band underflow)");

  // kernel grid: products (q^alpha kernel) xi^* stay within exactness 2*band
  auto zgrid = std::make_shared<QuadratureGrid>(model.quadrature(2 * sigma.band()));
  VectorXcd qvals(Eigen::Index(zgrid->size()));
  for (std::size_t z = 0; z < zgrid->size(); ++z) {
    Complex q = 1.0;
    for (int w = 0; w < fam; ++w)
      for (int rep = 0; rep < alpha.alpha[w]; ++rep) q *= difference_q(model, w, zgrid->nodes[z]);
    qvals[Eigen::Index(z)] = q;
  }

  MatrixSymbol out;
  if (sigma.is_sampled())
    out = MatrixSymbol::sampled(sigma.model(), out_band, sigma.in_dim(), sigma.out_dim(),
                                sigma.xgrid(), sigma.x_band());
  else
    out = MatrixSymbol::invariant(sigma.model(), out_band, sigma.in_dim(), sigma.out_dim());

  const auto& dual_in = sigma.dual();
  for (int i = 0; i < sigma.in_dim(); ++i)
    for (int r = 0; r < sigma.out_dim(); ++r)
      for (std::size_t x = 0; x < sigma.x_count(); ++x) {
        std::vector<MatrixXcd> coeff(dual_in.size());
        for (std::size_t j = 0; j < dual_in.size(); ++j) coeff[j] = sigma.at(i, r, x, int(j));
        VectorXcd kernel;
        model.inverse_scalar(*zgrid, coeff, sigma.band(), kernel);
        kernel.array() *= qvals.array();
        std::vector<MatrixXcd> res;
        model.forward_scalar(*zgrid, kernel, out_band, res);
        for (std::size_t j = 0; j < out.dual().size(); ++j) out.at(i, r, x, int(j)) = res[j];
      }
  return out;
}

MatrixSymbol x_derivative(const MatrixSymbol& sigma, const std::vector<int>& beta) {
  const auto& model = *sigma.model();
  const int n = model.lie_basis().dim;
  if (static_cast<int>(beta.size()) != n)
    throw std::invalid_argument("x-derivative multi-index length must equal dim G");
  int total = 0;
  for (int b : beta) total += b;
  MatrixSymbol out = sigma;
  if (total == 0) return out;
  if (!sigma.is_sampled()) return out.scaled(0.0);  // invariant symbols have no x dependence

  const auto xgrid = sigma.xgrid();
  if (xgrid->band < 2 * sigma.x_band())
    throw ResolutionError("x-grid exactness is too small for the declared x-band");
  auto xdual = model.enumerate_dual(sigma.x_band());

  // left-multiplier picked up by each irrep eta under d_X^beta = Y_1^b1 ... Y_n^bn
  std::vector<MatrixXcd> mult(xdual.size());
  for (std::size_t e = 0; e < xdual.size(); ++e) {
    MatrixXcd m = MatrixXcd::Identity(xdual[e].dim, xdual[e].dim);
    for (int jgen = 0; jgen < n; ++jgen) {
      MatrixXcd s = model.vector_field_symbol(jgen, xdual[e]);
      for (int rep = 0; rep < beta[jgen]; ++rep) m = m * s;
    }
    mult[e] = m;
  }

  const auto& dual = sigma.dual();
  for (int i = 0; i < sigma.in_dim(); ++i)
    for (int r = 0; r < sigma.out_dim(); ++r)
      for (std::size_t j = 0; j < dual.size(); ++j) {
        const int d = dual[j].dim;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            VectorXcd vals(Eigen::Index(xgrid->size()));
            for (std::size_t x = 0; x < xgrid->size(); ++x) vals[Eigen::Index(x)] = sigma.at(i, r, x, int(j))(a, b);
            std::vector<MatrixXcd> xc;
            model.forward_scalar(*xgrid, vals, sigma.x_band(), xc);
            for (std::size_t e = 0; e < xdual.size(); ++e) xc[e] = mult[e] * xc[e];
            model.inverse_scalar(*xgrid, xc, sigma.x_band(), vals);
            for (std::size_t x = 0; x < xgrid->size(); ++x) out.at(i, r, x, int(j))(a, b) = vals[Eigen::Index(x)];
          }
      }
  return out;
}

}  // namespace gq
