#include "groupquant/calculus.hpp"

#include "groupquant/errors.hpp"

namespace gq {

MatrixSymbol compose_exact(const MatrixSymbol& sigma_b, const MatrixSymbol& sigma_a, int band) {
  if (sigma_b.in_dim() != sigma_a.out_dim())
    throw std::invalid_argument("fiber dimension mismatch in composition");
  if (!sigma_b.is_sampled() && !sigma_a.is_sampled())
    return sigma_b.pointwise_product(sigma_a).truncated(band);
  // probe the composed quantized operators on the factors' common grid
  const auto model = sigma_b.model();
  std::shared_ptr<const QuadratureGrid> grid;
  if (sigma_b.is_sampled()) grid = sigma_b.xgrid();
  if (sigma_a.is_sampled()) {
    if (grid && grid->size() != sigma_a.xgrid()->size())
      throw ResolutionError("sampled factors live on different grids");
    grid = sigma_a.xgrid();
  }
  const int need = band + std::max(sigma_b.band(), sigma_a.band()) + sigma_b.x_band() +
                   sigma_a.x_band();
  if (grid->band < need)
    throw ResolutionError("composition needs grid exactness >= " + std::to_string(need) +
                          " (have " + std::to_string(grid->band) + ")");
  FieldOperator op = [&](const VectorField& f) {
    return quantize_apply(sigma_b, quantize_apply(sigma_a, f));
  };
  return extract_symbol(op, model, band, sigma_a.in_dim(), sigma_b.out_dim(), grid, 1e-10,
                        sigma_b.x_band() + sigma_a.x_band());
}

MatrixSymbol adjoint_exact(const MatrixSymbol& sigma, int band) {
  CoeffOperator a = CoeffOperator::from_symbol(sigma);
  CoeffOperator astar = a.adjoint();
  if (astar.is_block()) {
    MatrixSymbol out = astar.to_symbol(nullptr);
    return out.truncated(band);
  }
  // the adjoint of a symbol with band-limited x-dependence keeps its x-band
  return astar.to_symbol(sigma.xgrid(), 1e-10, sigma.x_band()).truncated(band);
}

int expansion_family_dim(const GroupModel& model) {
  if (model.name() == "SU2") return 3;
  return model.lie_basis().dim;
}

DifferenceWord expansion_difference_word(const GroupModel& model, const std::vector<int>& word) {
  DifferenceWord dw;
  dw.alpha.assign(difference_family_size(model), 0);
  if (model.name() == "SU2") {
    // expansion subfamily {q00, q01, q10} of the l = 1/2 deviations
    if (word.size() != 3) throw std::invalid_argument("SU(2) expansion word must have length 3");
    dw.alpha[0] = word[0];
    dw.alpha[1] = word[1];
    dw.alpha[2] = word[2];
    return dw;
  }
  const int n = model.lie_basis().dim;
  if (static_cast<int>(word.size()) != n)
    throw std::invalid_argument("expansion word length must equal dim G");
  for (int j = 0; j < n; ++j) dw.alpha[2 * j] = word[j];  // the k = +1 character per factor
  return dw;
}

namespace {

// generalized binomial x(x-1)...(x-a+1)/a!
double falling_binomial(double x, int a) {
  double v = 1.0;
  for (int t = 0; t < a; ++t) v *= (x - t) / (t + 1);
  return v;
}

// first-order Taylor dual fields on SU(2): X_w = sum_c M(w,c) Y_c with
// X_w q_(k)(y^{-1})|_e = delta_{wk} for the expansion subfamily.
MatrixXcd su2_taylor_dual_matrix(const GroupModel& model) {
  IrrepId half{{1}, 2};
  // q indices (u,v) = (0,0), (0,1), (1,0); gradient along Y_c of q(y^{-1}) is
  // -sigma_{Y_c}(xi_1/2)_{uv}
  MatrixXcd g(3, 3);
  const int uu[3] = {0, 0, 1};
  const int vv[3] = {0, 1, 0};
  for (int c = 0; c < 3; ++c) {
    MatrixXcd s = model.vector_field_symbol(c, half);
    for (int k = 0; k < 3; ++k) g(k, c) = -s(uu[k], vv[k]);
  }
  return g.inverse();  // row w = coefficients of X_w over (Y_1, Y_2, Y_3)
}

}  // namespace

MatrixSymbol taylor_derivative(const MatrixSymbol& sigma, const std::vector<int>& word) {
  const auto& model = *sigma.model();
  int total = 0;
  for (int w : word) total += w;
  if (total == 0) return sigma;
  if (!sigma.is_sampled()) return sigma.scaled(0.0);

  if (model.name() == "SU2") {
    if (total > 1)
      throw ResolutionError(
          "SU(2) expansion terms beyond first order are not supported (Taylor duals)");
    int w = 0;
    while (word[w] == 0) ++w;
    MatrixXcd duals = su2_taylor_dual_matrix(model);
    std::vector<int> e(3, 0);
    MatrixSymbol acc = sigma.scaled(0.0);
    for (int c = 0; c < 3; ++c) {
      if (std::abs(duals(w, c)) < 1e-15) continue;
      std::fill(e.begin(), e.end(), 0);
      e[c] = 1;
      acc = acc.plus(x_derivative(sigma, e), duals(w, c));
    }
    return acc;
  }

  // torus: per-axis divided-difference binomials binom(i d_j, a_j); the
  // operator i d_j acts on the x-frequency k_j as multiplication by -k_j.
  const int n = model.lie_basis().dim;
  if (static_cast<int>(word.size()) != n)
    throw std::invalid_argument("expansion word length must equal dim G");
  const auto xgrid = sigma.xgrid();
  if (xgrid->band < 2 * sigma.x_band())
    throw ResolutionError("x-grid exactness is too small for the declared x-band");
  auto xdual = model.enumerate_dual(sigma.x_band());
  std::vector<double> mult(xdual.size());
  for (std::size_t e = 0; e < xdual.size(); ++e) {
    double m = 1.0;
    for (int j = 0; j < n; ++j) m *= falling_binomial(-double(xdual[e].label[j]), word[j]);
    mult[e] = m;
  }
  MatrixSymbol out = sigma;
  const auto& dual = sigma.dual();
  for (int i = 0; i < sigma.in_dim(); ++i)
    for (int r = 0; r < sigma.out_dim(); ++r)
      for (std::size_t j = 0; j < dual.size(); ++j) {
        const int d = dual[j].dim;
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) {
            VectorXcd vals(Eigen::Index(xgrid->size()));
            for (std::size_t x = 0; x < xgrid->size(); ++x)
              vals[Eigen::Index(x)] = sigma.at(i, r, x, int(j))(a, b);
            std::vector<MatrixXcd> xc;
            model.forward_scalar(*xgrid, vals, sigma.x_band(), xc);
            for (std::size_t e = 0; e < xdual.size(); ++e) xc[e] *= mult[e];
            model.inverse_scalar(*xgrid, xc, sigma.x_band(), vals);
            for (std::size_t x = 0; x < xgrid->size(); ++x)
              out.at(i, r, x, int(j))(a, b) = vals[Eigen::Index(x)];
          }
      }
  return out;
}

namespace {

// enumerate multi-indices of total order exactly `ord` in `dim` slots
void enumerate_words(int dim, int ord, std::vector<int>& cur, int pos,
                     std::vector<std::vector<int>>& out) {
  if (pos == dim - 1) {
    cur[pos] = ord;
    out.push_back(cur);
    return;
  }
  for (int v = ord; v >= 0; --v) {
    cur[pos] = v;
    enumerate_words(dim, ord - v, cur, pos + 1, out);
  }
}

std::vector<std::vector<int>> words_of_order(int dim, int ord) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(dim, 0);
  enumerate_words(dim, ord, cur, 0, out);
  return out;
}

ExpansionReport measure_expansion(const MatrixSymbol& exact,
                                  const std::vector<MatrixSymbol>& partial_sums, double m_total,
                                  double rho, double delta, WeightKind kind) {
  ExpansionReport rep;
  rep.exact = exact;
  for (std::size_t N = 0; N < partial_sums.size(); ++N) {
    const int b = partial_sums[N].band();
    const MatrixSymbol& partial = partial_sums[N];
    rep.partial_sums.push_back(partial);
    ExpansionOrderReport ord;
    ord.order = int(N);
    ord.band = b;
    ord.predicted_order = m_total - (rho - delta) * (double(N) + 1.0);
    MatrixSymbol resid = exact.truncated(b).plus(partial, -1.0);
    ord.residual_l2 = l2_operator_norm(resid);
    ord.residual_seminorm = weighted_sup(resid, -ord.predicted_order, 0.0, kind);
    MatrixSymbol w = weight_symbol(exact.model(), b, -ord.predicted_order, kind, resid.out_dim());
    ord.residual_weighted_l2 = l2_operator_norm(w.pointwise_product(resid));
    rep.orders.push_back(ord);
  }
  return rep;
}

}  // namespace

ExpansionReport compose_asymptotic(const MatrixSymbol& sigma_b, const MatrixSymbol& sigma_a, int N,
                                   const SymbolClassSpec& spec_b, const SymbolClassSpec& spec_a) {
  if (N < 0) throw std::invalid_argument("expansion order must be nonnegative");
  const auto& model = *sigma_b.model();
  const int dim = expansion_family_dim(model);
  MatrixSymbol exact = compose_exact(sigma_b, sigma_a, std::min(sigma_b.band(), sigma_a.band()));

  std::vector<MatrixSymbol> order_terms;
  for (int ord = 0; ord <= N; ++ord) {
    MatrixSymbol term;
    bool first = true;
    for (const auto& w : words_of_order(dim, ord)) {
      MatrixSymbol db = difference(sigma_b, expansion_difference_word(model, w));
      MatrixSymbol da = taylor_derivative(sigma_a, w).truncated(db.band());
      MatrixSymbol prod = db.pointwise_product(da);
      term = first ? prod : term.plus(prod);
      first = false;
    }
    if (ord > 0) term = order_terms.back().truncated(term.band()).plus(term);
    order_terms.push_back(term);
  }
  return measure_expansion(exact, order_terms, spec_b.order + spec_a.order, spec_b.rho,
                           spec_b.delta, spec_b.kind);
}

ExpansionReport adjoint_asymptotic(const MatrixSymbol& sigma, int N, const SymbolClassSpec& spec) {
  if (N < 0) throw std::invalid_argument("expansion order must be nonnegative");
  const auto& model = *sigma.model();
  const int dim = expansion_family_dim(model);
  MatrixSymbol exact = adjoint_exact(sigma, sigma.band());
  MatrixSymbol star = sigma.pointwise_adjoint();

  std::vector<MatrixSymbol> order_terms;
  for (int ord = 0; ord <= N; ++ord) {
    MatrixSymbol term;
    bool first = true;
    for (const auto& w : words_of_order(dim, ord)) {
      MatrixSymbol t = difference(taylor_derivative(star, w), expansion_difference_word(model, w));
      term = first ? t : term.plus(t);
      first = false;
    }
    if (ord > 0) term = order_terms.back().truncated(term.band()).plus(term);
    order_terms.push_back(term);
  }
  return measure_expansion(exact, order_terms, spec.order, spec.rho, spec.delta, spec.kind);
}

double sobolev_norm(const FourierCoefficients& c, double s, WeightKind kind) {
  auto dual = c.model->enumerate_dual(c.band);
  double acc = 0.0;
  for (int i = 0; i < c.fiber_dim; ++i)
    for (std::size_t j = 0; j < dual.size(); ++j) {
      Eigen::VectorXd w = c.model->weight_diagonal(dual[j], s, kind);
      acc += dual[j].dim * (w.cast<Complex>().asDiagonal() * c.at(i, int(j))).squaredNorm();
    }
  return std::sqrt(acc);
}

double sobolev_norm(const VectorField& f, int band, double s, WeightKind kind) {
  return sobolev_norm(forward(f, band), s, kind);
}

double l2_operator_norm(const MatrixSymbol& sigma) {
  return CoeffOperator::from_symbol(sigma).operator_norm();
}

}  // namespace gq
