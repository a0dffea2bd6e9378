// Symbol extraction: sigma_A(i0,r0,x,xi) = xi(x)^* e_{r0}^*[A(xi (x) e_{i0})(x)].
// The operator is probed on the matrix-coefficient fields of every irrep up to
// the requested band, one fiber direction at a time.

#include "groupquant/errors.hpp"
#include "groupquant/parallel.hpp"
#include "groupquant/symbol.hpp"

namespace gq {

MatrixSymbol extract_symbol(const FieldOperator& op, const std::shared_ptr<const GroupModel>& model,
                            int band, int in_dim, int out_dim,
                            const std::shared_ptr<const QuadratureGrid>& grid,
                            double collapse_tol, int x_band) {
  auto dual = model->enumerate_dual(band);
  if (x_band < 0) x_band = grid->band;
  MatrixSymbol full = MatrixSymbol::sampled(model, band, in_dim, out_dim, grid, x_band);

  for (std::size_t j = 0; j < dual.size(); ++j) {
    const int d = dual[j].dim;
    std::vector<MatrixXcd> xi_at(grid->size());
    parallel_for(grid->size(), [&](std::size_t x) {
      xi_at[x] = model->irrep_matrix(dual[j], grid->nodes[x]);
    });
    for (int i0 = 0; i0 < in_dim; ++i0) {
      // applied[x](r0*d + u, v) = e_{r0}^*[A(xi_uv e_{i0})](x)
      std::vector<MatrixXcd> applied(grid->size(),
                                     MatrixXcd::Zero(std::size_t(out_dim) * d, d));
      for (int u = 0; u < d; ++u)
        for (int v = 0; v < d; ++v) {
          VectorField basis;
          basis.model = model;
          basis.grid = grid;
          basis.values = MatrixXcd::Zero(Eigen::Index(grid->size()), in_dim);
          for (std::size_t x = 0; x < grid->size(); ++x)
            basis.values(Eigen::Index(x), i0) = xi_at[x](u, v);
          VectorField img = op(basis);
          if (img.fiber_dim() != out_dim)
            throw std::invalid_argument("operator output fiber dimension mismatch in extraction");
          for (std::size_t x = 0; x < grid->size(); ++x)
            for (int r0 = 0; r0 < out_dim; ++r0)
              applied[x](std::size_t(r0) * d + u, v) = img.values(Eigen::Index(x), r0);
        }
      parallel_for(grid->size(), [&](std::size_t x) {
        const MatrixXcd xs = xi_at[x].adjoint();
        for (int r0 = 0; r0 < out_dim; ++r0)
          full.at(i0, r0, x, int(j)) = xs * applied[x].block(std::size_t(r0) * d, 0, d, d);
      });
    }
  }

  if (collapse_tol >= 0.0) {
    // collapse to an invariant symbol when x-variation is below tolerance
    double var = 0.0;
    const double scale = std::max(1.0, full.max_abs());
    for (int i = 0; i < in_dim; ++i)
      for (int r = 0; r < out_dim; ++r)
        for (std::size_t j = 0; j < dual.size(); ++j)
          for (std::size_t x = 1; x < grid->size(); ++x)
            var = std::max(
                var, (full.at(i, r, x, int(j)) - full.at(i, r, 0, int(j))).cwiseAbs().maxCoeff());
    if (var <= collapse_tol * scale) {
      MatrixSymbol inv = MatrixSymbol::invariant(model, band, in_dim, out_dim);
      for (int i = 0; i < in_dim; ++i)
        for (int r = 0; r < out_dim; ++r)
          for (std::size_t j = 0; j < dual.size(); ++j)
            inv.at(i, r, 0, int(j)) = full.at(i, r, 0, int(j));
      return inv;
    }
  }
  return full;
}

}  // namespace gq
