// Global symbols of the exterior derivative, the codifferential, and the
// Hodge Laplacian on the form bundles of M = G/K, assembled from the
// generator symbols over the Cartan split basis. Form fibers are indexed by
// lexicographic strictly increasing multi-indices over {1..m}.

#include "groupquant/forms.hpp"

#include <algorithm>

#include "groupquant/errors.hpp"

namespace gq {

FormIndexing::FormIndexing(int m_, int p_) : m(m_), p(p_) {
  if (p < 0 || p > m) throw std::invalid_argument("form degree out of range");
  std::vector<int> idx(p);
  // enumerate increasing p-subsets of {1..m} lexicographically
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == p) {
      indices.push_back(idx);
      return;
    }
    for (int v = start; v <= m; ++v) {
      idx[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  rec(1, 0);
}

int FormIndexing::position(const std::vector<int>& idx) const {
  for (std::size_t k = 0; k < indices.size(); ++k)
    if (indices[k] == idx) return static_cast<int>(k);
  return -1;
}

MatrixSymbol exterior_derivative_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                        int p) {
  const int m = model->lie_basis().split_index;
  if (p < 0 || p >= m) throw std::invalid_argument("exterior derivative degree out of range");
  FormIndexing in(m, p), out(m, p + 1);
  MatrixSymbol s = MatrixSymbol::invariant(model, band, in.dim(), out.dim());
  auto dual = s.dual();
  for (int r = 0; r < out.dim(); ++r) {
    const auto& J = out.indices[r];
    for (int u = 1; u <= p + 1; ++u) {
      // remove j_u from J; the delta determinant selects I = J \ {j_u}
      std::vector<int> I;
      for (int v = 0; v < p + 1; ++v)
        if (v != u - 1) I.push_back(J[v]);
      const int i = in.position(I);
      if (i < 0) continue;
      const double sign = (u % 2 == 1) ? 1.0 : -1.0;
      for (std::size_t j = 0; j < dual.size(); ++j)
        s.at(i, r, 0, int(j)) += sign * model->vector_field_symbol(J[u - 1] - 1, dual[j]);
    }
  }
  return s;
}

MatrixSymbol codifferential_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                   int p) {
  const int m = model->lie_basis().split_index;
  if (p < 0 || p >= m) throw std::invalid_argument("codifferential degree out of range");
  FormIndexing in(m, p + 1), out(m, p);
  MatrixSymbol s = MatrixSymbol::invariant(model, band, in.dim(), out.dim());
  auto dual = s.dual();
  // full-basis sum; terms with u indexing the isotropy algebra vanish since
  // the fiber multi-indices only range over {1..m}
  for (int i = 0; i < in.dim(); ++i) {
    const auto& I = in.indices[i];
    for (int r = 0; r < out.dim(); ++r) {
      const auto& J = out.indices[r];
      // nonzero iff I = {u} union J; the sign sorts u into position
      std::vector<int> diff;
      std::set_difference(I.begin(), I.end(), J.begin(), J.end(), std::back_inserter(diff));
      if (diff.size() != 1) continue;
      const int u = diff[0];
      const int w = int(std::find(I.begin(), I.end(), u) - I.begin());  // 0-based position
      const double sign = (w % 2 == 0) ? 1.0 : -1.0;
      if (!std::includes(I.begin(), I.end(), J.begin(), J.end())) continue;
      for (std::size_t j = 0; j < dual.size(); ++j)
        s.at(i, r, 0, int(j)) -= sign * model->vector_field_symbol(u - 1, dual[j]);
    }
  }
  return s;
}

MatrixXcd hodge_laplacian_symbol(const GroupModel& model, int p, const IrrepId& xi) {
  const int m = model.lie_basis().split_index;
  if (p < 0 || p > m) throw std::invalid_argument("form degree out of range");
  return model.laplace_eigenvalue(xi) * MatrixXcd::Identity(xi.dim, xi.dim);
}

MatrixSymbol hodge_laplacian_assembled(const std::shared_ptr<const GroupModel>& model, int band,
                                       int p) {
  const int m = model->lie_basis().split_index;
  FormIndexing deg(m, p);
  MatrixSymbol acc = MatrixSymbol::invariant(model, band, deg.dim(), deg.dim());
  if (p < m) {
    MatrixSymbol d = exterior_derivative_symbol(model, band, p);
    MatrixSymbol del = codifferential_symbol(model, band, p);
    acc = acc.plus(del.pointwise_product(d));
  }
  if (p > 0) {
    MatrixSymbol d = exterior_derivative_symbol(model, band, p - 1);
    MatrixSymbol del = codifferential_symbol(model, band, p - 1);
    acc = acc.plus(d.pointwise_product(del));
  }
  return acc;
}

std::vector<SectionField> dirac_apply(const std::vector<SectionField>& graded, int band) {
  if (graded.empty()) return {};
  const auto model = graded.front().field.model;
  const int m = model->lie_basis().split_index;
  if (static_cast<int>(graded.size()) != m + 1)
    throw std::invalid_argument("graded form needs one section per degree 0..m");
  std::vector<SectionField> out(graded.size());
  for (int k = 0; k <= m; ++k) {
    VectorField acc;
    bool have = false;
    if (k > 0) {
      MatrixSymbol d = exterior_derivative_symbol(model, band, k - 1);
      acc = quantize_apply(d, graded[k - 1].field);
      have = true;
    }
    if (k < m) {
      MatrixSymbol del = codifferential_symbol(model, band, k);
      VectorField t = quantize_apply(del, graded[k + 1].field);
      if (have)
        acc.values += t.values;
      else
        acc = t;
    }
    out[k].bundle = graded[k].bundle;
    out[k].field = acc;
    out[k].defect = tau_invariance_defect(out[k].bundle, forward(acc, band));
  }
  return out;
}

}  // namespace gq
