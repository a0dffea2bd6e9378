#ifndef GROUPQUANT_FORMS_HPP
#define GROUPQUANT_FORMS_HPP

#include "groupquant/bundle.hpp"

namespace gq {

// Lexicographic strictly increasing multi-indices over {1..m} for degree p;
// fiber dimension C(m, p).
struct FormIndexing {
  int m = 0;
  int p = 0;
  std::vector<std::vector<int>> indices;

  FormIndexing(int m_, int p_);
  int dim() const { return static_cast<int>(indices.size()); }
  int position(const std::vector<int>& idx) const;
};

// sigma_{d_p}(I_p, J_{p+1}, xi) = sum_u (-1)^{u-1} det[delta_{i_k, j_v}] sigma_{Y_{j_u}}(xi).
MatrixSymbol exterior_derivative_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                        int p);
// sigma of the codifferential d_p^*: Lambda^{p+1} -> Lambda^p.
MatrixSymbol codifferential_symbol(const std::shared_ptr<const GroupModel>& model, int band,
                                   int p);
// Closed form: lambda_xi times the identity (positive-Laplacian convention;
// the source display carries the opposite sign).
MatrixXcd hodge_laplacian_symbol(const GroupModel& model, int p, const IrrepId& xi);
// Assembled d delta + delta d on degree p.
MatrixSymbol hodge_laplacian_assembled(const std::shared_ptr<const GroupModel>& model, int band,
                                       int p);

// The Dirac operator d + d^* on a graded list of sections, degree by degree.
std::vector<SectionField> dirac_apply(const std::vector<SectionField>& graded, int band);

}  // namespace gq

#endif
