#ifndef GROUPQUANT_CALCULUS_HPP
#define GROUPQUANT_CALCULUS_HPP

#include "groupquant/pw_matrix.hpp"

namespace gq {

// Exact composition at the truncated dual: pointwise block product for
// invariant symbols, extraction of the composed quantized operators otherwise.
// Coefficients with irrep distance <= x-band of the factors from the band edge
// are edge-contaminated; expansion comparisons always reduce the band.
MatrixSymbol compose_exact(const MatrixSymbol& sigma_b, const MatrixSymbol& sigma_a, int band);

// Exact L2 adjoint via the conjugate-transposed operator matrix in the
// weighted Peter-Weyl coordinates, re-extracted as a symbol.
MatrixSymbol adjoint_exact(const MatrixSymbol& sigma, int band);

// Taylor-pairing derivative operators d^(alpha) dual to the expansion
// difference family. On the torus these are the divided-difference binomials
// binom(i d_theta_j, alpha_j) to every order; on SU(2) only |alpha| <= 1 is
// supported (first-order dual basis).
MatrixSymbol taylor_derivative(const MatrixSymbol& sigma, const std::vector<int>& word);

// The difference word of the expansion family for a per-dimension multi-index.
DifferenceWord expansion_difference_word(const GroupModel& model, const std::vector<int>& word);
int expansion_family_dim(const GroupModel& model);

struct ExpansionOrderReport {
  int order = 0;
  double predicted_order = 0.0;      // m1 + m2 - (rho - delta)(order + 1)
  double residual_seminorm = 0.0;    // weighted sup of (exact - partial sum)
  double residual_weighted_l2 = 0.0; // L2 norm of M^-predicted o residual
  double residual_l2 = 0.0;          // raw L2 operator norm of the residual
  int band = 0;                      // comparison band after reduction
};

struct ExpansionReport {
  MatrixSymbol exact;
  std::vector<MatrixSymbol> partial_sums;
  std::vector<ExpansionOrderReport> orders;
};

// sigma_{BA} ~ sum_alpha (Delta^alpha sigma_B)(d^(alpha) sigma_A), partial sums
// for |alpha| <= N measured against compose_exact.
ExpansionReport compose_asymptotic(const MatrixSymbol& sigma_b, const MatrixSymbol& sigma_a, int N,
                                   const SymbolClassSpec& spec_b, const SymbolClassSpec& spec_a);

// sigma_{A*} ~ sum_alpha Delta^alpha d^(alpha) (sigma_A^dagger).
ExpansionReport adjoint_asymptotic(const MatrixSymbol& sigma, int N, const SymbolClassSpec& spec);

double sobolev_norm(const FourierCoefficients& c, double s, WeightKind kind);
double sobolev_norm(const VectorField& f, int band, double s, WeightKind kind);

// Largest singular value of the truncated operator matrix in the Peter-Weyl basis.
double l2_operator_norm(const MatrixSymbol& sigma);

}  // namespace gq

#endif
