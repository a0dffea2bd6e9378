#include "groupquant/garding.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "groupquant/errors.hpp"

namespace gq {

GardingCertificate garding_constants(const MatrixSymbol& sigma_a, double m,
                                     const std::vector<double>& c2_grid, bool check_hypothesis) {
  if (sigma_a.in_dim() != sigma_a.out_dim())
    throw std::invalid_argument("Garding certificate needs a square fiber");
  GardingCertificate cert;
  cert.order = m;
  cert.band = sigma_a.band();
  const auto& model = *sigma_a.model();

  // strong-ellipticity hypothesis: A = (a + a*)/2 invertible pointwise with
  // || M^m (x) A^{-1} || bounded
  double hyp = 0.0;
  for (std::size_t x = 0; x < sigma_a.x_count(); ++x)
    for (std::size_t j = 0; j < sigma_a.dual().size(); ++j) {
      MatrixXcd blk = sigma_a.block(x, int(j));
      MatrixXcd herm = 0.5 * (blk + blk.adjoint());
      Eigen::JacobiSVD<MatrixXcd> svd(herm);
      const double smin = svd.singularValues()(svd.singularValues().size() - 1);
      if (smin < 1e-14 * std::max(1.0, svd.singularValues()(0))) {
        if (check_hypothesis)
          throw EllipticityError("Garding hypothesis fails: Re a(x,xi) is singular",
                                 "irrep index " + std::to_string(j) + (sigma_a.is_sampled()
                                     ? ", grid node " + std::to_string(x) : std::string()));
        continue;
      }
      Eigen::VectorXd w = model.weight_diagonal(sigma_a.dual()[j], m, WeightKind::Subelliptic);
      MatrixXcd weighted = herm.inverse();
      const int d = sigma_a.dual()[j].dim;
      for (int r = 0; r < sigma_a.out_dim(); ++r)
        for (int u = 0; u < d; ++u) weighted.row(r * d + u) *= w[u];
      Eigen::JacobiSVD<MatrixXcd> svd2(weighted);
      hyp = std::max(hyp, svd2.singularValues()(0));
    }
  cert.hypothesis_bound = hyp;

  // truncated quadratic form: minimize (y* H y + C2 |y|^2) / (y* W^2 y)
  CoeffOperator a_op = CoeffOperator::from_symbol(sigma_a);
  MatrixXcd h = a_op.dense();
  h = 0.5 * (h + MatrixXcd(h.adjoint()));
  const Eigen::Index n = h.rows();

  // diagonal subelliptic weights of order m/2 in the packed coordinates
  Eigen::VectorXd wdiag(n);
  {
    FourierCoefficients probe = zero_coefficients(sigma_a.model(), sigma_a.band(), sigma_a.in_dim());
    auto dual = sigma_a.dual();
    Eigen::Index pos = 0;
    for (int i = 0; i < sigma_a.in_dim(); ++i)
      for (std::size_t j = 0; j < dual.size(); ++j) {
        Eigen::VectorXd w = model.weight_diagonal(dual[j], 0.5 * m, WeightKind::Subelliptic);
        for (int v = 0; v < dual[j].dim; ++v)
          for (int u = 0; u < dual[j].dim; ++u) wdiag[pos++] = w[u];
      }
  }
  Eigen::VectorXd winv = wdiag.cwiseInverse();

  bool found = false;
  for (double c2 : c2_grid) {
    MatrixXcd scaled = winv.cast<Complex>().asDiagonal() *
                       (h + c2 * MatrixXcd::Identity(n, n)) *
                       winv.cast<Complex>().asDiagonal();
    Eigen::SelfAdjointEigenSolver<MatrixXcd> es(scaled);
    const double c1 = es.eigenvalues()(0);
    cert.scan.emplace_back(c2, c1);
    if (!found && c1 > 0.0) {
      found = true;
      cert.C1 = c1;
      cert.C2 = c2;
      cert.min_eigenvalue = c1;
      VectorXcd y = winv.cast<Complex>().asDiagonal() * es.eigenvectors().col(0);
      cert.witness = a_op.unpack(y, sigma_a.in_dim());
    }
  }
  if (!found)
    throw EllipticityError("no positive Garding constant on the scanned C2 grid",
                           "band " + std::to_string(sigma_a.band()));
  return cert;
}

}  // namespace gq
