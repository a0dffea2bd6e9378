// Representation-theoretic backends: dual enumeration, irrep evaluation,
// generator symbols, spectral data, quadrature exactness. Derived values are
// checked against independent oracles (finite differences, character and Schur
// orthogonality on the grid, -sum sigma_Y^2).

#include <random>

#include "doctest.h"
#include "groupquant/group.hpp"

using namespace gq;

namespace {

double fd_defect_vector_field(const GroupModel& model, int j, const IrrepId& xi) {
  // central finite difference of t -> xi(exp(t Y_j)) at 0
  const double h = 1e-5;
  MatrixXcd plus = model.irrep_matrix(xi, model.exp_generator(j, h));
  MatrixXcd minus = model.irrep_matrix(xi, model.exp_generator(j, -h));
  MatrixXcd fd = (plus - minus) / (2.0 * h);
  return (fd - model.vector_field_symbol(j, xi)).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("torus dual enumeration") {
  auto t1 = make_torus(1);
  auto dual = t1->enumerate_dual(2);
  REQUIRE(dual.size() == 5);
  for (int k = -2; k <= 2; ++k) {
    CHECK(dual[k + 2].label == std::vector<int>{k});
    CHECK(dual[k + 2].dim == 1);
  }
  auto t2 = make_torus(2);
  CHECK(t2->enumerate_dual(0).size() == 1);  // only the trivial character
  CHECK(t2->enumerate_dual(3).size() == 49);
  CHECK_THROWS_AS(t1->enumerate_dual(-1), std::invalid_argument);
}

TEST_CASE("SU(2) dual enumeration and dimensions via character orthogonality") {
  auto su2 = make_su2();
  auto dual = su2->enumerate_dual(1);
  REQUIRE(dual.size() == 3);  // l = 0, 1/2, 1
  CHECK(dual[0].dim == 1);
  CHECK(dual[1].dim == 2);
  CHECK(dual[2].dim == 3);

  // oracle: int |chi_l|^2 = 1 and chi_l(e) = d_l on the quadrature grid
  const int band = 4;
  QuadratureGrid grid = su2->quadrature(2 * band);
  for (const auto& xi : su2->enumerate_dual(band)) {
    double norm2 = 0.0;
    for (std::size_t x = 0; x < grid.size(); ++x) {
      const Complex chi = su2->irrep_matrix(xi, grid.nodes[x]).trace();
      norm2 += grid.weights[Eigen::Index(x)] * std::norm(chi);
    }
    CHECK(std::abs(norm2 - 1.0) < 1e-12);
    CHECK(std::abs(su2->irrep_matrix(xi, su2->identity()).trace().real() - xi.dim) < 1e-12);
  }
}

TEST_CASE("torus irreps: identity element and generator symbol") {
  auto t1 = make_torus(1);
  IrrepId k3{{3}, 1};
  CHECK(std::abs(t1->irrep_matrix(k3, t1->identity())(0, 0) - 1.0) < 1e-15);
  // sigma_{d/dtheta}(k) = ik, finite-difference oracle
  for (int k = -4; k <= 4; ++k) {
    IrrepId xi{{k}, 1};
    CHECK(std::abs(t1->vector_field_symbol(0, xi)(0, 0) - Complex(0, k)) < 1e-14);
    CHECK(fd_defect_vector_field(*t1, 0, xi) < 1e-8);
  }
}

TEST_CASE("SU(2) spin-1/2 beta rotation matches the closed form") {
  auto su2 = make_su2();
  IrrepId half{{1}, 2};
  const double beta = 0.737;
  MatrixXcd d = su2->irrep_matrix(half, su2->exp_generator(1, beta));
  CHECK(std::abs(d(0, 0) - std::cos(beta / 2)) < 1e-13);
  CHECK(std::abs(d(0, 1) + std::sin(beta / 2)) < 1e-13);
  CHECK(std::abs(d(1, 0) - std::sin(beta / 2)) < 1e-13);
  CHECK(std::abs(d(1, 1) - std::cos(beta / 2)) < 1e-13);
  CHECK((su2->irrep_matrix(half, su2->identity()) - MatrixXcd::Identity(2, 2)).norm() < 1e-13);
}

TEST_CASE("SU(2) unitarity and homomorphism on random pairs") {
  auto su2 = make_su2();
  auto dual = su2->enumerate_dual(5);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    GroupElement g1 = su2->random_element(rng());
    GroupElement g2 = su2->random_element(rng());
    GroupElement g12 = su2->multiply(g1, g2);
    const auto& xi = dual[rng() % dual.size()];
    MatrixXcd m1 = su2->irrep_matrix(xi, g1);
    MatrixXcd m2 = su2->irrep_matrix(xi, g2);
    MatrixXcd m12 = su2->irrep_matrix(xi, g12);
    CHECK((m1 * m1.adjoint() - MatrixXcd::Identity(xi.dim, xi.dim)).cwiseAbs().maxCoeff() < 1e-11);
    CHECK((m12 - m1 * m2).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("SU(2) generator symbols: weight-basis forms and FD oracle") {
  auto su2 = make_su2();
  for (int two_ell = 0; two_ell <= 6; ++two_ell) {
    IrrepId xi{{two_ell}, two_ell + 1};
    // sigma_{Y3} = i diag(-l..l) read along the storage diagonal
    MatrixXcd s3 = su2->vector_field_symbol(2, xi);
    const double ell = 0.5 * two_ell;
    for (int u = 0; u <= two_ell; ++u)
      CHECK(std::abs(s3(u, u) - Complex(0, -(ell - u))) < 1e-13);
    for (int j = 0; j < 3; ++j) {
      CHECK(fd_defect_vector_field(*su2, j, xi) < 1e-7);
      MatrixXcd s = su2->vector_field_symbol(j, xi);
      CHECK((s + s.adjoint()).cwiseAbs().maxCoeff() < 1e-13);  // skew-Hermitian
    }
    // trivial irrep: all generator symbols vanish
    if (two_ell == 0) CHECK(std::abs(s3(0, 0)) < 1e-15);
  }
}

TEST_CASE("laplace data against the -sum sigma^2 oracle") {
  auto t1 = make_torus(1);
  for (int k = -5; k <= 5; ++k) {
    IrrepId xi{{k}, 1};
    MatrixXcd s = t1->vector_field_symbol(0, xi);
    CHECK(std::abs(t1->laplace_eigenvalue(xi) - double(k) * k) < 1e-14);
    CHECK(std::abs((-(s * s))(0, 0).real() - t1->sub_laplacian_diagonal(xi)[0]) < 1e-12);
  }

  auto su2 = make_su2();  // sub-Laplacian -(Y1^2 + Y2^2)
  for (int two_ell = 0; two_ell <= 8; ++two_ell) {
    IrrepId xi{{two_ell}, two_ell + 1};
    MatrixXcd oracle = MatrixXcd::Zero(xi.dim, xi.dim);
    for (int j : su2->sub_laplacian_generators()) {
      MatrixXcd s = su2->vector_field_symbol(j, xi);
      oracle -= s * s;
    }
    VectorXd diag = su2->sub_laplacian_diagonal(xi);
    MatrixXcd offdiag = oracle;
    offdiag.diagonal().setZero();
    CHECK(offdiag.cwiseAbs().maxCoeff() < 1e-10);
    for (int u = 0; u < xi.dim; ++u) CHECK(std::abs(oracle(u, u).real() - diag[u]) < 1e-10);
  }
  IrrepId ell1{{2}, 3};
  CHECK(std::abs(su2->laplace_eigenvalue(ell1) - 2.0) < 1e-14);
  VectorXd d = su2->sub_laplacian_diagonal(ell1);
  CHECK(std::abs(d[0] - 1.0) < 1e-12);  // l(l+1) - m^2 for m = 1, 0, -1
  CHECK(std::abs(d[1] - 2.0) < 1e-12);
  CHECK(std::abs(d[2] - 1.0) < 1e-12);
}

TEST_CASE("weight matrices") {
  auto t1 = make_torus(1);
  IrrepId k0{{0}, 1};
  CHECK(std::abs(t1->weight_diagonal(k0, 3.7, WeightKind::Subelliptic)[0] - 1.0) < 1e-14);

  auto su2 = make_su2();
  IrrepId ell1{{2}, 3};
  VectorXd sub = su2->weight_diagonal(ell1, 2.0, WeightKind::Subelliptic);
  CHECK(std::abs(sub[0] - 2.0) < 1e-12);  // 1 + (l(l+1) - m^2) at s = 2
  CHECK(std::abs(sub[1] - 3.0) < 1e-12);
  CHECK(std::abs(sub[2] - 2.0) < 1e-12);
  VectorXd ell = su2->weight_diagonal(ell1, -2.0, WeightKind::Elliptic);
  for (int u = 0; u < 3; ++u) CHECK(std::abs(ell[u] - 1.0 / 3.0) < 1e-13);
}

TEST_CASE("quadrature: weights, torus exactness, Schur orthogonality") {
  auto t1 = make_torus(1);
  QuadratureGrid g1 = t1->quadrature(1);
  CHECK(g1.size() == 3);
  CHECK(std::abs(g1.weights.sum() - 1.0) < 1e-14);
  // character orthogonality is a finite geometric sum on the uniform rule
  QuadratureGrid g = t1->quadrature(6);
  for (int k = -3; k <= 3; ++k)
    for (int j = -3; j <= 3; ++j) {
      Complex acc = 0.0;
      for (std::size_t x = 0; x < g.size(); ++x)
        acc += g.weights[Eigen::Index(x)] * std::polar(1.0, (k - j) * g.nodes[x][0]);
      CHECK(std::abs(acc - (k == j ? 1.0 : 0.0)) < 1e-14);
    }

  auto su2 = make_su2();
  QuadratureGrid gs = su2->quadrature(4);
  CHECK(std::abs(gs.weights.sum() - 1.0) < 1e-13);
  // full Schur orthogonality d int xi_uv conj(eta_u'v') = delta/d at low band
  auto dual = su2->enumerate_dual(2);
  QuadratureGrid gs2 = su2->quadrature(4);  // exactness 2*band for products
  std::vector<std::vector<MatrixXcd>> tables(dual.size());
  for (std::size_t a = 0; a < dual.size(); ++a) {
    tables[a].resize(gs2.size());
    for (std::size_t x = 0; x < gs2.size(); ++x)
      tables[a][x] = su2->irrep_matrix(dual[a], gs2.nodes[x]);
  }
  for (std::size_t a = 0; a < dual.size(); ++a)
    for (std::size_t b = 0; b < dual.size(); ++b)
      for (int u = 0; u < dual[a].dim; ++u)
        for (int v = 0; v < dual[a].dim; ++v)
          for (int up = 0; up < dual[b].dim; ++up)
            for (int vp = 0; vp < dual[b].dim; ++vp) {
              Complex acc = 0.0;
              for (std::size_t x = 0; x < gs2.size(); ++x)
                acc += gs2.weights[Eigen::Index(x)] * tables[a][x](u, v) *
                       std::conj(tables[b][x](up, vp));
              const double expect =
                  (a == b && u == up && v == vp) ? 1.0 / dual[a].dim : 0.0;
              CHECK(std::abs(acc - expect) < 1e-11);
            }
}

TEST_CASE("sub-Laplacian generator subsets") {
  auto full = make_su2({0, 1, 2});
  IrrepId ell1{{2}, 3};
  VectorXd d = full->sub_laplacian_diagonal(ell1);
  for (int u = 0; u < 3; ++u) CHECK(std::abs(d[u] - 2.0) < 1e-12);
  CHECK(full->hormander_step() == 1);
  CHECK(make_su2()->hormander_step() == 2);
  auto bad = make_su2({0, 2});  // -(Y1^2 + Y3^2) is not weight-diagonal
  CHECK_THROWS_AS(bad->sub_laplacian_diagonal(ell1), std::invalid_argument);
}
