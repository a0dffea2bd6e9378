// Group Fourier transform: defining integrals against Schur orthogonality,
// Peter-Weyl inversion, Plancherel/Parseval, translation equivariance, and the
// tau-invariance classification on the dual side.

#include <random>

#include "doctest.h"
#include "groupquant/bundle.hpp"
#include "groupquant/fourier.hpp"

using namespace gq;

namespace {

VectorField sampled_field(const std::shared_ptr<const GroupModel>& model,
                          const std::shared_ptr<const QuadratureGrid>& grid, int fiber,
                          const std::function<VectorXcd(const GroupElement&)>& f) {
  VectorField out;
  out.model = model;
  out.grid = grid;
  out.values.resize(Eigen::Index(grid->size()), fiber);
  for (std::size_t x = 0; x < grid->size(); ++x)
    out.values.row(Eigen::Index(x)) = f(grid->nodes[x]).transpose();
  return out;
}

}  // namespace

TEST_CASE("forward on T^1: constants and a single character") {
  auto t1 = make_torus(1);
  auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(8));
  const Complex c0(0.7, -0.2);
  VectorField f = sampled_field(t1, grid, 2, [&](const GroupElement& g) {
    VectorXcd v(2);
    v << c0, std::polar(1.0, 3.0 * g[0]);
    return v;
  });
  FourierCoefficients fh = forward(f, 4);
  auto dual = t1->enumerate_dual(4);
  for (std::size_t j = 0; j < dual.size(); ++j) {
    const int k = dual[j].label[0];
    CHECK(std::abs(fh.at(0, int(j))(0, 0) - (k == 0 ? c0 : 0.0)) < 1e-14);
    CHECK(std::abs(fh.at(1, int(j))(0, 0) - (k == 3 ? 1.0 : 0.0)) < 1e-14);
  }
}

TEST_CASE("forward on SU(2): matrix coefficient lands on E_vu / d") {
  auto su2 = make_su2();
  const int band = 3;
  auto grid = std::make_shared<QuadratureGrid>(su2->quadrature(2 * band));
  IrrepId ell{{2}, 3};
  const int u = 2, v = 0;
  VectorField f = sampled_field(su2, grid, 1, [&](const GroupElement& g) {
    VectorXcd val(1);
    val << su2->irrep_matrix(ell, g)(u, v);
    return val;
  });
  FourierCoefficients fh = forward(f, band);
  auto dual = su2->enumerate_dual(band);
  for (std::size_t j = 0; j < dual.size(); ++j) {
    MatrixXcd expect = MatrixXcd::Zero(dual[j].dim, dual[j].dim);
    if (dual[j].label[0] == 2) expect(v, u) = 1.0 / 3.0;
    CHECK((fh.at(0, int(j)) - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("inversion roundtrip and pointwise evaluation") {
  for (auto model : {make_torus(1), make_su2()}) {
    const int band = model->name() == "SU2" ? 3 : 8;
    VectorField f = random_field(model, band, 2, 42);
    FourierCoefficients fh = forward(f, band);
    VectorField back = inverse(fh, f.grid);
    CHECK((back.values - f.values).cwiseAbs().maxCoeff() < 1e-11);
    // single-point evaluation agrees with the grid values
    for (std::size_t x = 0; x < 5; ++x) {
      VectorXcd v = evaluate(fh, f.grid->nodes[x * 7]);
      CHECK((v.transpose() - f.values.row(Eigen::Index(x * 7))).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("zero coefficients give the zero field; single entry gives a character") {
  auto t1 = make_torus(1);
  FourierCoefficients c = zero_coefficients(t1, 3, 1);
  auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(6));
  CHECK(inverse(c, grid).values.cwiseAbs().maxCoeff() == 0.0);
  c.at(0, t1->irrep_index(IrrepId{{2}, 1}, 3))(0, 0) = 1.0;
  VectorField f = inverse(c, grid);
  for (std::size_t x = 0; x < grid->size(); ++x)
    CHECK(std::abs(f.values(Eigen::Index(x), 0) - std::polar(1.0, 2.0 * grid->nodes[x][0])) < 1e-13);
}

TEST_CASE("Plancherel identities") {
  auto t1 = make_torus(1);
  auto grid1 = std::make_shared<QuadratureGrid>(t1->quadrature(8));
  VectorField e3 = sampled_field(t1, grid1, 1, [](const GroupElement& g) {
    VectorXcd v(1);
    v << std::polar(1.0, 3.0 * g[0]);
    return v;
  });
  CHECK(std::abs(plancherel_norm(forward(e3, 4)) - 1.0) < 1e-13);

  auto su2 = make_su2();
  auto grid2 = std::make_shared<QuadratureGrid>(su2->quadrature(4));
  IrrepId half{{1}, 2};
  VectorField dhalf = sampled_field(su2, grid2, 1, [&](const GroupElement& g) {
    VectorXcd v(1);
    v << su2->irrep_matrix(half, g)(0, 0);
    return v;
  });
  // d ||f_hat||^2 = 2 (1/2)^2 = 1/2
  CHECK(std::abs(plancherel_norm(forward(dhalf, 2)) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(plancherel_norm(zero_coefficients(su2, 2, 1)) == 0.0);

  // Plancherel vs grid L2 norm and Parseval polarization on random fields
  for (auto model : {make_torus(1), make_su2()}) {
    const int band = model->name() == "SU2" ? 3 : 10;
    VectorField f = random_field(model, band, 2, 7);
    VectorField g = random_field(model, band, 2, 8);
    g.grid = f.grid;
    FourierCoefficients fh = forward(f, band), gh = forward(g, band);
    CHECK(std::abs(plancherel_norm(fh) - grid_l2_norm(f)) < 1e-10 * (1 + grid_l2_norm(f)));
    CHECK(std::abs(coefficient_inner(fh, gh) - grid_inner(f, g)) <
          1e-10 * (1 + std::abs(grid_inner(f, g))));
  }
}

TEST_CASE("translation equivariance on T^1: shift becomes a phase") {
  auto t1 = make_torus(1);
  const int band = 6;
  auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(2 * band));
  VectorField f = random_field(t1, band, 1, 5, 2 * band);
  const double theta0 = 0.513;
  FourierCoefficients fh = forward(f, band);
  // left translate on the grid by evaluating the series at g0^{-1} x
  GroupElement g0(1);
  g0 << theta0;
  VectorField shifted = sampled_field(t1, grid, 1, [&](const GroupElement& g) {
    return evaluate(fh, t1->multiply(t1->inverse(g0), g));
  });
  FourierCoefficients sh = forward(shifted, band);
  auto dual = t1->enumerate_dual(band);
  for (std::size_t j = 0; j < dual.size(); ++j) {
    const Complex phase = std::polar(1.0, -dual[j].label[0] * theta0);
    CHECK(std::abs(sh.at(0, int(j))(0, 0) - fh.at(0, int(j))(0, 0) * phase) < 1e-10);
  }
}

TEST_CASE("resolution guard: coarse grids are rejected") {
  auto t1 = make_torus(1);
  VectorField f = random_field(t1, 4, 1, 3, 4);  // grid exactness 4 < 2*4
  CHECK_THROWS_AS(forward(f, 4), ResolutionError);
}

TEST_CASE("tau-invariance classification on the dual side") {
  auto su2 = make_su2();
  const int band = 3;
  BundleSpec triv = make_trivial_bundle(su2);

  // projected fields have near-zero defect; projection is idempotent
  std::mt19937_64 seeds(17);
  for (int trial = 0; trial < 3; ++trial) {
    FourierCoefficients c = random_coefficients(su2, band, 1, seeds());
    FourierCoefficients pc = subgroup_average(triv, c);
    CHECK(tau_invariance_defect(triv, pc) < 1e-12);
    FourierCoefficients ppc = subgroup_average(triv, pc);
    double d = 0.0;
    for (std::size_t k = 0; k < pc.data.size(); ++k)
      d = std::max(d, (ppc.data[k] - pc.data[k]).cwiseAbs().maxCoeff());
    CHECK(d < 1e-12);
  }

  // D^{1/2}_{00} is not right-K-invariant: defect stays away from zero
  auto grid = std::make_shared<QuadratureGrid>(su2->quadrature(2 * band));
  IrrepId half{{1}, 2};
  VectorField dhalf = sampled_field(su2, grid, 1, [&](const GroupElement& g) {
    VectorXcd v(1);
    v << su2->irrep_matrix(half, g)(0, 0);
    return v;
  });
  CHECK(tau_invariance_defect(triv, forward(dhalf, band)) > 0.1);
  CHECK(tau_invariance_defect(triv, zero_coefficients(su2, band, 1)) == 0.0);

  // projection with trivial tau annihilates half-integer characters
  VectorField chi_half = sampled_field(su2, grid, 1, [&](const GroupElement& g) {
    VectorXcd v(1);
    v << su2->irrep_matrix(half, g).trace();
    return v;
  });
  VectorField proj = subgroup_average(triv, chi_half, band);
  CHECK(proj.values.cwiseAbs().maxCoeff() < 1e-12);

  // K-integral oracle: P f(g) = int_K f(g k) dk evaluated pointwise
  FourierCoefficients c = random_coefficients(su2, band, 1, 99);
  FourierCoefficients pc = subgroup_average(triv, c);
  SubgroupInfo info = su2->subgroup();
  const int nk = 64;
  for (std::size_t x = 0; x < 4; ++x) {
    const GroupElement& g = grid->nodes[x * 101];
    Complex acc = 0.0;
    for (int a = 0; a < nk; ++a) {
      GroupElement k = su2->subgroup_element(info.period * a / nk);
      acc += evaluate(c, su2->multiply(g, k))[0] / double(nk);
    }
    CHECK(std::abs(acc - evaluate(pc, g)[0]) < 1e-11);
  }
}
