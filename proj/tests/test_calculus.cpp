// Composition and adjoint (exact vs asymptotic), Sobolev norms, operator
// norms, parametrices, parameter ellipticity and Garding certificates.

#include <random>

#include "doctest.h"
#include "groupquant/garding.hpp"
#include "groupquant/parametrix.hpp"

using namespace gq;

TEST_CASE("compose_exact: identities, invariant contraction, mult o derivative") {
  auto t1 = make_torus(1);
  const int band = 8;
  MatrixSymbol id = identity_symbol(t1, band, 2);
  CHECK(compose_exact(id, id, band).distance(id) < 1e-12);

  // invariant pair: brute-force middle-index contraction oracle
  std::mt19937_64 seeds(71);
  MatrixSymbol a = random_invariant_symbol(t1, band, 2, 3, 0.0, seeds());
  MatrixSymbol b = random_invariant_symbol(t1, band, 3, 2, 0.0, seeds());
  MatrixSymbol ba = compose_exact(b, a, band);
  for (std::size_t j = 0; j < ba.dual().size(); ++j)
    for (int i = 0; i < 2; ++i)
      for (int s = 0; s < 2; ++s) {
        MatrixXcd expect = MatrixXcd::Zero(1, 1);
        for (int r = 0; r < 3; ++r)
          expect += b.at(r, s, 0, int(j)) * a.at(i, r, 0, int(j));
        CHECK((ba.at(i, s, 0, int(j)) - expect).cwiseAbs().maxCoeff() < 1e-10);
      }

  // multiplication by e^{i theta} after d/dtheta: sigma = e^{i theta} i k
  auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(2 * band + 2));
  MatrixSymbol mult = multiplication_symbol(
      t1, band, grid, [](const GroupElement& g) { return std::polar(1.0, g[0]); }, 1);
  MatrixSymbol ddth = generator_symbol(t1, band, 0);
  MatrixSymbol comp = compose_exact(mult, ddth, band - 1);
  REQUIRE(comp.is_sampled());
  for (std::size_t x = 0; x < comp.xgrid()->size(); x += 3)
    for (std::size_t j = 0; j < comp.dual().size(); ++j) {
      const Complex expect = std::polar(1.0, comp.xgrid()->nodes[x][0]) *
                             Complex(0, comp.dual()[j].label[0]);
      CHECK(std::abs(comp.at(0, 0, x, int(j))(0, 0) - expect) < 1e-9);
    }
}

TEST_CASE("composition expansion: exactness and decay on T^1") {
  auto t1 = make_torus(1);
  const int band = 12;

  // invariant pair: the order-zero term is already exact
  MatrixSymbol a = random_invariant_symbol(t1, band, 1, 1, 0.0, 5);
  MatrixSymbol b = random_invariant_symbol(t1, band, 1, 1, 0.0, 6);
  SymbolClassSpec s0{0.0, 1.0, 0.0, WeightKind::Subelliptic};
  ExpansionReport inv_rep = compose_asymptotic(b, a, 1, s0, s0);
  CHECK(inv_rep.orders[0].residual_l2 < 1e-10);
  CHECK(inv_rep.orders[1].residual_l2 < 1e-10);

  // multiplication symbol composed after derivative: order-1 term closes the
  // expansion exactly (the Newton series of an affine symbol terminates)
  auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(2 * band + 2));
  MatrixSymbol mult = multiplication_symbol(
      t1, band, grid, [](const GroupElement& g) { return std::polar(1.0, g[0]); }, 1);
  MatrixSymbol ik = generator_symbol(t1, band, 0);
  SymbolClassSpec s1{1.0, 1.0, 0.0, WeightKind::Subelliptic};
  ExpansionReport rep = compose_asymptotic(ik, mult, 2, s1, s0);
  CHECK(rep.orders[0].residual_l2 > 0.1);   // genuinely wrong at order 0
  CHECK(rep.orders[1].residual_l2 < 1e-9);  // exact at order 1
  CHECK(rep.orders[2].residual_l2 < 1e-9);

  // (1 + L) after a multiplication-type order -2 symbol: the expansion
  // terminates at the weight-polynomial degree and the weighted residuals
  // carry closed-form constants sqrt(5), 2, then the floor
  auto measure = [&](int bb) {
    MatrixSymbol wsym = weight_symbol(t1, bb, 2.0, WeightKind::Subelliptic);
    auto g2 = std::make_shared<QuadratureGrid>(t1->quadrature(2 * bb + 2));
    MatrixSymbol ssym = MatrixSymbol::sampled(t1, bb, 1, 1, g2, 1);
    auto dual = t1->enumerate_dual(bb);
    for (std::size_t x = 0; x < g2->size(); ++x)
      for (std::size_t j = 0; j < dual.size(); ++j) {
        const double k = dual[j].label[0];
        ssym.at(0, 0, x, int(j))(0, 0) = std::polar(1.0, g2->nodes[x][0]) / (1.0 + k * k);
      }
    SymbolClassSpec sw{2.0, 1.0, 0.0, WeightKind::Subelliptic};
    SymbolClassSpec sm{-2.0, 1.0, 0.0, WeightKind::Subelliptic};
    return compose_asymptotic(wsym, ssym, 2, sw, sm);
  };
  ExpansionReport r1 = measure(12), r2 = measure(24);
  CHECK(std::abs(r1.orders[0].residual_weighted_l2 - std::sqrt(5.0)) < 1e-9);
  CHECK(std::abs(r1.orders[1].residual_weighted_l2 - 2.0) < 1e-9);
  CHECK(r1.orders[2].residual_weighted_l2 < 1e-8);
  for (int k = 0; k < 3; ++k) {
    const double d1 = r1.orders[k].residual_weighted_l2, d2 = r2.orders[k].residual_weighted_l2;
    const bool floor = d1 < 1e-8 && d2 < 1e-8;
    CHECK((floor || std::abs(d1 - d2) < 0.10 * std::max(d1, d2)));  // band stability
  }
}

TEST_CASE("adjoints: kernel route, pairing, involution, expansions") {
  auto t1 = make_torus(1);
  const int band = 8;

  // invariant symbol: adjoint is the fiber-swapped matrix adjoint
  MatrixSymbol a = random_invariant_symbol(t1, band, 2, 2, 0.0, 17);
  MatrixSymbol astar = adjoint_exact(a, band);
  CHECK_FALSE(astar.is_sampled());
  for (std::size_t j = 0; j < a.dual().size(); ++j)
    for (int i = 0; i < 2; ++i)
      for (int r = 0; r < 2; ++r)
        CHECK((astar.at(i, r, 0, int(j)) - a.at(r, i, 0, int(j)).adjoint()).cwiseAbs().maxCoeff() <
              1e-12);

  // self-adjoint Laplacian; multiplication adjoint is the conjugate
  auto su2 = make_su2();
  MatrixSymbol lap = laplacian_symbol(su2, 3, 1);
  CHECK(adjoint_exact(lap, 3).distance(lap) < 1e-10);

  auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(2 * band + 2));
  auto phi = [](const GroupElement& g) { return Complex(0.3) + std::polar(0.9, g[0]); };
  MatrixSymbol mult = multiplication_symbol(t1, band, grid, phi, 1);
  MatrixSymbol mstar = adjoint_exact(mult, band - 1);
  REQUIRE(mstar.is_sampled());
  for (std::size_t x = 0; x < mstar.xgrid()->size(); x += 5)
    for (std::size_t j = 0; j < mstar.dual().size(); ++j)
      CHECK(std::abs(mstar.at(0, 0, x, int(j))(0, 0) -
                     std::conj(phi(mstar.xgrid()->nodes[x]))) < 1e-9);

  // pairing <Af, g> = <f, A* g> and involution on random sampled symbols.
  // The truncated operator determines an x-dependent symbol only away from
  // the band edge, so the involution is compared at band - 2 x_band.
  std::mt19937_64 seeds(23);
  MatrixSymbol s = random_sampled_symbol(t1, 8, 2, 2, 0.0, 1, seeds());
  MatrixSymbol sstar = adjoint_exact(s, 8);
  MatrixSymbol sback = adjoint_exact(sstar, 8);
  CHECK(sback.truncated(6).distance(s.truncated(6)) < 1e-9);
  {
    CoeffOperator op_s = CoeffOperator::from_symbol(s);
    CoeffOperator op_b = CoeffOperator::from_symbol(sback);
    // at the operator level the involution is exact at the full band
    CHECK((op_s.dense() - op_b.dense()).cwiseAbs().maxCoeff() < 1e-11);
  }
  for (int trial = 0; trial < 10; ++trial) {
    VectorField f = random_field(t1, 8, 2, seeds(), s.xgrid()->band);
    VectorField g = random_field(t1, 8, 2, seeds(), s.xgrid()->band);
    g.grid = f.grid;
    const Complex lhs = grid_inner(quantize_apply(s, f), g);
    const Complex rhs = grid_inner(f, quantize_apply(sstar, g));
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1.0 + std::abs(lhs)));
  }

  // adjoint expansion: first-order x-dependence closes at order one
  SymbolClassSpec s0{0.0, 1.0, 0.0, WeightKind::Subelliptic};
  MatrixSymbol egk = [&] {
    MatrixSymbol m = MatrixSymbol::sampled(t1, band, 1, 1, grid, 1);
    auto dual = t1->enumerate_dual(band);
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    std::vector<Complex> mk(dual.size());
    for (auto& v : mk) v = Complex(gauss(rng), gauss(rng));
    for (std::size_t x = 0; x < grid->size(); ++x)
      for (std::size_t j = 0; j < dual.size(); ++j)
        m.at(0, 0, x, int(j))(0, 0) = std::polar(1.0, grid->nodes[x][0]) * mk[j];
    return m;
  }();
  ExpansionReport arep = adjoint_asymptotic(egk, 2, s0);
  CHECK(arep.orders[0].residual_l2 > 1e-3);
  CHECK(arep.orders[1].residual_l2 < 1e-9);
  CHECK(arep.orders[2].residual_l2 < 1e-9);
}

TEST_CASE("sobolev norms and the embedding chain") {
  auto t1 = make_torus(1);
  FourierCoefficients c = zero_coefficients(t1, 4, 1);
  c.at(0, t1->irrep_index(IrrepId{{2}, 1}, 4))(0, 0) = 1.0;
  CHECK(std::abs(sobolev_norm(c, 1.0, WeightKind::Elliptic) - std::sqrt(5.0)) < 1e-13);
  CHECK(std::abs(sobolev_norm(c, 0.0, WeightKind::Elliptic) - plancherel_norm(c)) < 1e-14);

  // subelliptic s-norm sits between elliptic s/kappa and elliptic s (kappa = 2)
  auto su2 = make_su2();
  std::mt19937_64 seeds(31);
  for (int trial = 0; trial < 5; ++trial) {
    FourierCoefficients f = random_coefficients(su2, 4, 1, seeds());
    const double s = 1.7;
    const double sub = sobolev_norm(f, s, WeightKind::Subelliptic);
    CHECK(sub <= sobolev_norm(f, s, WeightKind::Elliptic) + 1e-12);
    CHECK(sub >= sobolev_norm(f, s / 2.0, WeightKind::Elliptic) - 1e-12);
  }
}

TEST_CASE("l2 operator norms") {
  auto t1 = make_torus(1);
  CHECK(std::abs(l2_operator_norm(identity_symbol(t1, 12, 2)) - 1.0) < 1e-12);

  // order-0 symbol ik/<k>: sup |k|/<k> < 1, band-stable
  auto mk = [&](int band) {
    MatrixSymbol s = MatrixSymbol::invariant(t1, band, 1, 1);
    for (std::size_t j = 0; j < s.dual().size(); ++j) {
      const double k = s.dual()[j].label[0];
      s.at(0, 0, 0, int(j))(0, 0) = Complex(0, k) / std::sqrt(1.0 + k * k);
    }
    return s;
  };
  const double n1 = l2_operator_norm(mk(16));
  const double n2 = l2_operator_norm(mk(32));
  CHECK(n1 < 1.0);
  CHECK(std::abs(n1 - n2) < 0.01 * n2);

  // order -1 symbol: two-band drift < 1%
  const double m1 = l2_operator_norm(weight_symbol(t1, 16, -1.0, WeightKind::Subelliptic));
  const double m2 = l2_operator_norm(weight_symbol(t1, 32, -1.0, WeightKind::Subelliptic));
  CHECK(std::abs(m1 - m2) < 0.01 * m2);
}

TEST_CASE("parametrix: invariant inverse, geometric decay, forced singularity") {
  auto t1 = make_torus(1);
  const int band = 16;
  SymbolClassSpec spec1{1.0, 1.0, 0.0, WeightKind::Subelliptic};

  // invariant weight: exact inverse at order zero
  MatrixSymbol w = weight_symbol(t1, band, 1.0, WeightKind::Subelliptic);
  ParametrixReport r0 = parametrix(w, spec1, 0);
  CHECK(r0.residual_l2[0] < 1e-12);
  CHECK(r0.parametrix.distance(weight_symbol(t1, band, -1.0, WeightKind::Subelliptic)) < 1e-10);

  // a(theta, k) = (2 + cos theta) <k>: residual norms decay geometrically
  auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(2 * band + 2));
  MatrixSymbol a = MatrixSymbol::sampled(t1, band, 1, 1, grid, 1);
  for (std::size_t x = 0; x < grid->size(); ++x)
    for (std::size_t j = 0; j < a.dual().size(); ++j) {
      const double k = a.dual()[j].label[0];
      a.at(0, 0, x, int(j))(0, 0) =
          (2.0 + std::cos(grid->nodes[x][0])) * std::sqrt(1.0 + k * k);
    }
  ParametrixReport rep = parametrix(a, spec1, 3);
  for (int k = 0; k + 1 <= 3; ++k) {
    if (rep.residual_l2[k] < 1e-8) break;
    CHECK(rep.residual_l2[k + 1] <= 0.7 * rep.residual_l2[k]);
  }
  CHECK(rep.residual_l2[3] < rep.residual_l2[0]);
  CHECK(rep.condition_number >= 1.0);  // scalar fiber: pointwise blocks are 1x1

  // non-elliptic a(k) = ik vanishes at k = 0: loud failure with witness
  MatrixSymbol ik = generator_symbol(t1, band, 0);
  CHECK_THROWS_AS(parametrix(ik, spec1, 1), EllipticityError);
}

TEST_CASE("parameter ellipticity along the negative axis") {
  auto t1 = make_torus(1);
  MatrixSymbol a = weight_symbol(t1, 16, 2.0, WeightKind::Subelliptic);  // 1 + L
  ParameterEllipticityReport rep =
      parameter_ellipticity_check(a, 2.0, std::acos(-1.0), 1e-4, 1e4, 25);
  CHECK(rep.bound <= 2.0 + 1e-9);  // diagonal closed form (sqrt|l| + w)^2 / (w^2 + |l|) <= 2
  CHECK(rep.bound >= 1.0);

  // identity at lambda = -1: finite bound
  ParameterEllipticityReport rid =
      parameter_ellipticity_check(identity_symbol(t1, 8, 1), 1.0, std::acos(-1.0), 1.0, 1.0, 1);
  CHECK(std::isfinite(rid.bound));

  // an eigenvalue crossing the sampled curve is a loud error with witness
  MatrixSymbol bad = identity_symbol(t1, 8, 1).scaled(-2.0);  // spectrum {-2}
  CHECK_THROWS_AS(parameter_ellipticity_check(bad, 1.0, std::acos(-1.0), 2.0, 2.0, 1),
                  EllipticityError);
}

TEST_CASE("Garding certificates") {
  auto t1 = make_torus(1);
  const int band = 16;

  // exact power M^m: (C1, C2) = (1, 0)
  MatrixSymbol wm = weight_symbol(t1, band, 2.0, WeightKind::Subelliptic);
  GardingCertificate c1 = garding_constants(wm, 2.0);
  CHECK(std::abs(c1.C1 - 1.0) < 1e-10);
  CHECK(c1.C2 == 0.0);

  // identity at order zero
  GardingCertificate cid = garding_constants(identity_symbol(t1, band, 1), 0.0);
  CHECK(std::abs(cid.C1 - 1.0) < 1e-10);
  CHECK(cid.C2 == 0.0);

  // variable coefficient (2 + cos theta) <k>^2 at band 32: C1 > 0.3, C2 <= 10
  auto mk = [&](int bb) {
    auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(2 * bb + 2));
    MatrixSymbol a = MatrixSymbol::sampled(t1, bb, 1, 1, grid, 1);
    for (std::size_t x = 0; x < grid->size(); ++x)
      for (std::size_t j = 0; j < a.dual().size(); ++j) {
        const double k = a.dual()[j].label[0];
        a.at(0, 0, x, int(j))(0, 0) = (2.0 + std::cos(grid->nodes[x][0])) * (1.0 + k * k);
      }
    return a;
  };
  GardingCertificate cv = garding_constants(mk(32), 2.0);
  CHECK(cv.C1 > 0.3);
  CHECK(cv.C2 <= 10.0);
  GardingCertificate cv2 = garding_constants(mk(64), 2.0);
  CHECK(std::abs(cv.C1 - cv2.C1) < 0.10 * cv2.C1);

  // hypothesis violation: Re a singular somewhere
  MatrixSymbol ik = generator_symbol(t1, 8, 0);  // purely skew: Re = 0
  CHECK_THROWS_AS(garding_constants(ik, 1.0), EllipticityError);
}
