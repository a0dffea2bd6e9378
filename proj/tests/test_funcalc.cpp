// Dunford-Riesz contour calculus against the exact spectral calculus, plus
// contour placement errors and the algebra-morphism property.

#include "doctest.h"
#include "groupquant/calculus.hpp"
#include "groupquant/contour.hpp"
#include "groupquant/errors.hpp"

using namespace gq;

TEST_CASE("constant F over a circle around the truncated spectrum") {
  auto t1 = make_torus(1);
  const int band = 12;
  MatrixSymbol a = weight_symbol(t1, band, 2.0, WeightKind::Subelliptic);  // 1 + L
  const double lmax = 1.0 + double(band) * band;
  Contour circle = Contour::spectrum_circle(1.0, lmax, 128);
  const Complex c0(0.8, 0.3);
  auto res = functional_calculus(a, [&](Complex) { return c0; }, circle);
  CHECK(res.symbol.distance(identity_symbol(t1, band, 1).scaled(c0)) < 1e-10);
}

TEST_CASE("resolvent keyhole: F(lambda) = (1+lambda)^{-1} and lambda^{-1} on T^1") {
  auto t1 = make_torus(1);
  const int band = 24;
  MatrixSymbol a = weight_symbol(t1, band, 2.0, WeightKind::Subelliptic);
  const double lmax = 1.0 + double(band) * band;
  Contour key = Contour::resolvent_keyhole(0.4, std::acos(-1.0) / 2.0, 1e10 * lmax, 256);

  auto res = functional_calculus(a, [](Complex z) { return 1.0 / (1.0 + z); }, key);
  MatrixSymbol oracle = spectral_symbol(t1, band, [](double lam) {
    return Complex(1.0 / (2.0 + lam), 0.0);  // F(1 + lam) with a = 1 + L
  });
  CHECK(res.symbol.distance(oracle) < 1e-8);

  auto res2 = functional_calculus(a, [](Complex z) { return 1.0 / z; }, key);
  MatrixSymbol oracle2 =
      spectral_symbol(t1, band, [](double lam) { return Complex(1.0 / (1.0 + lam), 0.0); });
  CHECK(res2.symbol.distance(oracle2) < 1e-8);
}

TEST_CASE("heat parabola on T^1 and SU(2)") {
  const double t = 0.1;
  for (auto model : {make_torus(1), make_su2()}) {
    const int band = model->name() == "SU2" ? 8 : 24;
    MatrixSymbol a = weight_symbol(model, band, 2.0, WeightKind::Subelliptic);
    Contour par = Contour::heat_parabola(0.5, t, 1.0, 256);
    auto res = functional_calculus(a, [&](Complex z) { return std::exp(-t * z); }, par);
    // subelliptic weight is diagonal: exact spectral oracle per weight entry
    MatrixSymbol oracle = a;
    for (std::size_t j = 0; j < a.dual().size(); ++j) {
      MatrixXcd blk = a.block(0, int(j));
      MatrixXcd e = blk;
      for (Eigen::Index u = 0; u < blk.rows(); ++u) e(u, u) = std::exp(-t * blk(u, u).real());
      oracle.set_block(0, int(j), e);
    }
    CHECK(res.symbol.distance(oracle) < 1e-6);
  }
}

TEST_CASE("sampled symbol path: resolvent of a variable-coefficient operator") {
  auto t1 = make_torus(1);
  const int band = 8;
  auto grid = std::make_shared<QuadratureGrid>(t1->quadrature(2 * band + 2));
  MatrixSymbol a = MatrixSymbol::sampled(t1, band, 1, 1, grid, 1);
  for (std::size_t x = 0; x < grid->size(); ++x)
    for (std::size_t j = 0; j < a.dual().size(); ++j) {
      const double k = a.dual()[j].label[0];
      a.at(0, 0, x, int(j))(0, 0) = (2.0 + std::cos(grid->nodes[x][0])) * (1.0 + k * k);
    }
  const double lmax = 3.0 * (1.0 + double(band) * band);
  Contour key = Contour::resolvent_keyhole(0.3, std::acos(-1.0) / 2.0, 1e10 * lmax, 256);
  auto res = functional_calculus(a, [](Complex z) { return 1.0 / (1.0 + z); }, key);
  // oracle: dense resolvent of the truncated operator at -1
  CoeffOperator op = CoeffOperator::from_symbol(a);
  CoeffOperator oracle_op = op.shifted(Complex(-1.0, 0.0)).inverse();
  CoeffOperator got = CoeffOperator::from_symbol(res.symbol);
  CHECK((got.dense() - oracle_op.dense()).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("algebra morphism at desk scale for commuting invariant symbols") {
  auto t1 = make_torus(1);
  const int band = 16;
  MatrixSymbol a = weight_symbol(t1, band, 2.0, WeightKind::Subelliptic);
  const double lmax = 1.0 + double(band) * band;
  Contour key = Contour::resolvent_keyhole(0.4, std::acos(-1.0) / 2.0, 1e10 * lmax, 256);
  auto f1 = functional_calculus(a, [](Complex z) { return 1.0 / (1.0 + z); }, key);
  auto f2 = functional_calculus(a, [](Complex z) { return 1.0 / (2.0 + z); }, key);
  auto f12 =
      functional_calculus(a, [](Complex z) { return 1.0 / ((1.0 + z) * (2.0 + z)); }, key);
  MatrixSymbol prod = compose_exact(f1.symbol, f2.symbol, band);
  CHECK(f12.symbol.distance(prod) < 1e-7);  // 10x contour tolerance
}

TEST_CASE("contour hitting the spectrum is a placement error") {
  auto t1 = make_torus(1);
  MatrixSymbol a = weight_symbol(t1, 8, 2.0, WeightKind::Subelliptic);
  Contour bad;
  bad.descriptor = "circle-through-spectrum";
  for (int j = 0; j < 64; ++j) {
    const double th = 2.0 * std::acos(-1.0) * j / 64;
    bad.nodes.push_back(Complex(1.0, 0.0) + 4.0 * std::polar(1.0, th));  // passes through 5
    bad.weights.push_back(std::polar(1.0, th) * Complex(0, 1));
  }
  CHECK_THROWS_AS(functional_calculus(a, [](Complex z) { return 1.0 / z; }, bad),
                  EllipticityError);
}
