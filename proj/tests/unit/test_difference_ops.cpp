#include <gtest/gtest.h>

#include "awscheme/difference_ops.hpp"
#include "awscheme/errors.hpp"

using namespace awscheme;

namespace {

const QBase q05{0.5};
const AWParams standard{q05, 0.9, 0.3, 0.3, 2.0, -1.0};
const BigParams big{q05, 0.7, 0.3, 0.4, 1.0};
const LittleParams little{q05, 0.6, 0.2, 1.0};
const AWBesselParams awb{q05, 0.6, 0.3};
const QBesselParams bessel{q05, 0.4};

std::vector<OperatorSpec> all_operators() {
  return {aw_operator(standard),        aw_bessel_operator(awb),         big_jacobi_operator(big),
          big_bessel_operator(bessel),  little_jacobi_operator(little),  little_bessel_operator(bessel),
          dual_big_bessel_operator(bessel), dual_big_jacobi_operator(big)};
}

const std::vector<cplx> points{cplx(1.3, 0.4), cplx(0.7, -0.2), 2.5, cplx(-0.6, 0.9), 1.9};

}  // namespace

TEST(ApplyOp, ConstantsAreAnnihilated) {
  for (const OperatorSpec& op : all_operators()) {
    for (cplx x : points) EXPECT_EQ(apply_op(op, [](cplx) { return cplx(1.0); }, x), cplx(0.0)) << to_string(op.family);
  }
}

TEST(ApplyOp, CoefficientPoleIsReported) {
  try {
    apply_op(aw_operator(standard), [](cplx) { return cplx(1.0); }, 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::pole);
  }
  EXPECT_THROW(apply_op(little_jacobi_operator(little), [](cplx) { return cplx(1.0); }, 0.0), Error);
}

TEST(Operators, InversionSymmetricCoefficients) {
  for (const OperatorSpec& op : {aw_operator(standard), aw_bessel_operator(awb)}) {
    for (cplx x : points) EXPECT_EQ(op.coeff_B(x), op.coeff_A(1.0 / x));
  }
}

TEST(Operators, JacobiEigenvaluesInvariantUnderInversion) {
  for (const OperatorSpec& op : {aw_operator(standard), big_jacobi_operator(big), little_jacobi_operator(little)}) {
    for (cplx g : {cplx(1.3, 0.4), cplx(0.2, 0.9)}) {
      EXPECT_LT(std::abs(op.eigenvalue(g) - op.eigenvalue(1.0 / g)), 1e-14);
    }
  }
}

TEST(EigenResidual, ConstantLittleJacobiFunction) {
  auto eval = [](cplx g, cplx x) { return little_jacobi(little, g, x).value; };
  EXPECT_LT(eigen_residual(little_jacobi_operator(little), eval, little.a, points), 1e-15);
}

TEST(EigenResidual, AllFamilies) {
  const cplx g(1.7, 0.3);
  struct Case {
    OperatorSpec op;
    Evaluator f;
    cplx label;
  };
  std::vector<Case> cases{
      {aw_operator(standard), [](cplx l, cplx x) { return aw_function(standard, l, x).value; }, g},
      {aw_bessel_operator(awb), [](cplx l, cplx x) { return aw_qbessel(awb, l, x).value; }, g},
      {big_jacobi_operator(big), [](cplx l, cplx x) { return big_jacobi(big, l, x).value; }, g},
      {big_bessel_operator(bessel), [](cplx l, cplx x) { return big_qbessel(bessel, l, x).value; }, g},
      {little_jacobi_operator(little), [](cplx l, cplx x) { return little_jacobi(little, l, x).value; }, g},
      {little_bessel_operator(bessel), [](cplx l, cplx x) { return little_qbessel(bessel, l, x).value; }, g},
      {dual_big_bessel_operator(bessel), [](cplx x, cplx gg) { return big_qbessel(bessel, gg, x).value; }, 0.7},
      {dual_big_jacobi_operator(big), [](cplx x, cplx gg) { return big_jacobi(big, gg, x).value; }, 1.9},
  };
  for (const Case& c : cases) {
    EXPECT_LT(eigen_residual(c.op, c.f, c.label, points), 1e-10) << to_string(c.op.family);
    // negative control: a shifted eigenvalue must be caught
    OperatorSpec wrong = c.op;
    wrong.eigenvalue = [ev = c.op.eigenvalue](cplx l) { return ev(l) + 0.1; };
    EXPECT_GT(eigen_residual(wrong, c.f, c.label, points), 1e-3) << to_string(c.op.family);
  }
}

TEST(BigBesselCoefficients, SatisfySpectralEquation) {
  // J_gamma(q^{p+1}/(a gamma)) as a function of gamma at fixed index
  const OperatorSpec op = dual_big_bessel_operator(bessel);
  for (double g0 : {0.05, 0.5, 5.0, 50.0}) {
    for (double x : {-0.25, 0.8, 3.0}) {
      auto f = [&](cplx, cplx g) { return big_qbessel(bessel, g, x).value; };
      EXPECT_LT(eigen_residual(op, f, x, {g0, cplx(g0, g0)}), 1e-10);
    }
  }
}

TEST(Continuation, ConstantPropagates) {
  // the constant is the recessive solution in one direction, so rounding
  // grows there; a few steps stay close in both
  const OperatorSpec op = little_jacobi_operator(little);
  for (Direction d : {Direction::up, Direction::down}) {
    auto v = continue_on_qline(op, little.a, 1.0, 1.0, 1.0, d, 6);
    for (cplx f : v) EXPECT_LT(std::abs(f - 1.0), 1e-11);
  }
}

TEST(Continuation, MatchesSeriesInsideTheDisc) {
  const OperatorSpec op = big_jacobi_operator(big);
  const cplx g(0.6, 0.8);
  const double x0 = 0.05;
  auto v = continue_on_qline(op, g, x0, big_jacobi_series(big, g, x0).value, big_jacobi_series(big, g, 0.5 * x0).value,
                             Direction::up, 5);
  for (int j = 0; j < 5; ++j) {
    cplx s = big_jacobi_series(big, g, x0 * std::pow(2.0, j + 1)).value;
    EXPECT_LT(std::abs(v[j] - s) / std::abs(s), 1e-10);
  }
}

TEST(Continuation, ReproducesTheZGrid) {
  const OperatorSpec op = big_jacobi_operator(big);
  const cplx g(0.6, 0.8);
  const double z = 1.0;
  // seeds at z q^1, z q^0 step up to z q^{-1}
  auto v = continue_on_qline(op, g, z, big_jacobi(big, g, z).value, big_jacobi(big, g, 0.5 * z).value, Direction::up, 1);
  cplx s = big_jacobi_series(big, g, 2.0 * z).value;
  EXPECT_LT(std::abs(v[0] - s) / std::abs(s), 1e-10);
}

TEST(Continuation, StepBoundAndOverflowGuard) {
  const OperatorSpec op = little_jacobi_operator(little);
  try {
    continue_on_qline(op, 0.3, 1.0, 1.0, 1.0, Direction::up, max_continuation_steps + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::instability);
  }
  try {
    continue_on_qline(op, 1e-30, 1.0, 1.0, 2.0, Direction::up, 150);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::instability);
  }
}
