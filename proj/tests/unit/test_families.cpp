#include <gtest/gtest.h>

#include <random>

#include "awscheme/errors.hpp"
#include "awscheme/families.hpp"
#include "oracle_values.hpp"

using namespace awscheme;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

const QBase q05{0.5};
const AWParams standard{q05, 0.9, 0.3, 0.3, 2.0, -1.0};
const BigParams big{q05, 0.7, 0.3, 0.4, 1.5};
const LittleParams little{q05, 0.6, 0.2, 1.0};
const AWBesselParams awb{q05, 0.6, 0.3};
const QBesselParams bessel03{q05, 0.3};

}  // namespace

TEST(AWParams, DualOfDualRoundTrips) {
  AWParams dd = standard.dual().dual();
  EXPECT_NEAR(dd.a, standard.a, 1e-14);
  EXPECT_NEAR(dd.b, standard.b, 1e-14);
  EXPECT_NEAR(dd.c, standard.c, 1e-14);
  EXPECT_NEAR(dd.d, standard.d, 1e-14);
  EXPECT_NEAR(dd.t, standard.t, 1e-14);
}

TEST(AWParams, StandardSetAndItsDualAreAdmissible) {
  EXPECT_TRUE(standard.violations().empty());
  EXPECT_TRUE(standard.dual().violations().empty());
}

TEST(AWParams, ViolationNamesTheCondition) {
  AWParams p = standard;
  p.b = 0.95;
  auto v = p.violations();
  ASSERT_FALSE(v.empty());
  EXPECT_NE(v.front().find("b <= a"), std::string::npos);
  try {
    p.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::validation);
  }
}

TEST(OtherParams, Validation) {
  EXPECT_TRUE(big.violations().empty());
  EXPECT_TRUE(little.violations().empty());
  EXPECT_FALSE((LittleParams{q05, 0.2, 0.6, 1.0}).violations().empty());
  EXPECT_FALSE((BigParams{q05, 0.3, 0.7, 0.2, 1.0}).violations().empty());
  EXPECT_FALSE((QBesselParams{q05, 1.2}).violations().empty());
  EXPECT_FALSE((AWBesselParams{q05, 0.3, 0.6}).violations().empty());
}

TEST(AWFunction, MatchesOracle) {
  EXPECT_LT(rel(aw_function(standard, cplx(1.7, 0.4), cplx(0.8, 0.5)).value, oracle::aw_std_g17_x08), 1e-13);
  EXPECT_LT(rel(aw_function(standard, cplx(0.3, 0.1), cplx(2.5, -0.3)).value, oracle::aw_std_g03_x25), 1e-13);
  EXPECT_LT(rel(aw_function(standard, -2.7e6, -1.3).value, oracle::aw_std_gbig_x13), 1e-12);
}

TEST(AWFunction, RemovableSingularityOnLatticePairs) {
  AWParams p = standard;
  p.t = -1.3;
  cplx g = oracle::aw_lattice_gamma;
  EXPECT_LT(rel(aw_function(p, g, -2.6, AWRoute::series).value, oracle::aw_lattice_x26), 1e-12);
}

TEST(AWFunction, AllRoutesAgree) {
  cplx g(1.4, 0.6), x(0.7, 0.9);
  cplx s = aw_function(standard, g, x, AWRoute::series).value;
  EXPECT_LT(rel(aw_function(standard, g, x, AWRoute::inverted).value, s), 1e-11);
  EXPECT_LT(rel(aw_function(standard, g, x, AWRoute::dual).value, s), 1e-11);
}

TEST(AWFunction, SymmetricInBAndC) {
  AWParams p{q05, 0.9, 0.3, 0.45, 2.0, -1.0};
  AWParams sw = p;
  std::swap(sw.b, sw.c);
  cplx g(1.3, 0.5), x(0.6, 1.1);
  EXPECT_EQ(aw_function(p, g, x, AWRoute::series).value, aw_function(sw, g, x, AWRoute::series).value);
}

TEST(AWFunction, AlmostSymmetricInAAndB) {
  AWParams p{q05, 0.9, 0.45, 0.3, 2.0, -1.0};
  AWParams sw = p;
  std::swap(sw.a, sw.b);
  const AWParams dp = p.dual();
  const double qv = 0.5;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> r(1.1, 2.5), th(0.1, 3.0);
  for (int i = 0; i < 10; ++i) {
    cplx g = std::polar(r(rng), th(rng)), x = std::polar(r(rng), th(rng));
    cplx ratio = qpoch(dp.c * g, q05).value * qpoch(qv * p.b / p.d, q05).value * qpoch(dp.c / g, q05).value /
                 (qpoch(qv * g / dp.d, q05).value * qpoch(qv * p.a / p.d, q05).value * qpoch(qv / (dp.d * g), q05).value);
    cplx lhs = aw_function(p, g, x, AWRoute::series).value;
    cplx rhs = ratio * aw_function(sw, g, x, AWRoute::series).value;
    EXPECT_LT(rel(lhs, rhs), 1e-11);
  }
}

TEST(AWFunction, InversionInTheOverlapAnnulus) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> r(0.3, 3.0), th(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    cplx g = std::polar(r(rng), th(rng)), x = std::polar(r(rng), th(rng));
    EXPECT_LT(rel(aw_function(standard, g, x, AWRoute::series).value, aw_function(standard, g, x, AWRoute::inverted).value),
              1e-11);
  }
}

TEST(AWFunction, SelfDuality) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> r(1.05, 2.5), th(-3.0, 3.0);
  const AWParams dp = standard.dual();
  for (int i = 0; i < 20; ++i) {
    cplx g = std::polar(r(rng), th(rng)), x = std::polar(r(rng), th(rng));
    EXPECT_LT(rel(aw_function(standard, g, x, AWRoute::series).value, aw_function(dp, x, g, AWRoute::series).value), 1e-11);
  }
}

TEST(AWFunction, ConstantAtTheBottomOfTheSpectrum) {
  const double g = 1.0 / standard.dual().a;
  cplx v1 = aw_function(standard, g, cplx(0.8, 0.5)).value;
  cplx v2 = aw_function(standard, g, cplx(-1.7, 0.2)).value;
  cplx v3 = aw_function(standard, g, 2.9).value;
  EXPECT_LT(rel(v2, v1), 1e-12);
  EXPECT_LT(rel(v3, v1), 1e-12);
}

TEST(AWFunction, PolynomialReduction) {
  const double at = standard.dual().a;
  for (int n = 0; n <= 6; ++n) {
    for (cplx x : {cplx(0.8, 0.5), cplx(-1.4, 0.3)}) {
      cplx f = aw_function(standard, 1.0 / (at * std::pow(0.5, n)), x).value;
      EXPECT_LT(rel(f, aw_polynomial(standard, n, x).value), 1e-12) << "n=" << n;
    }
  }
}

TEST(AWQBessel, TrivialCasesAndSymmetry) {
  EXPECT_EQ(aw_qbessel(awb, 0.0, cplx(0.3, 0.4)).value, cplx(1.0));
  cplx x(0.6, 0.8), g = 2.5;
  EXPECT_LT(rel(aw_qbessel(awb, g, x).value, aw_qbessel(awb, g, 1.0 / x).value), 1e-14);
}

TEST(AWQBessel, MatchesOracle) {
  EXPECT_LT(rel(aw_qbessel(awb, 0.5, cplx(0.6, 0.8)).value, oracle::aw_qbessel_05), 1e-13);
  EXPECT_LT(rel(aw_qbessel(awb, 10.0, cplx(0.6, 0.8)).value, oracle::aw_qbessel_10), 1e-12);
}

TEST(AWQBessel, DualToLittleJacobi) {
  LittleParams lp{q05, awb.a, awb.b, 1.0};
  for (cplx g : {cplx(0.8, 0.6), cplx(1.7, 0.2)}) {
    for (double x : {0.4, 2.0, 7.5}) {
      cplx lj = little_jacobi(lp, g, x).value;
      cplx ab = aw_qbessel(awb, awb.a * awb.b * x / 0.5, g).value;
      EXPECT_LT(rel(ab, lj), 1e-13);
    }
  }
}

TEST(BigJacobi, TrivialCases) {
  EXPECT_LT(std::abs(big_jacobi(big, big.a, cplx(0.4, 0.3)).value - 1.0), 1e-15);
  EXPECT_LT(std::abs(big_jacobi(big, cplx(0.6, 0.8), -1.0).value - 1.0), 1e-15);
  cplx g(1.3, 0.4), x = 0.8;
  EXPECT_LT(rel(big_jacobi(big, g, x).value, big_jacobi(big, 1.0 / g, x).value), 1e-13);
}

TEST(BigJacobi, MatchesOracle) {
  EXPECT_LT(rel(big_jacobi(big, cplx(0.6, 0.8), 1.5).value, oracle::big_jacobi_15), 1e-13);
  EXPECT_LT(rel(big_jacobi(big, cplx(20.0, 5.0), 1.5).value, oracle::big_jacobi_g20), 1e-12);
}

TEST(BigJacobi, ContinuationMatchesSeriesInOverlap) {
  // |bcx| = 0.12 |x| stays inside the disc up to x ~ 8; continuation starts at 0.7/0.12
  for (double x : {6.0, 7.0, 8.0}) {
    cplx g(0.6, 0.8);
    EXPECT_LT(rel(big_jacobi(big, g, x).value, big_jacobi_series(big, g, x).value), 1e-10);
  }
}

TEST(BigJacobi, PolynomialReduction) {
  for (int n = 0; n <= 6; ++n) {
    for (cplx x : {cplx(-0.5), cplx(1.5), cplx(0.3, 0.2)}) {
      cplx f = big_jacobi(big, big.a * std::pow(0.5, n), x).value;
      EXPECT_LT(rel(f, big_jacobi_polynomial(big, n, x).value), 1e-12) << "n=" << n;
    }
  }
}

TEST(CDqH, TrivialAndSymmetric) {
  EXPECT_EQ(cdqh_poly(big, cplx(0.4, 0.9), 0).value, cplx(1.0));
  cplx g(1.6, 0.3);
  EXPECT_LT(rel(cdqh_poly(big, g, 4).value, cdqh_poly(big, 1.0 / g, 4).value), 1e-13);
}

TEST(CDqH, EqualsBigJacobiOnTheMinusGrid) {
  for (int k = 0; k <= 6; ++k) {
    cplx g(0.8, 0.6);
    EXPECT_LT(rel(cdqh_poly(big, g, k).value, big_jacobi(big, g, -std::pow(0.5, k)).value), 1e-12);
  }
}

TEST(BigQBessel, TrivialCases) {
  EXPECT_EQ(big_qbessel(bessel03, 2.0, -1.0).value, cplx(1.0));
  EXPECT_EQ(big_qbessel(bessel03, 0.0, 3.0).value, cplx(1.0));
  try {
    big_qbessel(bessel03, 1.0, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain);
  }
}

TEST(BigQBessel, MatchesOracle) {
  EXPECT_LT(rel(big_qbessel(bessel03, 1.0, 0.5).value, oracle::big_qbessel_05), 1e-12);
  EXPECT_LT(rel(big_qbessel(bessel03, 1.0, 10.0).value, oracle::big_qbessel_10), 1e-12);
  EXPECT_LT(rel(big_qbessel(bessel03, 1.0, 1e3).value, oracle::big_qbessel_1e3), 1e-12);
}

TEST(BigQBessel, LaguerreForm) {
  for (int n = 0; n <= 6; ++n) {
    cplx g(1.3, -0.4);
    EXPECT_LT(rel(big_qbessel(bessel03, g, -std::pow(0.5, n)).value, q_laguerre(bessel03, g, n).value), 1e-12);
  }
}

TEST(QBesselCoeff, RepresentationsAgreeAndMatchTheFunction) {
  for (int p = -2; p <= 3; ++p) {
    cplx g(0.9, 0.3);
    CoefficientPair pair = qbessel_coeff_pair(bessel03, g, p);
    EXPECT_LT(pair.rel_discrepancy, 1e-12) << "p=" << p;
    cplx x = std::pow(0.5, p + 1) / (bessel03.a * g);
    EXPECT_LT(rel(qbessel_coeff(bessel03, g, p).value, big_qbessel(bessel03, g, x).value), 1e-12);
  }
  EXPECT_THROW(qbessel_coeff(bessel03, 0.0, 1), Error);
}

TEST(LittleJacobi, TrivialCases) {
  EXPECT_LT(std::abs(little_jacobi(little, little.a, 3.0).value - 1.0), 1e-15);
  EXPECT_EQ(little_jacobi(little, cplx(0.3, 0.2), 0.0).value, cplx(1.0));
}

TEST(LittleJacobi, MatchesOracle) {
  cplx g(0.3, 0.95);
  EXPECT_LT(rel(little_jacobi(little, g, 0.5).value, oracle::little_jacobi_05), 1e-13);
  EXPECT_LT(rel(little_jacobi(little, g, 10.0).value, oracle::little_jacobi_10), 1e-12);
  EXPECT_LT(rel(little_jacobi(little, g, 1e3).value, oracle::little_jacobi_1e3), 1e-11);
}

TEST(LittleJacobi, PolynomialReduction) {
  for (int n = 0; n <= 6; ++n) {
    for (double x : {0.5, 3.0, 20.0}) {
      cplx f = little_jacobi(little, little.a * std::pow(0.5, n), x).value;
      EXPECT_LT(rel(f, little_jacobi_polynomial(little, n, x).value), 1e-12) << "n=" << n;
    }
  }
}

TEST(LittleQBessel, TrivialSelfDualAndOracle) {
  EXPECT_EQ(little_qbessel(bessel03, cplx(2.0, 1.0), 0.0).value, cplx(1.0));
  cplx g(1.7, 0.3), x(0.4, -0.8);
  EXPECT_EQ(little_qbessel(bessel03, g, x).value, little_qbessel(bessel03, x, g).value);
  EXPECT_LT(rel(little_qbessel(bessel03, 1.0, 0.5).value, oracle::little_qbessel_05), 1e-13);
  EXPECT_LT(rel(little_qbessel(bessel03, 1.0, 10.0).value, oracle::little_qbessel_10), 1e-12);
  EXPECT_LT(rel(little_qbessel(bessel03, 1.0, 1e3).value, oracle::little_qbessel_1e3), 1e-12);
}
