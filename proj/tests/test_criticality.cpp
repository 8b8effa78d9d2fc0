#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qes/criticality.hpp"
#include "qes/sturm.hpp"
#include "qes/verification.hpp"

using namespace qes;

namespace {
Rational Q(long n, long d = 1) { return Rational(n, d); }
}

TEST_CASE("real root counts of the reduced polynomial") {
  CHECK(realRootCount(3, Q(4)) == 3);
  CHECK(realRootCount(3, Q(2)) == 1);
  CHECK(realRootCount(2, Q(0)) == 1);                    // double root, one distinct
  CHECK(realRootCountWithMultiplicity(2, Q(0)) == 2);
  CHECK(realRootCount(1, Q(17, 3)) == 1);                // Q_1 = F always
}

TEST_CASE("bivariate form reproduces the exact reduced polynomial") {
  for (int J : {2, 3, 5, 8, 11}) {
    BivariateReduced bv(J);
    for (int t : {-3, 2, 9}) {
      Rational K(t, 2);
      QuarticSpec spec(J, Q(0), K / Q(4));
      CAPTURE(J);
      REQUIRE(bv.atK(K) == toReduced(charPoly(buildOperator(spec)), spec));
    }
  }
}

TEST_CASE("critical points with closed-form answers") {
  CriticalPoint c2 = findCritical(2);
  CHECK(std::abs(c2.Kcrit) < 1e-12);
  CHECK(std::abs(c2.Fcrit) < 1e-12);
  CHECK(c2.newtonConverged);

  // F^3 - 4KF - 16 with a double root: F = -2, K = 3, exactly.
  CriticalPoint c3 = findCritical(3);
  CHECK(c3.Kcrit == doctest::Approx(3.0).epsilon(1e-11));
  CHECK(c3.Fcrit == doctest::Approx(-2.0).epsilon(1e-11));
}

TEST_CASE("published critical values for J = 4 and J = 29") {
  CriticalPoint c4 = findCritical(4);
  CHECK(std::abs(c4.Kcrit - 5.47086) < lastPlaceTolerance("5.47086"));
  CHECK(std::abs(c4.Fcrit - (-4.71894)) < lastPlaceTolerance("-4.71894"));

  CriticalPoint c29 = findCritical(29);
  CHECK(std::abs(c29.Kcrit - 40.2078) < lastPlaceTolerance("40.2078"));
  CHECK(std::abs(c29.Fcrit - (-148.458)) < lastPlaceTolerance("-148.458"));
}

TEST_CASE("degeneracy residuals and root-count drop across the boundary") {
  for (int J : {4, 7}) {
    CriticalPoint cp = findCritical(J);
    CAPTURE(J);
    CHECK(cp.residualQ < 1e-9);
    CHECK(cp.residualQF < 1e-9);
    Rational above{mpq_class(cp.Kcrit + 1e-3)}, below{mpq_class(cp.Kcrit - 1e-3)};
    CHECK(realRootCount(J, above) == J);
    CHECK(realRootCount(J, below) == J - 2);
    CHECK(realRootCountWithMultiplicity(J, above) == J);
    CHECK(realRootCountWithMultiplicity(J, below) == J - 2);
  }
}

TEST_CASE("the merging pair is the lowest two roots") {
  for (int J : {3, 5, 9}) {
    CriticalPoint cp = findCritical(J);
    BivariateReduced bv(J);
    Rational K{mpq_class(cp.Kcrit + 1e-3)};
    RationalPoly q = bv.atK(K);
    auto iso = isolateRealRoots(q);
    REQUIRE(iso.realCount == J);
    std::vector<double> roots;
    for (const auto& iv : iso.intervals) roots.push_back(refineRoot(q, iv.lo, iv.hi, 1e-12));
    CAPTURE(J);
    // two smallest straddle F_critical and collapse onto it
    CHECK(roots[0] < cp.Fcrit);
    CHECK(roots[1] > cp.Fcrit);
    CHECK(std::abs(roots[0] - cp.Fcrit) < 0.5);
    CHECK(std::abs(roots[1] - cp.Fcrit) < 0.5);
    // every other root stays well above
    for (size_t i = 2; i < roots.size(); ++i) CHECK(roots[i] > cp.Fcrit + 0.5);
  }
}

TEST_CASE("critical curve in the (a, b) plane") {
  CriticalCurve c3 = criticalCurve(3);
  CHECK(c3.b(0.0) == doctest::Approx(0.75).epsilon(1e-10));
  CHECK(c3.b(1.0) == doctest::Approx(0.5).epsilon(1e-10));
  CriticalCurve c2 = criticalCurve(2);
  CHECK(std::abs(c2.b(0.0)) < 1e-12);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(findCritical(1), std::invalid_argument);
  CHECK_THROWS_AS(realRootCount(0, Q(1)), std::invalid_argument);
}
