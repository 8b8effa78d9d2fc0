#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qes/polynomial.hpp"
#include "qes/roots.hpp"
#include "qes/sturm.hpp"

using namespace qes;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

// Independent oracle: plain double bisection on a sign-changing bracket.
double bisectOracle(double (*f)(double), double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

const RationalPoly kCubicK4{Q(-16), Q(-16), Q(0), Q(1)};  // F^3 - 16F - 16
const RationalPoly kCubicK3{Q(-16), Q(-12), Q(0), Q(1)};  // F^3 - 12F - 16 = (F+2)^2 (F-4)
const RationalPoly kCubicK2{Q(-16), Q(-8), Q(0), Q(1)};   // F^3 - 8F - 16

}  // namespace

TEST_CASE("rational parsing and canonical form") {
  CHECK(Rational::fromString("3/4") == Q(3, 4));
  CHECK(Rational::fromString("-6/8") == Q(-3, 4));
  CHECK(Rational::fromString("0.75") == Q(3, 4));
  CHECK(Rational::fromString("-3") == Q(-3));
  CHECK(Rational::fromString("2.5").str() == "5/2");
  CHECK(Q(4, 2).str() == "2");
  CHECK(Q(1, -2) == Q(-1, 2));  // denominator normalized positive
  CHECK_THROWS(Rational::fromString("1/0"));
  CHECK_THROWS(Rational::fromString("abc"));
}

TEST_CASE("polynomial arithmetic matches hand expansions") {
  // (F^2 - 1) - F^2 = -1
  RationalPoly f2m1{Q(-1), Q(0), Q(1)}, f2{Q(0), Q(0), Q(1)};
  CHECK(f2m1 - f2 == RationalPoly{Q(-1)});

  // (F+2)^2 (F-4) = F^3 - 12F - 16
  RationalPoly fp2{Q(2), Q(1)}, fm4{Q(-4), Q(1)};
  CHECK(fp2 * fp2 * fm4 == kCubicK3);

  // synthetic division
  auto [quo, rem] = divRem(kCubicK3, fp2);
  CHECK(quo == RationalPoly{Q(-8), Q(-2), Q(1)});
  CHECK(rem.isZero());

  CHECK_THROWS_WITH_AS(divRem(f2, RationalPoly()), "division by zero polynomial", std::domain_error);
}

TEST_CASE("divRem invariant p = q*d + r on random polynomials") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-9, 9), deg(0, 6);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> pc(static_cast<size_t>(deg(rng)) + 1), dcoef(static_cast<size_t>(deg(rng)) + 1);
    for (auto& c : pc) c = Q(coeff(rng));
    for (auto& c : dcoef) c = Q(coeff(rng));
    RationalPoly p(std::move(pc)), d(std::move(dcoef));
    if (d.isZero()) continue;
    auto [q, r] = divRem(p, d);
    CHECK(q * d + r == p);
    CHECK(r.degree() < d.degree());
  }
}

TEST_CASE("sturm counts distinct real roots") {
  CHECK(sturmCount(kCubicK4) == 3);  // discriminant 9472 > 0
  CHECK(sturmCount(kCubicK2) == 1);  // discriminant -4864 < 0
  RationalPoly fsq{Q(0), Q(0), Q(1)};
  CHECK(sturmCount(fsq) == 1);  // double root at 0, one distinct

  // half-open (lo, hi] semantics: a root at hi is counted, at lo it is not
  RationalPoly x{Q(0), Q(1)};
  CHECK(sturmCount(x, ExtendedRational::at(Q(-1)), ExtendedRational::at(Q(0))) == 1);
  CHECK(sturmCount(x, ExtendedRational::at(Q(0)), ExtendedRational::at(Q(1))) == 0);
}

TEST_CASE("isolateRealRoots recovers multiplicities") {
  auto iso = isolateRealRoots(kCubicK3);
  REQUIRE(iso.realCount == 2);
  CHECK(iso.realCountWithMultiplicity == 3);
  CHECK(iso.intervals[0].multiplicity == 2);
  CHECK(iso.intervals[1].multiplicity == 1);
  CHECK(std::abs(refineRoot(kCubicK3, iso.intervals[0].lo, iso.intervals[0].hi) - (-2.0)) < 1e-12);
  CHECK(std::abs(refineRoot(kCubicK3, iso.intervals[1].lo, iso.intervals[1].hi) - 4.0) < 1e-12);

  // F^2 - K at K=0: one distinct root at 0, multiplicity 2
  RationalPoly fsq{Q(0), Q(0), Q(1)};
  auto iso0 = isolateRealRoots(fsq);
  REQUIRE(iso0.realCount == 1);
  CHECK(iso0.intervals[0].multiplicity == 2);
  CHECK(std::abs(refineRoot(fsq, iso0.intervals[0].lo, iso0.intervals[0].hi)) < 1e-12);

  // E - b^2 - a at a=1, b=2: single root 5
  RationalPoly lin{Q(-5), Q(1)};
  auto isoLin = isolateRealRoots(lin);
  REQUIRE(isoLin.realCount == 1);
  CHECK(refineRoot(lin, isoLin.intervals[0].lo, isoLin.intervals[0].hi) == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("refineRoot against an independent bisection oracle") {
  // F^3 - 16F - 16 on the bracket (4, 5)
  double want = bisectOracle([](double f) { return f * f * f - 16 * f - 16; }, 4.0, 5.0);
  CHECK(want == doctest::Approx(4.428639486755070).epsilon(1e-13));
  double got = refineRoot(kCubicK4, Q(4), Q(5), 1e-9);
  CHECK(std::abs(got - want) < 1e-9);

  // F^2 - 9 isolating (2, 4) -> exactly 3
  RationalPoly f2m9{Q(-9), Q(0), Q(1)};
  CHECK(std::abs(refineRoot(f2m9, Q(2), Q(4), 1e-12) - 3.0) < 1e-12);

  // E with any bracket of 0 -> 0
  RationalPoly e{Q(0), Q(1)};
  CHECK(refineRoot(e, Q(-1), Q(1), 1e-12) == 0.0);

  CHECK_THROWS_AS(refineRoot(kCubicK4, Q(-10), Q(10), 1e-9), std::invalid_argument);  // 3 roots inside
  CHECK_THROWS_WITH_AS(refineRoot(kCubicK4, Q(4), Q(5), 1e-250), "refinement stalled",
                       std::runtime_error);
}

TEST_CASE("refineRoot result carries a sign change or tiny residual") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coeff(-8, 8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> pc(5);
    for (auto& c : pc) c = Q(coeff(rng));
    RationalPoly p(std::move(pc));
    if (p.isZero() || p.degree() < 1) continue;
    const double tol = 1e-10;
    for (const auto& iv : isolateRealRoots(p).intervals) {
      double r = refineRoot(p, iv.lo, iv.hi, tol);
      RationalPoly sf = squarefreePart(p);
      double lo = sf(Rational(mpq_class(r - tol))).toDouble();
      double hi = sf(Rational(mpq_class(r + tol))).toDouble();
      bool signChange = (lo <= 0 && hi >= 0) || (lo >= 0 && hi <= 0);
      double scale = 0;
      for (const auto& c : sf.coeffs()) scale = std::max(scale, std::abs(c.toDouble()));
      bool tinyResidual = std::abs(sf(Rational(mpq_class(r))).toDouble()) < 1e-7 * scale;
      CHECK((signChange || tinyResidual));
    }
  }
}

TEST_CASE("complexRoots oracle values and conjugate closure") {
  // F^2 + 1 -> {i, -i}
  RationalPoly f21{Q(1), Q(0), Q(1)};
  auto r = complexRoots(f21);
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - std::complex<double>(0, -1)) < 1e-12);
  CHECK(std::abs(r[1] - std::complex<double>(0, 1)) < 1e-12);

  // F^3 - 8F - 16: one real root and a conjugate pair. The expected values
  // satisfy the exact symmetric-function constraints (sum 0, product 16).
  auto r2 = complexRoots(kCubicK2);
  REQUIRE(r2.size() == 3);
  double realRoot = bisectOracle([](double f) { return f * f * f - 8 * f - 16; }, 3.0, 4.0);
  CHECK(realRoot == doctest::Approx(3.538584708477263).epsilon(1e-13));
  CHECK(std::abs(r2[2] - std::complex<double>(realRoot, 0.0)) < 1e-9);
  CHECK(std::abs(r2[0] - std::complex<double>(-1.769292354238631, -1.179485610044411)) < 1e-9);
  CHECK(std::abs(r2[1] - std::conj(r2[0])) == 0.0);  // exact pairing enforced

  // F^3 - 12F - 16 -> {-2, -2, 4} (double root resolved to ~sqrt(eps))
  auto r3 = complexRoots(kCubicK3);
  REQUIRE(r3.size() == 3);
  CHECK(std::abs(r3[0] - std::complex<double>(-2, 0)) < 1e-6);
  CHECK(std::abs(r3[1] - std::complex<double>(-2, 0)) < 1e-6);
  CHECK(std::abs(r3[2] - std::complex<double>(4, 0)) < 1e-12);

  CHECK_THROWS_AS(complexRoots(RationalPoly{Q(5)}), std::domain_error);
  CHECK_THROWS_AS(complexRoots(kCubicK2, 1e-30), std::runtime_error);  // unreachable tolerance
}

TEST_CASE("root bookkeeping: isolation count + complex pairs = degree") {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> coeff(-9, 9), deg(2, 7);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    std::vector<Rational> pc(static_cast<size_t>(deg(rng)) + 1);
    for (auto& c : pc) c = Q(coeff(rng));
    RationalPoly p(std::move(pc));
    if (p.isZero() || p.degree() < 2) continue;
    auto iso = isolateRealRoots(p);
    auto roots = complexRoots(p, 1e-7);
    REQUIRE(static_cast<int>(roots.size()) == p.degree());
    int offAxis = 0;
    for (const auto& z : roots)
      if (std::abs(z.imag()) > 1e-6) ++offAxis;
    // Only count trials where the float classification is unambiguous.
    bool ambiguous = false;
    for (const auto& z : roots)
      if (std::abs(z.imag()) > 1e-9 && std::abs(z.imag()) <= 1e-6) ambiguous = true;
    if (ambiguous) continue;
    CHECK(iso.realCountWithMultiplicity + offAxis == p.degree());
    ++checked;
  }
  CHECK(checked > 40);  // the generator must actually exercise the property
}

TEST_CASE("gcd(p, p') detects repeated roots exactly") {
  RationalPoly fp2{Q(2), Q(1)}, fm4{Q(-4), Q(1)};
  RationalPoly withSquare = fp2 * fp2 * fm4;
  CHECK(gcdMonic(withSquare, withSquare.derivative()).degree() == 1);
  CHECK(isolateRealRoots(withSquare).intervals[0].multiplicity == 2);

  RationalPoly squarefree = fp2 * fm4;
  CHECK(gcdMonic(squarefree, squarefree.derivative()).degree() == 0);
  for (const auto& iv : isolateRealRoots(squarefree).intervals) CHECK(iv.multiplicity == 1);

  // Yun decomposition of (F+2)^2 (F-4)
  auto factors = squarefreeDecomposition(withSquare);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].second == 1);
  CHECK(factors[0].first == fm4.monic());
  CHECK(factors[1].second == 2);
  CHECK(factors[1].first == fp2.monic());
}

TEST_CASE("cauchy bound dominates every root") {
  Rational b = cauchyBound(kCubicK4);
  CHECK(b == Q(17));  // 1 + 16/1
  for (const auto& z : complexRoots(kCubicK4)) CHECK(std::abs(z) < b.toDouble());
}
