#include "qes/qescore.hpp"

#include <algorithm>
#include <cmath>

#include "qes/roots.hpp"
#include "qes/sturm.hpp"

namespace qes {

RationalMatrix buildOperator(const QuarticSpec& spec) {
  const int J = spec.J;
  RationalMatrix m(J, J);
  m.setConstant(Rational(0));
  const Rational diagBase = spec.b * spec.b + spec.a;
  for (int row = 0; row < J; ++row) {
    if (row >= 1) m(row, row - 1) = Rational(2 * (row - J));
    m(row, row) = Rational(2 * row) * spec.a + diagBase;
    if (row + 1 < J) m(row, row + 1) = Rational(-2 * (row + 1)) * spec.b;
    if (row + 2 < J) m(row, row + 2) = Rational((row + 1) * (row + 2));
  }
  return m;
}

RationalPoly charPoly(const RationalMatrix& op) { return hessenbergCharPoly<Rational>(op); }

RationalPoly toReduced(const RationalPoly& polyInE, const QuarticSpec& spec) {
  RationalPoly shift{spec.energyShift(), Rational(1)};  // F + b^2 + J a
  return polyInE.compose(shift);
}

QesSpectrum qesEigenvalues(const QuarticSpec& spec, double tol) {
  RationalPoly q = charPoly(buildOperator(spec));
  QesSpectrum out{spec, q, {}, {}};

  RootIsolation isolation = isolateRealRoots(q);
  for (const auto& iv : isolation.intervals) {
    double r = refineRoot(q, iv.lo, iv.hi, tol);
    for (int k = 0; k < iv.multiplicity; ++k) out.realEigenvalues.push_back(r);
  }
  std::sort(out.realEigenvalues.begin(), out.realEigenvalues.end());

  int complexCount = spec.J - isolation.realCountWithMultiplicity;
  if (complexCount > 0) {
    // The J - R candidates furthest from the real axis are the complex ones;
    // the exact Sturm count fixes how many there must be.
    auto all = complexRoots(q, 1e-8);
    std::sort(all.begin(), all.end(), [](const std::complex<double>& x, const std::complex<double>& y) {
      return std::abs(x.imag()) > std::abs(y.imag());
    });
    all.resize(static_cast<size_t>(complexCount));
    std::sort(all.begin(), all.end(), [](const std::complex<double>& x, const std::complex<double>& y) {
      if (x.real() != y.real()) return x.real() < y.real();
      return std::abs(x.imag()) < std::abs(y.imag());
    });
    // Pair conjugates adjacently, positive imaginary part first.
    for (size_t i = 0; i + 1 < all.size(); i += 2) {
      std::complex<double> z = 0.5 * (all[i] + std::conj(all[i + 1]));
      out.complexEigenvalues.push_back(std::complex<double>(z.real(), std::abs(z.imag())));
      out.complexEigenvalues.push_back(std::complex<double>(z.real(), -std::abs(z.imag())));
    }
  }
  return out;
}

namespace {

Rational pw(const Rational& x, int k) {
  Rational r(1);
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace

RationalPoly referenceRawPolynomial(int J, const Rational& a, const Rational& b) {
  // Published closed forms for Q_1..Q_5; coefficients listed from E^0 up.
  const Rational a2 = a * a, a3 = a2 * a, a4 = a3 * a, a5 = a4 * a;
  const Rational b2 = b * b, b3 = b2 * b, b4 = b3 * b, b5 = b4 * b, b6 = b5 * b;
  const Rational b7 = b6 * b, b8 = b7 * b;
  switch (J) {
    case 1:
      return RationalPoly{-b2 - a, Rational(1)};
    case 2:
      return RationalPoly{b4 + Rational(4) * a * b2 - Rational(4) * b + Rational(3) * a2,
                          -(Rational(2) * b2 + Rational(4) * a), Rational(1)};
    case 3:
      return RationalPoly{
          -b6 - Rational(9) * a * b4 + Rational(16) * b3 - Rational(23) * a2 * b2 + Rational(48) * a * b -
              Rational(15) * a3 - Rational(16),
          Rational(3) * b4 + Rational(18) * a * b2 - Rational(16) * b + Rational(23) * a2,
          -(Rational(3) * b2 + Rational(9) * a), Rational(1)};
    case 4:
      return RationalPoly{
          b8 + Rational(16) * a * b6 - Rational(40) * b5 + Rational(86) * a2 * b4 - Rational(320) * a * b3 +
              Rational(176) * a3 * b2 + Rational(240) * b2 - Rational(568) * a2 * b + Rational(105) * a4 +
              Rational(384) * a,
          -Rational(4) * b6 - Rational(48) * a * b4 + Rational(80) * b3 - Rational(172) * a2 * b2 +
              Rational(320) * a * b - Rational(176) * a3 - Rational(96),
          Rational(6) * b4 + Rational(48) * a * b2 - Rational(40) * b + Rational(86) * a2,
          -(Rational(4) * b2 + Rational(16) * a), Rational(1)};
    case 5: {
      const Rational b10 = b8 * b2;
      return RationalPoly{
          -b10 - Rational(25) * a * b8 + Rational(80) * b7 - Rational(230) * a2 * b6 + Rational(1200) * a * b5 -
              Rational(950) * a3 * b4 - Rational(1360) * b4 + Rational(5488) * a2 * b3 - Rational(1689) * a4 * b2 -
              Rational(8480) * a * b2 + Rational(7440) * a3 * b + Rational(3072) * b - Rational(945) * a5 -
              Rational(7632) * a2,
          Rational(5) * b8 + Rational(100) * a * b6 - Rational(240) * b5 + Rational(690) * a2 * b4 -
              Rational(2400) * a * b3 + Rational(1900) * a3 * b2 + Rational(1696) * b2 - Rational(5488) * a2 * b +
              Rational(1689) * a4 + Rational(3360) * a,
          -Rational(10) * b6 - Rational(150) * a * b4 + Rational(240) * b3 - Rational(690) * a2 * b2 +
              Rational(1200) * a * b - Rational(950) * a3 - Rational(336),
          Rational(10) * b4 + Rational(100) * a * b2 - Rational(80) * b + Rational(230) * a2,
          -(Rational(5) * b2 + Rational(25) * a), Rational(1)};
    }
    default:
      throw std::out_of_range("no reference polynomial: raw form stored for J <= 5");
  }
}

RationalPoly referenceReducedPolynomial(int J, const Rational& K) {
  const Rational K2 = pw(K, 2), K3 = pw(K, 3), K4 = pw(K, 4);
  switch (J) {
    case 1:
      return RationalPoly{Rational(0), Rational(1)};
    case 2:
      return RationalPoly{-K, Rational(0), Rational(1)};
    case 3:
      return RationalPoly{Rational(-16), Rational(-4) * K, Rational(0), Rational(1)};
    case 4:
      return RationalPoly{Rational(9) * K2, Rational(-96), Rational(-10) * K, Rational(0), Rational(1)};
    case 5:
      return RationalPoly{Rational(768) * K, Rational(64) * K2, Rational(-336), Rational(-20) * K,
                          Rational(0), Rational(1)};
    case 6:
      return RationalPoly{Rational(-225) * K3 + Rational(25600), Rational(7040) * K, Rational(259) * K2,
                          Rational(-896), Rational(-35) * K, Rational(0), Rational(1)};
    case 7:
      return RationalPoly{Rational(-55296) * K2,
                          Rational(-2304) * K3 + Rational(288000),
                          Rational(35712) * K,
                          Rational(784) * K2,
                          Rational(-2016),
                          Rational(-56) * K,
                          Rational(0),
                          Rational(1)};
    case 8:
      return RationalPoly{Rational(11025) * K4 - Rational(6322176) * K,
                          Rational(-681408) * K2,
                          Rational(-12916) * K3 + Rational(1760256),
                          Rational(132480) * K,
                          Rational(1974) * K2,
                          Rational(-4032),
                          Rational(-84) * K,
                          Rational(0),
                          Rational(1)};
    default:
      throw std::out_of_range("no reference polynomial: reduced form stored for J <= 8");
  }
}

}  // namespace qes
