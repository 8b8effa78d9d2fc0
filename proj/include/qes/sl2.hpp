#pragma once

#include <optional>
#include <string>

#include "qes/polynomial.hpp"
#include "qes/rational.hpp"

namespace qes {

/// Exact Gaussian rational p + q i. Only ring operations plus exact
/// division are provided; this scalar stays confined to the sl(2) module.
struct GaussianRational {
  Rational re, im;

  GaussianRational() = default;
  GaussianRational(int n) : re(n), im(0) {}
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  bool isZero() const { return re.isZero() && im.isZero(); }
  bool isReal() const { return im.isZero(); }

  GaussianRational operator-() const { return {-re, -im}; }
  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n.isZero()) throw std::domain_error("GaussianRational: division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
  GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
  GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  std::string str() const;
};

using GaussianMatrix = Eigen::Matrix<GaussianRational, Eigen::Dynamic, Eigen::Dynamic>;

/// The spin-(J-1)/2 generators realized on the monomial basis
/// {1, x, ..., x^{J-1}}: Jplus = x^2 d/dx - (J-1)x, Jzero = x d/dx - (J-1)/2,
/// Jminus = d/dx. Column c holds the image of x^c.
struct GeneratorSet {
  int J;
  RationalMatrix Jplus, Jzero, Jminus;
};

GeneratorSet buildGenerators(int J);

/// The algebraic Hamiltonian -(J^-)^2 + 2i J^+ + 2a J^0 + 2ib J^- +
/// (b^2 + aJ) I as an exact Gaussian-rational matrix.
GaussianMatrix buildAlgebraicH(int J, const Rational& a, const Rational& b);

/// Matrix of the differential operator
/// h = -d^2/dx^2 + (2ix^2 + 2ax + 2ib) d/dx - [2i(J-1)x - b^2 - a]
/// on the monomial basis, assembled independently of the generators.
GaussianMatrix differentialH(int J, const Rational& a, const Rational& b);

struct EquivalenceReport {
  bool equal = false;
  int row = -1, col = -1;           // first mismatch when not equal
  std::string lhs, rhs;             // mismatching entries, printed
};

/// Entrywise exact comparison of the generator-built Hamiltonian against
/// the differential-operator matrix.
EquivalenceReport verifyEquivalence(int J, const Rational& a, const Rational& b);

}  // namespace qes

namespace Eigen {

template <>
struct NumTraits<qes::GaussianRational> : GenericNumTraits<qes::GaussianRational> {
  typedef qes::GaussianRational Real;
  typedef qes::GaussianRational NonInteger;
  typedef qes::GaussianRational Nested;
  typedef qes::GaussianRational Literal;
  enum {
    IsComplex = 0,  // treated as a plain ring scalar; no conjugation paths used
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 12,
    AddCost = 200,
    MulCost = 400
  };
  static inline Real epsilon() { return qes::GaussianRational(0); }
  static inline Real dummy_precision() { return qes::GaussianRational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
