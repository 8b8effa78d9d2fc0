#pragma once

#include <algorithm>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qes/rational.hpp"

namespace qes {

/// Dense univariate polynomial over a field scalar. coeffs()[k] multiplies
/// x^k; the highest-index coefficient is nonzero (zero polynomial = empty).
template <typename Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Scalar> ascending) : c_(ascending) { trim(); }
  explicit Polynomial(std::vector<Scalar> ascending) : c_(std::move(ascending)) { trim(); }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial constant(Scalar v) { return Polynomial(std::vector<Scalar>{std::move(v)}); }
  /// The monomial c * x^k.
  static Polynomial monomial(Scalar c, int k) {
    std::vector<Scalar> v(static_cast<size_t>(k) + 1, Scalar(0));
    v.back() = std::move(c);
    return Polynomial(std::move(v));
  }
  static Polynomial variable() { return monomial(Scalar(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool isZero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  /// Coefficient of x^k, zero beyond the degree.
  Scalar coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return Scalar(0);
    return c_[static_cast<size_t>(k)];
  }
  const Scalar& leading() const {
    if (c_.empty()) throw std::domain_error("Polynomial: leading coefficient of zero polynomial");
    return c_.back();
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<Scalar> r(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.isZero() || b.isZero()) return Polynomial();
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(const Scalar& s, Polynomial p) {
    for (auto& v : p.c_) v = s * v;
    p.trim();
    return p;
  }
  friend Polynomial operator*(Polynomial p, const Scalar& s) { return s * std::move(p); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Euclidean division: returns (quotient, remainder), deg(rem) < deg(q).
  friend std::pair<Polynomial, Polynomial> divRem(const Polynomial& p, const Polynomial& q) {
    if (q.isZero()) throw std::domain_error("division by zero polynomial");
    Polynomial rem = p;
    std::vector<Scalar> quo;
    if (p.degree() >= q.degree()) quo.assign(static_cast<size_t>(p.degree() - q.degree()) + 1, Scalar(0));
    while (!rem.isZero() && rem.degree() >= q.degree()) {
      int shift = rem.degree() - q.degree();
      Scalar f = rem.leading() / q.leading();
      quo[static_cast<size_t>(shift)] = f;
      // rem -= f * x^shift * q, with the leading term cancelling exactly.
      for (int i = 0; i <= q.degree(); ++i)
        rem.c_[static_cast<size_t>(i + shift)] -= f * q.c_[static_cast<size_t>(i)];
      rem.trim();
    }
    return {Polynomial(std::move(quo)), std::move(rem)};
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<Scalar> r(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) r[k - 1] = Scalar(static_cast<int>(k)) * c_[k];
    return Polynomial(std::move(r));
  }

  /// Horner evaluation at a point of the coefficient field.
  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// p(inner(x)) by Horner over polynomial arithmetic.
  Polynomial compose(const Polynomial& inner) const {
    Polynomial acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
  }

  Polynomial monic() const {
    if (isZero()) return *this;
    Polynomial r = *this;
    Scalar inv = Scalar(1) / leading();
    for (auto& v : r.c_) v = v * inv;
    return r;
  }

  std::string str(const std::string& var) const;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Scalar(0)) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

using RationalPoly = Polynomial<Rational>;

/// Monic gcd by the Euclidean algorithm; remainders are made monic at each
/// step to keep coefficient growth in check.
template <typename Scalar>
Polynomial<Scalar> gcdMonic(Polynomial<Scalar> a, Polynomial<Scalar> b) {
  while (!b.isZero()) {
    auto [q, r] = divRem(a, b);
    (void)q;
    a = std::move(b);
    b = r.isZero() ? r : r.monic();
  }
  return a.isZero() ? a : a.monic();
}

/// p divided by gcd(p, p'): same distinct roots, all simple.
template <typename Scalar>
Polynomial<Scalar> squarefreePart(const Polynomial<Scalar>& p) {
  if (p.isZero() || p.degree() == 0) return p;
  auto g = gcdMonic(p, p.derivative());
  if (g.degree() == 0) return p;
  return divRem(p, g).first;
}

/// Yun squarefree decomposition: returns factors (g_i, i) with
/// p = lc * prod g_i^i, each g_i monic squarefree, pairwise coprime.
template <typename Scalar>
std::vector<std::pair<Polynomial<Scalar>, int>> squarefreeDecomposition(const Polynomial<Scalar>& p) {
  std::vector<std::pair<Polynomial<Scalar>, int>> out;
  if (p.isZero() || p.degree() == 0) return out;
  auto pm = p.monic();
  auto g = gcdMonic(pm, pm.derivative());
  auto w = divRem(pm, g).first;
  auto y = divRem(pm.derivative(), g).first;
  auto z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    auto gi = gcdMonic(w, z);
    if (gi.degree() > 0) out.emplace_back(gi, i);
    w = divRem(w, gi).first;
    y = divRem(z, gi).first;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

inline Polynomial<double> toDouble(const RationalPoly& p) {
  std::vector<double> c(p.coeffs().size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = p.coeffs()[i].toDouble();
  return Polynomial<double>(std::move(c));
}

/// Complex Horner evaluation of a double-coefficient polynomial.
inline std::complex<double> evalComplex(const Polynomial<double>& p, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (size_t i = p.coeffs().size(); i-- > 0;) acc = acc * z + p.coeffs()[i];
  return acc;
}

template <typename Scalar>
std::string Polynomial<Scalar>::str(const std::string& var) const {
  if (isZero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    Scalar c = coeff(k);
    if (c == Scalar(0)) continue;
    std::string cs;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      cs = qes::abs(c).str();
    } else {
      cs = std::to_string(c < Scalar(0) ? -c : c);
    }
    bool neg = c < Scalar(0);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    bool unitCoeff = (cs == "1") && k > 0;
    if (!unitCoeff) out += cs;
    if (k > 0) {
      if (!unitCoeff) out += "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace qes
