#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qes {

/// Exact arbitrary-precision rational number. Always kept in canonical
/// form: reduced to lowest terms, denominator > 0, zero is 0/1.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(int n) : v_(n) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}
  Rational(long num, long den) : v_(static_cast<signed long>(num), static_cast<signed long>(den)) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }
  explicit Rational(const mpz_class& n) : v_(n) {}

  /// Parses "3/4", "-7", or an exact decimal such as "0.75" (-> 3/4).
  static Rational fromString(const std::string& s);

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  bool isZero() const { return sgn(v_) == 0; }
  bool isInteger() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }
  double toDouble() const { return v_.get_d(); }

  /// Canonical textual form: "num" when integral, else "num/den".
  std::string str() const {
    if (isInteger()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.isZero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

inline Rational Rational::fromString(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (t.empty()) throw std::invalid_argument("Rational: empty string");

  auto slash = t.find('/');
  if (slash != std::string::npos) {
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (num.empty() || den.empty()) throw std::invalid_argument("Rational: malformed fraction '" + s + "'");
    mpz_class n, d;
    if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
      throw std::invalid_argument("Rational: malformed fraction '" + s + "'");
    if (d == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  auto dot = t.find('.');
  if (dot != std::string::npos) {
    // Exact decimal: digits after the dot become a power-of-ten denominator.
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    size_t frac = t.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+")
      throw std::invalid_argument("Rational: malformed decimal '" + s + "'");
    mpz_class n;
    if (n.set_str(digits, 10) != 0) throw std::invalid_argument("Rational: malformed decimal '" + s + "'");
    mpz_class d;
    mpz_ui_pow_ui(d.get_mpz_t(), 10, frac);
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(std::move(q));
  }

  mpz_class n;
  if (n.set_str(t, 10) != 0) throw std::invalid_argument("Rational: malformed integer '" + s + "'");
  return Rational(n);
}

}  // namespace qes

namespace Eigen {

template <>
struct NumTraits<qes::Rational> : GenericNumTraits<qes::Rational> {
  typedef qes::Rational Real;
  typedef qes::Rational NonInteger;
  typedef qes::Rational Nested;
  typedef qes::Rational Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 100,
    MulCost = 100
  };
  static inline Real epsilon() { return qes::Rational(0); }
  static inline Real dummy_precision() { return qes::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qes {

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

}  // namespace qes
