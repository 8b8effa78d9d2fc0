#pragma once

#include <vector>

#include "qes/polynomial.hpp"
#include "qes/qescore.hpp"

namespace qes {

/// Q_J(F; K) with the K-dependence made explicit: coefficient of F^j is an
/// exact polynomial in K of degree <= floor((J-j)/2). Built once per J by
/// Lagrange interpolation over integer K nodes and verified at a fresh node.
class BivariateReduced {
 public:
  explicit BivariateReduced(int J);

  int J() const { return J_; }
  /// Exact Q_J(F; K) at a rational K.
  RationalPoly atK(const Rational& K) const;
  const std::vector<RationalPoly>& coefficientsInK() const { return coeffK_; }

  /// Double-precision evaluation of Q and its partials at (F, K).
  struct Jet {
    double q, qF, qK, qFF, qFK;
  };
  Jet evaluate(double F, double K) const;

 private:
  int J_;
  std::vector<RationalPoly> coeffK_;        // index j: coefficient of F^j as poly in K
  std::vector<Polynomial<double>> coeffD_;  // same, double precision
  std::vector<Polynomial<double>> coeffDK_; // d/dK of each coefficient
};

/// Number of distinct real roots of the reduced polynomial Q_J(F; K).
int realRootCount(int J, const Rational& K);

/// Real roots of Q_J(F; K) counted with multiplicity.
int realRootCountWithMultiplicity(int J, const Rational& K);

struct CriticalPoint {
  int J = 0;
  double Kcrit = 0.0;
  double Fcrit = 0.0;
  double residualQ = 0.0;   // scaled |Q_J(Fcrit, Kcrit)|
  double residualQF = 0.0;  // scaled |dQ_J/dF(Fcrit, Kcrit)|
  bool newtonConverged = true;
};

/// The first degeneracy of the reduced spectrum: the smallest K at which
/// all J roots are real, where the two lowest roots collide at F = Fcrit.
/// Bracketed by Sturm-count bisection on K, then Newton-polished on the
/// system Q = 0, dQ/dF = 0.
CriticalPoint findCritical(int J, double tol = 1e-11);

struct CriticalCurve {
  int J = 0;
  double Kcrit = 0.0;
  /// b(a) on the reality boundary a^2 + 4b = Kcrit.
  double b(double a) const { return (Kcrit - a * a) / 4.0; }
};

CriticalCurve criticalCurve(int J);

}  // namespace qes
