#pragma once

#include <memory>
#include <vector>

#include "qes/polynomial.hpp"

namespace qes {

/// A point of the extended rational line, used as a Sturm interval bound.
struct ExtendedRational {
  enum Kind { NegInfinity, Finite, PosInfinity } kind = Finite;
  Rational value;

  static ExtendedRational negInf() { return {NegInfinity, Rational(0)}; }
  static ExtendedRational posInf() { return {PosInfinity, Rational(0)}; }
  static ExtendedRational at(Rational v) { return {Finite, std::move(v)}; }
};

/// Sturm chain of the squarefree part of p, held internally as a primitive
/// integer pseudo-remainder chain (the positive-scalar rescaling leaves all
/// sign variations intact and is far cheaper at high degree).
class SturmChain {
 public:
  explicit SturmChain(const RationalPoly& p);
  ~SturmChain();
  SturmChain(SturmChain&&) noexcept;
  SturmChain& operator=(SturmChain&&) noexcept;

  /// Number of distinct real roots of the underlying polynomial in (lo, hi].
  int countRoots(const ExtendedRational& lo, const ExtendedRational& hi) const;

  const RationalPoly& squarefree() const;
  int signOfSquarefreeAt(const Rational& x) const;
  /// True when the input already had no repeated roots.
  bool inputWasSquarefree() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Distinct real roots of p in (lo, hi] via a Sturm chain on the squarefree
/// part. lo/hi may be infinite. p must be nonzero.
int sturmCount(const RationalPoly& p, const ExtendedRational& lo, const ExtendedRational& hi);
inline int sturmCount(const RationalPoly& p) {
  return sturmCount(p, ExtendedRational::negInf(), ExtendedRational::posInf());
}

struct IsolatingInterval {
  Rational lo, hi;  // lo == hi marks an exact rational root
  int multiplicity = 1;
};

struct RootIsolation {
  std::vector<IsolatingInterval> intervals;  // disjoint, one distinct root each, sorted
  int realCount = 0;                         // number of distinct real roots
  int realCountWithMultiplicity = 0;
};

/// Certified isolation of all distinct real roots of p, with multiplicities
/// recovered from the squarefree decomposition. Bisection starts from the
/// Cauchy bound and keeps splitting until every interval holds one root.
RootIsolation isolateRealRoots(const RationalPoly& p);

/// Refine a bracket known to isolate exactly one root down to |err| <= tol:
/// exact bisection on the squarefree part, then a guarded Newton polish in
/// doubles. Throws "refinement stalled" if the iteration cap is hit.
double refineRoot(const RationalPoly& p, const Rational& lo, const Rational& hi, double tol = 1e-12);

/// Cauchy root bound: every complex root z of p has |z| < 1 + max|c_k/c_n|.
Rational cauchyBound(const RationalPoly& p);

}  // namespace qes
