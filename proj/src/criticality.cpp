#include "qes/criticality.hpp"

#include <cmath>
#include <stdexcept>

#include "qes/sturm.hpp"

namespace qes {

namespace {

/// Reduced polynomial at one rational K via the (a, b) = (0, K/4) section.
RationalPoly reducedAtK(int J, const Rational& K) {
  QuarticSpec spec(J, Rational(0), K / Rational(4));
  return toReduced(charPoly(buildOperator(spec)), spec);
}

}  // namespace

BivariateReduced::BivariateReduced(int J) : J_(J) {
  if (J < 1) throw std::invalid_argument("BivariateReduced: J must be >= 1");
  const int degK = J / 2;
  const int nodes = degK + 1;

  std::vector<RationalPoly> samples;
  samples.reserve(static_cast<size_t>(nodes));
  for (int t = 0; t < nodes; ++t) samples.push_back(reducedAtK(J, Rational(t)));

  // Lagrange basis over the integer nodes 0..degK.
  std::vector<RationalPoly> basis;
  for (int t = 0; t < nodes; ++t) {
    RationalPoly L = RationalPoly::constant(Rational(1));
    Rational denom(1);
    for (int s = 0; s < nodes; ++s) {
      if (s == t) continue;
      L = L * RationalPoly{Rational(-s), Rational(1)};
      denom *= Rational(t - s);
    }
    basis.push_back(L * (Rational(1) / denom));
  }

  coeffK_.assign(static_cast<size_t>(J) + 1, RationalPoly());
  for (int j = 0; j <= J; ++j) {
    RationalPoly cj;
    for (int t = 0; t < nodes; ++t) cj = cj + samples[static_cast<size_t>(t)].coeff(j) * basis[static_cast<size_t>(t)];
    coeffK_[static_cast<size_t>(j)] = cj;
  }

  // Degree guard: the interpolant must reproduce a node outside the grid.
  if (atK(Rational(nodes)) != reducedAtK(J, Rational(nodes)))
    throw std::logic_error("BivariateReduced: K-degree bound violated");

  coeffD_.reserve(coeffK_.size());
  coeffDK_.reserve(coeffK_.size());
  for (const auto& c : coeffK_) {
    coeffD_.push_back(toDouble(c));
    coeffDK_.push_back(toDouble(c.derivative()));
  }
}

RationalPoly BivariateReduced::atK(const Rational& K) const {
  std::vector<Rational> c(coeffK_.size());
  for (size_t j = 0; j < coeffK_.size(); ++j) c[j] = coeffK_[j](K);
  return RationalPoly(std::move(c));
}

BivariateReduced::Jet BivariateReduced::evaluate(double F, double K) const {
  // Coefficients of powers of F at this K, plus their K-derivatives.
  const size_t n = coeffD_.size();
  double q = 0, qF = 0, qK = 0, qFF = 0, qFK = 0;
  double pw = 1.0, pwPrev = 0.0, pwPrev2 = 0.0;  // F^j, F^{j-1}, F^{j-2}
  for (size_t j = 0; j < n; ++j) {
    double cj = coeffD_[j](K);
    double cjK = coeffDK_[j](K);
    double dj = static_cast<double>(j);
    q += cj * pw;
    qK += cjK * pw;
    if (j >= 1) {
      qF += cj * dj * pwPrev;
      qFK += cjK * dj * pwPrev;
    }
    if (j >= 2) qFF += cj * dj * (dj - 1.0) * pwPrev2;
    pwPrev2 = pwPrev;
    pwPrev = pw;
    pw *= F;
  }
  return {q, qF, qK, qFF, qFK};
}

int realRootCount(int J, const Rational& K) {
  if (J < 1) throw std::invalid_argument("realRootCount: J must be >= 1");
  RationalPoly q = reducedAtK(J, K);
  return sturmCount(q);
}

int realRootCountWithMultiplicity(int J, const Rational& K) {
  if (J < 1) throw std::invalid_argument("realRootCount: J must be >= 1");
  return isolateRealRoots(reducedAtK(J, K)).realCountWithMultiplicity;
}

namespace {

/// Scaled residual denominators: sum of |term| over the bivariate expansion.
double termNorm(const BivariateReduced& bv, double F, double K, bool derivativeInF) {
  double s = 0.0, pw = 1.0, pwPrev = 0.0;
  const auto& coeffs = bv.coefficientsInK();
  for (size_t j = 0; j < coeffs.size(); ++j) {
    double cmag = 0.0, kp = 1.0;
    for (const auto& ck : coeffs[j].coeffs()) {
      cmag += std::abs(ck.toDouble()) * kp;
      kp *= std::abs(K);
    }
    if (!derivativeInF)
      s += cmag * pw;
    else if (j >= 1)
      s += cmag * static_cast<double>(j) * pwPrev;
    pwPrev = pw;
    pw *= std::abs(F);
  }
  return std::max(s, 1e-300);
}

}  // namespace

CriticalPoint findCritical(int J, double tol) {
  if (J < 2) throw std::invalid_argument("findCritical: J must be >= 2 (a degree-1 polynomial has no degeneracy)");

  BivariateReduced bv(J);
  auto allReal = [&](const Rational& K) {
    return sturmCount(bv.atK(K)) == J;  // J distinct real roots
  };

  // Bracket [Klo, Khi] with all-real above and a complex pair below.
  Rational Klo(0), Khi(50);
  while (!allReal(Khi)) {
    Khi *= Rational(2);
    if (Khi > Rational(100)) throw std::runtime_error("findCritical: no all-real K found in [-10, 100]");
  }
  if (allReal(Klo)) {
    while (allReal(Klo)) {
      Klo = Klo - Rational(10);
      if (Klo < Rational(-10)) throw std::runtime_error("findCritical: no complex-pair K found in [-10, 100]");
    }
  }

  // Sturm bisection down to a width Newton can take over.
  const Rational width(1, 1024);
  while (Khi - Klo > width) {
    Rational mid = (Klo + Khi) / Rational(2);
    if (allReal(mid))
      Khi = mid;
    else
      Klo = mid;
  }

  // Initial F: midpoint of the two lowest (about-to-merge) roots just above.
  RationalPoly qAbove = bv.atK(Khi);
  RootIsolation iso = isolateRealRoots(qAbove);
  if (iso.realCount < 2) throw std::logic_error("findCritical: expected >= 2 real roots above the bracket");
  double r0 = refineRoot(qAbove, iso.intervals[0].lo, iso.intervals[0].hi, 1e-13);
  double r1 = refineRoot(qAbove, iso.intervals[1].lo, iso.intervals[1].hi, 1e-13);

  double F = 0.5 * (r0 + r1);
  double K = Khi.toDouble();

  // Newton on the system (Q, dQ/dF) = 0 in the (F, K) plane; the Jacobian
  // [[qF, qK], [qFF, qFK]] stays nonsingular at a plain double root. The
  // iteration is tracked by scaled residual and keeps the best point seen,
  // since the step size rattles at the double-precision floor.
  double bestF = F, bestK = K, bestResid = 1e300;
  int stale = 0;
  for (int it = 0; it < 120 && stale < 6; ++it) {
    auto jet = bv.evaluate(F, K);
    double resid = std::abs(jet.q) / termNorm(bv, F, K, false) +
                   std::abs(jet.qF) / termNorm(bv, F, K, true);
    if (resid < bestResid) {
      bestResid = resid;
      bestF = F;
      bestK = K;
      stale = 0;
    } else {
      ++stale;
    }
    double det = jet.qF * jet.qFK - jet.qK * jet.qFF;
    if (det == 0.0 || !std::isfinite(det)) break;
    double dF = (jet.q * jet.qFK - jet.qF * jet.qK) / det;
    double dK = (jet.qF * jet.qF - jet.q * jet.qFF) / det;
    if (!std::isfinite(dF) || !std::isfinite(dK)) break;
    F -= dF;
    K -= dK;
    double scale = std::max({1.0, std::abs(F), std::abs(K)});
    if (std::abs(dF) < 5e-15 * scale && std::abs(dK) < 5e-15 * scale) break;
  }

  CriticalPoint cp;
  cp.J = J;
  cp.Fcrit = bestF;
  cp.Kcrit = bestK;
  auto jet = bv.evaluate(cp.Fcrit, cp.Kcrit);
  cp.residualQ = std::abs(jet.q) / termNorm(bv, cp.Fcrit, cp.Kcrit, false);
  cp.residualQF = std::abs(jet.qF) / termNorm(bv, cp.Fcrit, cp.Kcrit, true);
  cp.newtonConverged = cp.residualQ < tol && cp.residualQF < tol;
  if (!cp.newtonConverged) {
    // Keep the Sturm-certified bracket as a widened-tolerance fallback when
    // Newton failed to reach the requested residuals.
    double mid = 0.5 * (Klo.toDouble() + Khi.toDouble());
    if (!(cp.Kcrit > Klo.toDouble() - 1e-3 && cp.Kcrit < Khi.toDouble() + 1e-3)) cp.Kcrit = mid;
  }
  return cp;
}

CriticalCurve criticalCurve(int J) {
  CriticalPoint cp = findCritical(J);
  return {J, cp.Kcrit};
}

}  // namespace qes
