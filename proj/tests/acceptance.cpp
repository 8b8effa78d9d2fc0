// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion pins its tolerances and, where stated, its time
// budget in code.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qes/criticality.hpp"
#include "qes/qescore.hpp"
#include "qes/sextic.hpp"
#include "qes/shooting.hpp"
#include "qes/sl2.hpp"
#include "qes/sturm.hpp"
#include "qes/verification.hpp"

using namespace qes;

namespace {

Rational Q(long n, long d = 1) { return Rational(n, d); }

int failures = 0;

void report(int index, const std::string& name, bool pass, double seconds, double budget,
            const std::string& detail) {
  bool inBudget = budget <= 0 || seconds <= budget;
  bool ok = pass && inBudget;
  if (!ok) ++failures;
  std::printf("[%s] criterion %2d: %-34s %6.2fs%s%s%s\n", ok ? "PASS" : "FAIL", index, name.c_str(),
              seconds, budget > 0 && !inBudget ? " (over budget)" : "",
              detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
}

template <typename Fn>
void criterion(int index, const std::string& name, double budgetSeconds, Fn body) {
  std::string detail;
  bool pass = false;
  auto start = std::chrono::steady_clock::now();
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(index, name, pass, seconds, budgetSeconds, detail);
}

// --------------------------------------------------------------------------

bool rawIdentity(std::string& detail) {
  for (int J = 1; J <= 5; ++J)
    for (int i = 0; i < 2 * J + 2; ++i)
      for (int j = 0; j < 2 * J + 2; ++j) {
        Rational a(i - J), b(j - J);
        if (charPoly(buildOperator(QuarticSpec(J, a, b))) != referenceRawPolynomial(J, a, b)) {
          detail = "J=" + std::to_string(J) + " a=" + a.str() + " b=" + b.str();
          return false;
        }
      }
  detail = "exact on (2J+2)^2 grids, J=1..5";
  return true;
}

bool reducedIdentity(std::string& detail) {
  for (int J = 1; J <= 8; ++J)
    for (int t = 0; t < 2 * J + 2; ++t) {
      Rational K(t - J);
      QuarticSpec viaB(J, Q(0), K / Q(4));
      QuarticSpec viaA(J, Q(1), (K - Q(1)) / Q(4));
      RationalPoly want = referenceReducedPolynomial(J, K);
      if (toReduced(charPoly(buildOperator(viaB)), viaB) != want ||
          toReduced(charPoly(buildOperator(viaA)), viaA) != want) {
        detail = "J=" + std::to_string(J) + " K=" + K.str();
        return false;
      }
    }
  detail = "exact, two (a,b) realizations per K, J=1..8";
  return true;
}

bool tableRegression(std::string& detail) {
  for (const auto& row : criticalReferenceValues()) {
    CriticalPoint cp = findCritical(row.J);
    double wantK = std::stod(row.Kcrit), wantF = std::stod(row.Fcrit);
    if (std::abs(cp.Kcrit - wantK) > lastPlaceTolerance(row.Kcrit) ||
        std::abs(cp.Fcrit - wantF) > lastPlaceTolerance(row.Fcrit)) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "J=%d got (%.8g, %.8g) want (%s, %s)", row.J, cp.Kcrit,
                    cp.Fcrit, row.Kcrit, row.Fcrit);
      detail = buf;
      return false;
    }
  }
  detail = "J=2..29 within 5 units of the last printed place";
  return true;
}

bool degeneracyProperty(std::string& detail) {
  for (const auto& row : criticalReferenceValues()) {
    int J = row.J;
    CriticalPoint cp = findCritical(J);
    if (!(cp.residualQ < 1e-9 && cp.residualQF < 1e-9)) {
      detail = "residuals at J=" + std::to_string(J);
      return false;
    }
    Rational above{mpq_class(cp.Kcrit + 1e-3)}, below{mpq_class(cp.Kcrit - 1e-3)};
    if (realRootCount(J, above) != J || realRootCount(J, below) != J - 2) {
      detail = "root-count step at J=" + std::to_string(J);
      return false;
    }
  }
  detail = "scaled |Q|,|dQ/dF| < 1e-9; counts J / J-2 across Kc +- 1e-3";
  return true;
}

bool sl2Suite(std::string& detail) {
  for (int J = 1; J <= 12; ++J) {
    GeneratorSet g = buildGenerators(J);
    RationalMatrix zp = g.Jzero * g.Jplus - g.Jplus * g.Jzero;
    RationalMatrix zm = g.Jzero * g.Jminus - g.Jminus * g.Jzero;
    RationalMatrix pm = g.Jplus * g.Jminus - g.Jminus * g.Jplus;
    for (int r = 0; r < J; ++r)
      for (int c = 0; c < J; ++c) {
        if (zp(r, c) != g.Jplus(r, c) || zm(r, c) != -g.Jminus(r, c) ||
            pm(r, c) != Q(-2) * g.Jzero(r, c)) {
          detail = "commutator at J=" + std::to_string(J);
          return false;
        }
      }
  }
  std::mt19937 rng(20260808);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 10);
  for (int J = 1; J <= 10; ++J)
    for (int t = 0; t < 10; ++t) {
      Rational a(num(rng), den(rng)), b(num(rng), den(rng));
      if (!verifyEquivalence(J, a, b).equal) {
        detail = "equivalence at J=" + std::to_string(J);
        return false;
      }
    }
  detail = "commutators J<=12 exact; h-forms equal J<=10 x 10 samples";
  return true;
}

bool sexticBaseline(std::string& detail) {
  auto e1 = sexticEigenvalues(SexticSpec(1));
  if (e1.size() != 1 || std::abs(e1[0]) > 1e-12) {
    detail = "J=1";
    return false;
  }
  auto e2 = sexticEigenvalues(SexticSpec(2));
  const double r8 = std::sqrt(8.0);
  if (std::abs(e2[0] + r8) > 1e-12 || std::abs(e2[1] - r8) > 1e-12) {
    detail = "J=2";
    return false;
  }
  auto e3 = sexticEigenvalues(SexticSpec(3));
  if (std::abs(e3[0] + 8) > 1e-12 || std::abs(e3[1]) > 1e-12 || std::abs(e3[2] - 8) > 1e-12) {
    detail = "J=3";
    return false;
  }
  for (int J = 1; J <= 20; ++J)
    if (sturmCount(sexticCharPoly(SexticSpec(J))) != J) {
      detail = "realness at J=" + std::to_string(J);
      return false;
    }
  detail = "J=1,2,3 exact to 1e-12; Sturm-certified real J<=20";
  return true;
}

bool shootingConsistency(std::string& detail) {
  QuarticSpec spec(3, Q(0), Q(1));
  QesSpectrum qs = qesEigenvalues(spec);
  ShootingProblem prob(spec);
  SpectrumReport rep = findEigenvalues(prob, 5);
  if (rep.eigenvalues.size() < 3) {
    detail = "fewer than 3 eigenvalues located";
    return false;
  }
  for (int i = 0; i < 3; ++i) {
    double want = qs.realEigenvalues[static_cast<size_t>(i)];
    const auto& got = rep.eigenvalues[static_cast<size_t>(i)];
    double rel = std::abs(got.value.real() - want) / std::max(1.0, std::abs(want));
    if (got.kind != EigenvalueKind::Qes || rel > 1e-6 || std::abs(got.value.imag()) > 1e-6) {
      char buf[120];
      std::snprintf(buf, sizeof(buf), "level %d: got %.10g want %.10g", i, got.value.real(), want);
      detail = buf;
      return false;
    }
  }
  detail = "three lowest match exact roots to 1e-6 relative";
  return true;
}

bool structureSweep(std::string& detail) {
  // b grid 0.2 .. 2.0 step 0.06 (no point lands on the transition itself)
  auto points = sweep(3, Q(0), 0.2, 2.0, 0.06, 5);
  int realSide = 0, complexSide = 0;
  for (const auto& pt : points) {
    if (!pt.error.empty()) {
      detail = "sweep failed at b=" + std::to_string(pt.b) + ": " + pt.error;
      return false;
    }
    std::vector<std::complex<double>> qesVals;
    double minNonQes = 1e300;
    for (const auto& r : pt.report.eigenvalues) {
      if (r.kind == EigenvalueKind::Qes)
        qesVals.push_back(r.value);
      else
        minNonQes = std::min(minNonQes, r.value.real());
    }
    if (pt.b > 0.765) {
      if (qesVals.size() != 3) {
        detail = "expected 3 QES values at b=" + std::to_string(pt.b);
        return false;
      }
      double maxQes = -1e300;
      for (const auto& z : qesVals) {
        if (std::abs(z.imag()) > 1e-7) {
          detail = "QES value not real at b=" + std::to_string(pt.b);
          return false;
        }
        maxQes = std::max(maxQes, z.real());
      }
      if (!(maxQes < minNonQes)) {
        detail = "QES not lowest at b=" + std::to_string(pt.b);
        return false;
      }
      ++realSide;
    } else if (pt.b < 0.735) {
      int offAxis = 0;
      for (const auto& z : qesVals)
        if (std::abs(z.imag()) > 1e-4) ++offAxis;
      if (offAxis != 2) {
        detail = "expected exactly 2 complex QES values at b=" + std::to_string(pt.b) + ", got " +
                 std::to_string(offAxis);
        return false;
      }
      ++complexSide;
    }
  }
  if (realSide < 20 || complexSide < 8) {
    detail = "sweep sides undersampled";
    return false;
  }

  // Transition location: exact bisection on "all three roots real" (K = 4b).
  auto allReal = [](double b) {
    return realRootCountWithMultiplicity(3, Q(4) * Rational(mpq_class(b))) == 3;
  };
  double lo = 0.70, hi = 0.80;
  if (allReal(lo) || !allReal(hi)) {
    detail = "transition bracket invalid";
    return false;
  }
  while (hi - lo > 1e-4) {
    double mid = 0.5 * (lo + hi);
    (allReal(mid) ? hi : lo) = mid;
  }
  double transition = 0.5 * (lo + hi);
  if (std::abs(transition - 0.75) > 0.01) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "transition at b=%.5f", transition);
    detail = buf;
    return false;
  }
  char buf[120];
  std::snprintf(buf, sizeof(buf), "31-point sweep; transition located at b=%.5f", transition);
  detail = buf;
  return true;
}

bool conjectureProbe(std::string& detail) {
  // Non-failing report: the non-QES spectrum is believed real everywhere.
  int probed = 0, deviations = 0;
  double worst = 0.0;
  for (int ia = 0; ia < 5; ++ia)
    for (int ib = 0; ib < 5; ++ib) {
      Rational a(ia, 4), b(2 + ib, 4);
      ShootingProblem prob(QuarticSpec(2, a, b));
      SpectrumReport rep = findEigenvalues(prob, 4);
      for (const auto& r : rep.eigenvalues) {
        if (r.kind != EigenvalueKind::NonQes) continue;
        ++probed;
        worst = std::max(worst, std::abs(r.value.imag()));
        if (std::abs(r.value.imag()) > 1e-7) {
          ++deviations;
          std::printf("    finding: Im E = %.3e at a=%s b=%s (E=%.6f)\n", r.value.imag(),
                      a.str().c_str(), b.str().c_str(), r.value.real());
        }
      }
    }
  char buf[140];
  std::snprintf(buf, sizeof(buf),
                "%d non-QES values on a 5x5 (a,b) grid; %d above 1e-7 (worst |Im E| = %.2e)", probed,
                deviations, worst);
  detail = buf;
  return probed > 0;  // deviations are findings, not failures
}

bool rayAngleInvariance(std::string& detail) {
  // The eigenvalue is located directly as a sign change of the (real)
  // mismatch, so each angle's result comes from its own integration and not
  // from any shared algebraic seed.
  QesSpectrum qs = qesEigenvalues(QuarticSpec(3, Q(0), Q(1)));
  const double deg = 3.14159265358979323846 / 180.0;
  std::vector<std::vector<double>> perAngle;
  for (double thetaDeg : {-20.0, -30.0, -40.0}) {
    ShootingProblem prob(QuarticSpec(3, Q(0), Q(1)));
    prob.thetaRight = thetaDeg * deg;
    prob.thetaLeft = -180.0 * deg - prob.thetaRight;
    std::vector<double> vals;
    for (double e : qs.realEigenvalues) {
      double lo = e - 0.2, hi = e + 0.2;
      double wlo = wronskianMismatch(prob, {lo, 0.0}).real();
      double whi = wronskianMismatch(prob, {hi, 0.0}).real();
      if (std::signbit(wlo) == std::signbit(whi)) {
        detail = "no bracket at theta=" + std::to_string(thetaDeg);
        return false;
      }
      for (int it = 0; it < 48; ++it) {
        double mid = 0.5 * (lo + hi);
        double wm = wronskianMismatch(prob, {mid, 0.0}).real();
        if (std::signbit(wm) == std::signbit(wlo)) {
          lo = mid;
          wlo = wm;
        } else {
          hi = mid;
        }
      }
      vals.push_back(0.5 * (lo + hi));
    }
    perAngle.push_back(vals);
  }
  double worst = 0.0;
  for (size_t a = 1; a < perAngle.size(); ++a)
    for (size_t i = 0; i < perAngle[a].size(); ++i)
      worst = std::max(worst, std::abs(perAngle[a][i] - perAngle[0][i]));
  char buf[100];
  std::snprintf(buf, sizeof(buf), "max spread %.2e across -20/-30/-40 degrees", worst);
  detail = buf;
  return worst < 1e-8;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion(1, "raw polynomial identity", 1.0, rawIdentity);
  criterion(2, "reduced polynomial identity", 2.0, reducedIdentity);
  criterion(3, "critical-value regression", 30.0, tableRegression);
  criterion(4, "degeneracy property", 0.0, degeneracyProperty);
  criterion(5, "sl(2) suite", 0.0, sl2Suite);
  criterion(6, "sextic baseline", 5.0, sexticBaseline);
  criterion(7, "QES/shooting consistency", 60.0, shootingConsistency);
  criterion(8, "spectral structure sweep", 600.0, structureSweep);
  criterion(9, "reality conjecture probe", 0.0, conjectureProbe);
  criterion(10, "ray-angle invariance", 0.0, rayAngleInvariance);
  if (failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return 1;
}
