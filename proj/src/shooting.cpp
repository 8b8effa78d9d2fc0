#include "qes/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qes {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

using Cplx = std::complex<double>;

struct State {
  Cplx psi, dpsi;  // value and derivative in the integration variable r
};

struct PotentialView {
  // V(x) for the active spec, with parameters lowered to doubles.
  bool quartic;
  double a = 0.0, b = 0.0;
  int J = 1;

  Cplx operator()(Cplx x) const {
    if (quartic) {
      Cplx x2 = x * x;
      return -x2 * x2 + Cplx(0, 2.0 * a) * x2 * x + (a * a - 2.0 * b) * x2 +
             Cplx(0, 2.0 * (a * b - J)) * x;
    }
    Cplx x2 = x * x;
    return x2 * x2 * x2 - (4.0 * J - 1.0) * x2;
  }

  // Exponent of the decaying asymptotic form and its derivative.
  Cplx asympExponent(Cplx x) const {
    if (quartic) return Cplx(0, -1.0 / 3.0) * x * x * x - 0.5 * a * x * x + Cplx(0, -b) * x;
    return -0.25 * x * x * x * x;
  }
  Cplx asympExponentPrime(Cplx x) const {
    if (quartic) return Cplx(0, -1.0) * x * x - a * x + Cplx(0, -b);
    return -x * x * x;
  }
};

PotentialView makeView(const ShootingProblem& p) {
  PotentialView v;
  v.quartic = p.isQuartic();
  if (v.quartic) {
    v.a = p.quartic().a.toDouble();
    v.b = p.quartic().b.toDouble();
    v.J = p.quartic().J;
  } else {
    v.J = p.sextic().J;
  }
  return v;
}

// Dormand-Prince 5(4) pair.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695, E4 = B4 - 393.0 / 640,
                 E5 = B5 + 92097.0 / 339200, E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;

struct IntegrationResult {
  State y;
  int steps = 0;
  int rescales = 0;
};

/// Adaptive integration of psi'' = c2 (V(x(r)) - E) psi from r0 to r1
/// (either direction). The solution is defined up to scale, so it is
/// renormalized whenever it threatens overflow.
template <typename Rhs>
IntegrationResult integrateAdaptive(Rhs rhs, double r0, double r1, State y, double rtol) {
  auto f = [&](double r, const State& s) -> State { return {s.dpsi, rhs(r) * s.psi}; };
  auto axpy = [](const State& s, double c, const State& k) -> State {
    return {s.psi + c * k.psi, s.dpsi + c * k.dpsi};
  };

  IntegrationResult out;
  const double span = r1 - r0;
  double r = r0;
  double h = span * 1e-3;
  const double hMin = std::abs(span) * 1e-13;
  State k1 = f(r, y);
  bool haveK1 = true;

  while ((span > 0) ? (r < r1) : (r > r1)) {
    if ((span > 0) ? (r + h > r1) : (r + h < r1)) h = r1 - r;
    if (!haveK1) {
      k1 = f(r, y);
      haveK1 = true;
    }
    State k2 = f(r + h * A21, axpy(y, h * A21, k1));
    State k3 = f(r + h * 0.3, axpy(axpy(y, h * A31, k1), h * A32, k2));
    State k4 = f(r + h * 0.8, axpy(axpy(axpy(y, h * A41, k1), h * A42, k2), h * A43, k3));
    State k5 = f(r + h * (8.0 / 9.0),
                 axpy(axpy(axpy(axpy(y, h * A51, k1), h * A52, k2), h * A53, k3), h * A54, k4));
    State k6 = f(r + h, axpy(axpy(axpy(axpy(axpy(y, h * A61, k1), h * A62, k2), h * A63, k3),
                                  h * A64, k4),
                             h * A65, k5));
    State y5 = axpy(axpy(axpy(axpy(axpy(y, h * B1, k1), h * B3, k3), h * B4, k4), h * B5, k5),
                    h * B6, k6);
    State k7 = f(r + h, y5);

    Cplx errPsi = h * (E1 * k1.psi + E3 * k3.psi + E4 * k4.psi + E5 * k5.psi + E6 * k6.psi +
                       E7 * k7.psi);
    Cplx errDpsi = h * (E1 * k1.dpsi + E3 * k3.dpsi + E4 * k4.dpsi + E5 * k5.dpsi +
                        E6 * k6.dpsi + E7 * k7.dpsi);
    double mag = std::max(std::max(std::abs(y.psi), std::abs(y.dpsi)),
                          std::max(std::abs(y5.psi), std::abs(y5.dpsi)));
    double scale = 1e-300 + rtol * mag;
    double err = std::max(std::abs(errPsi), std::abs(errDpsi)) / scale;

    if (err <= 1.0) {
      r += h;
      y = y5;
      k1 = k7;  // FSAL
      ++out.steps;
      if (mag > 1e100) {  // solution is defined up to scale; keep |y|^2 finite
        double inv = 1.0 / mag;
        y.psi *= inv;
        y.dpsi *= inv;
        ++out.rescales;
        haveK1 = false;
      }
    }
    // On rejection r and y are unchanged, so k1 stays valid.
    double grow = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
    h *= std::clamp(grow, 0.2, 5.0);
    if (std::abs(h) < hMin)
      throw std::runtime_error("stiff segment: step size underflow near r = " + std::to_string(r));
  }
  out.y = y;
  return out;
}

}  // namespace

ShootingProblem::ShootingProblem(QuarticSpec q)
    : spec(std::move(q)),
      thetaRight(-30.0 * kDeg),
      thetaLeft(-150.0 * kDeg),
      rmax(defaultRmaxQuartic()) {}

ShootingProblem::ShootingProblem(SexticSpec s)
    : spec(std::move(s)), thetaRight(0.0), thetaLeft(kPi), rmax(defaultRmaxSextic()) {}

double ShootingProblem::defaultRmaxQuartic(double eps) {
  // Decay e^{-r^3 sin(3|theta|)/3}; sized for the shallowest supported
  // angle (20 degrees into the wedge) with a small cushion.
  double s = std::sin(3.0 * 20.0 * kDeg);
  return 1.1 * std::cbrt(3.0 * std::log(1.0 / eps) / s);
}

double ShootingProblem::defaultRmaxSextic(double eps) {
  return 1.2 * std::pow(4.0 * std::log(1.0 / eps), 0.25);
}

void ShootingProblem::validate() const {
  if (!(rmax > 0)) throw std::invalid_argument("ShootingProblem: rmax must be positive");
  if (!(odeTol > 0)) throw std::invalid_argument("ShootingProblem: odeTol must be positive");
  if (isQuartic()) {
    if (!(thetaRight > -60.0 * kDeg && thetaRight < 0.0))
      throw std::invalid_argument("ShootingProblem: thetaRight must lie inside (-60, 0) degrees");
    if (!(thetaLeft > -kPi && thetaLeft < -120.0 * kDeg))
      throw std::invalid_argument("ShootingProblem: thetaLeft must lie inside (-180, -120) degrees");
  }
}

RayEndpoint integrateRay(const ShootingProblem& problem, Cplx E, Side side) {
  problem.validate();
  PotentialView V = makeView(problem);

  double theta;
  if (problem.isQuartic()) {
    theta = (side == Side::Right) ? problem.thetaRight : problem.thetaLeft;
  } else {
    if (side == Side::Left)
      throw std::invalid_argument("integrateRay: sextic variant shoots the right half-line only");
    theta = 0.0;
  }
  const Cplx phase = std::polar(1.0, theta);
  const Cplx phase2 = phase * phase;

  // Asymptotic start, normalized by the (real) magnitude of the exponential.
  Cplx x0 = problem.rmax * phase;
  Cplx g = V.asympExponent(x0);
  Cplx psi0 = std::exp(Cplx(0.0, g.imag()));
  Cplx dpsi0 = phase * V.asympExponentPrime(x0) * psi0;  // d/dr = e^{i theta} d/dx

  auto rhs = [&](double r) -> Cplx { return phase2 * (V(r * phase) - E); };
  IntegrationResult res = integrateAdaptive(rhs, problem.rmax, 0.0, State{psi0, dpsi0}, problem.odeTol);

  Cplx psi = res.y.psi;
  Cplx dpsiDx = res.y.dpsi / phase;
  double m = std::max(std::abs(psi), std::abs(dpsiDx));
  if (!(m > 0) || !std::isfinite(m))
    throw std::runtime_error("integrateRay: solution vanished or overflowed at the origin");
  psi /= m;
  dpsiDx /= m;
  double norm = std::sqrt(std::norm(psi) + std::norm(dpsiDx));  // real scale keeps PT phases
  return {psi / norm, dpsiDx / norm, res.rescales, res.steps};
}

namespace {

Cplx wronskianDetailed(const ShootingProblem& problem, Cplx E, int& rescales) {
  RayEndpoint right = integrateRay(problem, E, Side::Right);
  rescales += right.rescales;
  Cplx psiL, dpsiL;
  if (problem.isQuartic()) {
    RayEndpoint left = integrateRay(problem, E, Side::Left);
    rescales += left.rescales;
    psiL = left.psi;
    dpsiL = left.dpsi;
  } else {
    psiL = 1.0;  // even-parity closure: W reduces to psi_R'(0)
    dpsiL = 0.0;
  }
  return psiL * right.dpsi - dpsiL * right.psi;
}

}  // namespace

Cplx wronskianMismatch(const ShootingProblem& problem, Cplx E) {
  int rescales = 0;
  return wronskianDetailed(problem, E, rescales);
}

SearchBox defaultSearchBox(const ShootingProblem& problem, int count) {
  double emin = 0.0;
  if (problem.isQuartic()) {
    QesSpectrum qs = qesEigenvalues(problem.quartic());
    emin = qs.realEigenvalues.empty() ? 0.0 : qs.realEigenvalues.front();
    for (const auto& z : qs.complexEigenvalues) emin = std::min(emin, z.real());
  } else {
    auto ev = sexticEigenvalues(problem.sextic());
    emin = ev.front();
  }
  return {emin - 5.0, emin + 10.0 * count, -5.0, 5.0};
}

namespace {

struct MullerResult {
  Cplx root;
  double residual = 1e300;
  bool converged = false;
};

template <typename F>
MullerResult muller(F&& f, Cplx seed, double tolAbs, double tolRel, double fTol, int maxIter) {
  double h = std::max(1e-4, 1e-4 * std::abs(seed));
  Cplx z0 = seed - h, z1 = seed + h, z2 = seed;
  Cplx f0 = f(z0), f1 = f(z1), f2 = f(z2);
  MullerResult best{z2, std::abs(f2), false};
  for (int it = 0; it < maxIter; ++it) {
    Cplx q = (z2 - z1) / (z1 - z0);
    Cplx A = q * f2 - q * (1.0 + q) * f1 + q * q * f0;
    Cplx B = (2.0 * q + 1.0) * f2 - (1.0 + q) * (1.0 + q) * f1 + q * q * f0;
    Cplx C = (1.0 + q) * f2;
    Cplx disc = std::sqrt(B * B - 4.0 * A * C);
    Cplx den = (std::abs(B + disc) > std::abs(B - disc)) ? B + disc : B - disc;
    if (std::abs(den) == 0.0) break;
    Cplx z3 = z2 - (z2 - z1) * (2.0 * C / den);
    if (!std::isfinite(z3.real()) || !std::isfinite(z3.imag())) break;
    Cplx f3 = f(z3);
    if (std::abs(f3) < best.residual) {
      best.residual = std::abs(f3);
      best.root = z3;
    }
    if (std::abs(f3) < fTol || std::abs(z3 - z2) < tolAbs + tolRel * std::abs(z3)) {
      best.converged = true;
      return best;
    }
    z0 = z1;
    f0 = f1;
    z1 = z2;
    f1 = f2;
    z2 = z3;
    f2 = f3;
  }
  return best;
}

std::vector<Cplx> qesSeeds(const ShootingProblem& problem) {
  std::vector<Cplx> seeds;
  if (problem.isQuartic()) {
    QesSpectrum qs = qesEigenvalues(problem.quartic());
    for (double e : qs.realEigenvalues) seeds.emplace_back(e, 0.0);
    for (const auto& z : qs.complexEigenvalues) seeds.push_back(z);
  } else {
    for (double e : sexticEigenvalues(problem.sextic())) seeds.emplace_back(e, 0.0);
  }
  return seeds;
}

}  // namespace

SpectrumReport findEigenvaluesSeeded(const ShootingProblem& problem, const SearchBox& box, int count,
                                     const std::vector<Cplx>& extraSeeds) {
  if (count < 1) throw std::invalid_argument("findEigenvalues: count must be >= 1");
  problem.validate();

  SpectrumReport report;
  report.requested = count;
  report.rmaxUsed = problem.rmax;
  report.box = box;

  long evals = 0;
  int rescales = 0;
  auto W = [&](Cplx E) -> Cplx {
    ++evals;
    return wronskianDetailed(problem, E, rescales);
  };

  std::vector<Cplx> qes = qesSeeds(problem);
  std::vector<Cplx> seeds = qes;
  seeds.insert(seeds.end(), extraSeeds.begin(), extraSeeds.end());

  // Coarse real-axis scan: W is real there (PT-mirrored rays), so sign
  // changes of Re W bracket the real eigenvalues. Local dips of |W| without
  // a sign change flag zeros sitting just off the axis.
  const int scanN = std::max(64, 24 * count);
  std::vector<double> scanE(static_cast<size_t>(scanN)), scanW(static_cast<size_t>(scanN)),
      scanMag(static_cast<size_t>(scanN));
  for (int i = 0; i < scanN; ++i) {
    double e = box.reLo + (box.reHi - box.reLo) * (i + 0.5) / scanN;
    Cplx w = W(Cplx(e, 0.0));
    scanE[static_cast<size_t>(i)] = e;
    scanW[static_cast<size_t>(i)] = w.real();
    scanMag[static_cast<size_t>(i)] = std::abs(w);
  }
  for (int i = 0; i + 1 < scanN; ++i) {
    if (std::signbit(scanW[i]) != std::signbit(scanW[i + 1]))
      seeds.emplace_back(0.5 * (scanE[i] + scanE[i + 1]), 0.0);
  }
  for (int i = 1; i + 1 < scanN; ++i) {
    if (scanMag[i] < 0.3 * scanMag[i - 1] && scanMag[i] < 0.3 * scanMag[i + 1] &&
        std::signbit(scanW[i - 1]) == std::signbit(scanW[i + 1]))
      seeds.emplace_back(scanE[i], 0.0);
  }

  // Acceptance is residual-based: |W| below odeTol x 10 at the best iterate.
  // The matching determinant's envelope decays as E moves far from the
  // low-lying spectrum, so a candidate must additionally be a sharp local
  // dip of |W| relative to its neighborhood to count as a zero.
  const double residGate = problem.odeTol * 10.0;
  std::vector<EigenvalueRecord> found;
  auto tryAccept = [&](const MullerResult& mr) {
    if (!(mr.residual < residGate)) return;
    if (!box.contains(mr.root)) return;
    for (const auto& rec : found)
      if (std::abs(rec.value - mr.root) < 1e-6) return;  // dedupe
    double h = std::max(0.05, 1e-3 * std::abs(mr.root));
    double nearby = std::min(std::abs(W(mr.root + h)), std::abs(W(mr.root - h)));
    if (!(mr.residual < 1e-3 * nearby)) return;
    double labelTol = 1e-5 * std::max(1.0, std::abs(mr.root));
    EigenvalueKind kind = EigenvalueKind::NonQes;
    for (const auto& q : qes)
      if (std::abs(q - mr.root) < labelTol) kind = EigenvalueKind::Qes;
    found.push_back({mr.root, kind, mr.residual});
  };

  for (const Cplx& s : seeds) {
    if (!box.contains(s, 1.0)) continue;
    tryAccept(muller(W, s, 1e-12, 1e-12, 1e-13, 60));
  }

  std::sort(found.begin(), found.end(), [](const EigenvalueRecord& a, const EigenvalueRecord& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });
  if (static_cast<int>(found.size()) > count) found.resize(static_cast<size_t>(count));

  report.eigenvalues = std::move(found);
  report.incomplete = static_cast<int>(report.eigenvalues.size()) < count;
  report.wronskianEvaluations = evals;
  report.rescales = rescales;
  return report;
}

SpectrumReport findEigenvalues(const ShootingProblem& problem, const SearchBox& box, int count) {
  return findEigenvaluesSeeded(problem, box, count, {});
}

SpectrumReport findEigenvalues(const ShootingProblem& problem, int count) {
  return findEigenvalues(problem, defaultSearchBox(problem, count), count);
}

std::vector<SweepPoint> sweep(int J, const Rational& a, double bLo, double bHi, double bStep, int count) {
  if (!(bStep > 0)) throw std::invalid_argument("sweep: step must be positive");
  std::vector<SweepPoint> out;
  std::vector<Cplx> carried;
  for (int k = 0;; ++k) {
    double b = bLo + k * bStep;
    if (b > bHi + 1e-12) break;
    SweepPoint point;
    point.b = b;
    try {
      QuarticSpec spec(J, a, Rational(mpq_class(b)));
      ShootingProblem problem(spec);
      SearchBox box = defaultSearchBox(problem, count);
      point.report = findEigenvaluesSeeded(problem, box, count, carried);
      carried.clear();
      for (const auto& rec : point.report.eigenvalues) carried.push_back(rec.value);
    } catch (const std::exception& e) {
      point.error = e.what();  // record and continue with the remaining points
      carried.clear();
    }
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace qes
