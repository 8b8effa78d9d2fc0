#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qes/qescore.hpp"
#include "qes/sextic.hpp"

namespace qes {

enum class Side { Left, Right };
enum class EigenvalueKind { Qes, NonQes };

/// Two-sided shooting setup for -psi'' + V psi = E psi. The quartic family
/// integrates along rays inside the two Stokes wedges (right wedge
/// (-60, 0) degrees, left wedge (-180, -120)); the sextic variant runs on
/// the real half-line with the even-parity condition psi'(0) = 0 standing
/// in for the left ray.
struct ShootingProblem {
  std::variant<QuarticSpec, SexticSpec> spec;
  double thetaRight;
  double thetaLeft;
  double rmax;
  double odeTol = 1e-12;

  explicit ShootingProblem(QuarticSpec q);
  explicit ShootingProblem(SexticSpec s);

  bool isQuartic() const { return std::holds_alternative<QuarticSpec>(spec); }
  const QuarticSpec& quartic() const { return std::get<QuarticSpec>(spec); }
  const SexticSpec& sextic() const { return std::get<SexticSpec>(spec); }

  void validate() const;

  /// Ray length satisfying |asymptotic factor|(rmax) < eps along the ray.
  static double defaultRmaxQuartic(double eps = 1e-14);
  static double defaultRmaxSextic(double eps = 1e-14);
};

/// Value and x-derivative of the decaying solution carried to the origin,
/// normalized to unit phase-space magnitude by a real positive scale.
struct RayEndpoint {
  std::complex<double> psi;
  std::complex<double> dpsi;  // d/dx
  int rescales = 0;
  int steps = 0;
};

/// Integrate the decaying solution from r = rmax down to the origin along
/// the given side's ray. Initial data is the asymptotic exponential of the
/// eigenfunction ansatz and its derivative.
RayEndpoint integrateRay(const ShootingProblem& problem, std::complex<double> E, Side side);

/// Two-sided matching determinant W(E) = psi_L psi_R' - psi_L' psi_R at the
/// origin; analytic in E and zero exactly at eigenvalues. Real for real E
/// when the rays are PT-mirrored.
std::complex<double> wronskianMismatch(const ShootingProblem& problem, std::complex<double> E);

struct EigenvalueRecord {
  std::complex<double> value;
  EigenvalueKind kind;
  double residual;  // |W| at convergence
};

struct SearchBox {
  double reLo, reHi, imLo, imHi;
  bool contains(std::complex<double> z, double slack = 1e-9) const {
    return z.real() >= reLo - slack && z.real() <= reHi + slack && z.imag() >= imLo - slack &&
           z.imag() <= imHi + slack;
  }
};

struct SpectrumReport {
  std::vector<EigenvalueRecord> eigenvalues;  // sorted by (Re, Im)
  int requested = 0;
  bool incomplete = false;  // fewer roots than requested were found
  double rmaxUsed = 0.0;
  long wronskianEvaluations = 0;
  int rescales = 0;
  SearchBox box{0, 0, 0, 0};
};

/// Default box around the quasi-exact block: Re in [Emin - 5, Emin + 10 n],
/// Im in [-5, 5].
SearchBox defaultSearchBox(const ShootingProblem& problem, int count);

/// Locate up to `count` eigenvalues in the box. Seeds are the exact QES
/// roots plus sign changes of the (real-on-axis) mismatch along a coarse
/// real-E scan; each seed is polished by Muller iteration on W(E).
SpectrumReport findEigenvalues(const ShootingProblem& problem, const SearchBox& box, int count);
SpectrumReport findEigenvalues(const ShootingProblem& problem, int count);

struct SweepPoint {
  double b;
  SpectrumReport report;
  std::string error;  // nonempty if this point failed
};

/// Spectrum as a function of b at fixed (J, a), with eigenvalue
/// continuation from one b to the next.
std::vector<SweepPoint> sweep(int J, const Rational& a, double bLo, double bHi, double bStep, int count);

}  // namespace qes
