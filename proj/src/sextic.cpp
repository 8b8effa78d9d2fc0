#include "qes/sextic.hpp"

#include <algorithm>

#include "qes/qescore.hpp"
#include "qes/sturm.hpp"

namespace qes {

RationalMatrix sexticOperator(const SexticSpec& spec) {
  const int J = spec.J;
  RationalMatrix m(J, J);
  m.setConstant(Rational(0));
  // (T + E I)c = 0 with T as in the recursion, so energies are eigenvalues
  // of M = -T. Index k runs over even powers x^{2k}, k = 0..J-1.
  for (int k = 0; k < J; ++k) {
    if (k >= 1) m(k, k - 1) = Rational(-4 * (J - k));
    if (k + 1 < J) m(k, k + 1) = Rational(-2 * (k + 1) * (2 * k + 1));
  }
  return m;
}

RationalPoly sexticCharPoly(const SexticSpec& spec) {
  return hessenbergCharPoly<Rational>(sexticOperator(spec));
}

std::vector<double> sexticEigenvalues(const SexticSpec& spec, double tol) {
  RationalPoly p = sexticCharPoly(spec);
  if (sturmCount(p) != spec.J)
    throw std::logic_error("sexticEigenvalues: realness certification failed at J = " +
                           std::to_string(spec.J));
  RootIsolation iso = isolateRealRoots(p);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(spec.J));
  for (const auto& iv : iso.intervals)
    for (int i = 0; i < iv.multiplicity; ++i) out.push_back(refineRoot(p, iv.lo, iv.hi, tol));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace qes
