#pragma once

#include <stdexcept>
#include <vector>

#include "qes/polynomial.hpp"
#include "qes/rational.hpp"

namespace qes {

/// The classical Hermitian sextic family V(x) = x^6 - (4J - 1)x^2, whose
/// even-parity sector carries a J-dimensional quasi-exact block.
struct SexticSpec {
  int J = 1;
  explicit SexticSpec(int J_) : J(J_) {
    if (J < 1) throw std::invalid_argument("SexticSpec: J must be >= 1");
  }
};

/// J x J matrix M = -T from the even-power recursion
/// 4(J-k)c_{k-1} + E c_k + 2(k+1)(2k+1)c_{k+1} = 0; the quasi-exact
/// energies are the eigenvalues of M.
RationalMatrix sexticOperator(const SexticSpec& spec);

/// Characteristic polynomial det(E I - M); monic, degree J, integer
/// coefficients.
RationalPoly sexticCharPoly(const SexticSpec& spec);

/// All J quasi-exact energies, sorted ascending. Realness is certified by a
/// Sturm count before any refinement; a shortfall throws, since it would
/// mean the operator construction is wrong.
std::vector<double> sexticEigenvalues(const SexticSpec& spec, double tol = 1e-12);

}  // namespace qes
