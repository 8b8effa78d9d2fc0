#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "qes/polynomial.hpp"
#include "qes/rational.hpp"

namespace qes {

/// One Hamiltonian of the quartic family: H = p^2 - x^4 + 2iax^3
/// + (a^2 - 2b)x^2 + 2i(ab - J)x. J is the size of the quasi-exact block.
struct QuarticSpec {
  int J = 1;
  Rational a;
  Rational b;

  QuarticSpec(int J_, Rational a_, Rational b_) : J(J_), a(std::move(a_)), b(std::move(b_)) {
    if (J < 1) throw std::invalid_argument("QuarticSpec: J must be >= 1");
  }

  /// K = 4b + a^2, the single parameter the reduced polynomial depends on.
  Rational reducedK() const { return Rational(4) * b + a * a; }
  /// E = F + b^2 + J a; this is the shift between raw and reduced variables.
  Rational energyShift() const { return b * b + Rational(J) * a; }
};

/// Reduced form of a spec: only (J, K) matter after the variable change.
struct ReducedSpec {
  int J = 1;
  Rational K;
};

/// Real J x J matrix whose eigenvalues are the quasi-exact energies.
/// Entries follow from substituting the polynomial ansatz into the
/// Schroedinger equation and rescaling coefficients by powers of i:
/// sub-diagonal 2(m-J), diagonal 2am + b^2 + a, first super-diagonal
/// -2b(m+1), second super-diagonal (m+1)(m+2).
RationalMatrix buildOperator(const QuarticSpec& spec);

/// Monic characteristic polynomial det(E I - M) of an upper Hessenberg
/// matrix, via the leading-principal-minor recursion. Exact over any
/// field scalar.
template <typename Scalar>
Polynomial<Scalar> hessenbergCharPoly(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0 || m.cols() != n) throw std::invalid_argument("hessenbergCharPoly: matrix must be square");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i - 1; ++j)
      if (!(m(i, j) == Scalar(0)))
        throw std::invalid_argument("hessenbergCharPoly: matrix is not upper Hessenberg");

  using Poly = Polynomial<Scalar>;
  std::vector<Poly> minors;
  minors.reserve(static_cast<size_t>(n) + 1);
  minors.push_back(Poly::constant(Scalar(1)));
  const Poly lambda = Poly::variable();
  for (int i = 1; i <= n; ++i) {
    // d_i = (lambda - h_ii) d_{i-1} - sum_k h_{k,i} (prod subdiag) d_{k-1}
    Poly d = (lambda - Poly::constant(m(i - 1, i - 1))) * minors[static_cast<size_t>(i - 1)];
    Scalar subProduct(1);
    for (int k = i - 1; k >= 1; --k) {
      subProduct = subProduct * m(k, k - 1);
      d = d - m(k - 1, i - 1) * subProduct * minors[static_cast<size_t>(k - 1)];
    }
    minors.push_back(std::move(d));
  }
  return minors.back();
}

/// Q_J(E; a, b): characteristic polynomial of the QES operator.
RationalPoly charPoly(const RationalMatrix& op);

/// Exact substitution E = F + b^2 + J a, producing Q_J(F). The result
/// depends on (a, b) only through K = 4b + a^2.
RationalPoly toReduced(const RationalPoly& polyInE, const QuarticSpec& spec);

/// The full QES block: exact characteristic polynomial plus its roots,
/// classified real (sorted ascending, repeated per multiplicity) versus
/// complex (conjugate pairs).
struct QesSpectrum {
  QuarticSpec spec;
  RationalPoly charPolyE;
  std::vector<double> realEigenvalues;
  std::vector<std::complex<double>> complexEigenvalues;  // conjugate pairs, adjacent
};

QesSpectrum qesEigenvalues(const QuarticSpec& spec, double tol = 1e-12);

/// The hardcoded published polynomials, usable as independent oracles:
/// raw Q_J(E; a, b) for J <= 5 and reduced Q_J(F; K) for J <= 8.
/// Throws "no reference polynomial" outside the stored range.
RationalPoly referenceRawPolynomial(int J, const Rational& a, const Rational& b);
RationalPoly referenceReducedPolynomial(int J, const Rational& K);

}  // namespace qes
