#include "qes/sl2.hpp"

namespace qes {

std::string GaussianRational::str() const {
  if (im.isZero()) return re.str();
  std::string s = re.isZero() ? "" : re.str();
  if (!s.empty() && im.sign() > 0) s += "+";
  s += im.str() + "i";
  return s;
}

GeneratorSet buildGenerators(int J) {
  if (J < 1) throw std::invalid_argument("buildGenerators: J must be >= 1");
  GeneratorSet g{J, RationalMatrix(J, J), RationalMatrix(J, J), RationalMatrix(J, J)};
  g.Jplus.setConstant(Rational(0));
  g.Jzero.setConstant(Rational(0));
  g.Jminus.setConstant(Rational(0));
  for (int c = 0; c < J; ++c) {
    // x^c -> (c - J + 1) x^{c+1}; the top monomial is annihilated, which is
    // what keeps the span invariant.
    if (c + 1 < J) g.Jplus(c + 1, c) = Rational(c - J + 1);
    g.Jzero(c, c) = Rational(c) - Rational(J - 1, 2);
    if (c >= 1) g.Jminus(c - 1, c) = Rational(c);
  }
  return g;
}

namespace {

GaussianMatrix toGaussian(const RationalMatrix& m) {
  GaussianMatrix g(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) g(r, c) = GaussianRational(m(r, c));
  return g;
}

}  // namespace

GaussianMatrix buildAlgebraicH(int J, const Rational& a, const Rational& b) {
  GeneratorSet g = buildGenerators(J);
  GaussianMatrix jp = toGaussian(g.Jplus), jz = toGaussian(g.Jzero), jm = toGaussian(g.Jminus);
  const GaussianRational twoI(Rational(0), Rational(2));
  const GaussianRational twoA(Rational(2) * a);
  const GaussianRational twoIb(Rational(0), Rational(2) * b);
  const GaussianRational shift(b * b + Rational(J) * a);

  GaussianMatrix h = -(jm * jm).eval();
  for (int r = 0; r < J; ++r)
    for (int c = 0; c < J; ++c)
      h(r, c) += twoI * jp(r, c) + twoA * jz(r, c) + twoIb * jm(r, c);
  for (int d = 0; d < J; ++d) h(d, d) += shift;
  return h;
}

GaussianMatrix differentialH(int J, const Rational& a, const Rational& b) {
  if (J < 1) throw std::invalid_argument("differentialH: J must be >= 1");
  GaussianMatrix h(J, J);
  h.setConstant(GaussianRational(0));
  // h[x^c] = -c(c-1) x^{c-2} + 2i(c - J + 1) x^{c+1}
  //          + (2ac + b^2 + a) x^c + 2ibc x^{c-1}
  for (int c = 0; c < J; ++c) {
    if (c >= 2) h(c - 2, c) += GaussianRational(Rational(-c * (c - 1)));
    if (c + 1 < J) h(c + 1, c) += GaussianRational(Rational(0), Rational(2 * (c - J + 1)));
    h(c, c) += GaussianRational(Rational(2 * c) * a + b * b + a);
    if (c >= 1) h(c - 1, c) += GaussianRational(Rational(0), Rational(2 * c) * b);
  }
  return h;
}

EquivalenceReport verifyEquivalence(int J, const Rational& a, const Rational& b) {
  GaussianMatrix lhs = buildAlgebraicH(J, a, b);
  GaussianMatrix rhs = differentialH(J, a, b);
  for (int r = 0; r < J; ++r)
    for (int c = 0; c < J; ++c)
      if (lhs(r, c) != rhs(r, c))
        return {false, r, c, lhs(r, c).str(), rhs(r, c).str()};
  return {true, -1, -1, "", ""};
}

}  // namespace qes
