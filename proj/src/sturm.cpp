#include "qes/sturm.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace qes {

namespace {

// Integer polynomial core. A Sturm chain over Q equals, element by element
// up to positive scalar factors, a primitive pseudo-remainder chain over Z,
// and the integer form avoids per-operation fraction reduction.
using ZPoly = std::vector<mpz_class>;  // ascending, trailing coefficient nonzero

void trimZ(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degZ(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

void makePrimitive(ZPoly& f) {
  mpz_class g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : f) c /= g;
}

/// Clear denominators and strip content; the sign pattern is preserved.
ZPoly toPrimitiveZ(const RationalPoly& p) {
  mpz_class lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.denominator().get_mpz_t());
  ZPoly f(p.coeffs().size());
  for (size_t i = 0; i < f.size(); ++i) {
    const Rational& c = p.coeffs()[i];
    f[i] = c.numerator() * (lcm / c.denominator());
  }
  trimZ(f);
  makePrimitive(f);
  return f;
}

RationalPoly toRationalPoly(const ZPoly& f) {
  std::vector<Rational> c(f.size());
  for (size_t i = 0; i < f.size(); ++i) c[i] = Rational(f[i]);
  return RationalPoly(std::move(c));
}

ZPoly derivativeZ(const ZPoly& f) {
  if (f.size() <= 1) return {};
  ZPoly d(f.size() - 1);
  for (size_t k = 1; k < f.size(); ++k) d[k - 1] = static_cast<long>(k) * f[k];
  return d;
}

/// Next chain element: a positive multiple of -rem(fprev, fcur), via
/// integer pseudo-division with explicit sign bookkeeping.
ZPoly sturmNext(const ZPoly& fprev, const ZPoly& fcur) {
  ZPoly r = fprev;
  const mpz_class& lc = fcur.back();
  const int dg = degZ(fcur);
  int scaleSign = 1;
  while (degZ(r) >= dg) {
    int dr = degZ(r);
    mpz_class lr = r.back();
    // r <- lc * r - lr * x^{dr-dg} * fcur; the top coefficient cancels.
    for (auto& c : r) c *= lc;
    for (int i = 0; i <= dg; ++i)
      r[static_cast<size_t>(dr - dg + i)] -= lr * fcur[static_cast<size_t>(i)];
    trimZ(r);
    if (sgn(lc) < 0) scaleSign = -scaleSign;
  }
  int flip = -scaleSign;  // negate the remainder, undoing any negative scale
  if (flip < 0)
    for (auto& c : r) c = -c;
  makePrimitive(r);
  return r;
}

int signAtZ(const ZPoly& f, const ExtendedRational& x) {
  if (f.empty()) return 0;
  switch (x.kind) {
    case ExtendedRational::PosInfinity:
      return sgn(f.back());
    case ExtendedRational::NegInfinity:
      return degZ(f) % 2 == 0 ? sgn(f.back()) : -sgn(f.back());
    case ExtendedRational::Finite:
      break;
  }
  // sign of v^deg * f(u/v) = sum c_i u^i v^{deg-i} for x = u/v, v > 0
  const mpz_class u = x.value.numerator();
  const mpz_class v = x.value.denominator();
  mpz_class acc = 0;
  if (v == 1) {
    for (size_t i = f.size(); i-- > 0;) acc = acc * u + f[i];
  } else {
    mpz_class vp = 1;
    for (size_t i = f.size(); i-- > 0;) {
      acc = acc * u + f[i] * vp;
      vp *= v;
    }
  }
  return sgn(acc);
}

struct IntChain {
  std::vector<ZPoly> elems;  // starts at the (possibly non-squarefree) input
  bool endsAtConstant = false;

  static IntChain build(ZPoly f) {
    IntChain ch;
    ch.elems.push_back(std::move(f));
    const ZPoly& head = ch.elems.front();
    if (degZ(head) >= 1) {
      ZPoly d = derivativeZ(head);
      makePrimitive(d);
      ch.elems.push_back(std::move(d));
      while (degZ(ch.elems.back()) > 0) {
        ZPoly next = sturmNext(ch.elems[ch.elems.size() - 2], ch.elems.back());
        if (next.empty()) break;
        ch.elems.push_back(std::move(next));
      }
    }
    ch.endsAtConstant = degZ(ch.elems.back()) <= 0;
    return ch;
  }
};

}  // namespace

struct SturmChain::Impl {
  IntChain chain;
  ZPoly sf;                 // primitive squarefree part the chain is built on
  RationalPoly sfRational;  // same, monic over Q, for callers
  bool inputSquarefree = true;

  int variations(const ExtendedRational& x) const {
    int count = 0, prev = 0;
    for (const auto& f : chain.elems) {
      int s = signAtZ(f, x);
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++count;
      prev = s;
    }
    return count;
  }
};

SturmChain::SturmChain(const RationalPoly& p) : impl_(std::make_unique<Impl>()) {
  if (p.isZero()) throw std::domain_error("SturmChain: zero polynomial");
  ZPoly f = toPrimitiveZ(p);
  IntChain ch = IntChain::build(f);
  if (!ch.endsAtConstant) {
    // Nontrivial gcd(p, p'): divide it out and rebuild on the squarefree part.
    impl_->inputSquarefree = false;
    RationalPoly g = toRationalPoly(ch.elems.back());
    RationalPoly sf = divRem(toRationalPoly(f), g).first;
    f = toPrimitiveZ(sf);
    ch = IntChain::build(f);
  }
  impl_->sf = f;
  impl_->chain = std::move(ch);
  impl_->sfRational = toRationalPoly(impl_->sf).monic();
}

SturmChain::~SturmChain() = default;
SturmChain::SturmChain(SturmChain&&) noexcept = default;
SturmChain& SturmChain::operator=(SturmChain&&) noexcept = default;

int SturmChain::countRoots(const ExtendedRational& lo, const ExtendedRational& hi) const {
  return impl_->variations(lo) - impl_->variations(hi);
}

const RationalPoly& SturmChain::squarefree() const { return impl_->sfRational; }

int SturmChain::signOfSquarefreeAt(const Rational& x) const {
  return signAtZ(impl_->sf, ExtendedRational::at(x));
}

bool SturmChain::inputWasSquarefree() const { return impl_->inputSquarefree; }

int sturmCount(const RationalPoly& p, const ExtendedRational& lo, const ExtendedRational& hi) {
  if (lo.kind == ExtendedRational::Finite && hi.kind == ExtendedRational::Finite && !(lo.value < hi.value))
    throw std::invalid_argument("sturmCount: requires lo < hi");
  return SturmChain(p).countRoots(lo, hi);
}

Rational cauchyBound(const RationalPoly& p) {
  if (p.isZero()) throw std::domain_error("cauchyBound: zero polynomial");
  Rational m(0);
  const Rational& lead = p.leading();
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeff(k) / lead);
    if (r > m) m = r;
  }
  return Rational(1) + m;
}

RootIsolation isolateRealRoots(const RationalPoly& p) {
  if (p.isZero()) throw std::domain_error("isolateRealRoots: zero polynomial");
  RootIsolation out;
  if (p.degree() == 0) return out;

  SturmChain chain(p);
  const RationalPoly& sf = chain.squarefree();
  Rational bound = cauchyBound(sf);

  // Split points must avoid roots of sf so every sub-bracket keeps a strict
  // sign change; a handful of interior candidates always suffices.
  auto splitPoint = [&](const Rational& a, const Rational& b) {
    const Rational half(1, 2), third(1, 3), eighth(3, 8), fifth(2, 5);
    for (const Rational& t : {half, third, eighth, fifth}) {
      Rational m = a + t * (b - a);
      if (chain.signOfSquarefreeAt(m) != 0) return m;
    }
    for (int i = 1; i < sf.degree() + 3; ++i) {
      Rational m = a + Rational(i, sf.degree() + 3) * (b - a);
      if (chain.signOfSquarefreeAt(m) != 0) return m;
    }
    throw std::logic_error("isolateRealRoots: no root-free split point");
  };

  struct Segment {
    Rational lo, hi;
    int count;
  };
  std::deque<Segment> work;
  int total = chain.countRoots(ExtendedRational::at(-bound), ExtendedRational::at(bound));
  work.push_back({-bound, bound, total});

  std::vector<IsolatingInterval> found;
  while (!work.empty()) {
    Segment seg = work.front();
    work.pop_front();
    if (seg.count == 0) continue;
    if (seg.count == 1) {
      found.push_back({seg.lo, seg.hi, 1});
      continue;
    }
    Rational mid = splitPoint(seg.lo, seg.hi);
    int left = chain.countRoots(ExtendedRational::at(seg.lo), ExtendedRational::at(mid));
    work.push_back({seg.lo, mid, left});
    work.push_back({mid, seg.hi, seg.count - left});
  }

  std::sort(found.begin(), found.end(),
            [](const IsolatingInterval& a, const IsolatingInterval& b) { return a.lo < b.lo; });

  // Multiplicities: trivial for squarefree input, otherwise recovered from
  // the Yun decomposition (each isolated root lies in exactly one factor).
  if (!chain.inputWasSquarefree()) {
    auto factors = squarefreeDecomposition(p);
    for (auto& iv : found) {
      for (const auto& [g, mult] : factors) {
        if (g.degree() > 0 &&
            sturmCount(g, ExtendedRational::at(iv.lo), ExtendedRational::at(iv.hi)) == 1) {
          iv.multiplicity = mult;
          break;
        }
      }
    }
  }

  out.intervals = std::move(found);
  out.realCount = static_cast<int>(out.intervals.size());
  for (const auto& iv : out.intervals) out.realCountWithMultiplicity += iv.multiplicity;
  return out;
}

double refineRoot(const RationalPoly& p, const Rational& lo, const Rational& hi, double tol) {
  if (p.isZero()) throw std::domain_error("refineRoot: zero polynomial");
  if (!(tol > 0)) throw std::invalid_argument("refineRoot: tol must be positive");

  SturmChain chain(p);

  if (lo == hi) {
    if (chain.signOfSquarefreeAt(lo) != 0)
      throw std::invalid_argument("refineRoot: degenerate interval is not a root");
    return lo.toDouble();
  }
  if (chain.countRoots(ExtendedRational::at(lo), ExtendedRational::at(hi)) != 1)
    throw std::invalid_argument("refineRoot: interval does not isolate exactly one root");

  Rational a = lo, b = hi;
  int sa = chain.signOfSquarefreeAt(a);
  if (sa == 0) return a.toDouble();

  const Rational tolR{mpq_class(tol)};  // exact binary value of tol
  int iterations = 0;
  const int cap = 400;
  while (b - a > tolR) {
    if (++iterations > cap) throw std::runtime_error("refinement stalled");
    Rational m = (a + b) / Rational(2);
    int sm = chain.signOfSquarefreeAt(m);
    if (sm == 0) return m.toDouble();
    if (sm == sa)
      a = m;
    else
      b = m;
  }

  // Newton polish in doubles, constrained to the certified bracket. The
  // squarefree part is rescaled by its largest coefficient so that huge
  // exact coefficients survive the conversion.
  const RationalPoly& sf = chain.squarefree();
  Rational maxc(0);
  for (const auto& c : sf.coeffs())
    if (abs(c) > maxc) maxc = abs(c);
  std::vector<double> fd(sf.coeffs().size());
  for (size_t i = 0; i < fd.size(); ++i) fd[i] = (sf.coeffs()[i] / maxc).toDouble();
  Polynomial<double> f(std::move(fd));
  Polynomial<double> fp = f.derivative();

  double x = (a.toDouble() + b.toDouble()) / 2.0;
  double aD = a.toDouble(), bD = b.toDouble();
  for (int i = 0; i < 8; ++i) {
    double fv = f(x), fpv = fp(x);
    if (fpv == 0.0) break;
    double nx = x - fv / fpv;
    if (!(nx >= aD && nx <= bD) || nx == x) break;
    x = nx;
  }
  return x;
}

}  // namespace qes
