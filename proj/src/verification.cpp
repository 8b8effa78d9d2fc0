#include "qes/verification.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "qes/criticality.hpp"
#include "qes/qescore.hpp"
#include "qes/sl2.hpp"

namespace qes {

const std::vector<CriticalReference>& criticalReferenceValues() {
  static const std::vector<CriticalReference> table = {
      {2, "0.0", "0.0"},          {3, "3.0", "-2.0"},         {4, "5.47086", "-4.71894"},
      {5, "7.65570", "-7.93982"}, {6, "9.65184", "-11.5572"}, {7, "11.5104", "-15.5070"},
      {8, "13.2625", "-19.7459"}, {9, "14.9287", "-24.2419"}, {10, "16.5235", "-28.9706"},
      {11, "18.0576", "-33.9126"}, {12, "19.5392", "-39.0521"}, {13, "20.9747", "-44.3758"},
      {14, "22.3695", "-49.8725"}, {15, "23.7276", "-55.5323"}, {16, "25.0526", "-61.3470"},
      {17, "26.3475", "-67.3089"}, {18, "27.6149", "-73.4116"}, {19, "28.8569", "-79.6490"},
      {20, "30.0754", "-86.0158"}, {21, "31.2721", "-92.5072"}, {22, "32.4485", "-99.1187"},
      {23, "33.6058", "-105.846"}, {24, "34.7453", "-112.686"}, {25, "35.8679", "-119.635"},
      {26, "36.9747", "-126.689"}, {27, "38.0665", "-133.846"}, {28, "39.1439", "-141.103"},
      {29, "40.2078", "-148.458"}};
  return table;
}

double lastPlaceTolerance(const std::string& printed) {
  auto dot = printed.find('.');
  int decimals = dot == std::string::npos ? 0 : static_cast<int>(printed.size() - dot - 1);
  return 5.0 * std::pow(10.0, -decimals);
}

namespace {

bool rawIdentity(std::string& detail) {
  for (int J = 1; J <= 5; ++J) {
    for (int i = 0; i < 2 * J + 2; ++i) {
      for (int j = 0; j < 2 * J + 2; ++j) {
        Rational a(i - J), b(j - J);
        QuarticSpec spec(J, a, b);
        if (charPoly(buildOperator(spec)) != referenceRawPolynomial(J, a, b)) {
          detail = "mismatch at J=" + std::to_string(J) + " a=" + a.str() + " b=" + b.str();
          return false;
        }
      }
    }
  }
  detail = "J=1..5 on (2J+2)^2 rational grids, exact";
  return true;
}

bool reducedIdentity(std::string& detail) {
  for (int J = 1; J <= 8; ++J) {
    for (int t = 0; t < 2 * J + 2; ++t) {
      Rational K(t - J);
      // Two distinct (a, b) sections of the same K prove K-only dependence.
      QuarticSpec first(J, Rational(0), K / Rational(4));
      QuarticSpec second(J, Rational(1), (K - Rational(1)) / Rational(4));
      RationalPoly want = referenceReducedPolynomial(J, K);
      if (toReduced(charPoly(buildOperator(first)), first) != want ||
          toReduced(charPoly(buildOperator(second)), second) != want) {
        detail = "mismatch at J=" + std::to_string(J) + " K=" + K.str();
        return false;
      }
    }
  }
  detail = "J=1..8, 2J+2 K values, two (a,b) realizations each, exact";
  return true;
}

bool criticalRegression(std::string& detail) {
  for (const auto& row : criticalReferenceValues()) {
    CriticalPoint cp = findCritical(row.J);
    double wantK = std::stod(row.Kcrit), wantF = std::stod(row.Fcrit);
    if (std::abs(cp.Kcrit - wantK) > lastPlaceTolerance(row.Kcrit) ||
        std::abs(cp.Fcrit - wantF) > lastPlaceTolerance(row.Fcrit)) {
      std::ostringstream os;
      os << "J=" << row.J << " got (" << cp.Kcrit << ", " << cp.Fcrit << ") want (" << row.Kcrit
         << ", " << row.Fcrit << ")";
      detail = os.str();
      return false;
    }
  }
  detail = "J=2..29 within 5 units of the last printed place";
  return true;
}

bool exactEqual(const RationalMatrix& x, const RationalMatrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
  for (Eigen::Index r = 0; r < x.rows(); ++r)
    for (Eigen::Index c = 0; c < x.cols(); ++c)
      if (x(r, c) != y(r, c)) return false;
  return true;
}

bool commutators(std::string& detail) {
  for (int J = 1; J <= 12; ++J) {
    GeneratorSet g = buildGenerators(J);
    RationalMatrix zp = g.Jzero * g.Jplus - g.Jplus * g.Jzero;
    RationalMatrix zm = g.Jzero * g.Jminus - g.Jminus * g.Jzero;
    RationalMatrix pm = g.Jplus * g.Jminus - g.Jminus * g.Jplus;
    RationalMatrix negJminus = -g.Jminus;
    RationalMatrix minusTwoJzero = g.Jzero * Rational(-2);
    if (!exactEqual(zp, g.Jplus) || !exactEqual(zm, negJminus) || !exactEqual(pm, minusTwoJzero)) {
      detail = "commutator mismatch at J=" + std::to_string(J);
      return false;
    }
  }
  detail = "[J0,J+]=J+, [J0,J-]=-J-, [J+,J-]=-2J0 exact for J<=12";
  return true;
}

bool equivalence(std::string& detail) {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 10);
  for (int J = 1; J <= 10; ++J) {
    for (int trial = 0; trial < 10; ++trial) {
      Rational a(num(rng), den(rng)), b(num(rng), den(rng));
      EquivalenceReport rep = verifyEquivalence(J, a, b);
      if (!rep.equal) {
        detail = "entry (" + std::to_string(rep.row) + "," + std::to_string(rep.col) +
                 ") differs at J=" + std::to_string(J) + ": " + rep.lhs + " vs " + rep.rhs;
        return false;
      }
    }
  }
  detail = "generator form equals differential form entrywise, J<=10, 10 rational (a,b) each";
  return true;
}

}  // namespace

std::vector<VerificationResult> runVerificationSuite() {
  std::vector<VerificationResult> out;
  auto run = [&out](const std::string& name, bool (*fn)(std::string&)) {
    std::string detail;
    bool pass = fn(detail);
    out.push_back({name, pass, detail});
  };
  run("raw-polynomial identity", &rawIdentity);
  run("reduced-polynomial identity", &reducedIdentity);
  run("critical-value regression", &criticalRegression);
  run("commutator relations", &commutators);
  run("operator equivalence", &equivalence);
  return out;
}

}  // namespace qes
