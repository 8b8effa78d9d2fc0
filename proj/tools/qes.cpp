// Command-line interface to the quasi-exactly solvable quartic toolkit.
//
// Subcommands: qpoly, roots, critical, spectrum, sweep, sextic, verify.
// Exit codes: 0 ok, 2 bad arguments, 3 numerical non-convergence,
// 4 verification failure.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "qes/criticality.hpp"
#include "qes/qescore.hpp"
#include "qes/sextic.hpp"
#include "qes/shooting.hpp"
#include "qes/sturm.hpp"
#include "qes/verification.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitVerifyFailed = 4;

struct CommonOpts {
  std::string format = "pretty";  // json | csv | pretty
  std::string outPath;
  bool noMeta = false;
  double tol = 1e-12;
};

std::string fmtDouble(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string isoTimestamp() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
  return buf;
}

json makeEnvelope(const std::string& command, const CommonOpts& opts) {
  json j;
  j["schema"] = "qes/1";
  j["command"] = command;
  if (!opts.noMeta) j["meta"] = {{"timestamp", isoTimestamp()}};
  return j;
}

void emit(const std::string& text, const CommonOpts& opts) {
  if (opts.outPath.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(opts.outPath, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + opts.outPath);
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
  }
}

qes::Rational parseFraction(const std::string& s) {
  try {
    return qes::Rational::fromString(s);
  } catch (const std::exception& e) {
    throw CLI::ValidationError(std::string("not an exact fraction: ") + e.what());
  }
}

json polyToJson(const qes::RationalPoly& p) {
  json coeffs = json::array();
  for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(p.coeff(k).str());
  return coeffs;
}

// ---------------------------------------------------------------- qpoly ---

int cmdQpoly(int J, const std::string& aStr, const std::string& bStr, const std::string& form,
             const CommonOpts& opts) {
  qes::Rational a = parseFraction(aStr), b = parseFraction(bStr);
  qes::QuarticSpec spec(J, a, b);
  qes::RationalPoly raw = qes::charPoly(qes::buildOperator(spec));
  bool reduced = form == "reduced";
  qes::RationalPoly poly = reduced ? qes::toReduced(raw, spec) : raw;
  const std::string var = reduced ? "F" : "E";

  if (opts.format == "json") {
    json j = makeEnvelope("qpoly", opts);
    j["params"] = {{"J", J}, {"a", a.str()}, {"b", b.str()}, {"form", form}};
    json result;
    result["variable"] = var;
    if (reduced) result["K"] = spec.reducedK().str();
    result["coefficients"] = polyToJson(poly);
    j["result"] = result;
    emit(j.dump(2), opts);
  } else if (opts.format == "csv") {
    std::ostringstream os;
    os << "power,coefficient\n";
    for (int k = 0; k <= poly.degree(); ++k) os << k << "," << poly.coeff(k).str() << "\n";
    emit(os.str(), opts);
  } else {
    std::ostringstream os;
    os << "Q_" << J << "(" << var << ") = " << poly.str(var) << "\n";
    if (reduced) os << "K = " << spec.reducedK().str() << "\n";
    emit(os.str(), opts);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- roots ---

int cmdRoots(int J, const std::string& aStr, const std::string& bStr, const CommonOpts& opts) {
  qes::Rational a = parseFraction(aStr), b = parseFraction(bStr);
  qes::QuarticSpec spec(J, a, b);
  qes::QesSpectrum qs = qes::qesEigenvalues(spec, opts.tol);

  auto residual = [&](std::complex<double> z) {
    auto pd = qes::toDouble(qs.charPolyE.monic());
    double num = std::abs(qes::evalComplex(pd, z));
    double den = 0, pw = 1, az = std::abs(z);
    for (double c : pd.coeffs()) {
      den += std::abs(c) * pw;
      pw *= az;
    }
    return num / std::max(den, 1e-300);
  };

  if (opts.format == "json") {
    json j = makeEnvelope("roots", opts);
    j["params"] = {{"J", J}, {"a", a.str()}, {"b", b.str()}, {"tol", opts.tol}};
    json vals = json::array();
    for (double e : qs.realEigenvalues)
      vals.push_back({{"re", e}, {"im", 0.0}, {"kind", "real"}, {"residual", residual({e, 0})}});
    for (const auto& z : qs.complexEigenvalues)
      vals.push_back(
          {{"re", z.real()}, {"im", z.imag()}, {"kind", "complex"}, {"residual", residual(z)}});
    j["result"] = {{"K", spec.reducedK().str()},
                   {"charpoly_E", polyToJson(qs.charPolyE)},
                   {"eigenvalues", vals}};
    emit(j.dump(2), opts);
  } else if (opts.format == "csv") {
    std::ostringstream os;
    os << "index,kind,re_E,im_E,residual\n";
    int idx = 0;
    for (double e : qs.realEigenvalues)
      os << idx++ << ",real," << fmtDouble(e) << ",0," << fmtDouble(residual({e, 0})) << "\n";
    for (const auto& z : qs.complexEigenvalues)
      os << idx++ << ",complex," << fmtDouble(z.real()) << "," << fmtDouble(z.imag()) << ","
         << fmtDouble(residual(z)) << "\n";
    emit(os.str(), opts);
  } else {
    std::ostringstream os;
    os << "QES block J=" << J << ", a=" << a.str() << ", b=" << b.str()
       << " (K=" << spec.reducedK().str() << ")\n";
    for (double e : qs.realEigenvalues) os << "  E = " << fmtDouble(e) << "\n";
    for (const auto& z : qs.complexEigenvalues)
      os << "  E = " << fmtDouble(z.real()) << (z.imag() >= 0 ? " + " : " - ")
         << fmtDouble(std::abs(z.imag())) << " i\n";
    emit(os.str(), opts);
  }
  return kExitOk;
}

// ------------------------------------------------------------- critical ---

std::pair<int, int> parseJRange(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    int j = std::stoi(s);
    return {j, j};
  }
  return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

int cmdCritical(const std::string& rangeStr, const CommonOpts& opts) {
  auto [jLo, jHi] = parseJRange(rangeStr);
  if (jLo < 2 || jHi < jLo)
    throw CLI::ValidationError("critical requires J >= 2 (no degeneracy at degree 1)");

  std::vector<qes::CriticalPoint> rows;
  std::optional<std::string> failure;
  for (int J = jLo; J <= jHi; ++J) {
    try {
      rows.push_back(qes::findCritical(J));
      if (!rows.back().newtonConverged) {
        failure = "solver did not reach requested residuals at J=" + std::to_string(J);
        break;
      }
    } catch (const std::exception& e) {
      failure = e.what();
      break;
    }
  }

  if (opts.format == "json") {
    json j = makeEnvelope("critical", opts);
    j["params"] = {{"J", rangeStr}};
    json table = json::array();
    for (const auto& cp : rows)
      table.push_back({{"J", cp.J},
                       {"K_critical", cp.Kcrit},
                       {"F_critical", cp.Fcrit},
                       {"residual_Q", cp.residualQ},
                       {"residual_dQdF", cp.residualQF}});
    j["result"] = {{"rows", table}};
    if (failure) j["error"] = *failure;
    emit(j.dump(2), opts);
  } else if (opts.format == "csv") {
    std::ostringstream os;
    os << "J,K_critical,F_critical\n";
    for (const auto& cp : rows) {
      char line[96];
      std::snprintf(line, sizeof(line), "%d,%.9g,%.9g\n", cp.J, cp.Kcrit, cp.Fcrit);
      os << line;
    }
    emit(os.str(), opts);
  } else {
    std::ostringstream os;
    os << "  J   K_critical    F_critical\n";
    for (const auto& cp : rows) {
      char line[96];
      std::snprintf(line, sizeof(line), "%3d   %-12.9g  %-12.9g\n", cp.J, cp.Kcrit, cp.Fcrit);
      os << line;
    }
    emit(os.str(), opts);
  }
  if (failure) {
    std::cerr << "critical: " << *failure << "\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

// ------------------------------------------------------------- spectrum ---

json reportToJson(const qes::SpectrumReport& rep) {
  json vals = json::array();
  for (const auto& r : rep.eigenvalues)
    vals.push_back({{"re", r.value.real()},
                    {"im", r.value.imag()},
                    {"kind", r.kind == qes::EigenvalueKind::Qes ? "qes" : "nonqes"},
                    {"residual", r.residual}});
  return {{"eigenvalues", vals},
          {"requested", rep.requested},
          {"incomplete", rep.incomplete},
          {"rmax", rep.rmaxUsed},
          {"wronskian_evaluations", rep.wronskianEvaluations}};
}

int cmdSpectrum(int J, const std::string& aStr, const std::string& bStr, int count,
                const CommonOpts& opts) {
  qes::Rational a = parseFraction(aStr), b = parseFraction(bStr);
  qes::QuarticSpec spec(J, a, b);
  qes::ShootingProblem problem(spec);
  problem.odeTol = std::clamp(opts.tol, 1e-13, 1e-6);
  qes::SpectrumReport rep = qes::findEigenvalues(problem, count);

  if (opts.format == "json") {
    json j = makeEnvelope("spectrum", opts);
    j["params"] = {{"J", J}, {"a", a.str()}, {"b", b.str()}, {"count", count}, {"tol", problem.odeTol}};
    j["result"] = reportToJson(rep);
    emit(j.dump(2), opts);
  } else if (opts.format == "csv") {
    std::ostringstream os;
    os << "index,kind,re_E,im_E,residual\n";
    int idx = 0;
    for (const auto& r : rep.eigenvalues)
      os << idx++ << "," << (r.kind == qes::EigenvalueKind::Qes ? "qes" : "nonqes") << ","
         << fmtDouble(r.value.real()) << "," << fmtDouble(r.value.imag()) << ","
         << fmtDouble(r.residual) << "\n";
    emit(os.str(), opts);
  } else {
    std::ostringstream os;
    os << "Shooting spectrum J=" << J << ", a=" << a.str() << ", b=" << b.str() << "\n";
    for (const auto& r : rep.eigenvalues)
      os << "  E = " << fmtDouble(r.value.real()) << (r.value.imag() >= 0 ? " + " : " - ")
         << fmtDouble(std::abs(r.value.imag())) << " i   ["
         << (r.kind == qes::EigenvalueKind::Qes ? "qes" : "nonqes")
         << ", |W| = " << fmtDouble(r.residual) << "]\n";
    if (rep.incomplete) os << "  warning: fewer eigenvalues than requested were found\n";
    emit(os.str(), opts);
  }
  return rep.incomplete ? kExitNoConvergence : kExitOk;
}

// ---------------------------------------------------------------- sweep ---

int cmdSweep(int J, const std::string& aStr, const std::string& bRange, int count,
             const CommonOpts& opts) {
  qes::Rational a = parseFraction(aStr);
  double lo, hi, step;
  {
    std::string s = bRange;
    for (auto& c : s)
      if (c == ':') c = ' ';
    std::istringstream is(s);
    if (!(is >> lo >> hi >> step) || !(step > 0) || hi < lo)
      throw CLI::ValidationError("b range must be lo:hi:step with step > 0");
  }
  auto points = qes::sweep(J, a, lo, hi, step, count);

  std::ostringstream os;
  os << "b,index,kind,re_E,im_E,residual\n";
  bool anyFailure = false;
  for (const auto& pt : points) {
    if (!pt.error.empty()) {
      anyFailure = true;
      continue;
    }
    int idx = 0;
    for (const auto& r : pt.report.eigenvalues)
      os << fmtDouble(pt.b) << "," << idx++ << ","
         << (r.kind == qes::EigenvalueKind::Qes ? "qes" : "nonqes") << ","
         << fmtDouble(r.value.real()) << "," << fmtDouble(r.value.imag()) << ","
         << fmtDouble(r.residual) << "\n";
  }
  emit(os.str(), opts);
  if (anyFailure) {
    std::cerr << "sweep: some points failed to converge and were skipped\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

// --------------------------------------------------------------- sextic ---

int cmdSextic(int J, const CommonOpts& opts) {
  qes::SexticSpec spec(J);
  auto energies = qes::sexticEigenvalues(spec, opts.tol);
  if (opts.format == "json") {
    json j = makeEnvelope("sextic", opts);
    j["params"] = {{"J", J}, {"tol", opts.tol}};
    j["result"] = {{"eigenvalues", energies}, {"charpoly_E", polyToJson(qes::sexticCharPoly(spec))}};
    emit(j.dump(2), opts);
  } else if (opts.format == "csv") {
    std::ostringstream os;
    os << "index,E\n";
    for (size_t i = 0; i < energies.size(); ++i) os << i << "," << fmtDouble(energies[i]) << "\n";
    emit(os.str(), opts);
  } else {
    std::ostringstream os;
    os << "Sextic quasi-exact energies, J=" << J << ":\n";
    for (double e : energies) os << "  E = " << fmtDouble(e) << "\n";
    emit(os.str(), opts);
  }
  return kExitOk;
}

// --------------------------------------------------------------- verify ---

int cmdVerify(const CommonOpts& opts) {
  auto results = qes::runVerificationSuite();
  bool allPass = true;
  if (opts.format == "json") {
    json j = makeEnvelope("verify", opts);
    json arr = json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      allPass = allPass && r.pass;
    }
    j["result"] = {{"checks", arr}, {"all_pass", allPass}};
    emit(j.dump(2), opts);
  } else {
    std::ostringstream os;
    for (const auto& r : results) {
      os << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.detail << ")\n";
      allPass = allPass && r.pass;
    }
    os << (allPass ? "verification suite passed\n" : "verification suite FAILED\n");
    emit(os.str(), opts);
  }
  return allPass ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and numerical spectra of the quasi-exactly solvable quartic family"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name

  CommonOpts opts;
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}))
      ->capture_default_str();
  app.add_option("--out", opts.outPath, "Write output to a file instead of stdout");
  app.add_flag("--no-meta", opts.noMeta, "Omit the timestamp metadata");
  app.add_option("--tol", opts.tol, "Numerical tolerance")->capture_default_str();

  int J = 1, count = 5;
  std::string aStr = "0", bStr = "0", form = "raw", jRange = "2..10", bRange;

  auto* qpoly = app.add_subcommand("qpoly", "Exact QES polynomial Q_J");
  qpoly->add_option("--J", J, "Block size J >= 1")->required()->check(CLI::PositiveNumber);
  qpoly->add_option("--a", aStr, "Parameter a as an exact fraction");
  qpoly->add_option("--b", bStr, "Parameter b as an exact fraction");
  qpoly->add_option("--form", form, "raw (in E) or reduced (in F)")
      ->check(CLI::IsMember({"raw", "reduced"}));

  auto* roots = app.add_subcommand("roots", "QES eigenvalues as exact polynomial roots");
  roots->add_option("--J", J)->required()->check(CLI::PositiveNumber);
  roots->add_option("--a", aStr);
  roots->add_option("--b", bStr);

  auto* critical = app.add_subcommand("critical", "Critical (K, F) where the lowest pair merges");
  critical->add_option("--J", jRange, "Single J or range lo..hi, J >= 2")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Shooting spectrum (QES + non-QES)");
  spectrum->add_option("--J", J)->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--a", aStr);
  spectrum->add_option("--b", bStr);
  spectrum->add_option("--count", count, "Number of eigenvalues")->check(CLI::PositiveNumber);

  auto* sweepCmd = app.add_subcommand("sweep", "Spectrum vs b, CSV output");
  sweepCmd->add_option("--J", J)->required()->check(CLI::PositiveNumber);
  sweepCmd->add_option("--a", aStr);
  sweepCmd->add_option("--b", bRange, "Range lo:hi:step")->required();
  sweepCmd->add_option("--count", count)->check(CLI::PositiveNumber);

  auto* sextic = app.add_subcommand("sextic", "Sextic baseline quasi-exact energies");
  sextic->add_option("--J", J)->required()->check(CLI::PositiveNumber);

  app.add_subcommand("verify", "Run the cross-module identity suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadArgs;
  }

  try {
    if (qpoly->parsed()) return cmdQpoly(J, aStr, bStr, form, opts);
    if (roots->parsed()) return cmdRoots(J, aStr, bStr, opts);
    if (critical->parsed()) return cmdCritical(jRange, opts);
    if (spectrum->parsed()) return cmdSpectrum(J, aStr, bStr, count, opts);
    if (sweepCmd->parsed()) return cmdSweep(J, aStr, bRange, count, opts);
    if (sextic->parsed()) return cmdSextic(J, opts);
    if (app.get_subcommand("verify")->parsed()) return cmdVerify(opts);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << "\n";
    return kExitBadArgs;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitNoConvergence;
  }
  return kExitBadArgs;
}
