#include "qes/roots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qes {

namespace {

std::complex<double> horner(const std::vector<double>& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
  return acc;
}

double scaledNorm(const std::vector<double>& c, std::complex<double> z) {
  double az = std::abs(z), pw = 1.0, s = 0.0;
  for (double ck : c) {
    s += std::abs(ck) * pw;
    pw *= az;
  }
  return std::max(s, 1e-300);
}

}  // namespace

std::vector<std::complex<double>> complexRoots(const Polynomial<double>& p, double tol) {
  if (p.isZero() || p.degree() < 1) throw std::domain_error("complexRoots: degree must be >= 1");
  const int n = p.degree();
  std::vector<double> c = p.coeffs();
  for (double& v : c) v /= p.coeffs().back();  // monic

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[static_cast<size_t>(i)];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("complexRoots: companion eigenvalue iteration failed for degree " +
                             std::to_string(n));

  std::vector<double> dc(c.begin(), c.end());
  std::vector<double> dcp(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) dcp[static_cast<size_t>(k - 1)] = k * dc[static_cast<size_t>(k)];

  std::vector<std::complex<double>> roots(static_cast<size_t>(n));
  int polishIterations = 0;
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = solver.eigenvalues()(i);
    // One Newton pass (a few guarded steps); multiple roots simply keep the
    // companion estimate, which is already within sqrt(eps) of the cluster.
    for (int it = 0; it < 4; ++it) {
      ++polishIterations;
      std::complex<double> f = horner(dc, z);
      std::complex<double> fp = horner(dcp, z);
      if (std::abs(fp) == 0.0) break;
      std::complex<double> step = f / fp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      std::complex<double> nz = z - step;
      if (std::abs(horner(dc, nz)) >= std::abs(f)) break;
      z = nz;
    }
    roots[static_cast<size_t>(i)] = z;
  }

  // Enforce conjugate closure: pair off-axis roots and average them.
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || std::abs(roots[i].imag()) == 0.0) continue;
    size_t best = i;
    double bestDist = 1e300;
    for (size_t j = 0; j < roots.size(); ++j) {
      if (j == i || used[j]) continue;
      double d = std::abs(roots[j] - std::conj(roots[i]));
      if (d < bestDist) {
        bestDist = d;
        best = j;
      }
    }
    double scale = std::max(1.0, std::abs(roots[i]));
    if (best != i && bestDist < 1e-7 * scale) {
      std::complex<double> z = 0.5 * (roots[i] + std::conj(roots[best]));
      if (roots[i].imag() < 0.0) z = std::conj(z);
      roots[i] = z;
      roots[best] = std::conj(z);
      used[i] = used[best] = true;
    }
  }

  for (const auto& z : roots) {
    double resid = std::abs(horner(dc, z)) / scaledNorm(dc, z);
    if (!(resid < tol))
      throw std::runtime_error("complexRoots: residual " + std::to_string(resid) +
                               " above tolerance for degree-" + std::to_string(n) +
                               " polynomial after " + std::to_string(polishIterations) +
                               " polish iterations");
  }

  std::sort(roots.begin(), roots.end(), [](const std::complex<double>& a, const std::complex<double>& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<std::complex<double>> complexRoots(const RationalPoly& p, double tol) {
  return complexRoots(toDouble(p.monic()), tol);
}

}  // namespace qes
