#pragma once

#include <complex>
#include <vector>

#include "qes/polynomial.hpp"

namespace qes {

/// All deg(p) complex roots of p, found as eigenvalues of the companion
/// matrix with one Newton polish per root. Roots of a real-coefficient
/// polynomial are returned closed under conjugation and sorted by
/// (Re, Im). `tol` bounds the scaled residual |p(z)| / sum_k |c_k||z|^k.
std::vector<std::complex<double>> complexRoots(const RationalPoly& p, double tol = 1e-10);

std::vector<std::complex<double>> complexRoots(const Polynomial<double>& p, double tol = 1e-10);

}  // namespace qes
