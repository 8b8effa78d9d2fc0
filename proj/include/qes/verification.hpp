#pragma once

#include <string>
#include <vector>

namespace qes {

/// Published critical values (K, F) for the first spectral degeneracy,
/// J = 2..29, kept as printed so regression tests can honor the original
/// precision digit-for-digit.
struct CriticalReference {
  int J;
  const char* Kcrit;
  const char* Fcrit;
};

const std::vector<CriticalReference>& criticalReferenceValues();

/// 5 units in the last printed decimal place of `printed`.
double lastPlaceTolerance(const std::string& printed);

struct VerificationResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// The cross-module identity suite: raw and reduced polynomial identities
/// against the stored closed forms, the critical-value regression,
/// commutator relations, and generator/differential-operator equivalence.
std::vector<VerificationResult> runVerificationSuite();

}  // namespace qes
