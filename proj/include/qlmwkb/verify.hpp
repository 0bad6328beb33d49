#pragma once

#include <string>
#include <vector>

namespace qlmwkb {

enum class VerifySuite { formal, numeric, spectra, all };

VerifySuite verify_suite_from_string(const std::string& name);  // throws UsageError

struct CriterionResult {
    int index = 0;  // stable criterion number, 1-based
    std::string name;
    bool passed = false;
    std::string detail;  // one line, filled on failure or with the key figure
    double seconds = 0.0;
};

// Runs the verification battery for the chosen suite.  Criteria:
//   1 golden zeroth-series transcription     (formal)
//   2 golden first and second iterates       (formal)
//   3 doubling law of the matched prefix     (formal)
//   4 residual, homogeneity, parity          (formal)
//   5 closed-form level agreement            (spectra)
//   6 shooting-oracle cross-validation       (spectra)
//   7 half-integer vs integer discrepancy    (spectra)
//   8 numeric iterates and residue fit       (numeric)
//   9 reduction identities                   (spectra)
std::vector<CriterionResult> run_verification(VerifySuite suite);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qlmwkb
