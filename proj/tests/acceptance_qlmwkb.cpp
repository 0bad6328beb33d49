// Acceptance battery: nine criteria, one PASS/FAIL line each, nonzero exit
// on any failure.  Tolerances are pinned inside the library's verification
// layer; this driver only reports.
#include "qlmwkb/verify.hpp"

#include <cstdio>

int main() {
    const auto results = qlmwkb::run_verification(qlmwkb::VerifySuite::all);
    bool ok = true;
    for (const auto& r : results) {
        ok = ok && r.passed;
        std::printf("[%s] %d %-40s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.index,
                    r.name.c_str(), r.seconds, r.detail.c_str());
    }
    std::printf("%s\n", ok ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL");
    return ok ? 0 : 1;
}
