#include "qlmwkb/verify.hpp"

#include "qlmwkb/emit.hpp"
#include "qlmwkb/errors.hpp"
#include "qlmwkb/qlm.hpp"
#include "qlmwkb/riccati.hpp"
#include "qlmwkb/shooting.hpp"
#include "qlmwkb/spectra.hpp"
#include "qlmwkb/wkb.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace qlmwkb {

VerifySuite verify_suite_from_string(const std::string& name) {
    if (name == "formal") return VerifySuite::formal;
    if (name == "numeric") return VerifySuite::numeric;
    if (name == "spectra") return VerifySuite::spectra;
    if (name == "all") return VerifySuite::all;
    throw UsageError("unknown verification suite '" + name + "'");
}

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

class Check {
  public:
    void require(bool cond, const std::string& what) {
        if (!cond && out.passed) {
            out.passed = false;
            out.detail = what;
        }
    }
    void note(const std::string& what) {
        if (out.passed) out.detail = what;
    }
    Outcome out;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

bool parity_holds(const DiffPolynomial& p, int order) {
    for (const auto& [key, coeff] : p.terms()) {
        (void)key;
        if (order % 2 == 0 && !coeff.is_imaginary()) return false;
        if (order % 2 == 1 && !coeff.is_real()) return false;
    }
    return true;
}

bool series_equal_report(Check& c, const GradedSeries& got, const GradedSeries& want,
                         const std::string& label) {
    const auto verdicts = golden_compare(got, want);
    for (const auto& v : verdicts) {
        if (!v.equal) {
            c.require(false, label + " differs at order " + std::to_string(v.order));
            return false;
        }
    }
    return true;
}

Outcome criterion_golden_zeroth() {
    Check c;
    const GradedSeries y = wkb_terms(8);
    const GradedSeries ref = load_fixture("wkb_series", 8);
    series_equal_report(c, y, ref, "zeroth series");
    c.note("orders 0..7 exact");
    return c.out;
}

Outcome criterion_golden_iterates() {
    Check c;
    series_equal_report(c, qlm_pth_series(1, 8), load_fixture("qlm_iterate1", 8),
                        "first iterate");
    series_equal_report(c, qlm_pth_series(2, 8), load_fixture("qlm_iterate2", 8),
                        "second iterate");
    c.note("iterates 1 and 2 exact");
    return c.out;
}

Outcome criterion_doubling_law() {
    Check c;
    const GradedSeries wkb = wkb_terms(8);
    for (int p = 0; p <= 3; ++p) {
        const int got = match_prefix(qlm_pth_series(p, 8), wkb);
        const int want = 1 << p;
        c.require(got == want, "iterate " + std::to_string(p) + " matched " +
                                   std::to_string(got) + " orders, expected " +
                                   std::to_string(want));
    }
    c.require(qlm_pth_series(3, 8) == wkb, "third iterate differs from the zeroth series");
    c.note("prefixes 1,2,4,8 and full order-8 match at p=3");
    return c.out;
}

Outcome criterion_residuals() {
    Check c;
    const GradedSeries wkb12 = wkb_terms(12);
    const GradedSeries res = riccati_residual(wkb12);
    c.require(res.leading_order() == res.order_cap(), "nonlinear residual is not zero");

    GradedSeries prev = qlm_pth_series(0, 8);
    for (int p = 1; p <= 3; ++p) {
        const GradedSeries cur = qlm_pth_series(p, 8);
        const GradedSeries lin = linearized_residual(cur, prev);
        c.require(lin.leading_order() == lin.order_cap(),
                  "linearized residual nonzero at iterate " + std::to_string(p));
        prev = cur;
    }

    for (int m = 0; m < wkb12.order_cap(); ++m) {
        const DiffPolynomial& coeff = wkb12.at(m);
        if (coeff.is_zero()) continue;
        const Signature sig = coeff.signature();
        c.require(sig.degree.has_value() && *sig.degree == 1 - m,
                  "order " + std::to_string(m) + " is not homogeneous of degree 1-m");
        c.require(sig.weight.has_value() && *sig.weight == m,
                  "order " + std::to_string(m) + " has wrong derivative weight");
        c.require(parity_holds(coeff, m), "order " + std::to_string(m) + " breaks parity");
    }
    c.note("residuals vanish; degree/weight/parity hold through order 11");
    return c.out;
}

struct LevelCase {
    PotentialSpec spec;
    std::vector<int> ns;
};

std::vector<LevelCase> closed_form_cases() {
    std::vector<LevelCase> cases;
    cases.push_back({make_potential(PotentialKind::ho1d), {0, 1, 2, 3, 4, 5}});
    for (int l = 0; l <= 2; ++l) {
        cases.push_back(
            {make_potential(PotentialKind::ho3d, {{"l", double(l)}}), {0, 1, 2, 3}});
        cases.push_back(
            {make_potential(PotentialKind::coulomb, {{"Z", 1.0}, {"l", double(l)}}),
             {0, 1, 2, 3}});
    }
    cases.push_back({make_potential(PotentialKind::hulthen, {{"lambda", 2.0}, {"a", 1.0}}), {0}});
    cases.push_back(
        {make_potential(PotentialKind::modified_pt, {{"V0", 6.0}, {"a", 1.0}}), {0, 1, 2}});
    cases.push_back({make_potential(PotentialKind::hylleraas, {{"V0", 6.0}, {"a", 1.0}}), {0}});
    cases.push_back(
        {make_potential(PotentialKind::pt_hole, {{"V1", 1.0}, {"V2", 2.0}, {"a", 1.0}}),
         {0, 1, 2, 3}});
    cases.push_back(
        {make_potential(PotentialKind::cotangent, {{"V0", 1.0}, {"a", 1.0}}), {0, 1, 2, 3}});
    cases.push_back(
        {make_potential(PotentialKind::eckart1d, {{"A", 0.0}, {"B", 3.0}, {"a", 1.0}}), {0, 1}});
    cases.push_back(
        {make_potential(PotentialKind::eckart3d, {{"lambda", 2.0}, {"b", 0.5}, {"a", 1.0}}),
         {0}});
    return cases;
}

Outcome criterion_closed_levels() {
    Check c;
    for (const auto& lc : closed_form_cases()) {
        for (int n : lc.ns) {
            const LevelResult ex = exact_levels(lc.spec, n);
            const LevelResult ql = qlm_levels(lc.spec, n);
            if (ex.status != LevelStatus::ok) continue;
            c.require(ql.status == LevelStatus::ok,
                      to_string(lc.spec.kind) + " level " + std::to_string(n) + " lost by qlm");
            c.require(close_rel(ex.energy, ql.energy, 1e-12),
                      to_string(lc.spec.kind) + " level " + std::to_string(n) + ": exact " +
                          fmt(ex.energy) + " vs qlm " + fmt(ql.energy));
        }
    }
    const PotentialSpec morse =
        make_potential(PotentialKind::morse, {{"A", 1.0}, {"B", 1.0}, {"a", 1.0}});
    for (int n = 0; exact_levels(morse, n).status == LevelStatus::ok; ++n) {
        const double ex = exact_levels(morse, n).energy;
        c.require(close_rel(ex, wkb_levels(morse, n).energy, 1e-12) &&
                      close_rel(ex, qlm_levels(morse, n).energy, 1e-12),
                  "morse level " + std::to_string(n) + " methods disagree");
    }
    c.note("exact = qlm across the catalogue; morse three-way equal");
    return c.out;
}

Outcome criterion_oracle() {
    Check c;
    const std::vector<PotentialSpec> specs = {
        make_potential(PotentialKind::hulthen, {{"a", 1.0}, {"lambda", 2.0}}),
        make_potential(PotentialKind::morse, {{"A", 1.0}, {"B", 1.0}, {"a", 1.0}}),
        make_potential(PotentialKind::modified_pt, {{"V0", 6.0}, {"a", 1.0}}),
        make_potential(PotentialKind::eckart1d, {{"A", 0.0}, {"B", 3.0}, {"a", 1.0}}),
    };
    for (const auto& spec : specs) {
        for (int n = 0; n < 3; ++n) {
            const LevelResult ql = qlm_levels(spec, n);
            if (ql.status != LevelStatus::ok) break;
            const double shot = shooting_oracle(spec, n);
            c.require(close_rel(ql.energy, shot, 1e-6),
                      to_string(spec.kind) + " level " + std::to_string(n) + ": qlm " +
                          fmt(ql.energy) + " vs oracle " + fmt(shot));
        }
    }
    c.note("oracle agrees to 1e-6 on all existing levels");
    return c.out;
}

Outcome criterion_discrepancy() {
    Check c;
    const PotentialSpec hul =
        make_potential(PotentialKind::hulthen, {{"a", 1.0}, {"lambda", 2.0}});
    c.require(close_rel(wkb_levels(hul, 0).energy, -7.03125, 1e-12),
              "hulthen wkb ground level is " + fmt(wkb_levels(hul, 0).energy));
    c.require(close_rel(qlm_levels(hul, 0).energy, -1.125, 1e-12),
              "hulthen qlm ground level is " + fmt(qlm_levels(hul, 0).energy));

    const PotentialSpec ho = make_potential(PotentialKind::ho1d);
    for (int n = 0; n <= 5; ++n) {
        c.require(close_rel(wkb_levels(ho, n).energy, qlm_levels(ho, n).energy, 1e-12),
                  "ho1d wkb vs qlm differ at level " + std::to_string(n));
    }
    for (int l = 0; l <= 2; ++l) {
        const PotentialSpec cou =
            make_potential(PotentialKind::coulomb, {{"Z", 1.0}, {"l", double(l)}});
        for (int n = 0; n <= 3; ++n) {
            c.require(close_rel(wkb_levels(cou, n).energy, qlm_levels(cou, n).energy, 1e-12),
                      "coulomb wkb vs qlm differ at level " + std::to_string(n));
        }
    }
    c.note("hulthen -7.03125 vs -1.125; oscillator and coulomb agree");
    return c.out;
}

Outcome criterion_numeric() {
    Check c;
    const PotentialSpec ho = make_potential(PotentialKind::ho1d);
    SolveConfig cfg;
    cfg.z_min = 4.0;
    cfg.z_max = 40.0;

    const IterateHistory hist = solve_qlm(ho, 2.5, 4, cfg);
    const double fit = asymptotic_residue_fit(hist.iterates[3],
                                              AsymptoticModel::oscillator_infinity, 2.5);
    c.require(std::abs(fit - 2.0) <= 1e-4, "residue fit " + fmt(fit) + ", expected 2.0");

    const SampledFunction closed = first_iterate_closed_form(ho, 2.5, cfg);
    double sup = 0.0;
    for (std::size_t i = 0; i < closed.values.size(); ++i) {
        sup = std::max(sup, std::abs(closed.values[i] - hist.iterates[1].values[i]));
    }
    c.require(sup <= 1e-6, "closed-form vs ODE first iterate sup " + fmt(sup));

    const std::vector<double> orders = convergence_orders(hist);
    for (std::size_t j = 0; j < orders.size(); ++j) {
        c.require(orders[j] >= 1.8,
                  "convergence order " + fmt(orders[j]) + " at step " + std::to_string(j + 2));
    }
    c.note("fit " + fmt(fit) + ", sup " + fmt(sup) + ", orders >= 1.8");
    return c.out;
}

Outcome criterion_reductions() {
    Check c;
    // same potential, two parameterizations: levels must agree identically
    for (double lam : {2.0, 20.0}) {
        const PotentialSpec eck =
            make_potential(PotentialKind::eckart3d, {{"lambda", lam}, {"b", 0.0}, {"a", 1.0}});
        const PotentialSpec hul =
            make_potential(PotentialKind::hulthen, {{"lambda", lam}, {"a", 1.0}});
        for (int n = 0; n < 3; ++n) {
            const LevelResult a = qlm_levels(eck, n);
            const LevelResult b = qlm_levels(hul, n);
            c.require(a.status == b.status, "eckart3d/hulthen status split at level " +
                                                std::to_string(n));
            if (a.status != LevelStatus::ok) continue;
            c.require(close_rel(a.energy, b.energy, 1e-12),
                      "eckart3d(b=0) " + fmt(a.energy) + " vs hulthen " + fmt(b.energy));
        }
    }

    const double W = 6.0, a = 1.0;
    const PotentialSpec eck1 =
        make_potential(PotentialKind::eckart1d, {{"A", 0.0}, {"B", 4.0 * W}, {"a", a}});
    const PotentialSpec mpt =
        make_potential(PotentialKind::modified_pt, {{"V0", W}, {"a", 2.0 * a}});
    for (int n = 0; n < 3; ++n) {
        c.require(close_rel(qlm_levels(eck1, n).energy, qlm_levels(mpt, n).energy, 1e-12),
                  "eckart1d(A=0,B=4W) level " + std::to_string(n) + " differs from widened well");
    }

    const PotentialSpec pt =
        make_potential(PotentialKind::pt_hole, {{"V1", 1.0}, {"V2", 1.0}, {"a", 1.0}});
    const PotentialSpec cot = make_potential(PotentialKind::cotangent, {{"V0", 1.0}, {"a", 1.0}});
    for (int n = 0; n < 3; ++n) {
        const double lhs = qlm_levels(pt, n).energy;
        const double rhs = 4.0 * (qlm_levels(cot, n).energy + 1.0);
        c.require(close_rel(lhs, rhs, 1e-12),
                  "double-well level " + std::to_string(n) + ": " + fmt(lhs) + " vs " + fmt(rhs));
    }
    c.note("all three identities hold to 1e-12");
    return c.out;
}

CriterionResult run_one(int index, const std::string& name, const std::function<Outcome()>& body) {
    CriterionResult r;
    r.index = index;
    r.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
        const Outcome out = body();
        r.passed = out.passed;
        r.detail = out.detail;
    } catch (const std::exception& e) {
        r.passed = false;
        r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

}  // namespace

std::vector<CriterionResult> run_verification(VerifySuite suite) {
    struct Entry {
        int index;
        VerifySuite suite;
        const char* name;
        Outcome (*body)();
    };
    const Entry entries[] = {
        {1, VerifySuite::formal, "golden zeroth-series transcription", criterion_golden_zeroth},
        {2, VerifySuite::formal, "golden first and second iterates", criterion_golden_iterates},
        {3, VerifySuite::formal, "doubling law of the matched prefix", criterion_doubling_law},
        {4, VerifySuite::formal, "residual, homogeneity, parity", criterion_residuals},
        {5, VerifySuite::spectra, "closed-form level agreement", criterion_closed_levels},
        {6, VerifySuite::spectra, "shooting-oracle cross-validation", criterion_oracle},
        {7, VerifySuite::spectra, "half-integer vs integer discrepancy", criterion_discrepancy},
        {8, VerifySuite::numeric, "numeric iterates and residue fit", criterion_numeric},
        {9, VerifySuite::spectra, "reduction identities", criterion_reductions},
    };
    std::vector<CriterionResult> results;
    for (const Entry& e : entries) {
        if (suite != VerifySuite::all && suite != e.suite) continue;
        results.push_back(run_one(e.index, e.name, e.body));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results) {
        if (!r.passed) return false;
    }
    return true;
}

}  // namespace qlmwkb
