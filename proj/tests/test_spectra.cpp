#include "qlmwkb/errors.hpp"
#include "qlmwkb/potential.hpp"
#include "qlmwkb/spectra.hpp"

#include <doctest.h>

#include <cmath>

using namespace qlmwkb;

namespace {

PotentialSpec make(PotentialKind kind, std::map<std::string, double> params = {}) {
    return make_potential(kind, std::move(params));
}

double qlm_at(const PotentialSpec& p, int n) {
    const LevelResult r = qlm_levels(p, n);
    REQUIRE(r.status == LevelStatus::ok);
    return r.energy;
}

double wkb_at(const PotentialSpec& p, int n) {
    const LevelResult r = wkb_levels(p, n);
    REQUIRE(r.status == LevelStatus::ok);
    return r.energy;
}

// Solves the pole-sum relation directly on a bracket around the expected
// energy; closed forms and the relation must agree to bisection accuracy.
double relation_root(const PotentialSpec& p, Method mode, int n, double lo, double hi) {
    return solve_relation(quantization_relation(p, mode), n, lo, hi);
}

}  // namespace

TEST_CASE("kind names round-trip") {
    const char* names[] = {"ho1d",      "ho3d",    "coulomb",  "cotangent", "pt_hole", "modified_pt",
                           "hylleraas", "eckart1d", "eckart3d", "hulthen",   "morse"};
    for (const char* name : names) {
        CHECK(to_string(potential_kind_from_string(name)) == name);
    }
    CHECK_THROWS_AS(potential_kind_from_string("woods_saxon"), UsageError);
    CHECK(method_from_string("exact") == Method::exact);
    CHECK(method_from_string("wkb") == Method::wkb);
    CHECK(method_from_string("qlm") == Method::qlm);
    CHECK_THROWS_AS(method_from_string("variational"), UsageError);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(make(PotentialKind::ho1d, {{"V0", 1.0}}), UsageError);
    CHECK_THROWS_AS(make(PotentialKind::hulthen, {{"a", 1.0}}), UsageError);  // lambda missing
    CHECK_THROWS_AS(make(PotentialKind::eckart1d, {{"A", 2.0}, {"B", 2.0}, {"a", 1.0}}),
                    UsageError);  // needs B > |A|
    CHECK_THROWS_AS(make(PotentialKind::eckart1d, {{"A", -3.0}, {"B", 2.0}, {"a", 1.0}}),
                    UsageError);
    CHECK_THROWS_AS(make(PotentialKind::eckart3d, {{"lambda", 1.0}, {"b", -0.1}, {"a", 1.0}}),
                    UsageError);
    CHECK_THROWS_AS(make(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 0.5}}), UsageError);
    CHECK_THROWS_AS(make(PotentialKind::morse, {{"A", -1.0}, {"B", 1.0}, {"a", 1.0}}),
                    UsageError);
    CHECK_THROWS_AS(make(PotentialKind::ho1d, {{"hbar", 0.0}}), UsageError);
    CHECK_NOTHROW(make(PotentialKind::eckart3d, {{"lambda", 1.0}, {"b", 0.0}, {"a", 1.0}}));
}

TEST_CASE("potential values at hand-checked points") {
    const PotentialSpec hul = make(PotentialKind::hulthen, {{"lambda", 2.0}, {"a", 1.0}});
    CHECK(potential_value(hul, std::log(2.0)) == doctest::Approx(-2.0).epsilon(1e-14));

    const PotentialSpec eck = make(PotentialKind::eckart1d, {{"A", 0.0}, {"B", 3.0}, {"a", 1.0}});
    CHECK(potential_value(eck, 0.0) == doctest::Approx(-0.75).epsilon(1e-14));

    const PotentialSpec mor = make(PotentialKind::morse, {{"A", 1.0}, {"B", 1.0}, {"a", 1.0}});
    CHECK(potential_value(mor, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(potential_value(mor, std::log(2.0)) == doctest::Approx(-0.25).epsilon(1e-14));

    const PotentialSpec mpt = make(PotentialKind::modified_pt, {{"V0", 6.0}, {"a", 1.0}});
    CHECK(potential_value(mpt, 0.0) == doctest::Approx(-6.0).epsilon(1e-14));

    // derivative agrees with a central difference
    for (double x : {0.3, 0.9, 2.1}) {
        const double h = 1e-6;
        const double fd = (potential_value(mor, x + h) - potential_value(mor, x - h)) / (2 * h);
        CHECK(potential_derivative(mor, x) == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("domain guards") {
    const PotentialSpec cot = make(PotentialKind::cotangent, {{"V0", 1.0}, {"a", 1.0}});
    CHECK_THROWS_AS(potential_value(cot, -0.1), DomainError);
    CHECK_THROWS_AS(potential_value(cot, 1.5), DomainError);
    CHECK_THROWS_AS(k_squared(cot, 1.0, {0.5, 0.0}), UsageError);

    const PotentialSpec hul = make(PotentialKind::hulthen, {{"lambda", 2.0}, {"a", 1.0}});
    CHECK_THROWS_AS(potential_value(hul, -1.0), DomainError);
    CHECK_THROWS_AS(k_squared(hul, -1.0, {0.0, 0.0}), DomainError);
}

TEST_CASE("hulthen ground level splits the two quantization modes") {
    const PotentialSpec p = make(PotentialKind::hulthen, {{"lambda", 2.0}, {"a", 1.0}});
    CHECK(qlm_at(p, 0) == doctest::Approx(-1.125).epsilon(1e-13));
    CHECK(exact_levels(p, 0).energy == doctest::Approx(-1.125).epsilon(1e-13));
    CHECK(wkb_at(p, 0) == doctest::Approx(-7.03125).epsilon(1e-13));
    // the half-integer count admits a second level the integer count forbids
    CHECK(wkb_at(p, 1) == doctest::Approx(-0.17013888888888887).epsilon(1e-13));
    const LevelResult missing = qlm_levels(p, 1);
    CHECK(missing.status == LevelStatus::no_bound_state);
    CHECK(missing.energy == doctest::Approx(0.0));
    CHECK(bound_state_count(p) == 1);
}

TEST_CASE("modified Poschl-Teller holds exactly three levels") {
    const PotentialSpec p = make(PotentialKind::modified_pt, {{"V0", 6.0}, {"a", 1.0}});
    CHECK(qlm_at(p, 0) == doctest::Approx(-4.5).epsilon(1e-13));
    CHECK(qlm_at(p, 1) == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(qlm_at(p, 2) == doctest::Approx(-0.5).epsilon(1e-13));
    CHECK(qlm_levels(p, 3).status == LevelStatus::no_bound_state);
    CHECK(bound_state_count(p) == 3);
}

TEST_CASE("eckart well levels via implicit relation match the closed form") {
    const PotentialSpec sym = make(PotentialKind::eckart1d, {{"A", 0.0}, {"B", 3.0}, {"a", 1.0}});
    CHECK(qlm_at(sym, 0) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(qlm_at(sym, 1) == doctest::Approx(-0.125).epsilon(1e-12));
    CHECK(bound_state_count(sym) == 2);

    // both signs of the asymmetry exercise both ends of the bracket
    const PotentialSpec tilt = make(PotentialKind::eckart1d, {{"A", 1.0}, {"B", 3.0}, {"a", 1.0}});
    CHECK(qlm_at(tilt, 0) == doctest::Approx(-1.125).epsilon(1e-12));
    const PotentialSpec anti = make(PotentialKind::eckart1d, {{"A", -1.0}, {"B", 3.0}, {"a", 1.0}});
    CHECK(qlm_at(anti, 0) == doctest::Approx(-0.125).epsilon(1e-12));
}

TEST_CASE("radial eckart ground level") {
    const PotentialSpec p =
        make(PotentialKind::eckart3d, {{"lambda", 2.0}, {"b", 0.5}, {"a", 1.0}});
    CHECK(qlm_at(p, 0) == doctest::Approx(-0.09118627109394715).epsilon(1e-12));
    CHECK(bound_state_count(p) == 1);
}

TEST_CASE("morse and hylleraas single levels") {
    const PotentialSpec mor = make(PotentialKind::morse, {{"A", 1.0}, {"B", 1.0}, {"a", 1.0}});
    CHECK(qlm_at(mor, 0) == doctest::Approx(-0.02144660940672625).epsilon(1e-13));
    CHECK(wkb_at(mor, 0) == doctest::Approx(-0.02144660940672625).epsilon(1e-13));
    CHECK(bound_state_count(mor) == 1);

    const PotentialSpec hyl = make(PotentialKind::hylleraas, {{"V0", 6.0}, {"a", 1.0}});
    CHECK(qlm_at(hyl, 0) == doctest::Approx(-2.0).epsilon(1e-13));
    CHECK(bound_state_count(hyl) == 1);
}

TEST_CASE("confining spectra have no level cap") {
    CHECK(!bound_state_count(make(PotentialKind::ho1d)));
    CHECK(!bound_state_count(make(PotentialKind::ho3d, {{"l", 1.0}})));
    CHECK(!bound_state_count(make(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 0.0}})));
    CHECK(!bound_state_count(make(PotentialKind::cotangent, {{"V0", 1.0}, {"a", 1.0}})));
    CHECK(!bound_state_count(make(PotentialKind::pt_hole, {{"V1", 1.0}, {"V2", 2.0}, {"a", 1.0}})));
}

TEST_CASE("oscillator and coulomb ladders") {
    const PotentialSpec ho = make(PotentialKind::ho1d);
    for (int n = 0; n <= 5; ++n) {
        CHECK(qlm_at(ho, n) == doctest::Approx(n + 0.5).epsilon(1e-14));
        CHECK(wkb_at(ho, n) == doctest::Approx(n + 0.5).epsilon(1e-14));
    }
    const PotentialSpec rad = make(PotentialKind::ho3d, {{"l", 1.0}});
    CHECK(qlm_at(rad, 0) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(qlm_at(rad, 2) == doctest::Approx(6.5).epsilon(1e-14));

    const PotentialSpec cou = make(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 0.0}});
    CHECK(qlm_at(cou, 0) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(qlm_at(cou, 1) == doctest::Approx(-0.125).epsilon(1e-14));
    CHECK(wkb_at(cou, 1) == doctest::Approx(-0.125).epsilon(1e-14));
}

TEST_CASE("pole-sum relation reproduces every closed form") {
    struct Row {
        PotentialSpec spec;
        Method mode;
        int n;
        double lo, hi;
    };
    const std::vector<Row> rows = {
        {make(PotentialKind::ho1d), Method::qlm, 2, 2.1, 2.9},
        {make(PotentialKind::ho1d), Method::wkb, 2, 2.1, 2.9},
        {make(PotentialKind::ho3d, {{"l", 2.0}}), Method::qlm, 1, 5.1, 5.9},
        {make(PotentialKind::ho3d, {{"l", 2.0}}), Method::wkb, 1, 4.8, 6.3},
        {make(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 1.0}}), Method::qlm, 1, -0.08, -0.03},
        {make(PotentialKind::coulomb, {{"Z", 1.0}, {"l", 1.0}}), Method::wkb, 1, -0.08, -0.03},
        {make(PotentialKind::cotangent, {{"V0", 1.0}, {"a", 1.0}}), Method::qlm, 1, 10.0, 30.0},
        {make(PotentialKind::cotangent, {{"V0", 1.0}, {"a", 1.0}}), Method::wkb, 1, 10.0, 20.0},
        {make(PotentialKind::pt_hole, {{"V1", 1.0}, {"V2", 2.0}, {"a", 1.0}}), Method::qlm, 0,
         10.0, 40.0},
        {make(PotentialKind::pt_hole, {{"V1", 1.0}, {"V2", 2.0}, {"a", 1.0}}), Method::wkb, 0,
         5.0, 40.0},
        {make(PotentialKind::modified_pt, {{"V0", 6.0}, {"a", 1.0}}), Method::qlm, 1, -3.0, -1.0},
        {make(PotentialKind::modified_pt, {{"V0", 6.0}, {"a", 1.0}}), Method::wkb, 1, -3.5, -1.0},
        {make(PotentialKind::hylleraas, {{"V0", 6.0}, {"a", 1.0}}), Method::qlm, 0, -3.0, -1.0},
        {make(PotentialKind::hylleraas, {{"V0", 6.0}, {"a", 1.0}}), Method::wkb, 0, -4.0, -1.0},
        {make(PotentialKind::hulthen, {{"lambda", 2.0}, {"a", 1.0}}), Method::qlm, 0, -2.0, -0.5},
        {make(PotentialKind::hulthen, {{"lambda", 2.0}, {"a", 1.0}}), Method::wkb, 0, -8.0, -6.0},
        {make(PotentialKind::morse, {{"A", 1.0}, {"B", 1.0}, {"a", 1.0}}), Method::qlm, 0, -0.04,
         -0.005},
        {make(PotentialKind::morse, {{"A", 1.0}, {"B", 1.0}, {"a", 1.0}}), Method::wkb, 0, -0.04,
         -0.005},
        {make(PotentialKind::eckart1d, {{"A", 0.0}, {"B", 3.0}, {"a", 1.0}}), Method::qlm, 0,
         -0.9, -0.2},
        {make(PotentialKind::eckart3d, {{"lambda", 2.0}, {"b", 0.5}, {"a", 1.0}}), Method::qlm, 0,
         -0.3, -0.02},
    };
    for (const auto& row : rows) {
        const double closed = levels(row.spec, row.mode, row.n).energy;
        const double root = relation_root(row.spec, row.mode, row.n, row.lo, row.hi);
        CHECK(root == doctest::Approx(closed).epsilon(1e-10));
    }
}

TEST_CASE("relation guards") {
    const PotentialSpec ho = make(PotentialKind::ho1d);
    CHECK_THROWS_AS(quantization_relation(ho, Method::exact), UsageError);
    const QuantizationRelation rel = quantization_relation(ho, Method::qlm);
    CHECK_THROWS_AS(rel.rhs(-1), UsageError);
    CHECK_THROWS_AS(solve_relation(rel, 0, 2.0, 1.0), UsageError);
    // level 0 sits at 0.5, nowhere near this bracket
    CHECK_THROWS_AS(solve_relation(rel, 0, 3.0, 4.0), BracketError);
}

TEST_CASE("reduction: radial eckart with no barrier is the screened well") {
    for (double lam : {2.0, 20.0}) {
        const PotentialSpec eck =
            make(PotentialKind::eckart3d, {{"lambda", lam}, {"b", 0.0}, {"a", 1.0}});
        const PotentialSpec hul = make(PotentialKind::hulthen, {{"lambda", lam}, {"a", 1.0}});
        CHECK(bound_state_count(eck) == bound_state_count(hul));
        for (int n = 0; n < 3; ++n) {
            const LevelResult a = qlm_levels(eck, n);
            const LevelResult b = qlm_levels(hul, n);
            CHECK(a.status == b.status);
            if (a.status != LevelStatus::ok) continue;
            CHECK(a.energy == doctest::Approx(b.energy).epsilon(1e-13));
        }
    }
}

TEST_CASE("reduction: symmetric eckart well is a rescaled Poschl-Teller well") {
    const double W = 6.0;
    const PotentialSpec eck =
        make(PotentialKind::eckart1d, {{"A", 0.0}, {"B", 4.0 * W}, {"a", 1.0}});
    const PotentialSpec mpt = make(PotentialKind::modified_pt, {{"V0", W}, {"a", 2.0}});
    for (int n = 0; n < 3; ++n) {
        CHECK(qlm_at(eck, n) == doctest::Approx(qlm_at(mpt, n)).epsilon(1e-13));
    }
}

TEST_CASE("reduction: symmetric double hole maps onto the cotangent box") {
    const PotentialSpec pt = make(PotentialKind::pt_hole, {{"V1", 1.0}, {"V2", 1.0}, {"a", 1.0}});
    const PotentialSpec cot = make(PotentialKind::cotangent, {{"V0", 1.0}, {"a", 1.0}});
    for (int n = 0; n < 3; ++n) {
        const double mapped = 4.0 * (qlm_at(cot, n) + 1.0);
        CHECK(qlm_at(pt, n) == doctest::Approx(mapped).epsilon(1e-13));
        CHECK(wkb_at(pt, n) == doctest::Approx(4.0 * (wkb_at(cot, n) + 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("level table rows carry every method plus deviations") {
    const PotentialSpec hul = make(PotentialKind::hulthen, {{"lambda", 2.0}, {"a", 1.0}});
    const auto rows = level_table(hul, 1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 0);
    CHECK(rows[0].exact.value() == doctest::Approx(-1.125));
    CHECK(rows[0].qlm.value() == doctest::Approx(-1.125));
    CHECK(rows[0].wkb.value() == doctest::Approx(-7.03125));
    CHECK(rows[0].qlm_err.value() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rows[0].wkb_err.value() == doctest::Approx(5.90625).epsilon(1e-12));
    // the absent second level still evaluates to a finite formula value
    CHECK(rows[1].qlm.value() == doctest::Approx(0.0));
    CHECK(rows[1].wkb.value() == doctest::Approx(-0.17013888888888887));

    // a vanishing implicit-relation denominator leaves the cell empty
    const PotentialSpec eck = make(PotentialKind::eckart1d, {{"A", 0.0}, {"B", 3.0}, {"a", 1.0}});
    const auto erows = level_table(eck, 2);
    REQUIRE(erows.size() == 3);
    CHECK(!erows[2].qlm.has_value());
}
