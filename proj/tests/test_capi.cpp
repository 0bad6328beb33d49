#include "qlmwkb.h"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

namespace {

struct SeriesGuard {
    qlmwkb_series* s = nullptr;
    ~SeriesGuard() { qlmwkb_series_free(s); }
};

struct PotentialGuard {
    qlmwkb_potential* p = nullptr;
    ~PotentialGuard() { qlmwkb_potential_free(p); }
};

struct SolutionGuard {
    qlmwkb_solution* s = nullptr;
    ~SolutionGuard() { qlmwkb_solution_free(s); }
};

}  // namespace

TEST_CASE("version and error strings are always available") {
    CHECK(std::string(qlmwkb_version()) == "0.1.0");
    CHECK(qlmwkb_last_error() != nullptr);
}

TEST_CASE("series lifecycle through the C boundary") {
    SeriesGuard wkb, qlm;
    REQUIRE(qlmwkb_wkb_series(8, &wkb.s) == QLMWKB_OK);
    REQUIRE(qlmwkb_qlm_series(2, 8, &qlm.s) == QLMWKB_OK);

    int cap = 0;
    CHECK(qlmwkb_series_order_cap(wkb.s, &cap) == QLMWKB_OK);
    CHECK(cap == 8);

    int match = 0;
    CHECK(qlmwkb_series_match_prefix(qlm.s, wkb.s, &match) == QLMWKB_OK);
    CHECK(match == 4);

    char* text = nullptr;
    REQUIRE(qlmwkb_series_emit(wkb.s, "text", &text) == QLMWKB_OK);
    const std::string body(text);
    qlmwkb_string_free(text);
    CHECK(body.find("order 0:") != std::string::npos);
    CHECK(body.find("k1") != std::string::npos);

    // canonical text form round-trips
    SeriesGuard back;
    REQUIRE(qlmwkb_series_parse(body.c_str(), &back.s) == QLMWKB_OK);
    CHECK(qlmwkb_series_match_prefix(back.s, wkb.s, &match) == QLMWKB_OK);
    CHECK(match == 8);

    char* latex = nullptr;
    REQUIRE(qlmwkb_series_emit(wkb.s, "latex", &latex) == QLMWKB_OK);
    CHECK(std::strstr(latex, "\\frac") != nullptr);
    qlmwkb_string_free(latex);
}

TEST_CASE("failures set the status and the message") {
    qlmwkb_series* s = nullptr;
    CHECK(qlmwkb_wkb_series(0, &s) == QLMWKB_ERR_USAGE);
    CHECK(s == nullptr);
    CHECK(std::string(qlmwkb_last_error()).size() > 0);
    CHECK(qlmwkb_qlm_series(-1, 8, &s) == QLMWKB_ERR_USAGE);
    CHECK(qlmwkb_wkb_series(8, nullptr) == QLMWKB_ERR_USAGE);

    qlmwkb_potential* p = nullptr;
    CHECK(qlmwkb_potential_create("nonsense", nullptr, nullptr, 0, &p) == QLMWKB_ERR_USAGE);
    const char* names[] = {"badparam"};
    const double values[] = {1.0};
    CHECK(qlmwkb_potential_create("ho1d", names, values, 1, &p) == QLMWKB_ERR_USAGE);
}

TEST_CASE("levels and counts through the C boundary") {
    PotentialGuard hul;
    const char* names[] = {"lambda", "a"};
    const double values[] = {2.0, 1.0};
    REQUIRE(qlmwkb_potential_create("hulthen", names, values, 2, &hul.p) == QLMWKB_OK);

    double energy = 0.0;
    int status = -1;
    REQUIRE(qlmwkb_level(hul.p, "qlm", 0, &energy, &status) == QLMWKB_OK);
    CHECK(status == 0);
    CHECK(energy == doctest::Approx(-1.125));
    REQUIRE(qlmwkb_level(hul.p, "wkb", 0, &energy, &status) == QLMWKB_OK);
    CHECK(energy == doctest::Approx(-7.03125));
    REQUIRE(qlmwkb_level(hul.p, "qlm", 1, &energy, &status) == QLMWKB_OK);
    CHECK(status == 1);

    int count = 0;
    REQUIRE(qlmwkb_bound_state_count(hul.p, &count) == QLMWKB_OK);
    CHECK(count == 1);

    PotentialGuard cou;
    const char* cnames[] = {"Z", "l"};
    const double cvalues[] = {1.0, 0.0};
    REQUIRE(qlmwkb_potential_create("coulomb", cnames, cvalues, 2, &cou.p) == QLMWKB_OK);
    REQUIRE(qlmwkb_bound_state_count(cou.p, &count) == QLMWKB_OK);
    CHECK(count == -1);

    REQUIRE(qlmwkb_shooting_level(hul.p, 0, &energy) == QLMWKB_OK);
    CHECK(energy == doctest::Approx(-1.125).epsilon(1e-6));
    CHECK(qlmwkb_shooting_level(hul.p, 1, &energy) == QLMWKB_ERR_ORACLE);
}

TEST_CASE("numeric solve through the C boundary") {
    PotentialGuard ho;
    REQUIRE(qlmwkb_potential_create("ho1d", nullptr, nullptr, 0, &ho.p) == QLMWKB_OK);

    qlmwkb_solve_config cfg;
    qlmwkb_solve_config_default(&cfg);
    CHECK(cfg.delta == doctest::Approx(0.05));
    cfg.z_min = 1.6;
    cfg.z_max = 0.0;  // exercises the automatic outer boundary (40 here)
    cfg.grid_points = 1201;

    SolutionGuard sol;
    REQUIRE(qlmwkb_solve(ho.p, 2.5, 3, &cfg, &sol.s) == QLMWKB_OK);

    int iterates = 0;
    size_t npts = 0;
    REQUIRE(qlmwkb_solution_iterates(sol.s, &iterates) == QLMWKB_OK);
    REQUIRE(qlmwkb_solution_grid_points(sol.s, &npts) == QLMWKB_OK);
    CHECK(iterates == 4);
    CHECK(npts == 1201);

    double z, re, im;
    REQUIRE(qlmwkb_solution_sample(sol.s, 0, 0, &z, &re, &im) == QLMWKB_OK);
    CHECK(z == doctest::Approx(1.6));
    REQUIRE(qlmwkb_solution_sample(sol.s, 3, npts - 1, &z, &re, &im) == QLMWKB_OK);
    CHECK(z == doctest::Approx(40.0));
    CHECK(re == doctest::Approx(-std::sqrt(40.0 * 40.0 / 4.0 - 2.5)).epsilon(1e-3));

    double d2 = 0.0, d3 = 0.0;
    REQUIRE(qlmwkb_solution_sup_diff(sol.s, 2, &d2) == QLMWKB_OK);
    REQUIRE(qlmwkb_solution_sup_diff(sol.s, 3, &d3) == QLMWKB_OK);
    CHECK(d3 < d2);
    CHECK(qlmwkb_solution_sup_diff(sol.s, 0, &d2) == QLMWKB_ERR_USAGE);
    CHECK(qlmwkb_solution_sample(sol.s, 9, 0, &z, &re, &im) == QLMWKB_ERR_USAGE);

    double fit = 0.0;
    REQUIRE(qlmwkb_solution_residue_fit(sol.s, 3, "oscillator_infinity", 2.5, &fit) == QLMWKB_OK);
    CHECK(fit == doctest::Approx(2.0).epsilon(1e-4));
    CHECK(qlmwkb_solution_residue_fit(sol.s, 3, "no_such_model", 2.5, &fit) == QLMWKB_ERR_USAGE);
}

TEST_CASE("verification report through the C boundary") {
    char* report = nullptr;
    int ok = -1;
    REQUIRE(qlmwkb_verify("formal", &report, &ok) == QLMWKB_OK);
    CHECK(ok == 1);
    const std::string text(report);
    qlmwkb_string_free(report);
    CHECK(text.find("\"criteria\"") != std::string::npos);
    CHECK(text.find("\"all_passed\": true") != std::string::npos);

    CHECK(qlmwkb_verify("bogus", &report, &ok) == QLMWKB_ERR_USAGE);
}
