#include "qlmwkb/emit.hpp"
#include "qlmwkb/errors.hpp"
#include "qlmwkb/qlm.hpp"
#include "qlmwkb/wkb.hpp"

#include <doctest.h>

#include <random>

using namespace qlmwkb;

namespace {

bool is_zero_series(const GradedSeries& s) {
    return s.leading_order() == s.order_cap();
}

// even orders carry purely imaginary coefficients, odd orders purely real
bool parity_holds(const DiffPolynomial& p, int order) {
    for (const auto& [key, coeff] : p.terms()) {
        if (order % 2 == 0 && !coeff.is_imaginary()) return false;
        if (order % 2 == 1 && !coeff.is_real()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("zeroth series starts from i k and matches the transcription") {
    const GradedSeries y = wkb_terms(8);
    CHECK(y.at(0) == DiffPolynomial::monomial(GaussRational::imag(1), 1));
    CHECK(y.at(1) == parse_polynomial("(-1/2) k^-1 k1"));
    CHECK(y.at(2) == parse_polynomial("(3/8 i) k^-3 k1^2 + (-1/4 i) k^-2 k2"));
    CHECK(y.at(4).coefficient(DiffKey{-7, {{1, 4}}}) ==
          GaussRational::imag(Rational(-297, 128)));

    const GradedSeries fixture = load_fixture("wkb_series", 8);
    const auto verdicts = golden_compare(y, fixture);
    for (const auto& v : verdicts) {
        INFO("order ", v.order, ": ", v.lhs, " vs ", v.rhs);
        CHECK(v.equal);
    }
    CHECK(wkb_terms(1).order_cap() == 1);
    CHECK_THROWS_AS(wkb_terms(0), UsageError);
}

TEST_CASE("iterates match their transcriptions exactly") {
    CHECK(qlm_pth_series(1, 8) == load_fixture("qlm_iterate1", 8));
    CHECK(qlm_pth_series(2, 8) == load_fixture("qlm_iterate2", 8));
}

TEST_CASE("matched prefix doubles with each iterate") {
    const GradedSeries wkb = wkb_terms(8);
    const int expected[] = {1, 2, 4, 8};
    for (int p = 0; p <= 3; ++p) {
        CHECK(match_prefix(qlm_pth_series(p, 8), wkb) == expected[p]);
    }
    CHECK(qlm_pth_series(3, 8) == wkb);
}

TEST_CASE("riccati residual vanishes for the generated series") {
    const GradedSeries r = riccati_residual(wkb_terms(12));
    CHECK(is_zero_series(r));

    // the checked-in transcription satisfies the same equation on its own
    CHECK(is_zero_series(riccati_residual(load_fixture("wkb_series", 8))));

    // flipping one order breaks it at that order
    GradedSeries broken = wkb_terms(8);
    broken.at(1) = -broken.at(1);
    const GradedSeries rb = riccati_residual(broken);
    CHECK(rb.at(0).is_zero());
    CHECK(!rb.at(1).is_zero());
}

TEST_CASE("linearized residual vanishes for generated and transcribed iterates") {
    const int cap = 8;
    GradedSeries y_prev = qlm_pth_series(0, cap);
    for (int p = 1; p <= 3; ++p) {
        const GradedSeries y_p = qlm_iterate_series(y_prev);
        CHECK(is_zero_series(linearized_residual(y_p, y_prev)));
        y_prev = y_p;
    }

    // transcription self-check, independent of the generating recurrences
    const GradedSeries y0 = qlm_pth_series(0, cap);
    const GradedSeries f1 = load_fixture("qlm_iterate1", cap);
    const GradedSeries f2 = load_fixture("qlm_iterate2", cap);
    CHECK(is_zero_series(linearized_residual(f1, y0)));
    CHECK(is_zero_series(linearized_residual(f2, f1)));

    GradedSeries corrupted = f1;
    corrupted.at(3) = corrupted.at(3) + DiffPolynomial::monomial(GaussRational::real(1), -3, {{3, 1}});
    CHECK(!is_zero_series(linearized_residual(corrupted, y0)));
}

TEST_CASE("homogeneity and parity of every generated coefficient") {
    const GradedSeries wkb = wkb_terms(12);
    for (int m = 0; m < 12; ++m) {
        INFO("order ", m);
        CHECK(wkb.at(m).signature() == Signature{1 - m, m});
        CHECK(parity_holds(wkb.at(m), m));
    }
    for (int p = 1; p <= 3; ++p) {
        const GradedSeries y = qlm_pth_series(p, 10);
        for (int m = 0; m < 10; ++m) {
            INFO("iterate ", p, " order ", m);
            CHECK(y.at(m).signature() == Signature{1 - m, m});
            CHECK(parity_holds(y.at(m), m));
        }
    }
}

TEST_CASE("iterate map fixes the exact series; f alone does not") {
    const GradedSeries wkb = wkb_terms(8);
    CHECK(qlm_iterate_series(wkb) == wkb);

    // f(y) = y + g y'/(2y): agrees at order 0, cancels order 1, differs at 2
    const GradedSeries f = qlm_f(wkb);
    CHECK(f.at(0) == wkb.at(0));
    CHECK(f.at(1).is_zero());
    CHECK(!(f.at(2) == wkb.at(2)));

    const GradedSeries correction = f - wkb;
    GradedSeries expected = reciprocal(wkb + wkb) * wkb.g_derivative();
    CHECK(correction == expected);
}

TEST_CASE("iterate seeds must lead with i k") {
    GradedSeries bad(4);
    bad.at(0) = DiffPolynomial::monomial(GaussRational::real(1), 1);
    CHECK_THROWS_AS(qlm_iterate_series(bad), SingularLeadingTermError);
    CHECK_THROWS_AS(qlm_f(bad), SingularLeadingTermError);
    CHECK_THROWS_AS(qlm_pth_series(-1, 8), UsageError);

    CHECK(qlm_f(qlm_pth_series(0, 4)).at(0) ==
          DiffPolynomial::monomial(GaussRational::imag(1), 1));
    CHECK(qlm_f(qlm_pth_series(1, 4)).at(0) ==
          DiffPolynomial::monomial(GaussRational::imag(1), 1));
}

TEST_CASE("golden compare reports per-order ratios") {
    const auto verdicts = golden_compare(wkb_terms(8), load_fixture("qlm_iterate1", 8));
    CHECK(verdicts[0].equal);
    CHECK(verdicts[1].equal);
    CHECK(!verdicts[2].equal);
    REQUIRE(verdicts[2].ratio_min.has_value());
    CHECK(*verdicts[2].ratio_min == doctest::Approx(1.0));
    CHECK(*verdicts[2].ratio_max == doctest::Approx(1.5));
}

TEST_CASE("generated and transcribed series evaluate identically on random jets") {
    const GradedSeries gen = wkb_terms(8);
    const GradedSeries fix = load_fixture("wkb_series", 8);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> d(0.4, 1.7);
    for (int trial = 0; trial < 20; ++trial) {
        NumericJet jet;
        for (int j = 0; j < 8; ++j) jet.values.push_back({d(rng), d(rng)});
        for (int m = 0; m < 8; ++m) {
            CHECK(gen.at(m).evaluate(jet) == fix.at(m).evaluate(jet));
        }
    }
}

TEST_CASE("fixture loading") {
    const GradedSeries trimmed = load_fixture("wkb_series", 3);
    CHECK(trimmed.order_cap() == 3);
    CHECK(trimmed == wkb_terms(3));
    CHECK_THROWS_AS(load_fixture("no_such_fixture", 8), IoError);
    CHECK_THROWS_AS(load_fixture("wkb_series", 9), UsageError);
}
