#include "qlmwkb/wkb.hpp"

#include "qlmwkb/emit.hpp"
#include "qlmwkb/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qlmwkb {

namespace {

DiffPolynomial ik() { return DiffPolynomial::monomial(GaussRational::imag(1), 1); }

DiffPolynomial k_squared() { return DiffPolynomial::monomial(GaussRational::real(1), 2); }

}  // namespace

GradedSeries wkb_terms(int order_cap) {
    GradedSeries y = GradedSeries::from_constant(ik(), order_cap);
    // -(1/(2 Y_0)) = -1/(2ik) = (i/2) k^-1
    const DiffPolynomial neg_half_inv_y0 =
        DiffPolynomial::monomial(GaussRational::imag(Rational(1, 2)), -1);
    for (int m = 1; m < order_cap; ++m) {
        DiffPolynomial acc = y.at(m - 1).derivative();
        for (int j = 1; j <= m - 1; ++j) acc = acc + y.at(j) * y.at(m - j);
        y.at(m) = neg_half_inv_y0 * acc;
    }
    return y;
}

GradedSeries riccati_residual(const GradedSeries& y) {
    GradedSeries r = y.g_derivative() + y * y;
    r.at(0) = r.at(0) + k_squared();
    return r;
}

std::vector<OrderVerdict> golden_compare(const GradedSeries& generated,
                                         const GradedSeries& reference) {
    const int cap = std::min(generated.order_cap(), reference.order_cap());
    std::vector<OrderVerdict> out;
    out.reserve(static_cast<std::size_t>(cap));
    for (int m = 0; m < cap; ++m) {
        OrderVerdict v;
        v.order = m;
        v.equal = generated.at(m) == reference.at(m);
        v.lhs = to_text(generated.at(m));
        v.rhs = to_text(reference.at(m));
        if (!v.equal) {
            // coefficient ratios over monomials present on both sides
            for (const auto& [key, lc] : generated.at(m).terms()) {
                const GaussRational rc = reference.at(m).coefficient(key);
                if (rc.is_zero()) continue;
                const GaussRational ratio = lc * rc.inverse();
                if (!ratio.is_real()) continue;
                const double x = to_double(ratio.re);
                v.ratio_min = v.ratio_min ? std::min(*v.ratio_min, x) : x;
                v.ratio_max = v.ratio_max ? std::max(*v.ratio_max, x) : x;
            }
        }
        out.push_back(std::move(v));
    }
    return out;
}

std::string fixture_directory() {
    if (const char* env = std::getenv("QLMWKB_FIXTURE_DIR"); env && *env) return env;
#ifdef QLMWKB_DEFAULT_FIXTURE_DIR
    return QLMWKB_DEFAULT_FIXTURE_DIR;
#else
    return "fixtures/v1";
#endif
}

GradedSeries load_fixture(const std::string& name, int order_cap) {
    const std::string path = fixture_directory() + "/" + name + ".txt";
    std::ifstream in(path);
    if (!in) throw IoError("cannot open fixture file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    GradedSeries s = parse_series(buf.str());
    if (s.order_cap() < order_cap)
        throw UsageError("fixture " + name + " holds only " + std::to_string(s.order_cap()) +
                         " orders, " + std::to_string(order_cap) + " requested");
    if (s.order_cap() == order_cap) return s;
    GradedSeries trimmed(order_cap);
    for (int m = 0; m < order_cap; ++m) trimmed.at(m) = s.at(m);
    return trimmed;
}

}  // namespace qlmwkb
