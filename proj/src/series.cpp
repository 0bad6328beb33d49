#include "qlmwkb/series.hpp"

#include "qlmwkb/errors.hpp"

#include <algorithm>
#include <string>

namespace qlmwkb {

GradedSeries::GradedSeries(int order_cap) {
    if (order_cap < 1) throw UsageError("order cap must be at least 1");
    coeffs_.resize(static_cast<std::size_t>(order_cap));
}

GradedSeries GradedSeries::from_constant(const DiffPolynomial& order0, int order_cap) {
    GradedSeries s(order_cap);
    s.coeffs_[0] = order0;
    return s;
}

const DiffPolynomial& GradedSeries::at(int order) const {
    if (order < 0 || order >= order_cap())
        throw UsageError("series order " + std::to_string(order) + " outside cap " +
                         std::to_string(order_cap()));
    return coeffs_[static_cast<std::size_t>(order)];
}

DiffPolynomial& GradedSeries::at(int order) {
    if (order < 0 || order >= order_cap())
        throw UsageError("series order " + std::to_string(order) + " outside cap " +
                         std::to_string(order_cap()));
    return coeffs_[static_cast<std::size_t>(order)];
}

int GradedSeries::leading_order() const {
    for (int m = 0; m < order_cap(); ++m)
        if (!coeffs_[static_cast<std::size_t>(m)].is_zero()) return m;
    return order_cap();
}

GradedSeries GradedSeries::g_derivative() const {
    GradedSeries out(order_cap());
    for (int m = 1; m < order_cap(); ++m)
        out.coeffs_[static_cast<std::size_t>(m)] =
            coeffs_[static_cast<std::size_t>(m - 1)].derivative();
    return out;
}

namespace {

void require_same_cap(const GradedSeries& a, const GradedSeries& b) {
    if (a.order_cap() != b.order_cap())
        throw UsageError("series caps differ: " + std::to_string(a.order_cap()) + " vs " +
                         std::to_string(b.order_cap()));
}

}  // namespace

GradedSeries operator+(const GradedSeries& a, const GradedSeries& b) {
    require_same_cap(a, b);
    GradedSeries out(a.order_cap());
    for (int m = 0; m < a.order_cap(); ++m) out.at(m) = a.at(m) + b.at(m);
    return out;
}

GradedSeries operator-(const GradedSeries& a, const GradedSeries& b) {
    require_same_cap(a, b);
    GradedSeries out(a.order_cap());
    for (int m = 0; m < a.order_cap(); ++m) out.at(m) = a.at(m) - b.at(m);
    return out;
}

GradedSeries operator-(const GradedSeries& a) {
    GradedSeries out(a.order_cap());
    for (int m = 0; m < a.order_cap(); ++m) out.at(m) = -a.at(m);
    return out;
}

GradedSeries operator*(const GradedSeries& a, const GradedSeries& b) {
    require_same_cap(a, b);
    GradedSeries out(a.order_cap());
    for (int m = 0; m < a.order_cap(); ++m) {
        DiffPolynomial sum;
        for (int j = 0; j <= m; ++j) sum = sum + a.at(j) * b.at(m - j);
        out.at(m) = sum;
    }
    return out;
}

GradedSeries reciprocal(const GradedSeries& a) {
    const DiffPolynomial& head = a.at(0);
    if (!head.is_pure_k_monomial())
        throw SingularLeadingTermError("reciprocal needs a single c * k^d leading term");
    const DiffKey& key = head.terms().begin()->first;
    const GaussRational inv_c = head.terms().begin()->second.inverse();

    // head^{-1} = (1/c) k^{-d}; the tail is folded in by the usual recursion
    // b_m = -head^{-1} * sum_{j=1}^{m} a_j b_{m-j}.
    const DiffPolynomial head_inv = DiffPolynomial::monomial(inv_c, -key.kpow);
    GradedSeries out(a.order_cap());
    out.at(0) = head_inv;
    for (int m = 1; m < a.order_cap(); ++m) {
        DiffPolynomial sum;
        for (int j = 1; j <= m; ++j) sum = sum + a.at(j) * out.at(m - j);
        out.at(m) = -(head_inv * sum);
    }
    return out;
}

int match_prefix(const GradedSeries& a, const GradedSeries& b) {
    const int cap = std::min(a.order_cap(), b.order_cap());
    for (int m = 0; m < cap; ++m)
        if (!(a.at(m) == b.at(m))) return m;
    return cap;
}

}  // namespace qlmwkb
