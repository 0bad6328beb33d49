#include "qlmwkb/qlm.hpp"

#include "qlmwkb/errors.hpp"

#include <string>

namespace qlmwkb {

namespace {

GradedSeries k_squared_series(int cap) {
    return GradedSeries::from_constant(DiffPolynomial::monomial(GaussRational::real(1), 2), cap);
}

void require_ik_leading(const GradedSeries& y_prev) {
    const DiffPolynomial ik = DiffPolynomial::monomial(GaussRational::imag(1), 1);
    if (!(y_prev.at(0) == ik))
        throw SingularLeadingTermError("iterate seed must have order-0 coefficient i k");
}

}  // namespace

GradedSeries qlm_f(const GradedSeries& y_prev) {
    require_ik_leading(y_prev);
    const GradedSeries num = y_prev * y_prev - k_squared_series(y_prev.order_cap());
    GradedSeries two_y = y_prev + y_prev;
    return num * reciprocal(two_y);
}

GradedSeries qlm_iterate_series(const GradedSeries& y_prev) {
    require_ik_leading(y_prev);
    const int cap = y_prev.order_cap();
    const GradedSeries recip_two_y = reciprocal(y_prev + y_prev);

    GradedSeries total(cap);
    GradedSeries L = qlm_f(y_prev);
    for (int n = 0; n < cap; ++n) {
        if (L.leading_order() < n)
            throw InternalError("correction L_" + std::to_string(n) + " has leading order " +
                                std::to_string(L.leading_order()));
        total = total + L;
        if (n == cap - 1) break;
        L = recip_two_y * (-L.g_derivative());
    }
    return total;
}

GradedSeries qlm_pth_series(int p, int order_cap) {
    if (p < 0) throw UsageError("iterate index must be nonnegative");
    GradedSeries y =
        GradedSeries::from_constant(DiffPolynomial::monomial(GaussRational::imag(1), 1), order_cap);
    for (int i = 0; i < p; ++i) y = qlm_iterate_series(y);
    return y;
}

GradedSeries linearized_residual(const GradedSeries& y_p, const GradedSeries& y_prev) {
    const GradedSeries rhs =
        y_prev * y_prev - (y_p * y_prev + y_p * y_prev) - k_squared_series(y_p.order_cap());
    return y_p.g_derivative() - rhs;
}

}  // namespace qlmwkb
