#pragma once

#include "qlmwkb/diff_poly.hpp"

#include <vector>

namespace qlmwkb {

// Truncated power series in the grading parameter g with DiffPolynomial
// coefficients.  Always holds exactly order_cap coefficients, orders
// g^0 .. g^{order_cap-1}.
class GradedSeries {
public:
    explicit GradedSeries(int order_cap);

    static GradedSeries from_constant(const DiffPolynomial& order0, int order_cap);

    int order_cap() const { return static_cast<int>(coeffs_.size()); }

    const DiffPolynomial& at(int order) const;
    DiffPolynomial& at(int order);

    // Index of the first nonzero order, or order_cap for the zero series.
    int leading_order() const;

    // g * d/dr: shifts every coefficient's derivative up one grading order.
    GradedSeries g_derivative() const;

    friend GradedSeries operator+(const GradedSeries& a, const GradedSeries& b);
    friend GradedSeries operator-(const GradedSeries& a, const GradedSeries& b);
    friend GradedSeries operator-(const GradedSeries& a);
    // Cauchy product truncated at the shared cap; caps must agree.
    friend GradedSeries operator*(const GradedSeries& a, const GradedSeries& b);
    friend bool operator==(const GradedSeries& a, const GradedSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<DiffPolynomial> coeffs_;
};

// Multiplicative inverse through the cap.  Requires the order-0 coefficient
// to be a single monomial c * k^d; throws SingularLeadingTermError otherwise.
GradedSeries reciprocal(const GradedSeries& a);

// Number of leading orders on which the two series agree exactly.
int match_prefix(const GradedSeries& a, const GradedSeries& b);

}  // namespace qlmwkb
