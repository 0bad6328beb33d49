#pragma once

#include "qlmwkb/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qlmwkb {

// WKB terms Y_0 .. Y_{order_cap-1} of y = sum_m g^m Y_m from the recurrence
//   Y_0 = i k,   Y_m = -(1/(2 Y_0)) (Y_{m-1}' + sum_{j=1}^{m-1} Y_j Y_{m-j}).
// Division by 2 Y_0 is multiplication by the exact monomial -i/(2k).
GradedSeries wkb_terms(int order_cap);

// Residual of the Riccati equation g y' + k^2 + y^2 applied to a series;
// identically zero order by order for a valid WKB expansion.
GradedSeries riccati_residual(const GradedSeries& y);

struct OrderVerdict {
    int order = 0;
    bool equal = false;
    std::string lhs;  // canonical text of the generated order
    std::string rhs;  // canonical text of the reference order
    // Range of coefficient ratios over shared monomials when unequal;
    // reported without tolerance, for inspection only.
    std::optional<double> ratio_min;
    std::optional<double> ratio_max;
};

std::vector<OrderVerdict> golden_compare(const GradedSeries& generated, const GradedSeries& reference);

// Reference-series fixtures, stored as canonical text files.
std::string fixture_directory();  // QLMWKB_FIXTURE_DIR override, else built-in
GradedSeries load_fixture(const std::string& name, int order_cap);  // e.g. "wkb_series"

}  // namespace qlmwkb
