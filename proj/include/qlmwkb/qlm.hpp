#pragma once

#include "qlmwkb/series.hpp"

namespace qlmwkb {

// Newton-Kantorovich data for the Riccati equation.  All series share one
// order cap; y_prev must start with the exact order-0 term i k.

// f(y_prev) = (y_prev^2 - k^2) / (2 y_prev), the inhomogeneous seed of the
// linearized step, expanded through the cap.
GradedSeries qlm_f(const GradedSeries& y_prev);

// One quasilinearization iterate: y_p = sum_n L_n with L_0 = f(y_prev) and
//   L_n = (1/(2 y_prev)) * g d/dr (-L_{n-1}).
// Each application of g d/dr raises the grading order, so the sum closes at
// the cap; the engine asserts leading_order(L_n) >= n as it goes.
GradedSeries qlm_iterate_series(const GradedSeries& y_prev);

// p-fold iterate from y_0 = i k.
GradedSeries qlm_pth_series(int p, int order_cap);

// Residual of the linearized equation g y_p' - (y_prev^2 - 2 y_p y_prev - k^2);
// identically zero through the cap when y_p is the iterate of y_prev.
GradedSeries linearized_residual(const GradedSeries& y_p, const GradedSeries& y_prev);

}  // namespace qlmwkb
