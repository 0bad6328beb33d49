#pragma once

#include "qlmwkb/potential.hpp"

#include <complex>
#include <vector>

namespace qlmwkb {

// Numeric iterates run on the scaled coordinate z along the line Im z = delta,
// which keeps the path clear of turning points; reported samples carry the
// real part of z in grid and the shift in imag_shift.
struct SolveConfig {
    double z_min = 0.5;
    double z_max = 40.0;
    int grid_points = 4001;
    double delta = 0.05;
    double ode_rel_tol = 1e-10;
    double ode_abs_tol = 1e-12;
    int quadrature_order = 6;  // Gauss-Legendre points per panel in the p = 1 integral
};

struct SampledFunction {
    std::vector<double> grid;  // strictly increasing real z
    std::vector<std::complex<double>> values;
    double imag_shift = 0.0;
};

struct IterateHistory {
    std::vector<SampledFunction> iterates;  // y_0 .. y_p
    std::vector<double> sup_diffs;          // sup |y_p - y_{p-1}|, length iterates-1
};

// y_1 by the closed-form quadrature y_1 = ik - i * integral of k' times the
// exponential of -2i * phase, propagated panel by panel from z_max inward.
SampledFunction first_iterate_closed_form(const PotentialSpec& p, double E, const SolveConfig& cfg);

// One linearized step: integrates dy/dz = y_prev^2 - 2 y y_prev - k^2 from
// z_max inward with y(z_max) = ik(z_max), dense output on the grid.
SampledFunction qlm_step_numeric(const SampledFunction& y_prev, const PotentialSpec& p, double E,
                                 const SolveConfig& cfg);

// y_0 = ik on the grid, then p_max linearized steps with sup-norm diffs.
IterateHistory solve_qlm(const PotentialSpec& p, double E, int p_max, const SolveConfig& cfg);

enum class AsymptoticModel {
    oscillator_infinity,  // leading -z/2, fits the 1/z residue at large z
    coulomb_infinity,     // leading -sqrt(|E|)
    inner_pole,           // leading a/z near z = 0, fits a
};

AsymptoticModel asymptotic_model_from_string(const std::string& name);

// Least-squares residue extraction over the outer (or inner) fifth of the
// grid; throws FitQualityError when the relative fit residual exceeds 1e-3.
double asymptotic_residue_fit(const SampledFunction& y, AsymptoticModel model, double E);

// Empirical convergence orders log(sup_diffs[p+1]) / log(sup_diffs[p]).
std::vector<double> convergence_orders(const IterateHistory& h);

// Outer boundary where |V| has fallen to 1e-8 |E|, capped at 40 (z units).
double default_z_max(const PotentialSpec& p, double E);

}  // namespace qlmwkb
