#pragma once

#include "qlmwkb/potential.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qlmwkb {

enum class Method { exact, wkb, qlm };

Method method_from_string(const std::string& name);  // throws UsageError
std::string to_string(Method m);

enum class LevelStatus { ok, no_bound_state };

struct LevelResult {
    int n = 0;
    Method method = Method::exact;
    // The formula value; for a flagged row this is still the evaluated
    // closed form when it is finite (NaN otherwise).
    double energy = 0.0;
    LevelStatus status = LevelStatus::ok;
};

enum class PoleLocation { zero, one, infinity };

// One pole of the quantization contour integrand in the potential's
// transformed variable.  Finite poles are encircled clockwise (orientation
// -1), the pole at infinity counterclockwise (+1).
struct PoleDatum {
    PoleLocation location = PoleLocation::infinity;
    int orientation = +1;
    std::function<double(double)> residue;  // residue as a function of E
};

// residue sum = rhs quantization condition:
//   cut_symmetry * sum_i orientation_i * residue_i(E) = rhs(n)
// with rhs(n) = n in the qlm mode and n + 1/2 in the wkb mode.
struct QuantizationRelation {
    std::vector<PoleDatum> poles;
    double cut_symmetry = 1.0;  // 1/2 only for the spherical oscillator
    Method mode = Method::qlm;

    double lhs(double E) const;
    double rhs(int n) const;
};

QuantizationRelation assemble_quantization(std::vector<PoleDatum> poles, double cut_symmetry,
                                           Method mode);

// Catalogue entry: the relation a given potential satisfies in the given mode.
QuantizationRelation quantization_relation(const PotentialSpec& p, Method mode);

// Bisection solve of lhs(E) = rhs(n) over [lo, hi]; asserts lhs monotone
// between the endpoints; throws BracketError when the root is not bracketed.
double solve_relation(const QuantizationRelation& rel, int n, double lo, double hi);

LevelResult exact_levels(const PotentialSpec& p, int n);
LevelResult wkb_levels(const PotentialSpec& p, int n);
LevelResult qlm_levels(const PotentialSpec& p, int n);
LevelResult levels(const PotentialSpec& p, Method m, int n);

// Number of bound levels; nullopt means infinitely many.
std::optional<int> bound_state_count(const PotentialSpec& p);

struct LevelRow {
    int n = 0;
    std::optional<double> exact;
    std::optional<double> wkb;
    std::optional<double> qlm;
    std::optional<double> qlm_err;  // |E_qlm - E_exact|
    std::optional<double> wkb_err;  // |E_wkb - E_exact|
};

std::vector<LevelRow> level_table(const PotentialSpec& p, int n_max);

}  // namespace qlmwkb
