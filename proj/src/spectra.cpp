#include "qlmwkb/spectra.hpp"

#include "qlmwkb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace qlmwkb {

Method method_from_string(const std::string& name) {
    if (name == "exact") return Method::exact;
    if (name == "wkb") return Method::wkb;
    if (name == "qlm") return Method::qlm;
    throw UsageError("unknown method '" + name + "' (expected exact, wkb or qlm)");
}

std::string to_string(Method m) {
    switch (m) {
        case Method::exact: return "exact";
        case Method::wkb: return "wkb";
        case Method::qlm: return "qlm";
    }
    throw InternalError("unnamed method");
}

double QuantizationRelation::lhs(double E) const {
    double sum = 0.0;
    for (const auto& pole : poles) {
        sum += pole.orientation * pole.residue(E);
    }
    return cut_symmetry * sum;
}

double QuantizationRelation::rhs(int n) const {
    if (n < 0) throw UsageError("level index must be nonnegative");
    return mode == Method::wkb ? n + 0.5 : static_cast<double>(n);
}

QuantizationRelation assemble_quantization(std::vector<PoleDatum> poles, double cut_symmetry,
                                           Method mode) {
    if (mode == Method::exact) {
        throw UsageError("quantization relations exist for the wkb and qlm methods only");
    }
    if (poles.empty()) {
        throw UsageError("a quantization relation needs at least one pole");
    }
    if (!(cut_symmetry > 0.0)) {
        throw UsageError("cut_symmetry must be positive");
    }
    QuantizationRelation rel;
    rel.poles = std::move(poles);
    rel.cut_symmetry = cut_symmetry;
    rel.mode = mode;
    return rel;
}

namespace {

double sqrt_nonneg(double x) { return std::sqrt(std::max(0.0, x)); }

// binding depth; zero above threshold so relation left sides stay monotone
double eps_of(double E) { return std::max(0.0, -E); }

PoleDatum pole(PoleLocation loc, int orientation, std::function<double(double)> residue) {
    PoleDatum d;
    d.location = loc;
    d.orientation = orientation;
    d.residue = std::move(residue);
    return d;
}

PoleDatum const_pole(PoleLocation loc, int orientation, double residue) {
    return pole(loc, orientation, [residue](double) { return residue; });
}

}  // namespace

QuantizationRelation quantization_relation(const PotentialSpec& p, Method mode) {
    if (mode == Method::exact) {
        throw UsageError("quantization relations exist for the wkb and qlm methods only");
    }
    const bool wkb = mode == Method::wkb;
    std::vector<PoleDatum> poles;
    double cut = 1.0;

    switch (p.kind) {
        case PotentialKind::ho1d: {
            const double hw = p.hbar() / std::sqrt(p.mass());
            const double shift = wkb ? 0.0 : 0.5;
            poles.push_back(pole(PoleLocation::infinity, +1,
                                 [hw, shift](double E) { return E / hw - shift; }));
            break;
        }
        case PotentialKind::ho3d: {
            const double hw = p.hbar() / std::sqrt(p.mass());
            const double shift = wkb ? 0.0 : 0.5;
            const double l = p.angular_momentum();
            poles.push_back(const_pole(PoleLocation::zero, -1, wkb ? l + 0.5 : l + 1.0));
            poles.push_back(pole(PoleLocation::infinity, +1,
                                 [hw, shift](double E) { return E / hw - shift; }));
            cut = 0.5;
            break;
        }
        case PotentialKind::coulomb: {
            const double Z = p.param("Z");
            const double h = p.hbar();
            const double m = p.mass();
            const double l = p.angular_momentum();
            poles.push_back(const_pole(PoleLocation::zero, -1, wkb ? l + 0.5 : l + 1.0));
            poles.push_back(pole(PoleLocation::infinity, +1, [Z, h, m](double E) {
                return Z / h * std::sqrt(m / (2.0 * std::max(std::abs(E), 1e-300)));
            }));
            break;
        }
        case PotentialKind::cotangent: {
            const double beta = p.beta();
            const double V0 = p.param("V0");
            const double sig2 = beta * V0 / (M_PI * M_PI);
            const double res0 = wkb ? std::sqrt(sig2) : 0.5 + std::sqrt(sig2 + 0.25);
            poles.push_back(const_pole(PoleLocation::zero, -1, res0));
            poles.push_back(pole(PoleLocation::infinity, +1, [beta, V0](double E) {
                return sqrt_nonneg(beta * (E + V0)) / M_PI;
            }));
            break;
        }
        case PotentialKind::pt_hole: {
            const double beta = p.beta();
            const double s1 = beta * p.param("V1") / (M_PI * M_PI);
            const double s2 = beta * p.param("V2") / (M_PI * M_PI);
            // half residues: one circuit of the box covers the pole pair once
            const double r0 = wkb ? std::sqrt(s1) / 2.0 : (0.5 + std::sqrt(s1 + 0.25)) / 2.0;
            const double r1 = wkb ? std::sqrt(s2) / 2.0 : (0.5 + std::sqrt(s2 + 0.25)) / 2.0;
            poles.push_back(const_pole(PoleLocation::zero, -1, r0));
            poles.push_back(const_pole(PoleLocation::one, -1, r1));
            poles.push_back(pole(PoleLocation::infinity, +1, [beta](double E) {
                return sqrt_nonneg(beta * E) / (2.0 * M_PI);
            }));
            break;
        }
        case PotentialKind::modified_pt: {
            const double beta = p.beta();
            const double lam =
                wkb ? std::sqrt(beta * p.param("V0")) : std::sqrt(beta * p.param("V0") + 0.25);
            poles.push_back(const_pole(PoleLocation::zero, -1, wkb ? -lam : -(lam - 0.5)));
            poles.push_back(pole(PoleLocation::infinity, +1,
                                 [beta](double E) { return -std::sqrt(beta * eps_of(E)); }));
            break;
        }
        case PotentialKind::hylleraas: {
            const double beta = p.beta();
            const double lam =
                wkb ? std::sqrt(beta * p.param("V0")) : std::sqrt(beta * p.param("V0") + 0.25);
            poles.push_back(
                const_pole(PoleLocation::zero, -1, (wkb ? -lam : -(lam - 0.5)) / 2.0));
            if (!wkb) {
                // node of the zeroth iterate at the regular wall
                poles.push_back(const_pole(PoleLocation::one, -1, 0.5));
            }
            poles.push_back(pole(PoleLocation::infinity, +1, [beta](double E) {
                return -std::sqrt(beta * eps_of(E)) / 2.0;
            }));
            break;
        }
        case PotentialKind::eckart1d: {
            const double beta = p.beta();
            const double A = p.param("A");
            const double B = p.param("B");
            const double s = 0.5 * (std::sqrt(1.0 + 4.0 * beta * B) - 1.0);
            poles.push_back(pole(PoleLocation::zero, -1, [beta](double E) {
                return std::sqrt(beta * eps_of(E));
            }));
            poles.push_back(const_pole(PoleLocation::one, -1, wkb ? -std::sqrt(beta * B) : -s));
            poles.push_back(pole(PoleLocation::infinity, +1, [beta, A](double E) {
                return -std::sqrt(beta) * sqrt_nonneg(eps_of(E) - A);
            }));
            break;
        }
        case PotentialKind::eckart3d: {
            const double beta = p.beta();
            const double lam = p.param("lambda");
            const double b = p.param("b");
            const double sb = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * beta * b));
            poles.push_back(pole(PoleLocation::zero, -1, [beta](double E) {
                return std::sqrt(beta * eps_of(E));
            }));
            poles.push_back(const_pole(PoleLocation::one, -1, wkb ? std::sqrt(beta * b) : sb));
            poles.push_back(pole(PoleLocation::infinity, +1, [beta, lam](double E) {
                return std::sqrt(beta) * sqrt_nonneg(eps_of(E) + lam);
            }));
            break;
        }
        case PotentialKind::hulthen: {
            const double beta = p.beta();
            const double lam = p.param("lambda");
            poles.push_back(pole(PoleLocation::zero, -1, [beta](double E) {
                return std::sqrt(beta * eps_of(E));
            }));
            if (!wkb) {
                poles.push_back(const_pole(PoleLocation::one, -1, 1.0));
            }
            poles.push_back(pole(PoleLocation::infinity, +1, [beta, lam](double E) {
                return std::sqrt(beta) * sqrt_nonneg(eps_of(E) + lam);
            }));
            break;
        }
        case PotentialKind::morse: {
            const double beta = p.beta();
            const double A = p.param("A");
            const double B = p.param("B");
            const double M = std::sqrt(beta) * B / (2.0 * std::sqrt(A));
            poles.push_back(const_pole(PoleLocation::zero, -1, wkb ? -M : 0.5 - M));
            poles.push_back(pole(PoleLocation::infinity, +1,
                                 [beta](double E) { return -std::sqrt(beta * eps_of(E)); }));
            break;
        }
    }
    return assemble_quantization(std::move(poles), cut, mode);
}

double solve_relation(const QuantizationRelation& rel, int n, double lo, double hi) {
    if (!(lo < hi)) throw UsageError("solve_relation needs lo < hi");
    const double target = rel.rhs(n);
    const double flo = rel.lhs(lo);
    const double fhi = rel.lhs(hi);
    const double dir = fhi >= flo ? 1.0 : -1.0;

    // monotone sanity sweep; flat stretches are fine, reversals are not
    const double wiggle = 1e-10 * (1.0 + std::abs(fhi - flo));
    double prev = flo;
    for (int i = 1; i <= 8; ++i) {
        const double f = rel.lhs(lo + (hi - lo) * i / 8.0);
        if (dir * (f - prev) < -wiggle) {
            throw BracketError("quantization relation is not monotone on the bracket");
        }
        prev = f;
    }
    if ((flo - target) * (fhi - target) > 0.0) {
        throw BracketError("quantization level is not bracketed");
    }

    double a = lo, b = hi;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        const double f = rel.lhs(mid);
        if (dir * (f - target) < 0.0) {
            a = mid;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

namespace {

struct ClosedLevel {
    double energy = std::numeric_limits<double>::quiet_NaN();
    bool bound = true;
};

// Closed-form level in a given mode.  The exact spectrum coincides with the
// qlm formulas throughout the catalogue.
ClosedLevel closed_level(const PotentialSpec& p, Method m, int n) {
    const bool wkb = m == Method::wkb;
    ClosedLevel out;
    switch (p.kind) {
        case PotentialKind::ho1d: {
            const double hw = p.hbar() / std::sqrt(p.mass());
            out.energy = hw * (n + 0.5);
            return out;
        }
        case PotentialKind::ho3d: {
            const double hw = p.hbar() / std::sqrt(p.mass());
            out.energy = hw * (2.0 * n + p.angular_momentum() + 1.5);
            return out;
        }
        case PotentialKind::coulomb: {
            const double Z = p.param("Z");
            const double denom = n + p.angular_momentum() + 1.0;
            out.energy = -p.mass() * Z * Z / (2.0 * p.hbar() * p.hbar() * denom * denom);
            return out;
        }
        case PotentialKind::cotangent: {
            const double beta = p.beta();
            const double V0 = p.param("V0");
            const double C = M_PI * M_PI / beta;
            const double sig2 = beta * V0 / (M_PI * M_PI);
            const double sig = wkb ? std::sqrt(sig2) : std::sqrt(sig2 + 0.25);
            const double t = n + 0.5 + sig;
            out.energy = -V0 + C * t * t;
            return out;
        }
        case PotentialKind::pt_hole: {
            const double beta = p.beta();
            const double C = M_PI * M_PI / beta;
            const double s1 = beta * p.param("V1") / (M_PI * M_PI);
            const double s2 = beta * p.param("V2") / (M_PI * M_PI);
            const double g1 = wkb ? std::sqrt(s1) : std::sqrt(s1 + 0.25);
            const double g2 = wkb ? std::sqrt(s2) : std::sqrt(s2 + 0.25);
            const double t = 2.0 * n + 1.0 + g1 + g2;
            out.energy = C * t * t;
            return out;
        }
        case PotentialKind::modified_pt: {
            const double beta = p.beta();
            const double lam = wkb ? std::sqrt(beta * p.param("V0"))
                                   : std::sqrt(beta * p.param("V0") + 0.25);
            const double t = lam - (n + 0.5);
            out.energy = -t * t / beta;
            out.bound = t > 0.0;
            return out;
        }
        case PotentialKind::hylleraas: {
            const double beta = p.beta();
            const double lam = wkb ? std::sqrt(beta * p.param("V0"))
                                   : std::sqrt(beta * p.param("V0") + 0.25);
            const double t = lam - (wkb ? 2.0 * n + 1.0 : 2.0 * n + 1.5);
            out.energy = -t * t / beta;
            out.bound = t > 0.0;
            return out;
        }
        case PotentialKind::eckart1d: {
            const double beta = p.beta();
            const double A = p.param("A");
            const double B = p.param("B");
            const double s = 0.5 * (std::sqrt(1.0 + 4.0 * beta * B) - 1.0);
            const double t = wkb ? std::sqrt(beta * B) - (n + 0.5) : s - n;
            const double P = t * t / beta;
            out.energy = P == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                  : -(P + A) * (P + A) / (4.0 * P);
            out.bound = t > std::sqrt(beta * std::abs(A));
            return out;
        }
        case PotentialKind::eckart3d: {
            const double beta = p.beta();
            const double lam = p.param("lambda");
            const double b = p.param("b");
            const double sb = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * beta * b));
            const double w = wkb ? n + 0.5 + std::sqrt(beta * b) : n + sb;
            const double P = w * w / beta;
            out.energy = -(lam - P) * (lam - P) / (4.0 * P);
            out.bound = w < std::sqrt(beta * lam);
            return out;
        }
        case PotentialKind::hulthen: {
            const double beta = p.beta();
            const double lam = p.param("lambda");
            const double w = wkb ? n + 0.5 : n + 1.0;
            const double P = w * w / beta;
            out.energy = -(lam - P) * (lam - P) / (4.0 * P);
            out.bound = w < std::sqrt(beta * lam);
            return out;
        }
        case PotentialKind::morse: {
            const double beta = p.beta();
            const double M = std::sqrt(beta) * p.param("B") / (2.0 * std::sqrt(p.param("A")));
            const double t = M - (n + 0.5);
            out.energy = -t * t / beta;
            out.bound = t > 0.0;
            return out;
        }
    }
    throw InternalError("unhandled potential kind");
}

LevelResult as_result(const PotentialSpec& p, Method m, int n, const ClosedLevel& c) {
    (void)p;
    LevelResult r;
    r.n = n;
    r.method = m;
    r.energy = std::isfinite(c.energy) ? c.energy : std::numeric_limits<double>::quiet_NaN();
    r.status = c.bound ? LevelStatus::ok : LevelStatus::no_bound_state;
    return r;
}

void check_level_index(int n) {
    if (n < 0) throw UsageError("level index must be nonnegative");
}

// Root bracket in E for the eckart relations, bisected instead of using the
// closed form so the relation itself is exercised.
double bisect_eckart(const PotentialSpec& p, int n) {
    const auto rel = quantization_relation(p, Method::qlm);
    double lo, hi;
    if (p.kind == PotentialKind::eckart1d) {
        const double A = p.param("A");
        const double B = p.param("B");
        lo = -(A + B) * (A + B) / (4.0 * B);
        hi = -std::max(0.0, A);
    } else {
        hi = 0.0;
        lo = -p.param("lambda") - 1.0;
        const double target = rel.rhs(n);
        int guard = 0;
        while (rel.lhs(lo) > target) {
            lo *= 2.0;
            if (++guard > 200) throw BracketError("failed to bracket the eckart level");
        }
    }
    return solve_relation(rel, n, lo, hi);
}

}  // namespace

LevelResult exact_levels(const PotentialSpec& p, int n) {
    check_level_index(n);
    return as_result(p, Method::exact, n, closed_level(p, Method::exact, n));
}

LevelResult wkb_levels(const PotentialSpec& p, int n) {
    check_level_index(n);
    return as_result(p, Method::wkb, n, closed_level(p, Method::wkb, n));
}

LevelResult qlm_levels(const PotentialSpec& p, int n) {
    check_level_index(n);
    const ClosedLevel closed = closed_level(p, Method::qlm, n);
    if (closed.bound &&
        (p.kind == PotentialKind::eckart1d || p.kind == PotentialKind::eckart3d)) {
        ClosedLevel solved = closed;
        solved.energy = bisect_eckart(p, n);
        return as_result(p, Method::qlm, n, solved);
    }
    return as_result(p, Method::qlm, n, closed);
}

LevelResult levels(const PotentialSpec& p, Method m, int n) {
    switch (m) {
        case Method::exact: return exact_levels(p, n);
        case Method::wkb: return wkb_levels(p, n);
        case Method::qlm: return qlm_levels(p, n);
    }
    throw InternalError("unhandled method");
}

std::optional<int> bound_state_count(const PotentialSpec& p) {
    switch (p.kind) {
        case PotentialKind::ho1d:
        case PotentialKind::ho3d:
        case PotentialKind::coulomb:
        case PotentialKind::cotangent:
        case PotentialKind::pt_hole:
            return std::nullopt;
        default:
            break;
    }
    int count = 0;
    while (closed_level(p, Method::exact, count).bound) {
        ++count;
        if (count > 1000000) throw InternalError("implausible bound-state count");
    }
    return count;
}

std::vector<LevelRow> level_table(const PotentialSpec& p, int n_max) {
    if (n_max < 0) throw UsageError("n_max must be nonnegative");
    std::vector<LevelRow> rows;
    rows.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        LevelRow row;
        row.n = n;
        const LevelResult ex = exact_levels(p, n);
        const LevelResult wk = wkb_levels(p, n);
        const LevelResult ql = qlm_levels(p, n);
        if (std::isfinite(ex.energy)) row.exact = ex.energy;
        if (std::isfinite(wk.energy)) row.wkb = wk.energy;
        if (std::isfinite(ql.energy)) row.qlm = ql.energy;
        if (row.exact && row.qlm) row.qlm_err = std::abs(*row.qlm - *row.exact);
        if (row.exact && row.wkb) row.wkb_err = std::abs(*row.wkb - *row.exact);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qlmwkb
