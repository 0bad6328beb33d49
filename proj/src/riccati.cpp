#include "qlmwkb/riccati.hpp"

#include "qlmwkb/errors.hpp"

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

namespace boost {
namespace numeric {
namespace odeint {

template <>
struct vector_space_norm_inf<std::complex<double>> {
    typedef double result_type;
    double operator()(const std::complex<double>& v) const { return std::abs(v); }
};

}  // namespace odeint
}  // namespace numeric
}  // namespace boost

namespace qlmwkb {

namespace {

using cplx = std::complex<double>;

constexpr std::array<double, 6> kGlNodes = {
    -0.9324695142031521, -0.6612093864662645, -0.2386191860831969,
    0.2386191860831969,  0.6612093864662645,  0.9324695142031521};
constexpr std::array<double, 6> kGlWeights = {
    0.1713244923791704, 0.3607615730481386, 0.4679139345726910,
    0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

void check_config(const SolveConfig& cfg) {
    if (!(cfg.z_min < cfg.z_max)) throw UsageError("solver needs z_min < z_max");
    if (cfg.grid_points < 8) throw UsageError("solver needs at least 8 grid points");
    if (!(cfg.delta > 0.0)) throw UsageError("solver needs a positive path offset delta");
    if (cfg.quadrature_order != 6) {
        throw UsageError("only the 6-point panel quadrature is implemented");
    }
}

std::vector<double> make_grid(const SolveConfig& cfg) {
    std::vector<double> g(cfg.grid_points);
    const double h = (cfg.z_max - cfg.z_min) / (cfg.grid_points - 1);
    for (int i = 0; i < cfg.grid_points; ++i) g[i] = cfg.z_min + i * h;
    g.back() = cfg.z_max;
    return g;
}

// sqrt branch continued along the path from z_max inward, where the decaying
// boundary condition fixes Im k > 0
cplx continue_sqrt(cplx k2, cplx anchor) {
    cplx r = std::sqrt(k2);
    if (std::abs(r - anchor) > std::abs(-r - anchor)) r = -r;
    return r;
}

std::vector<cplx> branch_k(const PotentialSpec& p, double E, const std::vector<double>& grid,
                           double delta) {
    const int n = static_cast<int>(grid.size());
    std::vector<cplx> k(n);
    for (int i = n - 1; i >= 0; --i) {
        const cplx z(grid[i], delta);
        const cplx k2 = k_squared(p, E, z);
        const cplx dk2 = k_squared_dz(p, E, z);
        // a zero of k^2 closer to the path than delta/2 breaks the branch
        if (std::abs(k2) < 0.5 * delta * std::abs(dk2)) {
            throw DomainError("path passes within delta of a branch point of k");
        }
        if (i == n - 1) {
            k[i] = std::sqrt(k2);
            if (k[i].imag() < 0.0) k[i] = -k[i];
        } else {
            k[i] = continue_sqrt(k2, k[i + 1]);
        }
    }
    return k;
}

SampledFunction sampled_on(const std::vector<double>& grid, double delta) {
    SampledFunction f;
    f.grid = grid;
    f.values.resize(grid.size());
    f.imag_shift = delta;
    return f;
}

}  // namespace

SampledFunction first_iterate_closed_form(const PotentialSpec& p, double E,
                                          const SolveConfig& cfg) {
    check_config(cfg);
    const std::vector<double> grid = make_grid(cfg);
    const std::vector<cplx> k = branch_k(p, E, grid, cfg.delta);
    const int n = static_cast<int>(grid.size());
    const cplx I(0.0, 1.0);

    // per-panel phase integral of k with the branch anchored at the panel's
    // left grid value
    auto k_at = [&](double s, cplx anchor) {
        return continue_sqrt(k_squared(p, E, cplx(s, cfg.delta)), anchor);
    };
    auto phase_to = [&](double a, double b, cplx anchor) {
        cplx acc = 0.0;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int j = 0; j < 6; ++j) {
            acc += kGlWeights[j] * k_at(mid + half * kGlNodes[j], anchor);
        }
        return acc * half;
    };

    SampledFunction out = sampled_on(grid, cfg.delta);
    std::vector<cplx> A(n);
    A[n - 1] = 0.0;
    for (int i = n - 2; i >= 0; --i) {
        const double a = grid[i], b = grid[i + 1];
        const cplx phase_full = phase_to(a, b, k[i]);
        cplx integ = 0.0;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int j = 0; j < 6; ++j) {
            const double t = mid + half * kGlNodes[j];
            const cplx kt = k_at(t, k[i]);
            const cplx kprime = k_squared_dz(p, E, cplx(t, cfg.delta)) / (2.0 * kt);
            const cplx sub = phase_to(a, t, k[i]);
            integ += kGlWeights[j] * half * kprime * std::exp(2.0 * I * sub);
        }
        A[i] = std::exp(2.0 * I * phase_full) * A[i + 1] - integ;
    }
    for (int i = 0; i < n; ++i) out.values[i] = I * k[i] - I * A[i];
    return out;
}

namespace {

class PrevInterp {
  public:
    PrevInterp(const SampledFunction& f) : lo_(f.grid.front()), hi_(f.grid.back()) {
        const double h = f.grid[1] - f.grid[0];
        std::vector<double> re(f.values.size()), im(f.values.size());
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            re[i] = f.values[i].real();
            im[i] = f.values[i].imag();
        }
        re_.emplace(re.data(), re.size(), lo_, h);
        im_.emplace(im.data(), im.size(), lo_, h);
    }

    cplx operator()(double s) const {
        const double c = std::clamp(s, lo_, hi_);
        return cplx((*re_)(c), (*im_)(c));
    }

  private:
    double lo_, hi_;
    std::optional<boost::math::interpolators::cardinal_cubic_b_spline<double>> re_, im_;
};

}  // namespace

SampledFunction qlm_step_numeric(const SampledFunction& y_prev, const PotentialSpec& p, double E,
                                 const SolveConfig& cfg) {
    check_config(cfg);
    if (y_prev.grid.size() != static_cast<std::size_t>(cfg.grid_points)) {
        throw UsageError("previous iterate grid does not match the configuration");
    }
    const std::vector<double>& grid = y_prev.grid;
    const PrevInterp prev(y_prev);
    const double delta = cfg.delta;

    auto rhs = [&](const cplx& y, cplx& dyds, double s) {
        const cplx yp = prev(s);
        dyds = yp * yp - 2.0 * y * yp - k_squared(p, E, cplx(s, delta));
    };

    const cplx k2_end = k_squared(p, E, cplx(grid.back(), delta));
    cplx k_end = std::sqrt(k2_end);
    if (k_end.imag() < 0.0) k_end = -k_end;

    namespace od = boost::numeric::odeint;
    auto stepper = od::make_dense_output(
        cfg.ode_abs_tol, cfg.ode_rel_tol,
        od::runge_kutta_dopri5<cplx, double, cplx, double, od::vector_space_algebra>());

    SampledFunction out = sampled_on(grid, delta);
    const cplx y0 = cplx(0.0, 1.0) * k_end;
    out.values.back() = y0;

    const double h0 = -(grid[1] - grid[0]);
    stepper.initialize(y0, grid.back(), h0);
    int idx = static_cast<int>(grid.size()) - 2;
    long steps = 0;
    while (idx >= 0) {
        stepper.do_step(rhs);
        if (++steps > 20000000) throw IntegrationError("linearized step exceeded the step budget");
        while (idx >= 0 && grid[idx] >= stepper.current_time()) {
            cplx yi;
            stepper.calc_state(grid[idx], yi);
            out.values[idx] = yi;
            --idx;
        }
    }
    return out;
}

IterateHistory solve_qlm(const PotentialSpec& p, double E, int p_max, const SolveConfig& cfg) {
    check_config(cfg);
    if (p_max < 0) throw UsageError("iterate count must be nonnegative");
    const std::vector<double> grid = make_grid(cfg);
    const std::vector<cplx> k = branch_k(p, E, grid, cfg.delta);

    IterateHistory hist;
    SampledFunction y0 = sampled_on(grid, cfg.delta);
    for (std::size_t i = 0; i < grid.size(); ++i) y0.values[i] = cplx(0.0, 1.0) * k[i];
    hist.iterates.push_back(std::move(y0));

    for (int it = 1; it <= p_max; ++it) {
        SampledFunction next = qlm_step_numeric(hist.iterates.back(), p, E, cfg);
        double sup = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            sup = std::max(sup, std::abs(next.values[i] - hist.iterates.back().values[i]));
        }
        hist.sup_diffs.push_back(sup);
        hist.iterates.push_back(std::move(next));
    }
    return hist;
}

AsymptoticModel asymptotic_model_from_string(const std::string& name) {
    if (name == "oscillator_infinity") return AsymptoticModel::oscillator_infinity;
    if (name == "coulomb_infinity") return AsymptoticModel::coulomb_infinity;
    if (name == "inner_pole") return AsymptoticModel::inner_pole;
    throw UsageError("unknown asymptotic model '" + name + "'");
}

namespace {

// complex least squares via normal equations; tiny well-conditioned systems
std::vector<cplx> solve_normal(const std::vector<std::vector<cplx>>& cols,
                               const std::vector<cplx>& r) {
    const std::size_t m = cols.size();
    std::vector<std::vector<cplx>> M(m, std::vector<cplx>(m + 1));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            cplx s = 0.0;
            for (std::size_t t = 0; t < r.size(); ++t) s += std::conj(cols[i][t]) * cols[j][t];
            M[i][j] = s;
        }
        cplx s = 0.0;
        for (std::size_t t = 0; t < r.size(); ++t) s += std::conj(cols[i][t]) * r[t];
        M[i][m] = s;
    }
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t i = c + 1; i < m; ++i) {
            if (std::abs(M[i][c]) > std::abs(M[piv][c])) piv = i;
        }
        std::swap(M[c], M[piv]);
        if (std::abs(M[c][c]) == 0.0) throw FitQualityError("degenerate fit basis");
        for (std::size_t i = 0; i < m; ++i) {
            if (i == c) continue;
            const cplx f = M[i][c] / M[c][c];
            for (std::size_t j = c; j <= m; ++j) M[i][j] -= f * M[c][j];
        }
    }
    std::vector<cplx> x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = M[i][m] / M[i][i];
    return x;
}

}  // namespace

double asymptotic_residue_fit(const SampledFunction& y, AsymptoticModel model, double E) {
    const std::size_t n = y.grid.size();
    if (n < 10) throw UsageError("sample too short for an asymptotic fit");
    const std::size_t w = std::max<std::size_t>(5, n / 5);
    const std::size_t begin = model == AsymptoticModel::inner_pole ? 0 : n - w;
    const std::size_t end = model == AsymptoticModel::inner_pole ? w : n;

    std::vector<cplx> zeta, r;
    for (std::size_t i = begin; i < end; ++i) {
        const cplx z(y.grid[i], y.imag_shift);
        zeta.push_back(z);
        switch (model) {
            case AsymptoticModel::oscillator_infinity:
                r.push_back(y.values[i] + z / 2.0);
                break;
            case AsymptoticModel::coulomb_infinity:
                r.push_back(y.values[i] + std::sqrt(std::abs(E)));
                break;
            case AsymptoticModel::inner_pole:
                r.push_back(y.values[i]);
                break;
        }
    }

    const std::size_t count = zeta.size();
    std::vector<std::vector<cplx>> cols;
    auto col = [&](auto f) {
        std::vector<cplx> v(count);
        for (std::size_t i = 0; i < count; ++i) v[i] = f(zeta[i]);
        cols.push_back(std::move(v));
    };
    col([](cplx z) { return 1.0 / z; });
    if (model == AsymptoticModel::inner_pole) {
        col([](cplx) { return cplx(1.0, 0.0); });
        col([](cplx z) { return z; });
        col([](cplx z) { return z * z; });
    } else {
        col([](cplx z) { return 1.0 / (z * z); });
        col([](cplx z) { return 1.0 / (z * z * z); });

        // the imposed boundary value differs from the true asymptote by a
        // deviation obeying v' = -2 y v; absorb it (and its square) with the
        // homogeneous decay mode rebuilt from the sample itself
        std::vector<cplx> S(count, 0.0);
        for (std::size_t i = count - 1; i-- > 0;) {
            const cplx dz = zeta[i + 1] - zeta[i];
            S[i] = S[i + 1] + 0.5 * (y.values[begin + i] + y.values[begin + i + 1]) * dz;
        }
        auto mode = [&](double power) {
            std::vector<cplx> v(count);
            for (std::size_t i = 0; i < count; ++i) {
                const cplx ex = power * S[i];
                v[i] = ex.real() < -700.0 ? 0.0 : std::exp(ex);
            }
            cols.push_back(std::move(v));
        };
        mode(2.0);
        mode(4.0);
    }

    const std::vector<cplx> c = solve_normal(cols, r);
    double resid2 = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        cplx fit = 0.0;
        for (std::size_t j = 0; j < cols.size(); ++j) fit += c[j] * cols[j][i];
        resid2 += std::norm(fit - r[i]);
        norm2 += std::norm(r[i]);
    }
    if (std::sqrt(resid2) > 1e-3 * std::sqrt(std::max(norm2, 1e-300))) {
        throw FitQualityError("asymptotic fit residual exceeds the quality gate");
    }
    return c[0].real();
}

std::vector<double> convergence_orders(const IterateHistory& h) {
    std::vector<double> orders;
    for (std::size_t j = 0; j + 1 < h.sup_diffs.size(); ++j) {
        const double a = std::max(h.sup_diffs[j], 1e-300);
        const double b = std::max(h.sup_diffs[j + 1], 1e-300);
        orders.push_back(std::log(b) / std::log(a));
    }
    return orders;
}

double default_z_max(const PotentialSpec& p, double E) {
    if (domain_of(p.kind) == DomainKind::box) {
        throw UsageError("box potentials have no outer decay boundary");
    }
    const double target = 1e-8 * std::abs(E);
    if (target <= 0.0) throw UsageError("default_z_max needs a nonzero energy");
    const double lam = std::sqrt(2.0 * p.mass()) / p.hbar();
    switch (p.kind) {
        case PotentialKind::ho1d:
        case PotentialKind::ho3d:
            return 40.0;
        default:
            break;
    }
    auto it = p.params.find("a");
    double x = it != p.params.end() ? it->second : 1.0;
    int guard = 0;
    while (std::abs(potential_value(p, x)) > target) {
        x *= 2.0;
        if (++guard > 200) return 40.0;
    }
    double lo = x / 2.0, hi = x;
    for (int i = 0; i < 80; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (std::abs(potential_value(p, mid)) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return std::min(40.0, lam * 0.5 * (lo + hi));
}

}  // namespace qlmwkb
