#include "qlmwkb/shooting.hpp"

#include "qlmwkb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace qlmwkb {

namespace {

// psi'' = W psi on a uniform grid; returns the interior node count of the
// forward sweep started with (psi0, psi1)
int numerov_nodes(const std::vector<double>& W, double h, double psi0, double psi1) {
    const double h2_12 = h * h / 12.0;
    const std::size_t n = W.size();
    double pm = psi0, pc = psi1;
    double fm = 1.0 - h2_12 * W[0];
    double fc = 1.0 - h2_12 * W[1];
    int nodes = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double fn = 1.0 - h2_12 * W[i + 1];
        double pn = ((12.0 - 10.0 * fc) * pc - fm * pm) / fn;
        if (pn * pc < 0.0) ++nodes;
        if (std::abs(pn) > 1e280) {
            pn *= 1e-280;
            pc *= 1e-280;
        }
        pm = pc;
        pc = pn;
        fm = fc;
        fc = fn;
    }
    return nodes;
}

struct KindSetup {
    bool log_grid = false;       // integrate in t = ln r
    bool dirichlet_left = true;  // uniform grids start from psi = 0
    double anchor = 0.0;         // inside the classical region (x or t)
    double length = 1.0;         // coordinate scale
    double energy_scale = 1.0;
    bool confining = false;      // spectrum unbounded above
    double left_fixed = 0.0;     // log grids only: frozen left endpoint in t
};

double length_scale(const PotentialSpec& p) {
    auto it = p.params.find("a");
    if (it != p.params.end()) return it->second;
    if (p.kind == PotentialKind::coulomb) {
        return p.hbar() * p.hbar() / (p.mass() * p.param("Z"));
    }
    // oscillators: hbar*omega = hbar/sqrt(m), length = sqrt(hbar/(m omega))
    return std::sqrt(p.hbar() / std::sqrt(p.mass()));
}

KindSetup kind_setup(const PotentialSpec& p) {
    KindSetup s;
    s.length = length_scale(p);
    switch (p.kind) {
        case PotentialKind::ho1d:
            s.anchor = 0.0;
            s.energy_scale = p.hbar() / std::sqrt(p.mass());
            s.confining = true;
            break;
        case PotentialKind::modified_pt:
            s.anchor = 0.0;
            s.energy_scale = p.param("V0");
            break;
        case PotentialKind::eckart1d: {
            const double A = p.param("A");
            const double B = p.param("B");
            s.anchor = -p.param("a") * std::log((A + B) / (B - A));
            s.energy_scale = (A + B) * (A + B) / (4.0 * B);
            break;
        }
        case PotentialKind::morse:
            s.anchor = p.param("a") * std::log(2.0 * p.param("A") / p.param("B"));
            s.energy_scale = p.param("B") * p.param("B") / (4.0 * p.param("A"));
            break;
        case PotentialKind::hylleraas:
            s.anchor = 0.01 * s.length;
            s.energy_scale = p.param("V0");
            break;
        case PotentialKind::ho3d:
            s.log_grid = true;
            s.anchor = std::log(s.length * std::sqrt(p.angular_momentum() + 1.0));
            s.energy_scale = p.hbar() / std::sqrt(p.mass());
            s.confining = true;
            break;
        case PotentialKind::coulomb: {
            s.log_grid = true;
            const int l = p.angular_momentum();
            s.anchor = std::log(s.length * (l * l + l + 1.0));
            s.energy_scale = p.mass() * p.param("Z") * p.param("Z") / (p.hbar() * p.hbar());
            break;
        }
        case PotentialKind::eckart3d: {
            s.log_grid = true;
            const double lam = p.param("lambda");
            const double b = p.param("b");
            const double u = lam > b ? (lam - b) / (lam + b) : 0.5;
            s.anchor = std::log(-p.param("a") * std::log(u) + 1e-3 * s.length);
            s.energy_scale = lam;
            break;
        }
        case PotentialKind::hulthen:
            s.log_grid = true;
            s.anchor = std::log(0.5 * s.length);
            s.energy_scale = p.param("lambda");
            break;
        case PotentialKind::cotangent:
        case PotentialKind::pt_hole:
            throw UsageError("box potentials are not supported by the shooting oracle");
    }
    return s;
}

// W along the sweep coordinate; uniform grids use x, log grids t = ln r with
// the extra (l + 1/2)^2 flat term from the half-power substitution
class Weight {
  public:
    Weight(const PotentialSpec& p, const KindSetup& s, double E)
        : p_(p), s_(s), E_(E), two_m_h2_(2.0 * p.mass() / (p.hbar() * p.hbar())) {
        const double l = p.angular_momentum();
        lhalf2_ = (l + 0.5) * (l + 0.5);
    }

    double operator()(double q) const {
        if (!s_.log_grid) {
            return two_m_h2_ * (value(q) - E_);
        }
        const double r = std::exp(q);
        return lhalf2_ + r * r * two_m_h2_ * (value(r) - E_);
    }

  private:
    double value(double x) const {
        // raw potential, no domain guard; sweeps stay inside the domain
        return qlmwkb::potential_value(p_, x);
    }

    const PotentialSpec& p_;
    const KindSetup& s_;
    double E_;
    double two_m_h2_;
    double lhalf2_;
};

// March outward from the anchor until the accumulated decay exponent
// int sqrt(W) passes tail, with geometric step growth; capped so the grid
// spacing stays sane near the zero-energy threshold.
double march_edge(const Weight& W, const KindSetup& s, double dir, double tail) {
    double step = (s.log_grid ? 0.02 : s.length / 128.0);
    const double cap = s.log_grid ? s.anchor + dir * 25.0
                                  : s.anchor + dir * 1000.0 * s.length;
    double q = s.anchor;
    double acc = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double w = W(q + 0.5 * dir * step);
        if (w > 0.0) acc += std::sqrt(w) * step;
        q += dir * step;
        if (acc >= tail) return q;
        if ((dir > 0 && q >= cap) || (dir < 0 && q <= cap)) return cap;
        step *= 1.01;
    }
    return cap;
}

struct Domain {
    double lo = 0.0;
    double hi = 0.0;
};

Domain build_domain(const PotentialSpec& p, const KindSetup& s, double E, double tail) {
    const Weight W(p, s, E);
    Domain d;
    if (s.log_grid) {
        d.lo = std::log(1e-8 * s.length);
        d.hi = march_edge(W, s, +1.0, tail);
    } else if (p.kind == PotentialKind::hylleraas) {
        d.lo = 1e-9 * s.length;  // hard wall; offset keeps V evaluations in-domain
        d.hi = march_edge(W, s, +1.0, tail);
    } else {
        d.lo = march_edge(W, s, -1.0, tail);
        d.hi = march_edge(W, s, +1.0, tail);
    }
    if (!(d.lo < d.hi)) throw BracketError("degenerate shooting domain");
    return d;
}

int count_nodes(const PotentialSpec& p, const KindSetup& s, const Domain& d, double E, int N) {
    const Weight Wf(p, s, E);
    std::vector<double> W(N);
    const double h = (d.hi - d.lo) / (N - 1);
    for (int i = 0; i < N; ++i) W[i] = Wf(d.lo + i * h);
    if (!s.log_grid) {
        return numerov_nodes(W, h, 0.0, h);
    }
    const double q = std::sqrt(std::max(0.0, W[0]));
    return numerov_nodes(W, h, 1.0, std::exp(q * h));
}

// count with the domain rebuilt for each probe energy
int count_adaptive(const PotentialSpec& p, const KindSetup& s, double E, int N, double tail) {
    return count_nodes(p, s, build_domain(p, s, E, tail), E, N);
}

}  // namespace

double shooting_oracle(const PotentialSpec& p, int n, const ShootingConfig& cfg) {
    if (n < 0) throw UsageError("level index must be nonnegative");
    const KindSetup s = kind_setup(p);
    const int N = cfg.grid_points;
    const double tail = cfg.tail_decay;

    // initial energy bracket: count(lo) <= n < count(hi)
    double lo, hi;
    if (s.confining) {
        lo = 0.0;
        hi = s.energy_scale * (2.0 * n + 4.0);
        int guard = 0;
        while (count_adaptive(p, s, hi, N, tail) <= n) {
            hi *= 2.0;
            if (++guard > 60) throw BracketError("failed to bracket the level from above");
        }
    } else {
        hi = -1e-9 * s.energy_scale;
        if (count_adaptive(p, s, hi, N, tail) <= n) {
            throw OracleError("potential " + to_string(p.kind) + " has no bound level " +
                              std::to_string(n));
        }
        lo = -s.energy_scale;
        int guard = 0;
        while (count_adaptive(p, s, lo, N, tail) > n) {
            lo *= 2.0;
            if (++guard > 60) throw BracketError("failed to bracket the level from below");
        }
    }

    // adaptive-domain staircase pass down to a narrow window
    for (int i = 0; i < 200 && hi - lo > 1e-4 * (std::abs(lo) + std::abs(hi)) + 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (count_adaptive(p, s, mid, N, tail) > n) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    // freeze the domain at the window centre; refine on two resolutions and
    // Richardson the O(h^4) staircase limits
    const Domain dom = build_domain(p, s, 0.5 * (lo + hi), tail);
    double widen = hi - lo;
    double flo = lo - 10.0 * widen, fhi = hi + 10.0 * widen;
    int grow = 0;
    while (count_nodes(p, s, dom, flo, N) > n || count_nodes(p, s, dom, fhi, N) <= n) {
        widen *= 8.0;
        flo -= widen;
        fhi += widen;
        if (++grow > 8) throw BracketError("frozen-domain bracket drifted");
    }

    double refined[2];
    for (int pass = 0; pass < 2; ++pass) {
        const int Np = pass == 0 ? N : 2 * N - 1;
        double a = flo, b = fhi;
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (a + b);
            if (mid == a || mid == b) break;
            if (count_nodes(p, s, dom, mid, Np) > n) {
                b = mid;
            } else {
                a = mid;
            }
            if (b - a < cfg.rel_tol * 1e-3 * std::max(std::abs(a), std::abs(b))) break;
        }
        refined[pass] = 0.5 * (a + b);
    }
    return refined[1] + (refined[1] - refined[0]) / 15.0;
}

double shooting_oracle(const PotentialSpec& p, int n) {
    return shooting_oracle(p, n, ShootingConfig{});
}

}  // namespace qlmwkb
