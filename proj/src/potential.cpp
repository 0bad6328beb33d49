#include "qlmwkb/potential.hpp"

#include "qlmwkb/errors.hpp"

#include <cmath>
#include <complex>
#include <set>
#include <sstream>

namespace qlmwkb {

namespace {

const std::map<std::string, PotentialKind>& kind_table() {
    static const std::map<std::string, PotentialKind> table = {
        {"ho1d", PotentialKind::ho1d},
        {"ho3d", PotentialKind::ho3d},
        {"coulomb", PotentialKind::coulomb},
        {"cotangent", PotentialKind::cotangent},
        {"pt_hole", PotentialKind::pt_hole},
        {"modified_pt", PotentialKind::modified_pt},
        {"hylleraas", PotentialKind::hylleraas},
        {"eckart1d", PotentialKind::eckart1d},
        {"eckart3d", PotentialKind::eckart3d},
        {"hulthen", PotentialKind::hulthen},
        {"morse", PotentialKind::morse},
    };
    return table;
}

}  // namespace

PotentialKind potential_kind_from_string(const std::string& name) {
    auto it = kind_table().find(name);
    if (it == kind_table().end()) {
        throw UsageError("unknown potential kind '" + name + "'");
    }
    return it->second;
}

std::string to_string(PotentialKind kind) {
    for (const auto& [name, k] : kind_table()) {
        if (k == kind) return name;
    }
    throw InternalError("unnamed potential kind");
}

DomainKind domain_of(PotentialKind kind) {
    switch (kind) {
        case PotentialKind::ho1d:
        case PotentialKind::modified_pt:
        case PotentialKind::eckart1d:
        case PotentialKind::morse:
            return DomainKind::line;
        case PotentialKind::ho3d:
        case PotentialKind::coulomb:
        case PotentialKind::hylleraas:
        case PotentialKind::eckart3d:
        case PotentialKind::hulthen:
            return DomainKind::half_line;
        case PotentialKind::cotangent:
        case PotentialKind::pt_hole:
            return DomainKind::box;
    }
    throw InternalError("unhandled potential kind");
}

double PotentialSpec::param(const std::string& name) const {
    auto it = params.find(name);
    if (it == params.end()) {
        throw UsageError("potential " + to_string(kind) + " needs parameter '" + name + "'");
    }
    return it->second;
}

double PotentialSpec::hbar() const {
    auto it = params.find("hbar");
    return it == params.end() ? 1.0 : it->second;
}

double PotentialSpec::mass() const {
    auto it = params.find("m");
    return it == params.end() ? 1.0 : it->second;
}

int PotentialSpec::angular_momentum() const {
    auto it = params.find("l");
    return it == params.end() ? 0 : static_cast<int>(it->second);
}

double PotentialSpec::beta() const {
    const double a = param("a");
    return 2.0 * mass() * a * a / (hbar() * hbar());
}

namespace {

void require_positive(const PotentialSpec& p, const std::string& name) {
    if (!(p.param(name) > 0.0)) {
        throw UsageError("potential " + to_string(p.kind) + ": parameter " + name +
                         " must be positive");
    }
}

void require_integer_l(const PotentialSpec& p) {
    auto it = p.params.find("l");
    if (it == p.params.end()) return;
    const double l = it->second;
    if (l < 0.0 || l != std::floor(l)) {
        throw UsageError("potential " + to_string(p.kind) + ": l must be a nonnegative integer");
    }
}

std::set<std::string> allowed_params(PotentialKind kind) {
    std::set<std::string> names = {"hbar", "m"};
    switch (kind) {
        case PotentialKind::ho1d: break;
        case PotentialKind::ho3d: names.insert("l"); break;
        case PotentialKind::coulomb: names.insert({"Z", "l"}); break;
        case PotentialKind::cotangent: names.insert({"V0", "a"}); break;
        case PotentialKind::pt_hole: names.insert({"V1", "V2", "a"}); break;
        case PotentialKind::modified_pt:
        case PotentialKind::hylleraas: names.insert({"V0", "a"}); break;
        case PotentialKind::eckart1d: names.insert({"A", "B", "a"}); break;
        case PotentialKind::eckart3d: names.insert({"lambda", "b", "a"}); break;
        case PotentialKind::hulthen: names.insert({"lambda", "a"}); break;
        case PotentialKind::morse: names.insert({"A", "B", "a"}); break;
    }
    return names;
}

}  // namespace

PotentialSpec make_potential(PotentialKind kind, std::map<std::string, double> params) {
    PotentialSpec p;
    p.kind = kind;
    p.params = std::move(params);

    const auto allowed = allowed_params(kind);
    for (const auto& [name, value] : p.params) {
        (void)value;
        if (allowed.find(name) == allowed.end()) {
            throw UsageError("potential " + to_string(kind) + ": unknown parameter '" + name + "'");
        }
    }
    if (!(p.hbar() > 0.0) || !(p.mass() > 0.0)) {
        throw UsageError("hbar and m must be positive");
    }

    switch (kind) {
        case PotentialKind::ho1d:
            break;
        case PotentialKind::ho3d:
            require_integer_l(p);
            break;
        case PotentialKind::coulomb:
            require_positive(p, "Z");
            require_integer_l(p);
            break;
        case PotentialKind::cotangent:
            require_positive(p, "V0");
            require_positive(p, "a");
            break;
        case PotentialKind::pt_hole:
            require_positive(p, "V1");
            require_positive(p, "V2");
            require_positive(p, "a");
            break;
        case PotentialKind::modified_pt:
        case PotentialKind::hylleraas:
            require_positive(p, "V0");
            require_positive(p, "a");
            break;
        case PotentialKind::eckart1d: {
            require_positive(p, "a");
            const double A = p.param("A");
            const double B = p.param("B");
            if (!(B > std::abs(A))) {
                throw UsageError("potential eckart1d: requires B > |A|");
            }
            break;
        }
        case PotentialKind::eckart3d: {
            require_positive(p, "lambda");
            require_positive(p, "a");
            // b = 0 is admitted so the Hulthen degeneration stays expressible
            if (p.param("b") < 0.0) {
                throw UsageError("potential eckart3d: requires b >= 0");
            }
            break;
        }
        case PotentialKind::hulthen:
            require_positive(p, "lambda");
            require_positive(p, "a");
            break;
        case PotentialKind::morse:
            require_positive(p, "A");
            require_positive(p, "B");
            require_positive(p, "a");
            break;
    }
    return p;
}

namespace {

// V and dV/dx over a field T (double on the axis, complex off it).
template <typename T>
T value_impl(const PotentialSpec& p, T x) {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::sin;
    switch (p.kind) {
        case PotentialKind::ho1d:
        case PotentialKind::ho3d:
            return x * x / 2.0;
        case PotentialKind::coulomb:
            return -p.param("Z") / x;
        case PotentialKind::cotangent: {
            const double w = M_PI / p.param("a");
            T s = sin(w * x);
            T c = cos(w * x);
            return p.param("V0") * (c * c) / (s * s);
        }
        case PotentialKind::pt_hole: {
            const double w = M_PI / p.param("a");
            T s = sin(w * x);
            T c = cos(w * x);
            return p.param("V1") / (s * s) + p.param("V2") / (c * c);
        }
        case PotentialKind::modified_pt:
        case PotentialKind::hylleraas: {
            T c = cosh(x / p.param("a"));
            return -p.param("V0") / (c * c);
        }
        case PotentialKind::eckart1d: {
            T sp = 1.0 / (1.0 + exp(-x / p.param("a")));
            T sm = 1.0 / (1.0 + exp(x / p.param("a")));
            return -p.param("A") * sm - p.param("B") * sp * sm;
        }
        case PotentialKind::eckart3d: {
            T u = exp(-x / p.param("a"));
            T d = 1.0 - u;
            return -p.param("lambda") * u / d + p.param("b") * u / (d * d);
        }
        case PotentialKind::hulthen: {
            T u = exp(-x / p.param("a"));
            return -p.param("lambda") * u / (1.0 - u);
        }
        case PotentialKind::morse: {
            T u = exp(-x / p.param("a"));
            return u * (p.param("A") * u - p.param("B"));
        }
    }
    throw InternalError("unhandled potential kind");
}

template <typename T>
T derivative_impl(const PotentialSpec& p, T x) {
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::sin;
    using std::tanh;
    switch (p.kind) {
        case PotentialKind::ho1d:
        case PotentialKind::ho3d:
            return x;
        case PotentialKind::coulomb:
            return p.param("Z") / (x * x);
        case PotentialKind::cotangent: {
            const double w = M_PI / p.param("a");
            T s = sin(w * x);
            T c = cos(w * x);
            return -2.0 * p.param("V0") * w * c / (s * s * s);
        }
        case PotentialKind::pt_hole: {
            const double w = M_PI / p.param("a");
            T s = sin(w * x);
            T c = cos(w * x);
            return 2.0 * w * (-p.param("V1") * c / (s * s * s) + p.param("V2") * s / (c * c * c));
        }
        case PotentialKind::modified_pt:
        case PotentialKind::hylleraas: {
            const double a = p.param("a");
            T c = cosh(x / a);
            return (2.0 * p.param("V0") / a) * tanh(x / a) / (c * c);
        }
        case PotentialKind::eckart1d: {
            const double a = p.param("a");
            T sp = 1.0 / (1.0 + exp(-x / a));
            T sm = 1.0 / (1.0 + exp(x / a));
            return (sp * sm / a) * (p.param("A") + p.param("B") * (sp - sm));
        }
        case PotentialKind::eckart3d: {
            const double a = p.param("a");
            T u = exp(-x / a);
            T d = 1.0 - u;
            return (u / a) * (p.param("lambda") / (d * d) - p.param("b") * (1.0 + u) / (d * d * d));
        }
        case PotentialKind::hulthen: {
            const double a = p.param("a");
            T u = exp(-x / a);
            T d = 1.0 - u;
            return (u / a) * p.param("lambda") / (d * d);
        }
        case PotentialKind::morse: {
            const double a = p.param("a");
            T u = exp(-x / a);
            return (u / a) * (p.param("B") - 2.0 * p.param("A") * u);
        }
    }
    throw InternalError("unhandled potential kind");
}

void check_on_axis(const PotentialSpec& p, double x) {
    switch (domain_of(p.kind)) {
        case DomainKind::line:
            return;
        case DomainKind::half_line:
            if (x <= 0.0) throw DomainError("coordinate must be positive for " + to_string(p.kind));
            return;
        case DomainKind::box: {
            const double a = p.param("a");
            const double hi = p.kind == PotentialKind::pt_hole ? a / 2.0 : a;
            if (x <= 0.0 || x >= hi) {
                throw DomainError("coordinate outside the box for " + to_string(p.kind));
            }
            return;
        }
    }
}

}  // namespace

double potential_value(const PotentialSpec& p, double x) {
    check_on_axis(p, x);
    return value_impl<double>(p, x);
}

double potential_derivative(const PotentialSpec& p, double x) {
    check_on_axis(p, x);
    return derivative_impl<double>(p, x);
}

namespace {

double scale_lambda(const PotentialSpec& p) { return std::sqrt(2.0 * p.mass()) / p.hbar(); }

void check_off_pole(const PotentialSpec& p, std::complex<double> z) {
    if (domain_of(p.kind) == DomainKind::box) {
        throw UsageError("k_squared is not defined for the box potential " + to_string(p.kind));
    }
    const bool singular_origin = p.kind == PotentialKind::coulomb ||
                                 p.kind == PotentialKind::eckart3d ||
                                 p.kind == PotentialKind::hulthen ||
                                 (domain_of(p.kind) == DomainKind::half_line &&
                                  p.angular_momentum() > 0);
    if (singular_origin && std::abs(z) < 1e-12) {
        throw DomainError("k_squared evaluated at the potential pole z = 0");
    }
}

}  // namespace

std::complex<double> k_squared(const PotentialSpec& p, double E, std::complex<double> z) {
    check_off_pole(p, z);
    const double lam = scale_lambda(p);
    std::complex<double> out = E - value_impl<std::complex<double>>(p, z / lam);
    const int l = p.angular_momentum();
    if (l > 0) out -= static_cast<double>(l * (l + 1)) / (z * z);
    return out;
}

std::complex<double> k_squared_dz(const PotentialSpec& p, double E, std::complex<double> z) {
    (void)E;
    check_off_pole(p, z);
    const double lam = scale_lambda(p);
    std::complex<double> out = -derivative_impl<std::complex<double>>(p, z / lam) / lam;
    const int l = p.angular_momentum();
    if (l > 0) out += 2.0 * static_cast<double>(l * (l + 1)) / (z * z * z);
    return out;
}

}  // namespace qlmwkb
