#pragma once

#include <complex>
#include <map>
#include <string>

namespace qlmwkb {

enum class PotentialKind {
    ho1d,
    ho3d,
    coulomb,
    cotangent,
    pt_hole,
    modified_pt,
    hylleraas,
    eckart1d,
    eckart3d,
    hulthen,
    morse,
};

PotentialKind potential_kind_from_string(const std::string& name);  // throws UsageError
std::string to_string(PotentialKind kind);

// Domain of the physical coordinate: the whole line, the half line r > 0, or
// a finite box (cotangent and the Poschl-Teller hole).
enum class DomainKind { line, half_line, box };
DomainKind domain_of(PotentialKind kind);

// Validated parameter set.  Kind-specific entries (V0, V1, V2, A, B, b,
// lambda, Z, a, l) are required as applicable; hbar and m default to 1.
struct PotentialSpec {
    PotentialKind kind = PotentialKind::ho1d;
    std::map<std::string, double> params;

    double param(const std::string& name) const;  // throws UsageError when absent
    double hbar() const;
    double mass() const;
    int angular_momentum() const;  // l, 0 when absent
    // 2 m a^2 / hbar^2, the dimensionless depth scale of the width-a potentials
    double beta() const;
};

PotentialSpec make_potential(PotentialKind kind, std::map<std::string, double> params = {});

// V in the physical coordinate (x on the line, r on the half line).
double potential_value(const PotentialSpec& p, double x);
double potential_derivative(const PotentialSpec& p, double x);

// k^2(z) = E - V(z/lambda) - l(l+1)/z^2 on the scaled coordinate z = lambda x,
// lambda = sqrt(2m)/hbar, where the Schrodinger equation reads
// chi'' + k^2 chi = 0.  Box potentials are not supported here.
std::complex<double> k_squared(const PotentialSpec& p, double E, std::complex<double> z);
std::complex<double> k_squared_dz(const PotentialSpec& p, double E, std::complex<double> z);

}  // namespace qlmwkb
