#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

namespace qlmwkb {

// Exact rational scalar. cpp_rational keeps the reduced-form invariant for us:
// gcd(num, den) = 1, den > 0, zero is 0/1.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string rational_to_string(const Rational& q);   // "3/8", "-2", "0"
Rational parse_rational(const std::string& text);     // inverse of the above

// Gaussian rational a + b*i with exact components.
struct GaussRational {
    Rational re{0};
    Rational im{0};

    GaussRational() = default;
    GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    static GaussRational real(Rational r) { return {std::move(r), Rational(0)}; }
    static GaussRational imag(Rational i) { return {Rational(0), std::move(i)}; }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    bool is_imaginary() const { return re == 0; }

    GaussRational conj() const { return {re, -im}; }
    GaussRational inverse() const;  // throws UsageError on zero

    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    friend GaussRational operator+(const GaussRational& a, const GaussRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussRational operator-(const GaussRational& a, const GaussRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
    friend GaussRational operator*(const GaussRational& a, const GaussRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRational operator*(const Rational& s, const GaussRational& a) {
        return {s * a.re, s * a.im};
    }
    friend bool operator==(const GaussRational& a, const GaussRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

// Canonical coefficient text: "3/8", "-1/2 i", "1/2+3/4 i", "1/2-3/4 i", "0".
std::string gauss_to_string(const GaussRational& c);
GaussRational parse_gauss(const std::string& text);

}  // namespace qlmwkb
