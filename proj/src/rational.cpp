#include "qlmwkb/rational.hpp"

#include "qlmwkb/errors.hpp"

#include <cctype>

namespace qlmwkb {

namespace {

bool valid_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string rational_to_string(const Rational& q) {
    std::string out = numerator(q).str();
    if (denominator(q) != 1) {
        out += "/";
        out += denominator(q).str();
    }
    return out;
}

Rational parse_rational(const std::string& text) {
    const std::string s = trimmed(text);
    const std::size_t slash = s.find('/');
    if (slash == std::string::npos) {
        if (!valid_integer_token(s)) throw UsageError("malformed rational: '" + text + "'");
        return Rational(BigInt(s));
    }
    const std::string num = trimmed(s.substr(0, slash));
    const std::string den = trimmed(s.substr(slash + 1));
    if (!valid_integer_token(num) || !valid_integer_token(den))
        throw UsageError("malformed rational: '" + text + "'");
    BigInt d(den);
    if (d == 0) throw UsageError("zero denominator in rational: '" + text + "'");
    return Rational(BigInt(num), d);
}

GaussRational GaussRational::inverse() const {
    if (is_zero()) throw UsageError("inverse of zero Gaussian rational");
    const Rational n = re * re + im * im;
    return {re / n, -im / n};
}

std::string gauss_to_string(const GaussRational& c) {
    if (c.is_zero()) return "0";
    if (c.is_real()) return rational_to_string(c.re);
    if (c.is_imaginary()) return rational_to_string(c.im) + " i";
    std::string out = rational_to_string(c.re);
    if (c.im > 0) out += "+";
    out += rational_to_string(c.im) + " i";
    return out;
}

GaussRational parse_gauss(const std::string& text) {
    std::string s = trimmed(text);
    if (s.empty()) throw UsageError("empty coefficient");
    bool has_i = false;
    if (s.back() == 'i') {
        has_i = true;
        s = trimmed(s.substr(0, s.size() - 1));
        if (s.empty() || s == "+") return GaussRational::imag(1);
        if (s == "-") return GaussRational::imag(-1);
    }
    if (!has_i) return GaussRational::real(parse_rational(s));
    // find a sign splitting re and im; signs inside tokens occur only at index 0
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] == '+' || s[i] == '-') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return GaussRational::imag(parse_rational(s));
    const std::string re_tok = s.substr(0, split);
    std::string im_tok = s.substr(split);
    if (im_tok[0] == '+') im_tok = im_tok.substr(1);
    return {parse_rational(re_tok), parse_rational(im_tok)};
}

}  // namespace qlmwkb
