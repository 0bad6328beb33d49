#include "qlmwkb/emit.hpp"

#include "qlmwkb/errors.hpp"

#include <limits>
#include <sstream>
#include <vector>

namespace qlmwkb {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string monomial_text(const DiffKey& key) {
    std::string out;
    auto push = [&out](const std::string& tok) {
        if (!out.empty()) out += " ";
        out += tok;
    };
    if (key.kpow == 1) {
        push("k");
    } else if (key.kpow != 0) {
        push("k^" + std::to_string(key.kpow));
    }
    for (const auto& [j, e] : key.dexp) {
        std::string tok = "k" + std::to_string(j);
        if (e != 1) tok += "^" + std::to_string(e);
        push(tok);
    }
    return out;
}

}  // namespace

EmitFormat emit_format_from_string(const std::string& name) {
    if (name == "text") return EmitFormat::text;
    if (name == "json") return EmitFormat::json;
    if (name == "latex") return EmitFormat::latex;
    throw UsageError("unknown format '" + name + "', expected text|json|latex");
}

std::string to_text(const DiffPolynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [key, coeff] : p.terms()) {
        if (!out.empty()) out += " + ";
        out += "(" + gauss_to_string(coeff) + ")";
        const std::string mono = monomial_text(key);
        if (!mono.empty()) out += " " + mono;
    }
    return out;
}

std::string to_text(const GradedSeries& s) {
    std::string out = "order_cap " + std::to_string(s.order_cap()) + "\n";
    for (int m = 0; m < s.order_cap(); ++m)
        out += "order " + std::to_string(m) + ": " + to_text(s.at(m)) + "\n";
    return out;
}

namespace {

int parse_int_token(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw UsageError("malformed " + what + ": '" + s + "'");
    }
}

void parse_factor(const std::string& tok, int& kpow, std::map<int, int>& dexp) {
    if (tok == "k") {
        kpow += 1;
        return;
    }
    if (tok.rfind("k^", 0) == 0) {
        kpow += parse_int_token(tok.substr(2), "k power");
        return;
    }
    if (tok.size() > 1 && tok[0] == 'k' && std::isdigit(static_cast<unsigned char>(tok[1]))) {
        const std::size_t caret = tok.find('^');
        const int j = parse_int_token(tok.substr(1, caret == std::string::npos ? std::string::npos
                                                                               : caret - 1),
                                      "derivative index");
        const int e = caret == std::string::npos
                          ? 1
                          : parse_int_token(tok.substr(caret + 1), "derivative exponent");
        if (j < 1 || e < 1) throw UsageError("derivative factor needs j >= 1, e >= 1: '" + tok + "'");
        dexp[j] += e;
        return;
    }
    throw UsageError("unrecognized monomial factor: '" + tok + "'");
}

// splits on " + " at parenthesis depth zero
std::vector<std::string> split_terms(const std::string& text) {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (depth == 0 && text.compare(i, 3, " + ") == 0) {
            out.push_back(text.substr(start, i - start));
            start = i + 3;
            i += 2;
        }
    }
    out.push_back(text.substr(start));
    return out;
}

}  // namespace

DiffPolynomial parse_polynomial(const std::string& text) {
    const std::string body = trimmed(text);
    DiffPolynomial out;
    if (body.empty() || body == "0") return out;
    for (const std::string& raw : split_terms(body)) {
        const std::string term = trimmed(raw);
        if (term.empty() || term[0] != '(')
            throw UsageError("term must start with a parenthesized coefficient: '" + term + "'");
        const std::size_t close = term.find(')');
        if (close == std::string::npos) throw UsageError("unterminated coefficient: '" + term + "'");
        const GaussRational coeff = parse_gauss(term.substr(1, close - 1));
        int kpow = 0;
        std::map<int, int> dexp;
        std::istringstream rest(term.substr(close + 1));
        std::string tok;
        while (rest >> tok) parse_factor(tok, kpow, dexp);
        out.accumulate(DiffKey{kpow, std::move(dexp)}, coeff);
    }
    return out;
}

GradedSeries parse_series(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int cap = -1;
    std::map<int, DiffPolynomial> orders;
    while (std::getline(in, line)) {
        const std::string s = trimmed(line);
        if (s.empty() || s[0] == '#') continue;
        if (s.rfind("order_cap", 0) == 0) {
            if (cap != -1 || !orders.empty())
                throw UsageError("order_cap header must appear once, before any order line");
            cap = parse_int_token(trimmed(s.substr(9)), "order_cap");
            if (cap < 1) throw UsageError("order_cap must be at least 1");
            continue;
        }
        if (s.rfind("order", 0) != 0) throw UsageError("unrecognized series line: '" + s + "'");
        const std::size_t colon = s.find(':');
        if (colon == std::string::npos) throw UsageError("order line lacks ':': '" + s + "'");
        const int m = parse_int_token(trimmed(s.substr(5, colon - 5)), "order index");
        if (m < 0) throw UsageError("negative series order");
        if (!orders.emplace(m, parse_polynomial(s.substr(colon + 1))).second)
            throw UsageError("duplicate order " + std::to_string(m));
    }
    if (orders.empty() && cap == -1) throw UsageError("series text holds no orders");
    if (cap == -1) cap = orders.rbegin()->first + 1;
    GradedSeries out(cap);
    for (auto& [m, poly] : orders) {
        if (m >= cap)
            throw UsageError("order " + std::to_string(m) + " outside declared cap " +
                             std::to_string(cap));
        out.at(m) = std::move(poly);
    }
    return out;
}

namespace {

nlohmann::json integer_to_json(const BigInt& v) {
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

BigInt integer_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw UsageError("integer field must be a JSON integer or decimal string");
}

nlohmann::json rational_to_json(const Rational& q) {
    return nlohmann::json::array({integer_to_json(numerator(q)), integer_to_json(denominator(q))});
}

Rational rational_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw UsageError("rational field must be [num, den]");
    const BigInt den = integer_from_json(j[1]);
    if (den == 0) throw UsageError("zero denominator");
    return Rational(integer_from_json(j[0]), den);
}

}  // namespace

nlohmann::json to_json(const DiffPolynomial& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [key, coeff] : p.terms()) {
        nlohmann::json t;
        t["kpow"] = key.kpow;
        t["dexp"] = nlohmann::json::object();
        for (const auto& [j, e] : key.dexp) t["dexp"][std::to_string(j)] = e;
        t["re"] = rational_to_json(coeff.re);
        t["im"] = rational_to_json(coeff.im);
        terms.push_back(std::move(t));
    }
    return terms;
}

nlohmann::json to_json(const GradedSeries& s) {
    nlohmann::json out;
    out["order_cap"] = s.order_cap();
    out["orders"] = nlohmann::json::array();
    for (int m = 0; m < s.order_cap(); ++m) out["orders"].push_back(to_json(s.at(m)));
    return out;
}

DiffPolynomial polynomial_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw UsageError("polynomial JSON must be an array of terms");
    DiffPolynomial out;
    for (const auto& t : j) {
        DiffKey key;
        key.kpow = t.at("kpow").get<int>();
        for (const auto& [js, e] : t.at("dexp").items()) {
            const int jj = parse_int_token(js, "derivative index");
            const int ee = e.get<int>();
            if (jj < 1 || ee < 1) throw UsageError("derivative entry needs j >= 1, e >= 1");
            key.dexp[jj] = ee;
        }
        out.accumulate(key, {rational_from_json(t.at("re")), rational_from_json(t.at("im"))});
    }
    return out;
}

GradedSeries series_from_json(const nlohmann::json& j) {
    const int cap = j.at("order_cap").get<int>();
    if (cap < 1) throw UsageError("order_cap must be at least 1");
    const auto& orders = j.at("orders");
    if (!orders.is_array() || static_cast<int>(orders.size()) != cap)
        throw UsageError("orders array length must equal order_cap");
    GradedSeries out(cap);
    for (int m = 0; m < cap; ++m) out.at(m) = polynomial_from_json(orders[m]);
    return out;
}

namespace {

std::string latex_deriv(int j) {
    if (j <= 3) return "k" + std::string(static_cast<std::size_t>(j), '\'');
    return "k^{(" + std::to_string(j) + ")}";
}

std::string latex_monomial(int kq, const std::map<int, int>& dexp) {
    std::string out;
    auto push = [&out](const std::string& tok) {
        if (!out.empty()) out += " ";
        out += tok;
    };
    if (kq == 1) push("k");
    else if (kq != 0) push("k^{" + std::to_string(kq) + "}");
    for (const auto& [j, e] : dexp) {
        std::string tok = latex_deriv(j);
        if (e != 1) tok = "{" + tok + "}^{" + std::to_string(e) + "}";
        push(tok);
    }
    return out;
}

// generic one-term-at-a-time fallback for mixed-coefficient polynomials
std::string latex_plain(const DiffPolynomial& p) {
    std::string out;
    for (const auto& [key, coeff] : p.terms()) {
        if (!out.empty()) out += " + ";
        out += "\\left(" + gauss_to_string(coeff) + "\\right)";
        const std::string mono = latex_monomial(key.kpow, key.dexp);
        if (!mono.empty()) out += " " + mono;
    }
    return out;
}

}  // namespace

std::string to_latex(const DiffPolynomial& p) {
    if (p.is_zero()) return "0";

    bool all_real = true, all_imag = true;
    for (const auto& [key, coeff] : p.terms()) {
        if (!coeff.is_real()) all_real = false;
        if (!coeff.is_imaginary()) all_imag = false;
    }
    if (!all_real && !all_imag) return latex_plain(p);

    auto part = [&](const GaussRational& c) { return all_imag ? c.im : c.re; };

    // content = gcd(numerators) / lcm(denominators), signed like the first term
    BigInt num_gcd = 0, den_lcm = 1;
    int kmin = 0;
    bool first = true;
    for (const auto& [key, coeff] : p.terms()) {
        const Rational q = part(coeff);
        num_gcd = gcd(num_gcd, BigInt(abs(numerator(q))));
        den_lcm = lcm(den_lcm, BigInt(denominator(q)));
        kmin = first ? key.kpow : std::min(kmin, key.kpow);
        first = false;
    }
    Rational content(num_gcd, den_lcm);
    if (part(p.terms().begin()->second) < 0) content = -content;

    std::vector<std::pair<BigInt, std::string>> bracket;
    for (const auto& [key, coeff] : p.terms()) {
        const Rational n = part(coeff) / content;
        bracket.emplace_back(numerator(n), latex_monomial(key.kpow - kmin, key.dexp));
    }

    std::string body;
    for (const auto& [n, mono] : bracket) {
        const BigInt mag = abs(n);
        if (body.empty()) {
            if (n < 0) body += "-";
        } else {
            body += n < 0 ? " - " : " + ";
        }
        if (mag != 1 || mono.empty()) body += mag.str();
        if (!mono.empty()) {
            if (mag != 1) body += " ";
            body += mono;
        }
    }

    const bool negative = content < 0;
    const BigInt pref_num = abs(numerator(content));
    const BigInt pref_den = denominator(content);

    std::string numerator_part;
    if (pref_num != 1) numerator_part = pref_num.str();
    if (all_imag) numerator_part += (numerator_part.empty() ? "i" : " i");
    const bool single = bracket.size() == 1 && bracket[0].first == 1;
    const bool merge_single = single && !bracket[0].second.empty();
    const bool drop_bracket = single && bracket[0].second.empty();
    if (merge_single)
        numerator_part += (numerator_part.empty() ? bracket[0].second : " " + bracket[0].second);

    std::string denominator_part;
    if (pref_den != 1) denominator_part = pref_den.str();
    if (kmin < 0) {
        std::string kf = kmin == -1 ? "k" : "k^{" + std::to_string(-kmin) + "}";
        denominator_part += (denominator_part.empty() ? kf : " " + kf);
    }

    std::string out;
    if (negative) out += "-";
    if (denominator_part.empty()) {
        if (!numerator_part.empty()) out += numerator_part;
    } else {
        if (numerator_part.empty()) numerator_part = "1";
        out += "\\frac{" + numerator_part + "}{" + denominator_part + "}";
    }
    if (kmin > 0) {
        std::string kf = kmin == 1 ? "k" : "k^{" + std::to_string(kmin) + "}";
        out += out.empty() || out == "-" ? kf : " " + kf;
    }
    if (!merge_single && !drop_bracket) {
        std::string sep = out.empty() || out == "-" ? "" : " ";
        out += sep + "\\left( " + body + " \\right)";
    }
    if (out.empty() || out == "-") out += "1";
    return out;
}

std::string to_latex(const GradedSeries& s) {
    std::string out;
    for (int m = 0; m < s.order_cap(); ++m) {
        if (s.at(m).is_zero()) continue;
        out += "g^{" + std::to_string(m) + "}: " + to_latex(s.at(m)) + "\n";
    }
    if (out.empty()) out = "0\n";
    return out;
}

}  // namespace qlmwkb
