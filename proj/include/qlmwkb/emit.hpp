#pragma once

#include "qlmwkb/series.hpp"

#include <json.hpp>

#include <string>

namespace qlmwkb {

enum class EmitFormat { text, json, latex };

EmitFormat emit_format_from_string(const std::string& name);  // throws UsageError

// Canonical text form, one monomial per term:  "(-297/128 i) k^-7 k1^4".
// Terms are joined with " + "; signs live inside the coefficient.
std::string to_text(const DiffPolynomial& p);
// One "order <m>: <poly>" line per order, LF separated.
std::string to_text(const GradedSeries& s);

DiffPolynomial parse_polynomial(const std::string& text);
// Accepts the to_text() form plus '#' comment lines and an optional
// "order_cap <n>" header line.
GradedSeries parse_series(const std::string& text);

// Structured JSON: series is {"order_cap": n, "orders": [[term...], ...]},
// each term {"kpow": p, "dexp": {"j": e}, "re": [num, den], "im": [num, den]}.
// Integers that fit 64 bits are emitted as JSON numbers, larger ones as
// decimal strings; parsing accepts both, so round-trips are bit exact.
nlohmann::json to_json(const DiffPolynomial& p);
nlohmann::json to_json(const GradedSeries& s);
DiffPolynomial polynomial_from_json(const nlohmann::json& j);
GradedSeries series_from_json(const nlohmann::json& j);

// Display form grouped per order with a factored rational prefactor, e.g.
// g^2 -> \frac{i}{8 k^{3}}\left(3 {k'}^{2} - 2 k k''\right).
std::string to_latex(const GradedSeries& s);
std::string to_latex(const DiffPolynomial& p);

}  // namespace qlmwkb
