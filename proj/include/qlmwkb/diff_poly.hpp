#pragma once

#include "qlmwkb/rational.hpp"

#include <complex>
#include <map>
#include <optional>
#include <vector>

namespace qlmwkb {

// Monomial key k^kpow * prod_j (k^(j))^dexp[j].  dexp holds j >= 1 with
// exponent >= 1 only; k itself is the signed kpow.
struct DiffKey {
    int kpow = 0;
    std::map<int, int> dexp;

    // degree counts every factor of k or a derivative of k once per power
    int degree() const;
    // weight counts total derivative order, sum of j * dexp[j]
    int weight() const;

    friend bool operator==(const DiffKey& a, const DiffKey& b) {
        return a.kpow == b.kpow && a.dexp == b.dexp;
    }
};

// Graded-lexicographic canonical order: by weight, then degree, then the
// derivative multi-index (lower j first, higher exponent first), then kpow.
struct DiffKeyLess {
    bool operator()(const DiffKey& a, const DiffKey& b) const;
};

// Jet of pointwise values (k, k', k'', ...) for numeric evaluation.
struct NumericJet {
    std::vector<std::complex<double>> values;  // values[j] = j-th derivative of k
};

struct Signature {
    std::optional<int> degree;  // nullopt when mixed
    std::optional<int> weight;

    friend bool operator==(const Signature&, const Signature&) = default;
};

class DiffPolynomial {
public:
    using TermMap = std::map<DiffKey, GaussRational, DiffKeyLess>;

    DiffPolynomial() = default;

    static DiffPolynomial monomial(GaussRational coeff, int kpow, std::map<int, int> dexp = {});

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    // Returns the coefficient of a key, zero when absent.
    GaussRational coefficient(const DiffKey& key) const;

    // Adds coeff * key, erasing the entry when the sum cancels.
    void accumulate(const DiffKey& key, const GaussRational& coeff);

    // True when the polynomial is a single term c * k^d with no derivatives.
    bool is_pure_k_monomial() const;

    Signature signature() const;

    // Formal derivative in r via the Leibniz rule, k^(j) -> k^(j+1).
    DiffPolynomial derivative() const;

    // Pointwise evaluation; throws MissingDerivativeError when the jet is too
    // short and SingularJetError when a negative k power meets k = 0.
    std::complex<double> evaluate(const NumericJet& jet) const;

    friend DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b);
    friend DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b);
    friend DiffPolynomial operator-(const DiffPolynomial& a);
    friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b);
    friend DiffPolynomial operator*(const GaussRational& c, const DiffPolynomial& a);
    friend bool operator==(const DiffPolynomial& a, const DiffPolynomial& b) {
        return a.terms_ == b.terms_;
    }

private:
    TermMap terms_;
};

}  // namespace qlmwkb
