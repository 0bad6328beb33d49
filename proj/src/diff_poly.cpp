#include "qlmwkb/diff_poly.hpp"

#include "qlmwkb/errors.hpp"

#include <cmath>
#include <string>

namespace qlmwkb {

int DiffKey::degree() const {
    int d = kpow;
    for (const auto& [j, e] : dexp) d += e;
    return d;
}

int DiffKey::weight() const {
    int w = 0;
    for (const auto& [j, e] : dexp) w += j * e;
    return w;
}

bool DiffKeyLess::operator()(const DiffKey& a, const DiffKey& b) const {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    // lex on the derivative multi-index, lower j first, higher exponent first
    auto ia = a.dexp.begin(), ib = b.dexp.begin();
    for (; ia != a.dexp.end() && ib != b.dexp.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second > ib->second;
    }
    if (a.dexp.size() != b.dexp.size()) return a.dexp.size() > b.dexp.size();
    return a.kpow < b.kpow;
}

DiffPolynomial DiffPolynomial::monomial(GaussRational coeff, int kpow, std::map<int, int> dexp) {
    DiffPolynomial p;
    if (coeff.is_zero()) return p;
    for (const auto& [j, e] : dexp) {
        if (j < 1 || e < 1) throw UsageError("derivative exponent map must hold j >= 1, e >= 1");
    }
    p.terms_.emplace(DiffKey{kpow, std::move(dexp)}, std::move(coeff));
    return p;
}

GaussRational DiffPolynomial::coefficient(const DiffKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? GaussRational{} : it->second;
}

void DiffPolynomial::accumulate(const DiffKey& key, const GaussRational& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
        it->second = it->second + coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

bool DiffPolynomial::is_pure_k_monomial() const {
    return terms_.size() == 1 && terms_.begin()->first.dexp.empty();
}

Signature DiffPolynomial::signature() const {
    Signature sig;
    bool first = true;
    for (const auto& [key, coeff] : terms_) {
        if (first) {
            sig.degree = key.degree();
            sig.weight = key.weight();
            first = false;
            continue;
        }
        if (sig.degree && *sig.degree != key.degree()) sig.degree.reset();
        if (sig.weight && *sig.weight != key.weight()) sig.weight.reset();
    }
    return sig;
}

DiffPolynomial DiffPolynomial::derivative() const {
    DiffPolynomial out;
    for (const auto& [key, coeff] : terms_) {
        // d/dr of the k^kpow factor
        if (key.kpow != 0) {
            DiffKey t = key;
            t.kpow -= 1;
            t.dexp[1] += 1;
            out.accumulate(t, GaussRational::real(key.kpow) * coeff);
        }
        // d/dr of each k^(j) factor
        for (const auto& [j, e] : key.dexp) {
            DiffKey t = key;
            if (--t.dexp[j] == 0) t.dexp.erase(j);
            t.dexp[j + 1] += 1;
            out.accumulate(t, GaussRational::real(e) * coeff);
        }
    }
    return out;
}

std::complex<double> DiffPolynomial::evaluate(const NumericJet& jet) const {
    if (jet.values.empty()) throw MissingDerivativeError("jet holds no values");
    std::complex<double> sum = 0.0;
    for (const auto& [key, coeff] : terms_) {
        std::complex<double> term = coeff.to_complex();
        const std::complex<double> k0 = jet.values[0];
        if (key.kpow < 0 && k0 == std::complex<double>(0.0, 0.0))
            throw SingularJetError("negative power of k evaluated at k = 0");
        if (key.kpow != 0) term *= std::pow(k0, key.kpow);
        for (const auto& [j, e] : key.dexp) {
            if (static_cast<std::size_t>(j) >= jet.values.size())
                throw MissingDerivativeError("jet lacks derivative of order " + std::to_string(j));
            term *= std::pow(jet.values[static_cast<std::size_t>(j)], e);
        }
        sum += term;
    }
    return sum;
}

DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) {
    DiffPolynomial out = a;
    for (const auto& [key, coeff] : b.terms_) out.accumulate(key, coeff);
    return out;
}

DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b) {
    DiffPolynomial out = a;
    for (const auto& [key, coeff] : b.terms_) out.accumulate(key, -coeff);
    return out;
}

DiffPolynomial operator-(const DiffPolynomial& a) {
    DiffPolynomial out;
    for (const auto& [key, coeff] : a.terms_) out.accumulate(key, -coeff);
    return out;
}

DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
    DiffPolynomial out;
    for (const auto& [ka, ca] : a.terms_) {
        for (const auto& [kb, cb] : b.terms_) {
            DiffKey key{ka.kpow + kb.kpow, ka.dexp};
            for (const auto& [j, e] : kb.dexp) key.dexp[j] += e;
            out.accumulate(key, ca * cb);
        }
    }
    return out;
}

DiffPolynomial operator*(const GaussRational& c, const DiffPolynomial& a) {
    DiffPolynomial out;
    if (c.is_zero()) return out;
    for (const auto& [key, coeff] : a.terms_) out.accumulate(key, c * coeff);
    return out;
}

}  // namespace qlmwkb
