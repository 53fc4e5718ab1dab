#include "nonrigid/laurent.hpp"

#include "nonrigid/error.hpp"

#include <limits>

namespace nonrigid {

namespace {

void require_arity(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw DimensionMismatch(std::string(op) + ": arities " + std::to_string(a) + " and " + std::to_string(b) +
                                " differ");
    }
}

Exponent add_exponents(const Exponent& a, const Exponent& b) {
    Exponent out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

}  // namespace

LaurentPoly::LaurentPoly(std::size_t arity) : arity_(arity) {
    if (arity == 0) throw PreconditionError("LaurentPoly: arity must be at least 1");
}

LaurentPoly LaurentPoly::one(std::size_t arity) {
    LaurentPoly p(arity);
    p.terms_.insert(Exponent(arity, 0));
    return p;
}

LaurentPoly LaurentPoly::monomial(Exponent m) {
    LaurentPoly p(m.size());
    p.terms_.insert(std::move(m));
    return p;
}

LaurentPoly LaurentPoly::variable(std::size_t arity, std::size_t index) {
    Exponent m(arity, 0);
    m.at(index) = 1;
    return monomial(std::move(m));
}

void LaurentPoly::toggle(const Exponent& m) {
    require_arity(arity_, m.size(), "toggle");
    if (auto it = terms_.find(m); it != terms_.end()) {
        terms_.erase(it);
    } else {
        terms_.insert(m);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& other) {
    require_arity(arity_, other.arity_, "add");
    for (const auto& m : other.terms_) toggle(m);
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    require_arity(a.arity_, b.arity_, "multiply");
    LaurentPoly out(a.arity_);
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) out.toggle(add_exponents(x, y));
    }
    return out;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!s.empty()) s += " + ";
        std::string mono;
        for (std::size_t j = 0; j < arity_; ++j) {
            const auto e = (*it)[j];
            if (e == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += 'u' + std::to_string(j + 1);
            if (e != 1) mono += '^' + std::to_string(e);
        }
        s += mono.empty() ? "1" : mono;
    }
    return s;
}

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q) { return p + q; }

LaurentPoly multiply(const LaurentPoly& p, const LaurentPoly& q) { return p * q; }

LaurentPoly monomial_shift(const LaurentPoly& p, const Exponent& m) {
    require_arity(p.arity(), m.size(), "monomial_shift");
    LaurentPoly out(p.arity());
    for (const auto& t : p.terms()) out.toggle(add_exponents(t, m));
    return out;
}

LaurentPoly p_from_vector(const F2Vector& v) {
    LaurentPoly p(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v.get(j)) p += LaurentPoly::variable(v.size(), j);
    }
    return p;
}

Exponent to_exponent(const IntVector& n) {
    Exponent m(n.size());
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] > std::numeric_limits<std::int64_t>::max() || n[i] < std::numeric_limits<std::int64_t>::min()) {
            throw ResourceLimitError("exponent " + n[i].str() + " does not fit in 64 bits");
        }
        m[i] = static_cast<std::int64_t>(n[i]);
    }
    return m;
}

LaurentPoly unit_binomial(const IntVector& n) {
    auto p = LaurentPoly::monomial(to_exponent(n));
    p += LaurentPoly::one(n.size());
    return p;
}

// ---------------------------------------------------------------- UniLaurent

UniLaurent UniLaurent::monomial(std::int64_t e) {
    UniLaurent p;
    p.exponents_.insert(e);
    return p;
}

void UniLaurent::toggle(std::int64_t e) {
    if (auto it = exponents_.find(e); it != exponents_.end()) {
        exponents_.erase(it);
    } else {
        exponents_.insert(e);
    }
}

UniLaurent operator+(const UniLaurent& a, const UniLaurent& b) {
    UniLaurent out = a;
    for (auto e : b.exponents_) out.toggle(e);
    return out;
}

UniLaurent operator*(const UniLaurent& a, const UniLaurent& b) {
    UniLaurent out;
    for (auto x : a.exponents_) {
        for (auto y : b.exponents_) out.toggle(x + y);
    }
    return out;
}

std::string UniLaurent::to_string() const {
    if (exponents_.empty()) return "0";
    std::string s;
    for (auto it = exponents_.rbegin(); it != exponents_.rend(); ++it) {
        if (!s.empty()) s += " + ";
        if (*it == 0) {
            s += '1';
        } else if (*it == 1) {
            s += 'z';
        } else {
            s += "z^" + std::to_string(*it);
        }
    }
    return s;
}

UniLaurent phi_w(const LaurentPoly& q, const F2Vector& w) {
    require_arity(q.arity(), w.size(), "phi_w");
    UniLaurent out;
    for (const auto& m : q.terms()) {
        std::int64_t e = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (w.get(i)) e += m[i];
        }
        out.toggle(e);
    }
    return out;
}

F2Vector mixing_certificate(const BinaryCode& c, const IntVector& n) {
    if (n.size() != c.length()) throw DimensionMismatch("mixing_certificate: n has the wrong length");
    if (n.is_zero()) throw PreconditionError("mixing_certificate: n must be nonzero");
    if (!contains_all_ones(c)) throw PreconditionError("mixing_certificate: the code must contain the all-ones word");
    auto cert = is_integrally_nondegenerate(c);
    if (!cert.verdict) {
        throw DegenerateCodeError("mixing_certificate: code is integrally degenerate", *cert.kernel_witness);
    }
    return nondegeneracy_witness(c, n);
}

std::string_view to_string(EntropyVerdict e) {
    return e == EntropyVerdict::zero_entropy ? "zero-entropy" : "positive-entropy";
}

EntropyVerdict entropy_verdict(const BinaryCode& c) {
    return c.is_proper() ? EntropyVerdict::zero_entropy : EntropyVerdict::positive_entropy;
}

}  // namespace nonrigid
