#pragma once

// The group ring F2[u_1^{+-1}, ..., u_d^{+-1}], ideals generated by linear
// forms p_v = sum v_j u_j, and the algebraic mixing and entropy criteria.

#include "nonrigid/codes.hpp"
#include "nonrigid/gf2.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace nonrigid {

/// Exponent vector of a Laurent monomial u^m.
using Exponent = std::vector<std::int64_t>;

/// A Laurent polynomial over F2 in `arity` variables, stored as its set of
/// monomials (coefficient 1 present, 0 absent).
class LaurentPoly {
public:
    explicit LaurentPoly(std::size_t arity);

    static LaurentPoly one(std::size_t arity);
    static LaurentPoly monomial(Exponent m);
    /// u_{index+1}
    static LaurentPoly variable(std::size_t arity, std::size_t index);

    std::size_t arity() const noexcept { return arity_; }
    const std::set<Exponent>& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Adds the monomial u^m (coefficients are mod 2).
    void toggle(const Exponent& m);

    LaurentPoly& operator+=(const LaurentPoly& other);
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

    /// Terms in decreasing lexicographic order, e.g. "u1*u2^-1 + 1".
    std::string to_string() const;

    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

private:
    std::size_t arity_;
    std::set<Exponent> terms_;
};

LaurentPoly add(const LaurentPoly& p, const LaurentPoly& q);
LaurentPoly multiply(const LaurentPoly& p, const LaurentPoly& q);
/// u^m * p
LaurentPoly monomial_shift(const LaurentPoly& p, const Exponent& m);

/// p_v = sum over set coordinates j of u_j.
LaurentPoly p_from_vector(const F2Vector& v);
/// Exponent vector from an integer vector; entries must fit in 64 bits.
Exponent to_exponent(const IntVector& n);
/// u^n - 1, which over F2 is u^n + 1.
LaurentPoly unit_binomial(const IntVector& n);

/// A Laurent polynomial in one variable z over F2.
class UniLaurent {
public:
    UniLaurent() = default;
    static UniLaurent monomial(std::int64_t e);

    const std::set<std::int64_t>& exponents() const noexcept { return exponents_; }
    bool is_zero() const noexcept { return exponents_.empty(); }
    void toggle(std::int64_t e);

    friend UniLaurent operator+(const UniLaurent& a, const UniLaurent& b);
    friend UniLaurent operator*(const UniLaurent& a, const UniLaurent& b);
    std::string to_string() const;

    friend bool operator==(const UniLaurent&, const UniLaurent&) = default;

private:
    std::set<std::int64_t> exponents_;
};

/// The ideal generated by {p_v : v in generator_code}.
class LinearFormIdeal {
public:
    explicit LinearFormIdeal(BinaryCode generator_code) : code_(std::move(generator_code)) {}

    std::size_t arity() const noexcept { return code_.length(); }
    const BinaryCode& generator_code() const noexcept { return code_; }
    /// p_v for each row of the reduced basis of generator_code, in order.
    std::vector<LaurentPoly> generators() const;

private:
    BinaryCode code_;
};

/// I(X_C), generated by p_v for v in the dual of c.
LinearFormIdeal annihilator_ideal(const BinaryCode& c);

struct MembershipLimits {
    /// Inputs are expanded exactly only within these bounds.
    std::size_t max_terms = 64;
    std::int64_t max_total_degree = 64;
    /// Cap on reduction steps during expansion.
    std::size_t max_steps = 1u << 22;
};

/// Exact membership of q in the ideal. Members of the unit ideal are
/// recognised first; otherwise q is moved into the polynomial ring by one
/// monomial and reduced by the substitution u_pivot -> (rest of its
/// generator). Inputs beyond MembershipLimits are decided by comparing the
/// factorisations of their substituted terms into linear forms, which is
/// complete when at most two distinct images survive cancellation; other
/// large inputs raise ResourceLimitError.
bool ideal_contains(const LinearFormIdeal& ideal, const LaurentPoly& q, const MembershipLimits& limits = {});

/// Cofactors f with q = sum f_r * generators()[r], or nothing when q is not
/// in the ideal. Only available within MembershipLimits.
std::optional<std::vector<LaurentPoly>> ideal_cofactors(const LinearFormIdeal& ideal, const LaurentPoly& q,
                                                        const MembershipLimits& limits = {});

/// Expands sum f_r * generators()[r] and compares it with q.
bool verify_cofactors(const LinearFormIdeal& ideal, const LaurentPoly& q, const std::vector<LaurentPoly>& cofactors);

/// The ring homomorphism u_i -> z (w_i = 1), u_i -> 1 (w_i = 0).
UniLaurent phi_w(const LaurentPoly& q, const F2Vector& w);

/// A codeword w with B(n, w) != 0, so that phi_w(u^n - 1) != 0 while phi_w
/// kills I(X_C). Requires 1 in c, c integrally non-degenerate, n nonzero.
F2Vector mixing_certificate(const BinaryCode& c, const IntVector& n);

enum class EntropyVerdict { zero_entropy, positive_entropy };
std::string_view to_string(EntropyVerdict e);

/// Zero entropy exactly when c is a proper subspace.
EntropyVerdict entropy_verdict(const BinaryCode& c);

}  // namespace nonrigid
