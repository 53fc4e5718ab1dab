// Membership in ideals generated by linear forms.
//
// With the generator code in reduced echelon form, row r reads
// u_{pivot(r)} + L_r where L_r only involves free variables. Modulo the
// ideal, u_{pivot(r)} may therefore be replaced by L_r; the map sigma that
// does this is the quotient map onto F2[free variables], so a polynomial
// lies in the ideal iff its sigma-image vanishes.

#include "nonrigid/error.hpp"
#include "nonrigid/laurent.hpp"

#include <algorithm>
#include <limits>
#include <map>

namespace nonrigid {

namespace {

struct Substitution {
    std::vector<std::size_t> pivots;      // pivot variable of each generator row
    std::vector<F2Vector> tails;          // L_r as a set of free variables
    std::vector<std::ptrdiff_t> row_of;   // row index for pivot variables, -1 otherwise
};

Substitution make_substitution(const LinearFormIdeal& ideal) {
    const auto& code = ideal.generator_code();
    Substitution s;
    s.row_of.assign(ideal.arity(), -1);
    for (std::size_t r = 0; r < code.dim(); ++r) {
        const auto p = code.pivot_columns()[r];
        F2Vector tail = code.basis().row(r);
        tail.flip(p);
        s.pivots.push_back(p);
        s.tails.push_back(std::move(tail));
        s.row_of[p] = static_cast<std::ptrdiff_t>(r);
    }
    return s;
}

// A generator set containing some u_j spans the unit ideal.
std::optional<std::size_t> unit_variable(const LinearFormIdeal& ideal) {
    for (std::size_t j = 0; j < ideal.arity(); ++j) {
        if (ideal.generator_code().contains(F2Vector::unit(ideal.arity(), j))) return j;
    }
    return std::nullopt;
}

// -min exponent per variable: multiplying by u^shift lands in the polynomial ring.
Exponent polynomial_shift(const LaurentPoly& q) {
    Exponent shift(q.arity(), 0);
    bool first = true;
    for (const auto& m : q.terms()) {
        for (std::size_t j = 0; j < m.size(); ++j) shift[j] = first ? -m[j] : std::max(shift[j], -m[j]);
        first = false;
    }
    return shift;
}

std::int64_t total_degree(const LaurentPoly& q) {
    std::int64_t deg = 0;
    for (const auto& m : q.terms()) {
        std::int64_t t = 0;
        for (auto e : m) t += e;
        deg = std::max(deg, t);
    }
    return deg;
}

bool within_limits(const LaurentPoly& shifted, const MembershipLimits& limits) {
    return shifted.size() <= limits.max_terms && total_degree(shifted) <= limits.max_total_degree;
}

struct Reduction {
    std::vector<LaurentPoly> cofactors;
    LaurentPoly remainder;
};

// Division by the generators u_p + L_r: every monomial containing a pivot
// variable is rewritten m = (m/u_p)(u_p + L_r) + (m/u_p) L_r until only free
// variables remain. Each step lowers the pivot degree of the rewritten terms.
Reduction reduce(const Substitution& s, const LaurentPoly& q, const MembershipLimits& limits) {
    const std::size_t d = q.arity();
    std::vector<LaurentPoly> cofactors(s.pivots.size(), LaurentPoly(d));
    std::set<Exponent> pending;
    LaurentPoly remainder(d);

    auto pivot_row = [&](const Exponent& m) -> std::ptrdiff_t {
        for (std::size_t j = 0; j < d; ++j) {
            if (m[j] > 0 && s.row_of[j] >= 0) return s.row_of[j];
        }
        return -1;
    };
    auto toggle = [&](const Exponent& m) {
        if (pivot_row(m) < 0) {
            remainder.toggle(m);
        } else if (auto it = pending.find(m); it != pending.end()) {
            pending.erase(it);
        } else {
            pending.insert(m);
        }
    };

    for (const auto& m : q.terms()) toggle(m);
    std::size_t steps = 0;
    while (!pending.empty()) {
        if (++steps > limits.max_steps) {
            throw ResourceLimitError("ideal membership: expansion exceeded " + std::to_string(limits.max_steps) +
                                     " reduction steps");
        }
        // largest first keeps the rewrite order deterministic
        const Exponent m = *pending.rbegin();
        pending.erase(std::prev(pending.end()));
        const auto r = static_cast<std::size_t>(pivot_row(m));
        Exponent quotient = m;
        --quotient[s.pivots[r]];
        cofactors[r].toggle(quotient);
        for (std::size_t j = 0; j < d; ++j) {
            if (!s.tails[r].get(j)) continue;
            Exponent t = quotient;
            ++t[j];
            toggle(t);
        }
    }
    return {std::move(cofactors), std::move(remainder)};
}

// Image of a monomial under the substitution, as a product of linear forms
// in the free variables: form -> exponent.
using Factorisation = std::map<F2Vector, std::int64_t>;

Factorisation factorise(const Substitution& s, const Exponent& m) {
    const std::size_t d = m.size();
    Factorisation f;
    for (std::size_t j = 0; j < d; ++j) {
        if (m[j] == 0) continue;
        const F2Vector form = s.row_of[j] >= 0 ? s.tails[static_cast<std::size_t>(s.row_of[j])] : F2Vector::unit(d, j);
        f[form] += m[j];
    }
    return f;
}

// Linear forms in the free variables are irreducible and pairwise
// non-associate, so by unique factorisation two monomial images are equal
// iff their factorisations are. Equal images cancel in pairs; zero, one or
// two distinct surviving images decide the question exactly.
std::optional<bool> factorisation_test(const Substitution& s, const LaurentPoly& shifted) {
    std::set<Factorisation> survivors;
    for (const auto& m : shifted.terms()) {
        auto f = factorise(s, m);
        if (auto it = survivors.find(f); it != survivors.end()) {
            survivors.erase(it);
        } else {
            survivors.insert(std::move(f));
        }
    }
    if (survivors.size() <= 2) return survivors.empty();
    return std::nullopt;
}

}  // namespace

std::vector<LaurentPoly> LinearFormIdeal::generators() const {
    std::vector<LaurentPoly> gens;
    for (const auto& r : code_.basis().row_vectors()) gens.push_back(p_from_vector(r));
    return gens;
}

LinearFormIdeal annihilator_ideal(const BinaryCode& c) { return LinearFormIdeal(dual(c)); }

bool ideal_contains(const LinearFormIdeal& ideal, const LaurentPoly& q, const MembershipLimits& limits) {
    if (q.arity() != ideal.arity()) throw DimensionMismatch("ideal_contains: arity mismatch");
    if (q.is_zero()) return true;
    if (unit_variable(ideal)) return true;

    const auto shifted = monomial_shift(q, polynomial_shift(q));
    const auto s = make_substitution(ideal);
    if (within_limits(shifted, limits)) return reduce(s, shifted, limits).remainder.is_zero();
    if (auto verdict = factorisation_test(s, shifted)) return *verdict;
    throw ResourceLimitError("ideal_contains: input with " + std::to_string(q.size()) + " terms and degree " +
                             std::to_string(total_degree(shifted)) + " exceeds the expansion limits");
}

std::optional<std::vector<LaurentPoly>> ideal_cofactors(const LinearFormIdeal& ideal, const LaurentPoly& q,
                                                        const MembershipLimits& limits) {
    if (q.arity() != ideal.arity()) throw DimensionMismatch("ideal_cofactors: arity mismatch");
    const std::size_t d = ideal.arity();
    const auto& code = ideal.generator_code();

    if (auto j = unit_variable(ideal)) {
        // u_j = sum of the generators selected by the coordinates of e_j
        const auto coeffs = *code.coordinates(F2Vector::unit(d, *j));
        Exponent inverse(d, 0);
        inverse[*j] = -1;
        const auto scaled = monomial_shift(q, inverse);
        std::vector<LaurentPoly> cofactors(code.dim(), LaurentPoly(d));
        for (std::size_t r = 0; r < code.dim(); ++r) {
            if (coeffs.get(r)) cofactors[r] = scaled;
        }
        return cofactors;
    }

    const auto shift = polynomial_shift(q);
    const auto shifted = monomial_shift(q, shift);
    if (!within_limits(shifted, limits)) {
        throw ResourceLimitError("ideal_cofactors: input exceeds the expansion limits");
    }
    auto reduction = reduce(make_substitution(ideal), shifted, limits);
    if (!reduction.remainder.is_zero()) return std::nullopt;

    Exponent back(d);
    for (std::size_t j = 0; j < d; ++j) back[j] = -shift[j];
    for (auto& f : reduction.cofactors) f = monomial_shift(f, back);
    return std::move(reduction.cofactors);
}

bool verify_cofactors(const LinearFormIdeal& ideal, const LaurentPoly& q, const std::vector<LaurentPoly>& cofactors) {
    const auto gens = ideal.generators();
    if (cofactors.size() != gens.size()) return false;
    LaurentPoly sum(ideal.arity());
    for (std::size_t r = 0; r < gens.size(); ++r) sum += cofactors[r] * gens[r];
    return sum == q;
}

}  // namespace nonrigid
