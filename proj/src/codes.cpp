#include "nonrigid/codes.hpp"

#include "nonrigid/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace nonrigid {

namespace {

void require_enumerable(std::size_t dim, const char* op) {
    if (dim > kEnumerationGuard) {
        throw ResourceLimitError(std::string(op) + ": dimension " + std::to_string(dim) +
                                 " exceeds the enumeration guard of " + std::to_string(kEnumerationGuard));
    }
}

// Visits the codewords of each weight in turn, lowest weight first, each
// group sorted so that lexicographically smaller supports come first. The
// callback returns false to stop.
template <typename Visit>
void for_each_weight_class(const BinaryCode& c, Visit&& visit) {
    require_enumerable(c.dim(), "weight-ordered enumeration");
    for (std::size_t w = 0; w <= c.length(); ++w) {
        std::vector<F2Vector> group;
        c.for_each_codeword([&](const F2Vector& v) {
            if (weight(v) == w) group.push_back(v);
        });
        if (group.empty()) continue;
        std::sort(group.begin(), group.end(), [](const F2Vector& a, const F2Vector& b) { return a > b; });
        if (!visit(group)) return;
    }
}

}  // namespace

BinaryCode::BinaryCode(RowEchelon echelon) : echelon_(std::move(echelon)), basis_(echelon_.reduced.cols()) {
    for (std::size_t r = 0; r < echelon_.rank; ++r) basis_.append_row(echelon_.reduced.row(r));
}

BinaryCode BinaryCode::from_generators(const F2Matrix& generators) { return BinaryCode(row_reduce(generators)); }

BinaryCode BinaryCode::zero(std::size_t length) { return BinaryCode(row_reduce(F2Matrix(length))); }

void BinaryCode::for_each_codeword(const std::function<void(const F2Vector&)>& visit) const {
    require_enumerable(dim(), "codeword enumeration");
    F2Vector current(length());
    visit(current);
    const std::uint64_t count = std::uint64_t{1} << dim();
    for (std::uint64_t i = 1; i < count; ++i) {
        current += basis_.row(static_cast<std::size_t>(std::countr_zero(i)));
        visit(current);
    }
}

std::vector<F2Vector> BinaryCode::codewords_by_weight() const {
    std::vector<F2Vector> all;
    for_each_weight_class(*this, [&](const std::vector<F2Vector>& group) {
        all.insert(all.end(), group.begin(), group.end());
        return true;
    });
    return all;
}

BinaryCode code_from_generators(const F2Matrix& rows) {
    if (rows.empty()) throw PreconditionError("code_from_generators: no generator rows");
    return BinaryCode::from_generators(rows);
}

BinaryCode dual(const BinaryCode& c) {
    const F2Matrix k = kernel_basis(c.basis());
    if (k.empty()) return BinaryCode::zero(c.length());
    return BinaryCode::from_generators(k);
}

bool is_self_orthogonal(const BinaryCode& c) {
    const auto& b = c.basis();
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = i; j < b.rows(); ++j) {
            if (dot(b.row(i), b.row(j))) return false;
        }
    }
    return true;
}

std::string_view to_string(WeightClass w) {
    switch (w) {
        case WeightClass::doubly_even:
            return "doubly-even";
        case WeightClass::even:
            return "even";
        case WeightClass::neither:
            return "neither";
    }
    return "?";
}

WeightClass weight_class(const BinaryCode& c, WeightClassMethod method) {
    const auto& b = c.basis();
    if (method == WeightClassMethod::automatic) {
        // parity of the weight is linear, so one odd basis row settles it
        for (const auto& r : b.row_vectors()) {
            if (weight(r) % 2 == 1) return WeightClass::neither;
        }
        const bool basis_doubly_even =
            std::all_of(b.row_vectors().begin(), b.row_vectors().end(), [](const F2Vector& r) { return weight(r) % 4 == 0; });
        // in an even code 2|v & w| = |v| + |w| - |v + w|, so the code is
        // doubly even exactly when its basis is doubly even and orthogonal
        return basis_doubly_even && is_self_orthogonal(c) ? WeightClass::doubly_even : WeightClass::even;
    }

    require_enumerable(c.dim(), "weight_class");
    bool odd = false;
    bool two_mod_four = false;
    c.for_each_codeword([&](const F2Vector& v) {
        const auto w = weight(v);
        if (w % 2 == 1) odd = true;
        if (w % 4 == 2) two_mod_four = true;
    });
    if (odd) return WeightClass::neither;
    return two_mod_four ? WeightClass::even : WeightClass::doubly_even;
}

bool contains_all_ones(const BinaryCode& c) { return c.contains(F2Vector::all_ones(c.length())); }

bool is_subcode(const BinaryCode& c, const BinaryCode& other) {
    if (c.length() != other.length()) throw DimensionMismatch("is_subcode: code lengths differ");
    const auto& rows = c.basis().row_vectors();
    return std::all_of(rows.begin(), rows.end(), [&](const F2Vector& r) { return other.contains(r); });
}

BigInt b_map(const IntVector& n, const F2Vector& v) {
    if (n.size() != v.size()) throw DimensionMismatch("b_map: lengths differ");
    BigInt sum = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) sum += n[i];
    }
    return sum;
}

IntVector support_vector(const F2Vector& v) {
    IntVector s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = v.get(i) ? 1 : 0;
    return s;
}

NondegeneracyCertificate is_integrally_nondegenerate(const BinaryCode& c) {
    require_enumerable(c.dim(), "is_integrally_nondegenerate");
    RationalRowSpace space(c.length());
    std::vector<IntVector> independent;
    for_each_weight_class(c, [&](const std::vector<F2Vector>& group) {
        for (const auto& v : group) {
            if (v.is_zero()) continue;
            auto s = support_vector(v);
            if (space.add(s)) independent.push_back(std::move(s));
            if (space.full()) return false;
        }
        return true;
    });
    if (space.full()) return {true, std::nullopt};
    auto kernel = rational_kernel(independent, c.length());
    return {false, std::move(kernel.front())};
}

F2Vector nondegeneracy_witness(const BinaryCode& c, const IntVector& n) {
    if (n.size() != c.length()) throw DimensionMismatch("nondegeneracy_witness: n has the wrong length");
    if (n.is_zero()) throw PreconditionError("nondegeneracy_witness: n must be nonzero");
    std::optional<F2Vector> found;
    for_each_weight_class(c, [&](const std::vector<F2Vector>& group) {
        for (const auto& v : group) {
            if (b_map(n, v) != 0) {
                found = v;
                return false;
            }
        }
        return true;
    });
    if (found) return *found;
    auto cert = is_integrally_nondegenerate(c);
    // B(n, .) vanishes on c, so n itself lies in the rational kernel
    throw DegenerateCodeError("code is integrally degenerate: B(" + n.to_string() + ", v) = 0 for every codeword",
                              cert.kernel_witness.value_or(n));
}

bool star_closure_check(const BinaryCode& c, const BinaryCode& c_prime) {
    if (c.length() != c_prime.length()) throw DimensionMismatch("star_closure_check: code lengths differ");
    const auto& b = c.basis();
    for (std::size_t i = 0; i < b.rows(); ++i) {
        for (std::size_t j = i; j < b.rows(); ++j) {
            if (!c_prime.contains(cw_product(b.row(i), b.row(j)))) return false;
        }
    }
    return true;
}

bool star_closure_check_exhaustive(const BinaryCode& c, const BinaryCode& c_prime) {
    if (c.length() != c_prime.length()) throw DimensionMismatch("star_closure_check: code lengths differ");
    require_enumerable(2 * c.dim(), "star_closure_check_exhaustive");
    std::vector<F2Vector> words;
    c.for_each_codeword([&](const F2Vector& v) { words.push_back(v); });
    for (const auto& x : words) {
        for (const auto& y : words) {
            if (!c_prime.contains(cw_product(x, y))) return false;
        }
    }
    return true;
}

BinaryCode direct_sum(const BinaryCode& c1, const BinaryCode& c2) {
    const std::size_t d1 = c1.length();
    const std::size_t d = d1 + c2.length();
    F2Matrix rows(d);
    for (const auto& r : c1.basis().row_vectors()) {
        F2Vector v(d);
        for (std::size_t i = 0; i < d1; ++i) v.set(i, r.get(i));
        rows.append_row(std::move(v));
    }
    for (const auto& r : c2.basis().row_vectors()) {
        F2Vector v(d);
        for (std::size_t i = 0; i < r.size(); ++i) v.set(d1 + i, r.get(i));
        rows.append_row(std::move(v));
    }
    return BinaryCode::from_generators(rows);
}

F2Matrix c8_generator_matrix() {
    return F2Matrix::from_strings({
        "11110000",
        "00111100",
        "00001111",
        "10101010",
    });
}

BinaryCode standard_code(StandardCode kind, std::size_t d) {
    switch (kind) {
        case StandardCode::even: {
            if (d < 2) throw PreconditionError("standard_code: E_d needs d >= 2");
            F2Matrix rows(d);
            for (std::size_t j = 1; j < d; ++j) {
                F2Vector v = F2Vector::unit(d, 0);
                v.set(j, true);
                rows.append_row(std::move(v));
            }
            return BinaryCode::from_generators(rows);
        }
        case StandardCode::c8:
            if (d != 8) throw PreconditionError("standard_code: C8 has length 8");
            return BinaryCode::from_generators(c8_generator_matrix());
        case StandardCode::full:
            if (d < 1) throw PreconditionError("standard_code: length must be at least 1");
            return BinaryCode::from_generators(F2Matrix::identity(d));
        case StandardCode::repetition:
            if (d < 1) throw PreconditionError("standard_code: length must be at least 1");
            return BinaryCode::from_generators(F2Matrix(d, {F2Vector::all_ones(d)}));
    }
    throw PreconditionError("standard_code: unknown kind");
}

}  // namespace nonrigid
