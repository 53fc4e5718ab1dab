#pragma once

// Binary linear codes.

#include "nonrigid/error.hpp"
#include "nonrigid/gf2.hpp"

#include <cstddef>
#include <functional>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nonrigid {

/// Largest dimension for which codewords are enumerated exhaustively.
inline constexpr std::size_t kEnumerationGuard = 24;

/// A subspace of F2^d, stored by its reduced row-echelon basis. Two codes
/// are equal iff their bases are bit-identical.
class BinaryCode {
public:
    /// The row space of `generators`. Dependent rows are allowed.
    static BinaryCode from_generators(const F2Matrix& generators);
    /// The zero code {0} of length d.
    static BinaryCode zero(std::size_t length);

    std::size_t length() const noexcept { return echelon_.reduced.cols(); }
    std::size_t dim() const noexcept { return echelon_.rank; }
    /// Reduced basis, dim() rows.
    const F2Matrix& basis() const noexcept { return basis_; }
    const std::vector<std::size_t>& pivot_columns() const noexcept { return echelon_.pivot_columns; }

    bool contains(const F2Vector& v) const { return echelon_.in_row_space(v); }
    /// Coordinates of v in the reduced basis, if v is a codeword.
    std::optional<F2Vector> coordinates(const F2Vector& v) const { return echelon_.coordinates(v); }
    bool is_proper() const noexcept { return dim() < length(); }

    /// Calls visit(v) for each of the 2^dim codewords in Gray-code order.
    /// Throws ResourceLimitError above kEnumerationGuard.
    void for_each_codeword(const std::function<void(const F2Vector&)>& visit) const;
    /// All codewords ordered by weight, ties broken lexicographically on the
    /// sorted support (so 11110000 precedes 11001100).
    std::vector<F2Vector> codewords_by_weight() const;

    friend bool operator==(const BinaryCode& a, const BinaryCode& b) { return a.basis_ == b.basis_; }

private:
    explicit BinaryCode(RowEchelon echelon);

    RowEchelon echelon_;
    F2Matrix basis_;
};

BinaryCode code_from_generators(const F2Matrix& rows);

/// {v : v . w = 0 for all w in c}.
BinaryCode dual(const BinaryCode& c);

bool is_self_orthogonal(const BinaryCode& c);

enum class WeightClass { doubly_even, even, neither };
std::string_view to_string(WeightClass w);

enum class WeightClassMethod {
    /// Decided from the basis: an odd row gives "neither"; an even code is
    /// doubly even iff its basis is doubly even and pairwise orthogonal.
    automatic,
    exhaustive,
};

/// Classifies all codewords. The exhaustive method throws
/// ResourceLimitError above kEnumerationGuard.
WeightClass weight_class(const BinaryCode& c, WeightClassMethod method = WeightClassMethod::automatic);

bool contains_all_ones(const BinaryCode& c);

/// c is a subspace of other.
bool is_subcode(const BinaryCode& c, const BinaryCode& other);

/// B(n, v): the sum of n_i over the support of v.
BigInt b_map(const IntVector& n, const F2Vector& v);

/// Support indicator of v as an integer vector.
IntVector support_vector(const F2Vector& v);

struct NondegeneracyCertificate {
    bool verdict = false;
    /// Present iff verdict is false: nonzero n with B(n, v) = 0 on all of c.
    std::optional<IntVector> kernel_witness;
};

/// Raised when an operation needs an integrally non-degenerate code.
class DegenerateCodeError : public PreconditionError {
public:
    DegenerateCodeError(const std::string& message, IntVector witness)
        : PreconditionError(message), witness_(std::move(witness)) {}

    /// Nonzero n with B(n, v) = 0 for every codeword v.
    const IntVector& witness() const noexcept { return witness_; }

private:
    IntVector witness_;
};

/// Decides integral non-degeneracy as "the supports of the codewords span
/// Q^d", adding supports in increasing weight order and stopping as soon as
/// the rank reaches d.
NondegeneracyCertificate is_integrally_nondegenerate(const BinaryCode& c);

/// First codeword v, in codewords_by_weight() order, with B(n, v) != 0.
/// Throws PreconditionError for n = 0 and DegenerateCodeError when no such
/// codeword exists.
F2Vector nondegeneracy_witness(const BinaryCode& c, const IntVector& n);

/// x * y lies in c_prime for all x, y in c. Checks basis pairs only.
bool star_closure_check(const BinaryCode& c, const BinaryCode& c_prime);
/// Same predicate by enumerating all codeword pairs.
bool star_closure_check_exhaustive(const BinaryCode& c, const BinaryCode& c_prime);

/// c1 + c2 on disjoint coordinate blocks: length d1 + d2, dim k1 + k2.
BinaryCode direct_sum(const BinaryCode& c1, const BinaryCode& c2);

enum class StandardCode {
    even,        ///< E_d, all even-weight words
    c8,          ///< the [8,4] doubly even self-dual code
    full,        ///< F2^d
    repetition,  ///< {0, 1}
};

/// The generator matrix of C8, rows as written in the source construction.
F2Matrix c8_generator_matrix();

BinaryCode standard_code(StandardCode kind, std::size_t d = 8);

/// Parses the code file format: one generator per line over {0,1}; blank
/// lines and lines starting with '#' are skipped; all rows equal length.
F2Matrix parse_code_rows(std::istream& in);
BinaryCode read_code_file(const std::string& path);
/// Renders a code in the code file format (basis rows only).
std::string format_code(const BinaryCode& c, std::string_view comment = {});

}  // namespace nonrigid
