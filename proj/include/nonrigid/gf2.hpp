#pragma once

// Exact linear algebra over F2 (bit-packed) and over the rationals.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nonrigid {

using BigInt = boost::multiprecision::cpp_int;

/// A vector in F2^n, packed 64 coordinates per word. Coordinates are
/// 0-based in the API; textual forms list coordinate 0 first.
class F2Vector {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    /// The zero vector of the given length (length >= 1).
    explicit F2Vector(std::size_t length);
    F2Vector(std::initializer_list<int> bits);

    /// Parses a string over {0,1}; character i is coordinate i.
    static F2Vector from_string(std::string_view bits);
    static F2Vector all_ones(std::size_t length);
    static F2Vector unit(std::size_t length, std::size_t index);

    std::size_t size() const noexcept { return size_; }
    bool get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }
    void set(std::size_t i, bool value);
    void flip(std::size_t i) { words_[i / kWordBits] ^= Word{1} << (i % kWordBits); }

    bool is_zero() const noexcept;
    /// Index of the lowest set coordinate, or size() if zero.
    std::size_t first_set() const noexcept;

    std::span<const Word> words() const noexcept { return words_; }
    std::span<Word> words() noexcept { return words_; }

    F2Vector& operator+=(const F2Vector& other);
    friend F2Vector operator+(F2Vector lhs, const F2Vector& rhs) { return lhs += rhs; }

    std::string to_string() const;

    friend bool operator==(const F2Vector&, const F2Vector&) = default;
    /// Lexicographic on coordinates 0,1,2,... with 0 < 1.
    friend std::strong_ordering operator<=>(const F2Vector& a, const F2Vector& b);

private:
    std::size_t size_;
    std::vector<Word> words_;
};

/// Number of coordinates equal to 1.
std::size_t weight(const F2Vector& v);
/// Sum of v_i w_i mod 2.
bool dot(const F2Vector& v, const F2Vector& w);
/// Coordinatewise product (v_1 w_1, ..., v_d w_d).
F2Vector cw_product(const F2Vector& v, const F2Vector& w);

/// A row-major matrix over F2 with a fixed column count (>= 1).
class F2Matrix {
public:
    explicit F2Matrix(std::size_t cols);
    F2Matrix(std::size_t cols, std::vector<F2Vector> rows);

    static F2Matrix identity(std::size_t n);
    static F2Matrix zero(std::size_t rows, std::size_t cols);
    /// One string over {0,1} per row.
    static F2Matrix from_strings(std::initializer_list<std::string_view> rows);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_.empty(); }

    const F2Vector& row(std::size_t i) const { return rows_[i]; }
    F2Vector& row(std::size_t i) { return rows_[i]; }
    const std::vector<F2Vector>& row_vectors() const noexcept { return rows_; }

    void append_row(F2Vector r);
    /// Matrix-vector product over F2.
    F2Vector multiply(const F2Vector& x) const;

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

private:
    std::size_t cols_;
    std::vector<F2Vector> rows_;
};

struct RowEchelon {
    /// Reduced row-echelon form; the first `rank` rows are nonzero.
    F2Matrix reduced;
    std::size_t rank = 0;
    /// pivot_columns[r] is the pivot of row r, increasing.
    std::vector<std::size_t> pivot_columns;

    /// Eliminates v against the pivot rows; zero iff v is in the row space.
    F2Vector residual(F2Vector v) const;
    bool in_row_space(const F2Vector& v) const { return residual(v).is_zero(); }
    /// Coefficients c with v = sum c_r row_r, or nothing if v is outside the row space.
    std::optional<F2Vector> coordinates(const F2Vector& v) const;
};

/// Gauss-Jordan elimination over F2. Pivots are taken at the lowest column
/// index available, so the output is a pure function of the input bits.
RowEchelon row_reduce(const F2Matrix& m);

/// Basis of {x : m x = 0}; one row per free column, cols(m) - rank(m) rows.
F2Matrix kernel_basis(const F2Matrix& m);
F2Matrix kernel_basis(const RowEchelon& echelon);

/// A vector of unbounded integers, length >= 1.
class IntVector {
public:
    explicit IntVector(std::size_t length);
    IntVector(std::initializer_list<long long> values);
    explicit IntVector(std::vector<BigInt> values);

    /// Parses comma-separated integers, e.g. "1,-1,0".
    static IntVector parse_csv(std::string_view text);
    static IntVector unit(std::size_t length, std::size_t index);

    std::size_t size() const noexcept { return values_.size(); }
    const BigInt& operator[](std::size_t i) const { return values_[i]; }
    BigInt& operator[](std::size_t i) { return values_[i]; }
    const std::vector<BigInt>& values() const noexcept { return values_; }

    bool is_zero() const;
    /// "(1,-1,0)"
    std::string to_string() const;

    friend bool operator==(const IntVector&, const IntVector&) = default;

private:
    std::vector<BigInt> values_;
};

/// Rank over Q by fraction-free elimination. Rows must share one length.
std::size_t rational_rank(std::span<const IntVector> rows);

/// Basis of the rational kernel {n : r . n = 0 for every row r}, each
/// vector scaled to a primitive integer vector whose first nonzero entry
/// is positive. `cols` is the common row length.
std::vector<IntVector> rational_kernel(std::span<const IntVector> rows, std::size_t cols);

/// Incrementally maintained row space over Q. Rows are kept in integer
/// echelon form, each divided by the gcd of its entries.
class RationalRowSpace {
public:
    explicit RationalRowSpace(std::size_t cols) : cols_(cols) {}

    /// Adds a row; returns true if the rank increased.
    bool add(const IntVector& row);
    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    bool full() const noexcept { return rows_.size() == cols_; }

private:
    struct PivotRow {
        std::size_t pivot;
        std::vector<BigInt> values;
    };
    std::size_t cols_;
    std::vector<PivotRow> rows_;
};

}  // namespace nonrigid
