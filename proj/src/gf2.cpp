#include "nonrigid/gf2.hpp"

#include "nonrigid/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <utility>

namespace nonrigid {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + F2Vector::kWordBits - 1) / F2Vector::kWordBits; }

void require_same_length(const F2Vector& v, const F2Vector& w, const char* op) {
    if (v.size() != w.size()) {
        throw DimensionMismatch(std::string(op) + ": lengths " + std::to_string(v.size()) + " and " +
                                std::to_string(w.size()) + " differ");
    }
}

}  // namespace

// ---------------------------------------------------------------- F2Vector

F2Vector::F2Vector(std::size_t length) : size_(length), words_(words_for(length), 0) {
    if (length == 0) throw PreconditionError("F2Vector: length must be at least 1");
}

F2Vector::F2Vector(std::initializer_list<int> bits) : F2Vector(bits.size()) {
    std::size_t i = 0;
    for (int b : bits) {
        if (b != 0 && b != 1) throw PreconditionError("F2Vector: coordinates must be 0 or 1");
        set(i++, b == 1);
    }
}

F2Vector F2Vector::from_string(std::string_view bits) {
    F2Vector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw PreconditionError("F2Vector: unexpected character '" + std::string(1, bits[i]) + "'");
        }
    }
    return v;
}

F2Vector F2Vector::all_ones(std::size_t length) {
    F2Vector v(length);
    for (auto& w : v.words_) w = ~Word{0};
    if (length % kWordBits != 0) v.words_.back() = (Word{1} << (length % kWordBits)) - 1;
    return v;
}

F2Vector F2Vector::unit(std::size_t length, std::size_t index) {
    F2Vector v(length);
    v.set(index, true);
    return v;
}

void F2Vector::set(std::size_t i, bool value) {
    const Word mask = Word{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

bool F2Vector::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

std::size_t F2Vector::first_set() const noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) {
        if (words_[k] != 0) return k * kWordBits + static_cast<std::size_t>(std::countr_zero(words_[k]));
    }
    return size_;
}

F2Vector& F2Vector::operator+=(const F2Vector& other) {
    require_same_length(*this, other, "add");
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= other.words_[k];
    return *this;
}

std::string F2Vector::to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

std::strong_ordering operator<=>(const F2Vector& a, const F2Vector& b) {
    if (auto c = a.size_ <=> b.size_; c != 0) return c;
    for (std::size_t k = 0; k < a.words_.size(); ++k) {
        const auto diff = a.words_[k] ^ b.words_[k];
        if (diff == 0) continue;
        // lowest differing coordinate decides
        const auto bit = F2Vector::Word{1} << std::countr_zero(diff);
        return (a.words_[k] & bit) ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    return std::strong_ordering::equal;
}

std::size_t weight(const F2Vector& v) {
    std::size_t n = 0;
    for (auto w : v.words()) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool dot(const F2Vector& v, const F2Vector& w) {
    require_same_length(v, w, "dot");
    F2Vector::Word acc = 0;
    const auto a = v.words();
    const auto b = w.words();
    for (std::size_t k = 0; k < a.size(); ++k) acc ^= a[k] & b[k];
    return (std::popcount(acc) & 1) != 0;
}

F2Vector cw_product(const F2Vector& v, const F2Vector& w) {
    require_same_length(v, w, "cw_product");
    F2Vector out = v;
    auto o = out.words();
    const auto b = w.words();
    for (std::size_t k = 0; k < o.size(); ++k) o[k] &= b[k];
    return out;
}

// ---------------------------------------------------------------- F2Matrix

F2Matrix::F2Matrix(std::size_t cols) : cols_(cols) {
    if (cols == 0) throw PreconditionError("F2Matrix: column count must be at least 1");
}

F2Matrix::F2Matrix(std::size_t cols, std::vector<F2Vector> rows) : F2Matrix(cols) {
    for (auto& r : rows) append_row(std::move(r));
}

F2Matrix F2Matrix::identity(std::size_t n) {
    F2Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.append_row(F2Vector::unit(n, i));
    return m;
}

F2Matrix F2Matrix::zero(std::size_t rows, std::size_t cols) {
    F2Matrix m(cols);
    for (std::size_t i = 0; i < rows; ++i) m.append_row(F2Vector(cols));
    return m;
}

F2Matrix F2Matrix::from_strings(std::initializer_list<std::string_view> rows) {
    if (rows.size() == 0) throw PreconditionError("F2Matrix: need at least one row to infer the width");
    F2Matrix m(rows.begin()->size());
    for (auto r : rows) m.append_row(F2Vector::from_string(r));
    return m;
}

void F2Matrix::append_row(F2Vector r) {
    if (r.size() != cols_) {
        throw DimensionMismatch("F2Matrix: row of length " + std::to_string(r.size()) + " in a matrix with " +
                                std::to_string(cols_) + " columns");
    }
    rows_.push_back(std::move(r));
}

F2Vector F2Matrix::multiply(const F2Vector& x) const {
    if (x.size() != cols_) throw DimensionMismatch("F2Matrix::multiply: vector length does not match columns");
    F2Vector out(std::max<std::size_t>(rows_.size(), 1));
    if (rows_.empty()) return out;
    for (std::size_t i = 0; i < rows_.size(); ++i) out.set(i, dot(rows_[i], x));
    return out;
}

// ---------------------------------------------------------------- elimination

RowEchelon row_reduce(const F2Matrix& m) {
    std::vector<F2Vector> rows = m.row_vectors();
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    const std::size_t n_words = words_for(m.cols());

    for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
        const std::size_t word = col / F2Vector::kWordBits;
        const F2Vector::Word bit = F2Vector::Word{1} << (col % F2Vector::kWordBits);

        std::size_t pivot_row = rank;
        while (pivot_row < rows.size() && (rows[pivot_row].words()[word] & bit) == 0) ++pivot_row;
        if (pivot_row == rows.size()) continue;
        std::swap(rows[rank], rows[pivot_row]);

        const auto src = rows[rank].words();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            auto dst = rows[r].words();
            if ((dst[word] & bit) == 0) continue;
            // columns left of `word` are already clear in the pivot row
            for (std::size_t k = word; k < n_words; ++k) dst[k] ^= src[k];
        }
        pivots.push_back(col);
        ++rank;
    }
    return RowEchelon{F2Matrix(m.cols(), std::move(rows)), rank, std::move(pivots)};
}

F2Vector RowEchelon::residual(F2Vector v) const {
    if (v.size() != reduced.cols()) throw DimensionMismatch("residual: vector length does not match columns");
    for (std::size_t r = 0; r < rank; ++r) {
        if (v.get(pivot_columns[r])) v += reduced.row(r);
    }
    return v;
}

std::optional<F2Vector> RowEchelon::coordinates(const F2Vector& v) const {
    if (rank == 0) {
        if (v.is_zero()) return F2Vector(1);
        return std::nullopt;
    }
    F2Vector coeffs(rank);
    F2Vector rest = v;
    for (std::size_t r = 0; r < rank; ++r) {
        if (rest.get(pivot_columns[r])) {
            rest += reduced.row(r);
            coeffs.set(r, true);
        }
    }
    if (!rest.is_zero()) return std::nullopt;
    return coeffs;
}

F2Matrix kernel_basis(const RowEchelon& e) {
    const std::size_t cols = e.reduced.cols();
    F2Matrix basis(cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : e.pivot_columns) is_pivot[p] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        F2Vector v = F2Vector::unit(cols, f);
        for (std::size_t r = 0; r < e.rank; ++r) {
            if (e.reduced.row(r).get(f)) v.set(e.pivot_columns[r], true);
        }
        basis.append_row(std::move(v));
    }
    return basis;
}

F2Matrix kernel_basis(const F2Matrix& m) { return kernel_basis(row_reduce(m)); }

// ---------------------------------------------------------------- integers

IntVector::IntVector(std::size_t length) : values_(length) {
    if (length == 0) throw PreconditionError("IntVector: length must be at least 1");
}

IntVector::IntVector(std::initializer_list<long long> values) : IntVector(values.size()) {
    std::copy(values.begin(), values.end(), values_.begin());
}

IntVector::IntVector(std::vector<BigInt> values) : values_(std::move(values)) {
    if (values_.empty()) throw PreconditionError("IntVector: length must be at least 1");
}

IntVector IntVector::parse_csv(std::string_view text) {
    std::vector<BigInt> values;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        auto field = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
        while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
        std::string_view digits = field;
        if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw ParseError("not an integer: '" + std::string(field) + "'", 0);
        }
        values.emplace_back(std::string(field.front() == '+' ? field.substr(1) : field));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return IntVector(std::move(values));
}

IntVector IntVector::unit(std::size_t length, std::size_t index) {
    IntVector v(length);
    v[index] = 1;
    return v;
}

bool IntVector::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const BigInt& x) { return x == 0; });
}

std::string IntVector::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) s += ',';
        s += values_[i].str();
    }
    return s + ")";
}

namespace {

void divide_by_content(std::vector<BigInt>& row) {
    BigInt g = 0;
    for (const auto& x : row) {
        if (x != 0) g = boost::multiprecision::gcd(g, x);
    }
    if (g > 1) {
        for (auto& x : row) x /= g;
    }
}

}  // namespace

std::size_t rational_rank(std::span<const IntVector> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::vector<std::vector<BigInt>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionMismatch("rational_rank: ragged rows");
        a.push_back(r.values());
    }

    // Bareiss elimination: every division below is exact.
    BigInt prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
        std::size_t p = rank;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[rank], a[p]);
        for (std::size_t i = rank + 1; i < a.size(); ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

std::vector<IntVector> rational_kernel(std::span<const IntVector> rows, std::size_t cols) {
    using boost::multiprecision::cpp_rational;
    std::vector<std::vector<cpp_rational>> a;
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionMismatch("rational_kernel: row length does not match cols");
        a.emplace_back(r.values().begin(), r.values().end());
    }

    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < a.size(); ++col) {
        std::size_t p = rank;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[rank], a[p]);
        const cpp_rational inv = 1 / a[rank][col];
        for (auto& x : a[rank]) x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == rank || a[i][col] == 0) continue;
            const cpp_rational f = a[i][col];
            for (std::size_t j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        pivots.push_back(col);
        ++rank;
    }

    std::vector<IntVector> basis;
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<cpp_rational> v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = -a[r][f];

        BigInt lcm = 1;
        for (const auto& x : v) {
            const BigInt den = denominator(x);
            lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        }
        std::vector<BigInt> ints;
        ints.reserve(cols);
        for (const auto& x : v) ints.push_back(numerator(x) * (lcm / denominator(x)));
        divide_by_content(ints);
        const auto lead = std::find_if(ints.begin(), ints.end(), [](const BigInt& x) { return x != 0; });
        if (lead != ints.end() && *lead < 0) {
            for (auto& x : ints) x = -x;
        }
        basis.emplace_back(std::move(ints));
    }
    return basis;
}

bool RationalRowSpace::add(const IntVector& row) {
    if (row.size() != cols_) throw DimensionMismatch("RationalRowSpace: row length does not match cols");
    std::vector<BigInt> v = row.values();
    for (const auto& pr : rows_) {
        if (v[pr.pivot] == 0) continue;
        const BigInt a = pr.values[pr.pivot];
        const BigInt b = v[pr.pivot];
        for (std::size_t j = 0; j < cols_; ++j) v[j] = a * v[j] - b * pr.values[j];
        divide_by_content(v);
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](const BigInt& x) { return x != 0; });
    if (lead == v.end()) return false;
    const auto pivot = static_cast<std::size_t>(lead - v.begin());

    // keep the form fully reduced: clear the new pivot column elsewhere
    for (auto& pr : rows_) {
        if (pr.values[pivot] == 0) continue;
        const BigInt a = v[pivot];
        const BigInt b = pr.values[pivot];
        for (std::size_t j = 0; j < cols_; ++j) pr.values[j] = a * pr.values[j] - b * v[j];
        divide_by_content(pr.values);
    }
    rows_.push_back(PivotRow{pivot, std::move(v)});
    return true;
}

}  // namespace nonrigid
