#pragma once

// Brute-force reference computations for the tests. Nothing in here calls
// into the library's elimination or enumeration code: codes are plain
// bitmasks (bit i = coordinate i) and configurations are enumerated.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Mask = std::uint32_t;

/// All F2 combinations of the generators.
inline std::set<Mask> span(const std::vector<Mask>& generators) {
    std::set<Mask> out;
    const std::size_t k = generators.size();
    for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << k); ++sel) {
        Mask v = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if ((sel >> i) & 1) v ^= generators[i];
        }
        out.insert(v);
    }
    return out;
}

inline bool dot(Mask a, Mask b) { return (std::popcount(a & b) & 1) != 0; }

/// {v in F2^d : v . w = 0 for all w in words}, by scanning all of F2^d.
inline std::set<Mask> dual(std::size_t d, const std::set<Mask>& words) {
    std::set<Mask> out;
    for (Mask v = 0; v < (Mask{1} << d); ++v) {
        if (std::none_of(words.begin(), words.end(), [&](Mask w) { return dot(v, w); })) out.insert(v);
    }
    return out;
}

/// log2 of the dimension of a span given as a set of size 2^k.
inline std::size_t dim_of(const std::set<Mask>& words) { return static_cast<std::size_t>(std::countr_zero(words.size())); }

/// Number of configurations on [0, side)^d satisfying
/// (x(i+e_1), ..., x(i+e_d)) in `code` at every anchor i whose stencil fits.
inline std::uint64_t count_window(std::size_t d, int side, const std::set<Mask>& code) {
    std::size_t sites = 1;
    for (std::size_t a = 0; a < d; ++a) sites *= static_cast<std::size_t>(side);
    auto index = [&](const std::vector<int>& s) {
        std::size_t k = 0;
        for (std::size_t a = 0; a < d; ++a) k = k * static_cast<std::size_t>(side) + static_cast<std::size_t>(s[a]);
        return k;
    };
    // anchor stencils, computed by testing every candidate i in [-1, side)^d
    std::vector<std::vector<std::size_t>> stencils;
    std::vector<int> i(d, -1);
    while (true) {
        bool fits = true;
        std::vector<std::size_t> st;
        for (std::size_t j = 0; j < d && fits; ++j) {
            auto s = i;
            ++s[j];
            for (std::size_t a = 0; a < d; ++a) fits = fits && s[a] >= 0 && s[a] < side;
            if (fits) st.push_back(index(s));
        }
        if (fits) stencils.push_back(st);
        std::size_t a = d;
        while (a > 0) {
            --a;
            if (++i[a] < side) break;
            i[a] = -1;
            if (a == 0) goto done;
        }
    }
done:
    std::uint64_t count = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << sites); ++x) {
        bool ok = true;
        for (const auto& st : stencils) {
            Mask tuple = 0;
            for (std::size_t j = 0; j < d; ++j) {
                if ((x >> st[j]) & 1) tuple |= Mask{1} << j;
            }
            if (!code.count(tuple)) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

// ---------------------------------------------------------------- polynomials

/// Polynomial over F2 as a set of nonnegative exponent vectors.
using Monomial = std::vector<int>;
using Poly = std::set<Monomial>;

inline void toggle(Poly& p, const Monomial& m) {
    if (!p.erase(m)) p.insert(m);
}

/// All monomials of total degree t in d variables.
inline std::vector<Monomial> monomials_of_degree(std::size_t d, int t) {
    std::vector<Monomial> out;
    Monomial m(d, 0);
    auto rec = [&](auto&& self, std::size_t var, int left) -> void {
        if (var + 1 == d) {
            m[var] = left;
            out.push_back(m);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            m[var] = e;
            self(self, var + 1, left - e);
        }
    };
    rec(rec, 0, t);
    return out;
}

/// Dense F2 system solvability: is `rhs` in the column space of `cols`?
/// Plain Gaussian elimination on bit-packed columns.
inline bool in_column_space(const std::vector<std::vector<std::uint8_t>>& cols, const std::vector<std::uint8_t>& rhs) {
    const std::size_t n = rhs.size();
    const std::size_t words = (n + 63) / 64;
    using Bits = std::vector<std::uint64_t>;
    auto pack = [&](const std::vector<std::uint8_t>& v) {
        Bits b(words, 0);
        for (std::size_t k = 0; k < n; ++k) {
            if (v[k]) b[k / 64] |= std::uint64_t{1} << (k % 64);
        }
        return b;
    };
    auto lead = [&](const Bits& b) -> std::size_t {
        for (std::size_t w = 0; w < words; ++w) {
            if (b[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(b[w]));
        }
        return n;
    };
    // basis[k] has leading bit k, or is empty
    std::vector<Bits> basis(n);
    auto reduce = [&](Bits v) {
        for (std::size_t k = lead(v); k < n; k = lead(v)) {
            if (basis[k].empty()) return v;
            for (std::size_t w = 0; w < words; ++w) v[w] ^= basis[k][w];
        }
        return v;
    };
    for (const auto& c : cols) {
        auto r = reduce(pack(c));
        const auto k = lead(r);
        if (k < n) basis[k] = std::move(r);
    }
    return lead(reduce(pack(rhs))) == n;
}

/// Is the polynomial q (nonnegative exponents) in the ideal of F2[u]
/// generated by the linear forms `gens` (bitmasks)? Each generator is
/// homogeneous of degree 1, so q is a member iff each homogeneous component
/// of degree t is a combination f_1 g_1 + ... with f_r homogeneous of degree
/// t - 1. That is a finite linear system over the coefficients of the f_r.
inline bool poly_ideal_member(std::size_t d, const std::vector<Mask>& gens, const Poly& q) {
    std::map<int, Poly> by_degree;
    for (const auto& m : q) {
        int t = 0;
        for (int e : m) t += e;
        by_degree[t].insert(m);
    }
    for (const auto& [t, part] : by_degree) {
        if (t == 0) return gens.empty() ? part.empty() : false;
        const auto targets = monomials_of_degree(d, t);
        std::map<Monomial, std::size_t> row;
        for (std::size_t k = 0; k < targets.size(); ++k) row[targets[k]] = k;
        std::vector<std::vector<std::uint8_t>> cols;
        for (auto g : gens) {
            for (const auto& f : monomials_of_degree(d, t - 1)) {
                std::vector<std::uint8_t> col(targets.size(), 0);
                for (std::size_t j = 0; j < d; ++j) {
                    if (!((g >> j) & 1)) continue;
                    auto m = f;
                    ++m[j];
                    col[row.at(m)] ^= 1;
                }
                cols.push_back(std::move(col));
            }
        }
        std::vector<std::uint8_t> rhs(targets.size(), 0);
        for (const auto& m : part) rhs[row.at(m)] = 1;
        if (!in_column_space(cols, rhs)) return false;
    }
    return true;
}

/// Laurent membership by bounded cofactor search: q is in the Laurent ideal
/// iff u^s q lies in the polynomial ideal for some monomial u^s with s at
/// least the minimal shift. Tries s = minimal + k (1,...,1), k = 0..extra.
/// One extra step is enough: a linear-form ideal is prime, so without a
/// variable among its members no monomial factor helps, and with some u_j
/// in it every term of the k = 1 shift is divisible by u_j.
inline bool laurent_ideal_member(std::size_t d, const std::vector<Mask>& gens, const Poly& q, int extra = 1) {
    if (q.empty()) return true;
    std::vector<int> shift(d, 0);
    bool first = true;
    for (const auto& m : q) {
        for (std::size_t j = 0; j < d; ++j) shift[j] = first ? -m[j] : std::max(shift[j], -m[j]);
        first = false;
    }
    for (int k = 0; k <= extra; ++k) {
        Poly shifted;
        for (const auto& m : q) {
            auto s = m;
            for (std::size_t j = 0; j < d; ++j) s[j] += shift[j] + k;
            shifted.insert(s);
        }
        if (poly_ideal_member(d, gens, shifted)) return true;
    }
    return false;
}

}  // namespace oracle
