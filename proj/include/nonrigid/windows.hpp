#pragma once

// Finite windows of the Markov subgroup
//   X_C = { x in F2^(Z^d) : (x(i+e_1), ..., x(i+e_d)) in C for every i }.
// A window is an axis-aligned box; its solution space holds the box
// configurations that satisfy every constraint whose stencil fits inside.

#include "nonrigid/codes.hpp"
#include "nonrigid/gf2.hpp"
#include "nonrigid/laurent.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nonrigid {

using Site = std::vector<std::int64_t>;

/// Half-open box: sites i with lower <= i < upper on every axis.
class Box {
public:
    Box(Site lower, Site upper);
    /// [0, n)^d
    static Box cube(std::size_t d, std::int64_t n);

    std::size_t dim() const noexcept { return lower_.size(); }
    const Site& lower() const noexcept { return lower_; }
    const Site& upper() const noexcept { return upper_; }
    std::int64_t extent(std::size_t axis) const { return upper_[axis] - lower_[axis]; }
    /// Number of sites; throws ResourceLimitError if it does not fit in 64 bits.
    std::size_t site_count() const;

    bool contains(const Site& s) const;
    bool contains(const Box& inner) const;
    /// Row-major (last axis fastest) position of a site inside the box.
    std::size_t index_of(const Site& s) const;
    Site site_at(std::size_t index) const;

    Box translated(const Site& offset) const;
    /// Intersection, or nothing when empty.
    std::optional<Box> intersect(const Box& other) const;

    friend bool operator==(const Box&, const Box&) = default;

private:
    Site lower_;
    Site upper_;
};

/// Calls visit(site) for each site of the box in row-major order.
template <typename Visit>
void for_each_site(const Box& box, Visit&& visit) {
    Site s = box.lower();
    const std::size_t d = box.dim();
    while (true) {
        visit(static_cast<const Site&>(s));
        std::size_t axis = d;
        while (axis > 0) {
            --axis;
            if (++s[axis] < box.upper()[axis]) break;
            s[axis] = box.lower()[axis];
            if (axis == 0) return;
        }
    }
}

/// A {0,1} value at every site of a box.
struct WindowConfig {
    Box box;
    F2Vector values;

    explicit WindowConfig(Box b);
    WindowConfig(Box b, F2Vector v);

    bool at(const Site& s) const { return values.get(box.index_of(s)); }
    void set(const Site& s, bool value) { values.set(box.index_of(s), value); }
    bool is_zero() const { return values.is_zero(); }

    friend bool operator==(const WindowConfig&, const WindowConfig&) = default;
};

/// {"box": {"lower": [...], "upper": [...]}, "values": "0101..."}
nlohmann::json to_json(const WindowConfig& x);
WindowConfig config_from_json(const nlohmann::json& j);

struct WindowLimits {
    std::size_t max_sites = 20'000;
    std::size_t max_constraints = 200'000;
};

class WindowSpace {
public:
    const Box& box() const noexcept { return box_; }
    const BinaryCode& code() const noexcept { return code_; }
    /// One row per (anchor, dual basis row), anchors in row-major order.
    const F2Matrix& constraint_matrix() const noexcept { return constraints_; }
    const F2Matrix& solution_basis() const noexcept { return solutions_; }
    std::size_t anchor_count() const noexcept { return anchors_; }
    std::size_t constraint_rank() const noexcept { return rank_; }
    /// log2 of the number of solutions.
    std::size_t dimension() const noexcept { return solutions_.rows(); }

private:
    friend WindowSpace build_window_space(const Box& box, const BinaryCode& c, const WindowLimits& limits);
    WindowSpace(Box box, BinaryCode code, F2Matrix constraints, F2Matrix solutions, std::size_t anchors,
                std::size_t rank);

    Box box_;
    BinaryCode code_;
    F2Matrix constraints_;
    F2Matrix solutions_;
    std::size_t anchors_;
    std::size_t rank_;
};

/// Sites i whose stencil {i + e_1, ..., i + e_d} lies in the box, or
/// nothing if there are none.
std::optional<Box> anchor_box(const Box& box);

/// Constraints sum_j w_j x(i + e_j) = 0 for each anchor i and each row w of
/// a basis of the dual code, together with their solution space.
WindowSpace build_window_space(const Box& box, const BinaryCode& c, const WindowLimits& limits = {});

/// sites - rank(constraints)
std::size_t log2_count(const WindowSpace& ws);

/// Uniform element of the solution space: a seeded random F2 combination of
/// the solution basis. Same seed, same configuration.
WindowConfig sample(const WindowSpace& ws, std::uint64_t seed);

/// constraint_matrix * x = 0
bool contains(const WindowSpace& ws, const WindowConfig& x);

/// S(m)x restricted to where it is defined inside the original box: the
/// result lives on box ∩ (box - m) and holds x(i + m) at site i.
WindowConfig shift_restrict(const WindowConfig& x, const Site& m);

/// x on a sub-box.
WindowConfig restrict(const WindowConfig& x, const Box& inner);

/// Sitewise product.
WindowConfig star(const WindowConfig& x, const WindowConfig& y);
/// Sitewise sum.
WindowConfig add(const WindowConfig& x, const WindowConfig& y);

/// The module action (p . x)(i) = sum_m c_p(m) x(i + m), on the sites where
/// every x(i + m) is defined.
WindowConfig act(const LaurentPoly& p, const WindowConfig& x);

struct EntropySample {
    std::int64_t side = 0;
    std::size_t log2_count = 0;
    std::size_t sites = 0;

    /// log2_count / sites
    boost::multiprecision::cpp_rational ratio() const {
        return boost::multiprecision::cpp_rational(log2_count, sites);
    }
};

/// Per-site log-count on the cubes [0, N)^d for each N in sides.
std::vector<EntropySample> entropy_profile(const BinaryCode& c, const std::vector<std::int64_t>& sides,
                                           const WindowLimits& limits = {});

}  // namespace nonrigid
