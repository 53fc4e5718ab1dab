#include "nonrigid/windows.hpp"

#include "nonrigid/error.hpp"
#include "nonrigid/random.hpp"

#include <algorithm>
#include <limits>

namespace nonrigid {

namespace {

void require_same_box(const WindowConfig& x, const WindowConfig& y, const char* op) {
    if (!(x.box == y.box)) throw DimensionMismatch(std::string(op) + ": configurations live on different boxes");
}

}  // namespace

// ---------------------------------------------------------------- Box

Box::Box(Site lower, Site upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty()) throw PreconditionError("Box: dimension must be at least 1");
    if (lower_.size() != upper_.size()) throw DimensionMismatch("Box: lower and upper differ in dimension");
    for (std::size_t a = 0; a < lower_.size(); ++a) {
        if (upper_[a] <= lower_[a]) throw PreconditionError("Box: upper must exceed lower on every axis");
    }
}

Box Box::cube(std::size_t d, std::int64_t n) { return Box(Site(d, 0), Site(d, n)); }

std::size_t Box::site_count() const {
    std::size_t count = 1;
    for (std::size_t a = 0; a < dim(); ++a) {
        const auto e = static_cast<std::size_t>(extent(a));
        if (count > std::numeric_limits<std::size_t>::max() / e) throw ResourceLimitError("Box: site count overflows");
        count *= e;
    }
    return count;
}

bool Box::contains(const Site& s) const {
    if (s.size() != dim()) return false;
    for (std::size_t a = 0; a < dim(); ++a) {
        if (s[a] < lower_[a] || s[a] >= upper_[a]) return false;
    }
    return true;
}

bool Box::contains(const Box& inner) const {
    if (inner.dim() != dim()) return false;
    for (std::size_t a = 0; a < dim(); ++a) {
        if (inner.lower_[a] < lower_[a] || inner.upper_[a] > upper_[a]) return false;
    }
    return true;
}

std::size_t Box::index_of(const Site& s) const {
    std::size_t index = 0;
    for (std::size_t a = 0; a < dim(); ++a) {
        index = index * static_cast<std::size_t>(extent(a)) + static_cast<std::size_t>(s[a] - lower_[a]);
    }
    return index;
}

Site Box::site_at(std::size_t index) const {
    Site s(dim());
    for (std::size_t a = dim(); a-- > 0;) {
        const auto e = static_cast<std::size_t>(extent(a));
        s[a] = lower_[a] + static_cast<std::int64_t>(index % e);
        index /= e;
    }
    return s;
}

Box Box::translated(const Site& offset) const {
    if (offset.size() != dim()) throw DimensionMismatch("Box::translated: offset has the wrong dimension");
    Site lo = lower_;
    Site hi = upper_;
    for (std::size_t a = 0; a < dim(); ++a) {
        lo[a] += offset[a];
        hi[a] += offset[a];
    }
    return Box(std::move(lo), std::move(hi));
}

std::optional<Box> Box::intersect(const Box& other) const {
    if (other.dim() != dim()) throw DimensionMismatch("Box::intersect: dimensions differ");
    Site lo(dim());
    Site hi(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
        lo[a] = std::max(lower_[a], other.lower_[a]);
        hi[a] = std::min(upper_[a], other.upper_[a]);
        if (hi[a] <= lo[a]) return std::nullopt;
    }
    return Box(std::move(lo), std::move(hi));
}

// ---------------------------------------------------------------- configs

WindowConfig::WindowConfig(Box b) : box(std::move(b)), values(box.site_count()) {}

WindowConfig::WindowConfig(Box b, F2Vector v) : box(std::move(b)), values(std::move(v)) {
    if (values.size() != box.site_count()) throw DimensionMismatch("WindowConfig: value count does not match the box");
}

nlohmann::json to_json(const WindowConfig& x) {
    return {
        {"box", {{"lower", x.box.lower()}, {"upper", x.box.upper()}}},
        {"values", x.values.to_string()},
    };
}

WindowConfig config_from_json(const nlohmann::json& j) {
    try {
        Box box(j.at("box").at("lower").get<Site>(), j.at("box").at("upper").get<Site>());
        return WindowConfig(box, F2Vector::from_string(j.at("values").get<std::string>()));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("window config: ") + e.what(), 0);
    }
}

// ---------------------------------------------------------------- window space

WindowSpace::WindowSpace(Box box, BinaryCode code, F2Matrix constraints, F2Matrix solutions, std::size_t anchors,
                         std::size_t rank)
    : box_(std::move(box)),
      code_(std::move(code)),
      constraints_(std::move(constraints)),
      solutions_(std::move(solutions)),
      anchors_(anchors),
      rank_(rank) {}

std::optional<Box> anchor_box(const Box& box) {
    // i + e_j in box for every j: on axis a this needs lower <= i_a < upper
    // (from j != a) and lower - 1 <= i_a < upper - 1 (from j = a)
    const std::size_t d = box.dim();
    Site lo(d);
    Site hi(d);
    for (std::size_t a = 0; a < d; ++a) {
        lo[a] = d > 1 ? box.lower()[a] : box.lower()[a] - 1;
        hi[a] = box.upper()[a] - 1;
        if (hi[a] <= lo[a]) return std::nullopt;
    }
    return Box(std::move(lo), std::move(hi));
}

WindowSpace build_window_space(const Box& box, const BinaryCode& c, const WindowLimits& limits) {
    const std::size_t d = box.dim();
    if (c.length() != d) {
        throw DimensionMismatch("build_window_space: box dimension " + std::to_string(d) + " but code length " +
                                std::to_string(c.length()));
    }
    const std::size_t sites = box.site_count();
    if (sites > limits.max_sites) {
        throw ResourceLimitError("window has " + std::to_string(sites) + " sites, above the guard of " +
                                 std::to_string(limits.max_sites));
    }

    const BinaryCode rules = dual(c);
    const auto anchors = anchor_box(box);
    const std::size_t anchor_count = anchors ? anchors->site_count() : 0;
    if (anchor_count * rules.dim() > limits.max_constraints) {
        throw ResourceLimitError("window needs " + std::to_string(anchor_count * rules.dim()) +
                                 " constraints, above the guard of " + std::to_string(limits.max_constraints));
    }

    F2Matrix constraints(sites);
    if (anchors && rules.dim() > 0) {
        std::vector<std::size_t> stencil(d);
        for_each_site(*anchors, [&](const Site& i) {
            Site s = i;
            for (std::size_t j = 0; j < d; ++j) {
                ++s[j];
                stencil[j] = box.index_of(s);
                --s[j];
            }
            for (const auto& w : rules.basis().row_vectors()) {
                F2Vector row(sites);
                for (std::size_t j = 0; j < d; ++j) {
                    if (w.get(j)) row.flip(stencil[j]);
                }
                constraints.append_row(std::move(row));
            }
        });
    }

    auto echelon = row_reduce(constraints);
    const std::size_t rank = echelon.rank;
    F2Matrix solutions = kernel_basis(echelon);
    return WindowSpace(box, c, std::move(constraints), std::move(solutions), anchor_count, rank);
}

std::size_t log2_count(const WindowSpace& ws) { return ws.box().site_count() - ws.constraint_rank(); }

WindowConfig sample(const WindowSpace& ws, std::uint64_t seed) {
    Rng rng(seed);
    WindowConfig x(ws.box());
    for (const auto& b : ws.solution_basis().row_vectors()) {
        if (rng.bit()) x.values += b;
    }
    return x;
}

bool contains(const WindowSpace& ws, const WindowConfig& x) {
    if (!(x.box == ws.box())) throw DimensionMismatch("contains: configuration lives on a different box");
    const auto& rows = ws.constraint_matrix().row_vectors();
    return std::none_of(rows.begin(), rows.end(), [&](const F2Vector& r) { return dot(r, x.values); });
}

WindowConfig shift_restrict(const WindowConfig& x, const Site& m) {
    if (m.size() != x.box.dim()) throw DimensionMismatch("shift_restrict: shift has the wrong dimension");
    Site back(m.size());
    for (std::size_t a = 0; a < m.size(); ++a) back[a] = -m[a];
    const auto domain = x.box.intersect(x.box.translated(back));
    if (!domain) throw PreconditionError("shift_restrict: the shifted box does not overlap the original");
    WindowConfig out(*domain);
    std::size_t k = 0;
    for_each_site(*domain, [&](const Site& i) {
        Site src = i;
        for (std::size_t a = 0; a < m.size(); ++a) src[a] += m[a];
        if (x.at(src)) out.values.set(k, true);
        ++k;
    });
    return out;
}

WindowConfig restrict(const WindowConfig& x, const Box& inner) {
    if (!x.box.contains(inner)) throw PreconditionError("restrict: sub-box is not inside the configuration's box");
    WindowConfig out(inner);
    std::size_t k = 0;
    for_each_site(inner, [&](const Site& i) {
        if (x.at(i)) out.values.set(k, true);
        ++k;
    });
    return out;
}

WindowConfig star(const WindowConfig& x, const WindowConfig& y) {
    require_same_box(x, y, "star");
    return WindowConfig(x.box, cw_product(x.values, y.values));
}

WindowConfig add(const WindowConfig& x, const WindowConfig& y) {
    require_same_box(x, y, "add");
    return WindowConfig(x.box, x.values + y.values);
}

WindowConfig act(const LaurentPoly& p, const WindowConfig& x) {
    if (p.arity() != x.box.dim()) throw DimensionMismatch("act: polynomial arity does not match the box");
    std::optional<Box> domain = x.box;
    for (const auto& m : p.terms()) {
        Site back(m.size());
        for (std::size_t a = 0; a < m.size(); ++a) back[a] = -m[a];
        domain = domain->intersect(x.box.translated(back));
        if (!domain) throw PreconditionError("act: p . x is defined nowhere on this box");
    }
    WindowConfig out(*domain);
    std::size_t k = 0;
    for_each_site(*domain, [&](const Site& i) {
        bool v = false;
        for (const auto& m : p.terms()) {
            Site src = i;
            for (std::size_t a = 0; a < m.size(); ++a) src[a] += m[a];
            v ^= x.at(src);
        }
        out.values.set(k++, v);
    });
    return out;
}

std::vector<EntropySample> entropy_profile(const BinaryCode& c, const std::vector<std::int64_t>& sides,
                                           const WindowLimits& limits) {
    std::vector<EntropySample> out;
    for (auto n : sides) {
        if (n < 1) throw PreconditionError("entropy_profile: box sides must be positive");
        const auto ws = build_window_space(Box::cube(c.length(), n), c, limits);
        out.push_back({n, log2_count(ws), ws.box().site_count()});
    }
    return out;
}

}  // namespace nonrigid
