#include "nonrigid/rigidity.hpp"

#include "nonrigid/error.hpp"
#include "nonrigid/laurent.hpp"
#include "nonrigid/random.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <array>
#include <map>
#include <unordered_map>

namespace nonrigid {

namespace {

nlohmann::json code_json(const BinaryCode& c) {
    nlohmann::json basis = nlohmann::json::array();
    for (const auto& r : c.basis().row_vectors()) basis.push_back(r.to_string());
    return {{"length", c.length()}, {"dim", c.dim()}, {"basis", std::move(basis)}};
}

std::string ratio_string(const EntropySample& s) {
    return std::to_string(s.log2_count) + "/" + std::to_string(s.sites);
}

// Every solution of a small window space, in Gray-code order.
std::vector<WindowConfig> enumerate_solutions(const WindowSpace& ws) {
    constexpr std::size_t kMaxDim = 16;
    if (ws.dimension() > kMaxDim) {
        throw ResourceLimitError("exhaustive check: solution space of dimension " + std::to_string(ws.dimension()) +
                                 " is too large to enumerate");
    }
    std::vector<WindowConfig> out;
    WindowConfig x(ws.box());
    out.push_back(x);
    const std::uint64_t count = std::uint64_t{1} << ws.dimension();
    for (std::uint64_t i = 1; i < count; ++i) {
        x.values += ws.solution_basis().row(static_cast<std::size_t>(std::countr_zero(i)));
        out.push_back(x);
    }
    return out;
}

// All shifts m with |m_a| <= min(max_shift, extent_a - 1), row-major.
std::vector<Site> all_shifts(const Box& box, std::int64_t max_shift) {
    Site lo(box.dim());
    Site hi(box.dim());
    for (std::size_t a = 0; a < box.dim(); ++a) {
        const auto r = std::min(max_shift, box.extent(a) - 1);
        lo[a] = -r;
        hi[a] = r + 1;
    }
    std::vector<Site> shifts;
    for_each_site(Box(lo, hi), [&](const Site& m) { shifts.push_back(m); });
    return shifts;
}

bool triple_valid(const TripleConfig& t, const WindowSpace& ws_c, const WindowSpace& ws_cp) {
    return t.x.box == ws_c.box() && t.y.box == ws_c.box() && t.z.box == ws_cp.box() && contains(ws_c, t.x) &&
           contains(ws_c, t.y) && contains(ws_cp, t.z);
}

}  // namespace

CounterexampleSystem CounterexampleSystem::custom(BinaryCode c, BinaryCode c_prime) {
    if (c.length() != c_prime.length()) throw DimensionMismatch("CounterexampleSystem: code lengths differ");
    const auto d = c.length();
    return CounterexampleSystem{d, std::move(c), std::move(c_prime)};
}

CounterexampleSystem construct(std::size_t d) {
    if (d < 8) {
        throw PreconditionError("construct: no construction is provided for d = " + std::to_string(d) +
                                " (it starts at d = 8)");
    }
    auto c = standard_code(StandardCode::c8);
    auto c_prime = standard_code(StandardCode::even, 8);
    if (d > 8) {
        const auto tail = standard_code(StandardCode::full, d - 8);
        c = direct_sum(c, tail);
        c_prime = direct_sum(c_prime, tail);
    }
    auto sys = CounterexampleSystem::custom(std::move(c), std::move(c_prime));

    const bool ok = sys.c.is_proper() && sys.c_prime.is_proper() && contains_all_ones(sys.c) &&
                    star_closure_check(sys.c, sys.c_prime) && is_subcode(sys.c, sys.c_prime) &&
                    is_integrally_nondegenerate(sys.c).verdict && is_integrally_nondegenerate(sys.c_prime).verdict;
    if (!ok) throw Error("construct: constructed system violates its invariants");
    return sys;
}

nlohmann::json system_json(const CounterexampleSystem& sys) {
    return {{"d", sys.d}, {"c", code_json(sys.c)}, {"c_prime", code_json(sys.c_prime)}};
}

TripleConfig f_apply(const TripleConfig& t) { return TripleConfig{t.x, t.y, add(star(t.x, t.y), t.z)}; }

TripleConfig shift_restrict(const TripleConfig& t, const Site& m) {
    return TripleConfig{shift_restrict(t.x, m), shift_restrict(t.y, m), shift_restrict(t.z, m)};
}

// ---------------------------------------------------------------- premises

VerificationReport verify_premises(const CounterexampleSystem& sys, const PremiseOptions& options) {
    VerificationReport report(system_json(sys));

    const std::pair<const char*, const BinaryCode*> codes[] = {{"c", &sys.c}, {"c_prime", &sys.c_prime}};
    for (const auto& [label, code] : codes) {
        const std::string prefix = std::string(label) + ".";

        report.run(prefix + "proper", [&](Check& c) {
            const auto verdict = entropy_verdict(*code);
            c.passed = verdict == EntropyVerdict::zero_entropy;
            c.witness = {{"dim", code->dim()}, {"length", code->length()}, {"entropy", to_string(verdict)}};
        });

        report.run(prefix + "contains_ones", [&](Check& c) { c.passed = contains_all_ones(*code); });

        report.run(prefix + "nondegenerate", [&](Check& c) {
            try {
                const auto cert = is_integrally_nondegenerate(*code);
                c.passed = cert.verdict;
                if (cert.kernel_witness) c.witness = {{"kernel_witness", cert.kernel_witness->to_string()}};
            } catch (const Error& e) {
                c.passed = false;
                c.witness = {{"error", e.what()}};
            }
        });

        report.run(prefix + "mixing_certificates", [&](Check& c) {
            Rng rng(derive_seed(options.seed, label[1] == '_' ? 2 : 1));
            const auto generators = annihilator_ideal(*code).generators();
            nlohmann::json certs = nlohmann::json::array();
            c.passed = true;
            try {
                for (std::size_t s = 0; s < options.mixing_samples; ++s) {
                    IntVector n(code->length());
                    do {
                        for (std::size_t i = 0; i < n.size(); ++i) n[i] = rng.uniform(-options.n_bound, options.n_bound);
                    } while (n.is_zero());
                    const auto w = mixing_certificate(*code, n);
                    const auto b = b_map(n, w);
                    // w must kill every generator of I(X_C) and separate u^n from 1
                    const bool kills = std::all_of(generators.begin(), generators.end(),
                                                   [&](const LaurentPoly& g) { return phi_w(g, w).is_zero(); });
                    const bool ok = code->contains(w) && b != 0 && kills && !phi_w(unit_binomial(n), w).is_zero();
                    certs.push_back({{"n", n.to_string()}, {"w", w.to_string()}, {"B", b.str()}, {"ok", ok}});
                    c.passed = c.passed && ok;
                }
                c.witness = {{"count", options.mixing_samples}, {"certificates", std::move(certs)}};
            } catch (const DegenerateCodeError& e) {
                c.passed = false;
                c.witness = {{"error", e.what()}, {"kernel_witness", e.witness().to_string()}};
            } catch (const Error& e) {
                c.passed = false;
                c.witness = {{"error", e.what()}};
            }
        });
    }

    report.run("star_closure", [&](Check& c) {
        c.passed = star_closure_check(sys.c, sys.c_prime);
        if (!c.passed) {
            const auto& b = sys.c.basis();
            for (std::size_t i = 0; i < b.rows() && c.witness.is_null(); ++i) {
                for (std::size_t j = i; j < b.rows(); ++j) {
                    const auto prod = cw_product(b.row(i), b.row(j));
                    if (!sys.c_prime.contains(prod)) {
                        c.witness = {{"x", b.row(i).to_string()}, {"y", b.row(j).to_string()},
                                     {"product", prod.to_string()}};
                        break;
                    }
                }
            }
        }
    });

    report.run("c_subset_c_prime", [&](Check& c) {
        c.passed = is_subcode(sys.c, sys.c_prime);
        if (!c.passed) {
            for (const auto& r : sys.c.basis().row_vectors()) {
                if (!sys.c_prime.contains(r)) {
                    c.witness = {{"outside", r.to_string()}};
                    break;
                }
            }
        }
    });

    report.sort();
    return report;
}

// ---------------------------------------------------------------- dynamics

VerificationReport verify_dynamics(const CounterexampleSystem& sys, const DynamicsOptions& options) {
    VerificationReport report(system_json(sys));
    const Box box = Box::cube(sys.d, options.box_side);
    const auto ws_c = build_window_space(box, sys.c, options.limits);
    const auto ws_cp = build_window_space(box, sys.c_prime, options.limits);

    std::vector<TripleConfig> triples;
    std::vector<TripleConfig> images;
    for (std::size_t s = 0; s < options.samples; ++s) {
        triples.push_back({sample(ws_c, derive_seed(options.seed, 3 * s)),
                           sample(ws_c, derive_seed(options.seed, 3 * s + 1)),
                           sample(ws_cp, derive_seed(options.seed, 3 * s + 2))});
        images.push_back(options.map(triples.back()));
    }

    report.run("involution", [&](Check& c) {
        c.passed = true;
        c.witness = {{"triples", triples.size()}};
        for (std::size_t s = 0; s < triples.size(); ++s) {
            if (!(options.map(images[s]) == triples[s])) {
                c.passed = false;
                c.witness["first_failure"] = s;
                break;
            }
        }
    });

    report.run("constraint_preservation", [&](Check& c) {
        c.passed = true;
        c.witness = {{"triples", triples.size()}, {"solution_dims", {ws_c.dimension(), ws_cp.dimension()}}};
        for (std::size_t s = 0; s < triples.size(); ++s) {
            if (!triple_valid(triples[s], ws_c, ws_cp)) throw Error("verify_dynamics: sampled an invalid triple");
            if (!triple_valid(images[s], ws_c, ws_cp)) {
                c.passed = false;
                c.witness["first_failure"] = s;
                break;
            }
        }
    });

    report.run("equivariance", [&](Check& c) {
        Rng rng(derive_seed(options.seed, 0x5eed5ULL));
        std::vector<std::int64_t> radius(sys.d);
        for (std::size_t a = 0; a < sys.d; ++a) radius[a] = std::min(options.max_shift, box.extent(a) - 1);
        std::size_t checked = 0;
        c.passed = true;
        for (std::size_t s = 0; s < triples.size() && c.passed; ++s) {
            for (std::size_t k = 0; k < options.shifts_per_sample; ++k) {
                Site m(sys.d);
                for (std::size_t a = 0; a < sys.d; ++a) m[a] = rng.uniform(-radius[a], radius[a]);
                ++checked;
                if (!(options.map(shift_restrict(triples[s], m)) == shift_restrict(images[s], m))) {
                    c.passed = false;
                    c.witness["first_failure"] = {{"sample", s}, {"shift", m}};
                    break;
                }
            }
        }
        c.witness["shifts_checked"] = checked;
        c.witness["max_shift"] = *std::max_element(radius.begin(), radius.end());
    });

    if (options.include_toy) report.merge(verify_toy_exhaustive(options.map), "toy.");
    report.sort();
    return report;
}

namespace {

// Assigns a dense id to every distinct window configuration seen, so the
// exhaustive sweep can compare and memoise by integers.
class ConfigTable {
public:
    std::uint32_t id(const WindowConfig& x) {
        Key key{x.box.lower(), x.box.upper(), x.values};
        auto [it, inserted] = ids_.try_emplace(std::move(key), static_cast<std::uint32_t>(configs_.size()));
        if (inserted) configs_.push_back(x);
        return it->second;
    }
    const WindowConfig& at(std::uint32_t id) const { return configs_[id]; }

private:
    struct Key {
        Site lower;
        Site upper;
        F2Vector values;
        auto operator<=>(const Key&) const = default;
    };
    std::map<Key, std::uint32_t> ids_;
    std::vector<WindowConfig> configs_;
};

}  // namespace

VerificationReport verify_exhaustive(const CounterexampleSystem& sys, const Box& box, const TripleMap& map,
                                     std::int64_t max_shift) {
    VerificationReport report(system_json(sys));
    const auto ws_c = build_window_space(box, sys.c);
    const auto ws_cp = build_window_space(box, sys.c_prime);
    const auto xs = enumerate_solutions(ws_c);
    const auto zs = enumerate_solutions(ws_cp);
    const auto shifts = all_shifts(box, max_shift);
    if (shifts.size() > 255) throw ResourceLimitError("exhaustive check: too many shifts");

    ConfigTable table;
    std::vector<std::uint32_t> x_ids;
    std::vector<std::uint32_t> z_ids;
    for (const auto& x : xs) x_ids.push_back(table.id(x));
    for (const auto& z : zs) z_ids.push_back(table.id(z));

    // ids of shift_restrict(config, shifts[k]), filled on first use; node
    // based so that returned references stay valid
    std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> shifted;
    auto shifts_of = [&](std::uint32_t id) -> const std::vector<std::uint32_t>& {
        auto it = shifted.find(id);
        if (it == shifted.end()) {
            std::vector<std::uint32_t> v;
            v.reserve(shifts.size());
            for (const auto& m : shifts) {
                const WindowConfig moved = shift_restrict(table.at(id), m);
                v.push_back(table.id(moved));
            }
            it = shifted.emplace(id, std::move(v)).first;
        }
        return it->second;
    };

    // map applied to a triple of ids, memoised; the map is a pure function
    constexpr std::uint32_t kMaxId = 1u << 21;
    std::unordered_map<std::uint64_t, std::array<std::uint32_t, 3>> images;
    auto apply = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) -> std::array<std::uint32_t, 3> {
        if (std::max({a, b, c}) >= kMaxId) {
            throw ResourceLimitError("exhaustive check: too many distinct configurations");
        }
        const std::uint64_t key = (std::uint64_t{a} << 42) | (std::uint64_t{b} << 21) | c;
        if (auto it = images.find(key); it != images.end()) return it->second;
        const auto out = map(TripleConfig{table.at(a), table.at(b), table.at(c)});
        const std::array<std::uint32_t, 3> ids{table.id(out.x), table.id(out.y), table.id(out.z)};
        images.emplace(key, ids);
        return ids;
    };

    std::map<std::uint32_t, bool> valid_c;
    std::map<std::uint32_t, bool> valid_cp;
    auto valid = [&](std::map<std::uint32_t, bool>& memo, const WindowSpace& ws, std::uint32_t id) {
        auto it = memo.find(id);
        if (it == memo.end()) {
            const auto& x = table.at(id);
            it = memo.emplace(id, x.box == ws.box() && contains(ws, x)).first;
        }
        return it->second;
    };

    std::size_t triples = 0;
    std::size_t involution_failures = 0;
    std::size_t closure_failures = 0;
    std::size_t equivariance_failures = 0;
    std::size_t equivariance_checks = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto x : x_ids) {
        for (const auto y : x_ids) {
            for (const auto z : z_ids) {
                ++triples;
                const auto image = apply(x, y, z);
                if (apply(image[0], image[1], image[2]) != std::array{x, y, z}) ++involution_failures;
                if (!valid(valid_c, ws_c, image[0]) || !valid(valid_c, ws_c, image[1]) ||
                    !valid(valid_cp, ws_cp, image[2])) {
                    ++closure_failures;
                }
                const auto& sx = shifts_of(x);
                const auto& sy = shifts_of(y);
                const auto& sz = shifts_of(z);
                const auto& fx = shifts_of(image[0]);
                const auto& fy = shifts_of(image[1]);
                const auto& fz = shifts_of(image[2]);
                for (std::size_t k = 0; k < shifts.size(); ++k) {
                    ++equivariance_checks;
                    const auto lhs = apply(sx[k], sy[k], sz[k]);
                    if (lhs != std::array{fx[k], fy[k], fz[k]}) ++equivariance_failures;
                }
            }
        }
    }
    const auto millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    const nlohmann::json scope = {{"triples", triples}, {"solution_dims", {ws_c.dimension(), ws_cp.dimension()}}};
    auto with = [&](nlohmann::json extra) {
        nlohmann::json j = scope;
        j.update(extra);
        return j;
    };
    report.add({"involution", involution_failures == 0, with({{"failures", involution_failures}}), millis});
    report.add({"constraint_preservation", closure_failures == 0, with({{"failures", closure_failures}}), 0});
    report.add({"equivariance", equivariance_failures == 0,
                with({{"failures", equivariance_failures}, {"checks", equivariance_checks}, {"shifts", shifts.size()}}),
                0});

    report.run("non_affine", [&](Check& c) {
        // every nonzero x is a witness; record how many there are
        std::size_t witnesses = 0;
        for (const auto& x : xs) {
            if (x.is_zero()) continue;
            const auto xx = star(x, x);
            if (xx == x && !xx.is_zero()) ++witnesses;
        }
        const auto w = non_affine_witness(sys, box, 0);
        const bool shape = w.second_difference.x.is_zero() && w.second_difference.y.is_zero() &&
                           w.second_difference.z == star(w.x, w.x) && !w.second_difference.z.is_zero();
        c.passed = shape && witnesses + 1 == xs.size();
        c.witness = {{"nonzero_solutions", witnesses}, {"x", w.x.values.to_string()}};
    });

    report.sort();
    return report;
}

VerificationReport verify_toy_exhaustive(const TripleMap& map) {
    const auto rep = standard_code(StandardCode::repetition, 3);
    return verify_exhaustive(CounterexampleSystem::custom(rep, rep), Box::cube(3, 2), map, 1);
}

NonAffineWitness non_affine_witness(const CounterexampleSystem& sys, const Box& box, std::uint64_t seed,
                                    const WindowLimits& limits) {
    const auto ws = build_window_space(box, sys.c, limits);
    if (ws.dimension() == 0) throw PreconditionError("non_affine_witness: the window solution space is {0}");
    WindowConfig x = sample(ws, seed);
    if (x.is_zero()) x = WindowConfig(box, ws.solution_basis().row(0));

    const WindowConfig zero(box);
    const WindowConfig zero_z(box);
    auto apply = [&](const WindowConfig& a, const WindowConfig& b) { return f_apply(TripleConfig{a, b, zero_z}); };
    const auto t1 = apply(x, x);
    const auto t2 = apply(x, zero);
    const auto t3 = apply(zero, x);
    const auto t4 = apply(zero, zero);
    TripleConfig diff{add(add(t1.x, t2.x), add(t3.x, t4.x)), add(add(t1.y, t2.y), add(t3.y, t4.y)),
                      add(add(t1.z, t2.z), add(t3.z, t4.z))};
    return NonAffineWitness{std::move(x), std::move(diff)};
}

// ---------------------------------------------------------------- full suite

VerificationReport verify_system(const CounterexampleSystem& sys, const VerifyOptions& options) {
    if (options.box_side < 2) throw PreconditionError("verify_system: box side must be at least 2");
    VerificationReport report(system_json(sys));

    PremiseOptions premises;
    premises.mixing_samples = options.mixing_samples;
    premises.seed = options.seed;
    report.merge(verify_premises(sys, premises), "premises.");

    DynamicsOptions dynamics;
    dynamics.box_side = options.box_side;
    dynamics.seed = options.seed;
    dynamics.samples = options.samples;
    dynamics.max_shift = options.max_shift;
    dynamics.limits = options.limits;
    report.merge(verify_dynamics(sys, dynamics), "dynamics.");

    const Box box = Box::cube(sys.d, options.box_side);
    report.run("non_affine", [&](Check& c) {
        const auto w = non_affine_witness(sys, box, options.seed, options.limits);
        const auto xx = star(w.x, w.x);
        c.passed = w.second_difference.x.is_zero() && w.second_difference.y.is_zero() &&
                   w.second_difference.z == xx && !xx.is_zero();
        c.witness = {{"x_weight", weight(w.x.values)}, {"second_difference_z_weight", weight(w.second_difference.z.values)}};
    });

    std::vector<std::int64_t> sides;
    for (std::int64_t n = 2; n <= options.box_side; ++n) sides.push_back(n);
    const std::pair<const char*, const BinaryCode*> codes[] = {{"c", &sys.c}, {"c_prime", &sys.c_prime}};
    for (const auto& [label, code] : codes) {
        report.run(std::string("entropy.") + label, [&](Check& c) {
            const auto profile = entropy_profile(*code, sides, options.limits);
            nlohmann::json ratios = nlohmann::json::array();
            c.passed = true;
            for (std::size_t i = 0; i < profile.size(); ++i) {
                ratios.push_back(ratio_string(profile[i]));
                if (profile[i].ratio() >= 1) c.passed = false;
                if (i > 0 && !(profile[i].ratio() < profile[i - 1].ratio())) c.passed = false;
            }
            c.witness = {{"sides", sides}, {"ratios", std::move(ratios)}};
        });
    }

    report.sort();
    return report;
}

}  // namespace nonrigid
