#pragma once

// The triple system (X_C, X_C, X_C') with the commuting map
// f(x, y, z) = (x, y, x*y + z), and machine checks of its properties.

#include "nonrigid/codes.hpp"
#include "nonrigid/windows.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nonrigid {

struct CounterexampleSystem {
    std::size_t d = 0;
    BinaryCode c;
    BinaryCode c_prime;

    /// Any pair of codes of equal length, without checking the invariants.
    /// Used for toy and deliberately broken systems.
    static CounterexampleSystem custom(BinaryCode c, BinaryCode c_prime);
};

/// d = 8: (C8, E8); d > 8: (C8 + F2^(d-8), E8 + F2^(d-8)). Verifies the
/// system invariants before returning. Throws PreconditionError for d < 8,
/// where no construction is provided.
CounterexampleSystem construct(std::size_t d);

nlohmann::json system_json(const CounterexampleSystem& sys);

struct TripleConfig {
    WindowConfig x;
    WindowConfig y;
    WindowConfig z;

    friend bool operator==(const TripleConfig&, const TripleConfig&) = default;
};

/// (x, y, x*y + z)
TripleConfig f_apply(const TripleConfig& t);

using TripleMap = std::function<TripleConfig(const TripleConfig&)>;

/// Applies shift_restrict to each component.
TripleConfig shift_restrict(const TripleConfig& t, const Site& m);

struct Check {
    std::string name;
    bool passed = false;
    nlohmann::json witness;
    std::int64_t millis = 0;
};

class VerificationReport {
public:
    VerificationReport() = default;
    explicit VerificationReport(nlohmann::json system) : system_(std::move(system)) {}

    const nlohmann::json& system() const noexcept { return system_; }
    const std::vector<Check>& checks() const noexcept { return checks_; }
    /// Conjunction of all checks.
    bool passed() const;

    void add(Check c);
    /// Runs `body`, timing it; body fills in `passed` and `witness`.
    void run(const std::string& name, const std::function<void(Check&)>& body);
    /// Appends the checks of another report, prefixing their names.
    void merge(const VerificationReport& other, const std::string& prefix);
    /// Sorts checks by name; stable, so equal names keep insertion order.
    void sort();

    /// {"schema_version": 1, "system": ..., "checks": [...], "passed": ...}.
    /// Without timing the "millis" fields are omitted.
    nlohmann::json to_json(bool include_timing = true) const;
    std::string to_text() const;

private:
    nlohmann::json system_;
    std::vector<Check> checks_;
};

struct PremiseOptions {
    std::size_t mixing_samples = 50;
    std::uint64_t seed = 0;
    /// Entries of the random n are drawn from [-bound, bound].
    std::int64_t n_bound = 1'000'000;
};

/// Properness (zero entropy), 1 in C and C', star closure, C in C',
/// integral non-degeneracy of both codes, and mixing certificates for
/// random nonzero n. Failures are recorded, never thrown.
VerificationReport verify_premises(const CounterexampleSystem& sys, const PremiseOptions& options = {});

struct DynamicsOptions {
    std::int64_t box_side = 2;
    std::uint64_t seed = 0;
    std::size_t samples = 100;
    /// Shifts are drawn with |m|_inf <= max_shift, clipped so that the
    /// shifted window still overlaps the original.
    std::int64_t max_shift = 3;
    std::size_t shifts_per_sample = 3;
    WindowLimits limits;
    TripleMap map = f_apply;
    /// Also run the exhaustive repetition-code toy.
    bool include_toy = true;
};

/// Involution, constraint preservation and shift equivariance of the map on
/// seeded samples of the window solution spaces.
VerificationReport verify_dynamics(const CounterexampleSystem& sys, const DynamicsOptions& options = {});

/// The same three checks over every triple of the repetition-3 system on
/// the 2x2x2 box (64^3 triples, all shifts with |m|_inf <= 1), plus the
/// non-affineness witness.
VerificationReport verify_toy_exhaustive(const TripleMap& map = f_apply);

/// Triple map checks over the whole solution set of an arbitrary small
/// system; used by verify_toy_exhaustive and available for other toys.
VerificationReport verify_exhaustive(const CounterexampleSystem& sys, const Box& box, const TripleMap& map,
                                     std::int64_t max_shift);

struct NonAffineWitness {
    WindowConfig x;
    /// f(x,x,0) + f(x,0,0) + f(0,x,0) + f(0,0,0); an affine map would give zero.
    TripleConfig second_difference;
};

/// A nonzero window solution x of X_C and the second difference of f at x,
/// which equals (0, 0, x*x) = (0, 0, x). Throws PreconditionError when the
/// solution space is {0}.
NonAffineWitness non_affine_witness(const CounterexampleSystem& sys, const Box& box, std::uint64_t seed,
                                    const WindowLimits& limits = {});

struct VerifyOptions {
    std::int64_t box_side = 2;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    std::size_t mixing_samples = 50;
    std::int64_t max_shift = 3;
    WindowLimits limits;
};

/// Premises, dynamics, the non-affineness witness and the entropy profile
/// over sides 2..box_side, merged into one report.
VerificationReport verify_system(const CounterexampleSystem& sys, const VerifyOptions& options = {});

}  // namespace nonrigid
