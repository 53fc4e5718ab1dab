// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every computed value is compared against an exact expectation or
// an independent brute-force oracle.

#include "nonrigid/codes.hpp"
#include "nonrigid/laurent.hpp"
#include "nonrigid/random.hpp"
#include "nonrigid/rigidity.hpp"
#include "nonrigid/windows.hpp"
#include "oracles.hpp"

#include <json.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace nonrigid;
using boost::multiprecision::cpp_rational;
namespace fs = std::filesystem;

namespace {

// Collects the first few failure messages of one criterion.
class Criterion {
public:
    void expect(bool ok, const std::string& what) {
        if (ok) return;
        ++failures_;
        if (messages_.size() < 5) messages_.push_back(what);
    }
    bool passed() const { return failures_ == 0; }
    std::size_t failures() const { return failures_; }
    const std::vector<std::string>& messages() const { return messages_; }

private:
    std::size_t failures_ = 0;
    std::vector<std::string> messages_;
};

oracle::Mask to_mask(const F2Vector& v) {
    oracle::Mask m = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v.get(i)) m |= oracle::Mask{1} << i;
    }
    return m;
}

F2Vector random_f2(Rng& rng, std::size_t d) {
    F2Vector v(d);
    for (std::size_t i = 0; i < d; ++i) v.set(i, rng.bit());
    return v;
}

IntVector random_int_vector(Rng& rng, std::size_t d, std::int64_t bound) {
    IntVector n(d);
    for (std::size_t i = 0; i < d; ++i) n[i] = rng.uniform(-bound, bound);
    return n;
}

std::set<oracle::Mask> words_of(const BinaryCode& c) {
    std::set<oracle::Mask> out;
    c.for_each_codeword([&](const F2Vector& v) { out.insert(to_mask(v)); });
    return out;
}

LaurentPoly random_poly(Rng& rng, std::size_t d, std::size_t max_terms, std::int64_t range) {
    LaurentPoly p(d);
    const auto n = rng.below(max_terms + 1);
    for (std::uint64_t t = 0; t < n; ++t) {
        Exponent m(d);
        for (auto& e : m) e = rng.uniform(-range, range);
        p.toggle(m);
    }
    return p;
}

oracle::Poly to_oracle(const LaurentPoly& p) {
    oracle::Poly out;
    for (const auto& m : p.terms()) out.insert(oracle::Monomial(m.begin(), m.end()));
    return out;
}

LaurentPoly binomial(std::vector<BigInt> n) { return unit_binomial(IntVector(std::move(n))); }

// 1. Facts about C8, E_d and duality.
void code_facts(Criterion& k) {
    const auto c8 = standard_code(StandardCode::c8);
    k.expect(c8.dim() == 4, "dim C8 = 4");
    k.expect(dual(c8) == c8, "C8 is self-dual");
    k.expect(weight_class(c8) == WeightClass::doubly_even, "C8 doubly even");
    k.expect(weight_class(c8, WeightClassMethod::exhaustive) == WeightClass::doubly_even, "C8 doubly even (exhaustive)");
    k.expect(is_self_orthogonal(c8), "C8 self-orthogonal");
    k.expect(contains_all_ones(c8), "1 in C8");
    const auto c8_words = words_of(c8);
    k.expect(oracle::dual(8, c8_words) == c8_words, "C8 self-dual (oracle)");

    for (std::size_t d = 2; d <= 12; ++d) {
        const auto ed = dual(standard_code(StandardCode::even, d));
        k.expect(ed == standard_code(StandardCode::repetition, d), "dual(E_" + std::to_string(d) + ") = {0, 1}");
        k.expect(ed.dim() == 1 && ed.contains(F2Vector::all_ones(d)), "dual(E_d) contains exactly 1");
    }

    Rng rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = static_cast<std::size_t>(rng.uniform(1, 16));
        const auto count = static_cast<std::size_t>(rng.uniform(1, static_cast<std::int64_t>(d)));
        F2Matrix gens(d);
        std::vector<oracle::Mask> masks;
        for (std::size_t r = 0; r < count; ++r) {
            const auto g = random_f2(rng, d);
            gens.append_row(g);
            masks.push_back(to_mask(g));
        }
        const auto c = code_from_generators(gens);
        const auto cd = dual(c);
        k.expect(c.dim() + cd.dim() == d, "dim C + dim dual = d");
        const auto words = oracle::span(masks);
        k.expect(oracle::dim_of(words) == c.dim(), "dim C (oracle)");
        if (d <= 12) k.expect(oracle::dim_of(oracle::dual(d, words)) == cd.dim(), "dim dual (oracle)");
    }
}

// 2. The weight identity and the B identity.
void identities(Criterion& k) {
    Rng rng(202);
    for (int trial = 0; trial < 10'000; ++trial) {
        const auto d = static_cast<std::size_t>(rng.uniform(1, 12));
        const auto v = random_f2(rng, d);
        const auto w = random_f2(rng, d);
        const auto m = random_int_vector(rng, d, 1'000'000);
        const auto vw = cw_product(v, w);
        k.expect(weight(v + w) + 2 * weight(vw) == weight(v) + weight(w), "|v+w| = |v| + |w| - 2|v*w|");
        k.expect(2 * b_map(m, vw) == b_map(m, v) + b_map(m, w) - b_map(m, v + w), "2B(m,x*y) = B(m,x) + B(m,y) - B(m,x+y)");
        // independent popcount oracle for the weight identity
        const auto a = to_mask(v);
        const auto b = to_mask(w);
        k.expect(static_cast<std::size_t>(std::popcount(a & b)) == weight(vw), "|v*w| (oracle)");
    }
}

// 3. Integral non-degeneracy of C8 and the degeneracy of E2.
void nondegeneracy(Criterion& k) {
    const auto c8 = standard_code(StandardCode::c8);
    k.expect(is_integrally_nondegenerate(c8).verdict, "C8 integrally non-degenerate");
    const auto words = c8.codewords_by_weight();

    Rng rng(303);
    for (int trial = 0; trial < 1000; ++trial) {
        IntVector n(8);
        do n = random_int_vector(rng, 8, 1'000'000);
        while (n.is_zero());
        const auto w = nondegeneracy_witness(c8, n);
        k.expect(c8.contains(w), "witness is a codeword");
        k.expect(b_map(n, w) != 0, "B(n, w) != 0");
        // no codeword of smaller weight works
        for (const auto& v : words) {
            if (weight(v) >= weight(w)) break;
            k.expect(b_map(n, v) == 0, "witness has minimal weight");
        }
    }

    const auto e2 = standard_code(StandardCode::even, 2);
    const auto cert = is_integrally_nondegenerate(e2);
    k.expect(!cert.verdict, "E2 degenerate");
    k.expect(cert.kernel_witness.has_value(), "E2 kernel witness present");
    if (cert.kernel_witness) {
        k.expect(!cert.kernel_witness->is_zero(), "kernel witness nonzero");
        e2.for_each_codeword(
            [&](const F2Vector& v) { k.expect(b_map(*cert.kernel_witness, v) == 0, "kernel witness annihilates E2"); });
    }
}

// 4. Ideal membership against a bounded cofactor search.
void membership(Criterion& k) {
    Rng rng(404);
    std::size_t members = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto d = static_cast<std::size_t>(rng.uniform(1, 4));
        const auto dim = static_cast<std::size_t>(rng.uniform(1, std::min<std::int64_t>(3, static_cast<std::int64_t>(d))));
        F2Matrix gens(d);
        std::vector<oracle::Mask> masks;
        for (std::size_t r = 0; r < dim; ++r) {
            const auto g = random_f2(rng, d);
            gens.append_row(g);
            masks.push_back(to_mask(g));
        }
        const LinearFormIdeal ideal(code_from_generators(gens));

        LaurentPoly q(d);
        if (trial % 2 == 0) {
            for (std::size_t r = 0; r < dim; ++r) q += random_poly(rng, d, 3, 1) * p_from_vector(gens.row(r));
        } else {
            q = random_poly(rng, d, 5, 1);
        }

        const bool expected = oracle::laurent_ideal_member(d, masks, to_oracle(q));
        const bool got = ideal_contains(ideal, q);
        k.expect(got == expected, "ideal_contains agrees with the cofactor search on " + q.to_string());
        const auto cofactors = ideal_cofactors(ideal, q);
        k.expect(cofactors.has_value() == got, "cofactors exist exactly for members");
        if (cofactors) {
            ++members;
            LaurentPoly sum(d);
            const auto g = ideal.generators();
            for (std::size_t r = 0; r < g.size(); ++r) sum += (*cofactors)[r] * g[r];
            k.expect(sum == q, "cofactors reconstruct q");
        }
    }
    k.expect(members >= 50, "enough members among the queries");

    const auto e2 = annihilator_ideal(standard_code(StandardCode::even, 2));
    k.expect(ideal_contains(e2, binomial({1, -1})), "u1*u2^-1 + 1 in I(X_E2)");
    const auto c8 = annihilator_ideal(standard_code(StandardCode::c8));
    k.expect(!ideal_contains(c8, binomial({1, 0, 0, 0, 0, 0, 0, 0})), "u1 + 1 not in I(X_C8)");
}

// 5. Window counts against brute-force enumeration.
void window_counts(Criterion& k) {
    const std::pair<const char*, BinaryCode> codes[] = {
        {"E2", standard_code(StandardCode::even, 2)},
        {"rep2", standard_code(StandardCode::repetition, 2)},
        {"full2", standard_code(StandardCode::full, 2)},
    };
    for (const auto& [name, c] : codes) {
        for (int side = 1; side <= 3; ++side) {
            const auto ws = build_window_space(Box::cube(2, side), c);
            const auto expected = oracle::count_window(2, side, words_of(c));
            k.expect((std::uint64_t{1} << log2_count(ws)) == expected,
                     std::string(name) + " count on side " + std::to_string(side));
        }
    }
    const auto e2 = standard_code(StandardCode::even, 2);
    k.expect(log2_count(build_window_space(Box::cube(2, 2), e2)) == 3, "E2 2x2 -> 3");
    k.expect(log2_count(build_window_space(Box::cube(2, 3), e2)) == 5, "E2 3x3 -> 5");
}

bool strictly_decreasing(const std::vector<EntropySample>& p) {
    for (std::size_t i = 1; i < p.size(); ++i) {
        if (!(p[i].ratio() < p[i - 1].ratio())) return false;
    }
    return true;
}

// 6. Per-site log-counts.
void entropy(Criterion& k) {
    const auto e2 = entropy_profile(standard_code(StandardCode::even, 2), {2, 3, 4});
    k.expect(e2[0].ratio() == cpp_rational(3, 4) && e2[1].ratio() == cpp_rational(5, 9) &&
                 e2[2].ratio() == cpp_rational(7, 16),
             "E2 profile 3/4, 5/9, 7/16");
    k.expect(strictly_decreasing(e2), "E2 strictly decreasing");

    const auto e8 = entropy_profile(standard_code(StandardCode::even, 8), {2, 3});
    k.expect(e8[0].ratio() == cpp_rational(255, 256), "E8 side 2 = 255/256");
    k.expect(strictly_decreasing(e8), "E8 strictly decreasing");

    const auto c8 = entropy_profile(standard_code(StandardCode::c8), {2, 3});
    k.expect(c8[0].ratio() == cpp_rational(252, 256), "C8 side 2 = 252/256");
    k.expect(c8[1].sites == 6561, "C8 side 3 has 6561 sites");
    k.expect(strictly_decreasing(c8), "C8 strictly decreasing");

    for (std::size_t d : {2u, 3u}) {
        for (const auto& s : entropy_profile(standard_code(StandardCode::full, d), {1, 2, 3})) {
            k.expect(s.ratio() == 1, "full code ratio 1");
        }
    }
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NONRIGID_CLI) + " " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

nlohmann::json read_json(const fs::path& p) {
    std::ifstream in(p);
    return nlohmann::json::parse(in);
}

nlohmann::json without_timing(nlohmann::json j) {
    for (auto& c : j["checks"]) c.erase("millis");
    return j;
}

fs::path report_path(std::size_t d, int run) {
    const auto dir = fs::temp_directory_path() / ("nonrigid_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    return dir / ("verify_d" + std::to_string(d) + "_run" + std::to_string(run) + ".json");
}

std::string verify_args(std::size_t d, const fs::path& out) {
    return "verify -d " + std::to_string(d) + " --box 2 --samples 100 --seed 0 --json -o " + out.string();
}

// 7. The full counterexample suite through the CLI.
void counterexample(Criterion& k) {
    for (std::size_t d : {8u, 9u, 10u}) {
        const auto out = report_path(d, 1);
        const int status = run_cli(verify_args(d, out));
        k.expect(status == 0, "verify -d " + std::to_string(d) + " exits 0 (got " + std::to_string(status) + ")");
        if (!fs::exists(out)) continue;
        const auto j = read_json(out);
        k.expect(j["passed"] == (status == 0), "JSON passed agrees with the exit status");
        std::map<std::string, const nlohmann::json*> checks;
        for (const auto& c : j["checks"]) checks[c["name"].get<std::string>()] = &c;
        for (const char* name : {"premises.c.proper", "premises.c_prime.proper", "premises.c.contains_ones",
                                 "premises.c_prime.contains_ones", "premises.star_closure",
                                 "premises.c_subset_c_prime", "premises.c.nondegenerate",
                                 "premises.c_prime.nondegenerate", "premises.c.mixing_certificates",
                                 "dynamics.involution", "dynamics.constraint_preservation", "dynamics.equivariance",
                                 "non_affine"}) {
            const auto it = checks.find(name);
            k.expect(it != checks.end() && (*it->second)["passed"] == true, std::string(name) + " passed");
        }
        if (const auto it = checks.find("premises.c.mixing_certificates"); it != checks.end()) {
            k.expect((*it->second)["witness"]["count"] == 50, "50 mixing certificates");
        }
        if (const auto it = checks.find("dynamics.equivariance"); it != checks.end()) {
            k.expect((*it->second)["witness"]["max_shift"] <= 3, "shifts bounded by 3");
        }
    }
}

// 8. The exhaustive repetition-3 toy.
void toy(Criterion& k) {
    const auto r = verify_toy_exhaustive();
    k.expect(r.passed(), "toy report passed");
    const auto j = r.to_json(false);
    for (const auto& c : j["checks"]) {
        if (c["name"] == "involution") k.expect(c["witness"]["triples"] == 64 * 64 * 64, "all 64^3 triples");
        if (c["name"] == "non_affine") {
            const auto box = Box::cube(3, 2);
            WindowConfig x(box);
            x.values = F2Vector::from_string(c["witness"]["x"].get<std::string>());
            k.expect(!x.is_zero(), "witness nonzero");
            k.expect(star(x, x) == x, "x*x = x");
            k.expect(contains(build_window_space(box, standard_code(StandardCode::repetition, 3)), x),
                     "witness is a window solution");
        }
    }
}

// 9. Re-running criterion 7 gives the same reports.
void determinism(Criterion& k) {
    for (std::size_t d : {8u, 9u, 10u}) {
        const auto first = report_path(d, 1);
        const auto second = report_path(d, 2);
        if (!fs::exists(first)) run_cli(verify_args(d, first));
        run_cli(verify_args(d, second));
        if (!fs::exists(first) || !fs::exists(second)) {
            k.expect(false, "reports written for d = " + std::to_string(d));
            continue;
        }
        k.expect(without_timing(read_json(first)).dump(2) == without_timing(read_json(second)).dump(2),
                 "identical reports for d = " + std::to_string(d));
    }
}

struct Entry {
    int number;
    const char* title;
    double budget_seconds;
    std::function<void(Criterion&)> body;
};

}  // namespace

int main() {
    const Entry entries[] = {
        {1, "code facts", 1, code_facts},
        {2, "weight and B identities", 1, identities},
        {3, "integral non-degeneracy", 5, nondegeneracy},
        {4, "ideal membership vs cofactor search", 30, membership},
        {5, "window counts vs enumeration", 5, window_counts},
        {6, "entropy surrogate", 60, entropy},
        {7, "counterexample suite d = 8, 9, 10", 120, counterexample},
        {8, "exhaustive repetition-3 toy", 10, toy},
        {9, "deterministic reports", 120, determinism},
    };

    bool all = true;
    for (const auto& e : entries) {
        Criterion k;
        const auto start = std::chrono::steady_clock::now();
        try {
            e.body(k);
        } catch (const std::exception& ex) {
            k.expect(false, std::string("exception: ") + ex.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream timing;
        timing.precision(2);
        timing << std::fixed << seconds << " s";
        k.expect(seconds < e.budget_seconds, "over the time budget of " + std::to_string(e.budget_seconds) + " s");

        std::cout << (k.passed() ? "PASS" : "FAIL") << "  criterion " << e.number << ": " << e.title << "  ("
                  << timing.str() << ")\n";
        for (const auto& m : k.messages()) std::cout << "        " << m << "\n";
        if (k.failures() > k.messages().size()) {
            std::cout << "        ... " << k.failures() - k.messages().size() << " more\n";
        }
        all = all && k.passed();
    }
    fs::remove_all(report_path(8, 1).parent_path());
    std::cout << (all ? "all criteria passed" : "some criteria failed") << "\n";
    return all ? 0 : 1;
}
