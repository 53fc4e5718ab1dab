// nonrigid: inspect binary codes and verify the non-rigid triple system.
//
// Exit status: 0 success, 1 a check failed, 2 usage or precondition error,
// 3 resource guard exceeded.

#include "nonrigid/codes.hpp"
#include "nonrigid/error.hpp"
#include "nonrigid/laurent.hpp"
#include "nonrigid/rigidity.hpp"
#include "nonrigid/windows.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace nonrigid;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kResource = 3 };

struct Options {
    std::string code_file;
    std::string code_file_prime;
    std::size_t d = 8;
    std::int64_t box = 2;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    bool json = false;
    std::size_t max_sites = WindowLimits{}.max_sites;
    std::string n;
    std::string output;
};

void emit(const Options& o, const std::string& text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output);
    if (!out) throw PreconditionError("cannot write " + o.output);
    out << text;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

WindowLimits limits_of(const Options& o) {
    WindowLimits l;
    l.max_sites = o.max_sites;
    return l;
}

int cmd_inspect(const Options& o) {
    const auto c = read_code_file(o.code_file);
    const auto cd = dual(c);
    const auto wc = weight_class(c);
    const bool self_orthogonal = is_self_orthogonal(c);
    const bool self_dual = c == cd;
    const bool ones = contains_all_ones(c);
    const auto cert = is_integrally_nondegenerate(c);

    if (o.json) {
        nlohmann::json j = {{"schema_version", 1},
                            {"length", c.length()},
                            {"dim", c.dim()},
                            {"weight_class", to_string(wc)},
                            {"self_orthogonal", self_orthogonal},
                            {"self_dual", self_dual},
                            {"contains_ones", ones},
                            {"dual_dim", cd.dim()},
                            {"nondegenerate", cert.verdict},
                            {"entropy", to_string(entropy_verdict(c))}};
        if (cert.kernel_witness) j["kernel_witness"] = cert.kernel_witness->to_string();
        emit(o, dump(j));
        return kOk;
    }

    std::ostringstream out;
    out << "length " << c.length() << ", dim " << c.dim() << ", " << to_string(wc) << ", "
        << (self_dual ? "self-dual" : self_orthogonal ? "self-orthogonal" : "not self-orthogonal") << ", "
        << (ones ? "contains 1" : "does not contain 1") << ", ";
    if (cert.verdict) {
        out << "integrally non-degenerate\n";
    } else {
        out << "degenerate, kernel witness " << cert.kernel_witness->to_string() << "\n";
    }
    out << "  weight class     " << to_string(wc) << "\n"
        << "  self-orthogonal  " << yes_no(self_orthogonal) << "\n"
        << "  self-dual        " << yes_no(self_dual) << "\n"
        << "  contains 1       " << yes_no(ones) << "\n"
        << "  dual dim         " << cd.dim() << "\n"
        << "  entropy          " << to_string(entropy_verdict(c)) << "\n";
    emit(o, out.str());
    return kOk;
}

int cmd_dual(const Options& o) {
    const auto c = read_code_file(o.code_file);
    const auto cd = dual(c);
    if (o.json) {
        nlohmann::json basis = nlohmann::json::array();
        for (const auto& r : cd.basis().row_vectors()) basis.push_back(r.to_string());
        emit(o, dump({{"schema_version", 1}, {"length", cd.length()}, {"dim", cd.dim()}, {"basis", basis}}));
    } else {
        emit(o, format_code(cd, "dual of " + o.code_file));
    }
    return kOk;
}

int report_result(const Options& o, const VerificationReport& r) {
    emit(o, o.json ? dump(r.to_json()) : r.to_text());
    return r.passed() ? kOk : kFailed;
}

int cmd_check(const Options& o) {
    const auto sys = CounterexampleSystem::custom(read_code_file(o.code_file), read_code_file(o.code_file_prime));
    PremiseOptions p;
    p.mixing_samples = o.samples;
    p.seed = o.seed;
    return report_result(o, verify_premises(sys, p));
}

int cmd_construct(const Options& o) {
    const auto sys = construct(o.d);
    if (o.json) {
        emit(o, dump({{"schema_version", 1}, {"system", system_json(sys)}}));
    } else {
        emit(o, format_code(sys.c, "C, d = " + std::to_string(o.d)) + "\n" +
                    format_code(sys.c_prime, "C', d = " + std::to_string(o.d)));
    }
    return kOk;
}

int cmd_verify(const Options& o) {
    VerifyOptions v;
    v.box_side = o.box;
    v.samples = o.samples;
    v.seed = o.seed;
    v.limits = limits_of(o);
    return report_result(o, verify_system(construct(o.d), v));
}

int cmd_entropy(const Options& o) {
    const auto c = read_code_file(o.code_file);
    std::vector<std::int64_t> sides;
    for (std::int64_t n = 1; n <= o.box; ++n) sides.push_back(n);
    const auto profile = entropy_profile(c, sides, limits_of(o));
    if (o.json) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& s : profile) {
            rows.push_back({{"side", s.side}, {"log2_count", s.log2_count}, {"sites", s.sites}, {"ratio", s.ratio().str()}});
        }
        emit(o, dump({{"schema_version", 1}, {"verdict", to_string(entropy_verdict(c))}, {"profile", rows}}));
        return kOk;
    }
    std::ostringstream out;
    out << to_string(entropy_verdict(c)) << "\n";
    for (const auto& s : profile) out << "N=" << s.side << "  " << s.log2_count << "/" << s.sites << "  = " << s.ratio() << "\n";
    emit(o, out.str());
    return kOk;
}

int cmd_mixing_witness(const Options& o) {
    const auto c = read_code_file(o.code_file);
    const auto n = IntVector::parse_csv(o.n);
    if (n.size() != c.length()) {
        throw PreconditionError("n has " + std::to_string(n.size()) + " entries but the code has length " +
                                std::to_string(c.length()));
    }
    if (n.is_zero()) throw PreconditionError("n must be nonzero");
    try {
        const auto w = mixing_certificate(c, n);
        const auto b = b_map(n, w);
        if (o.json) {
            emit(o, dump({{"schema_version", 1}, {"n", n.to_string()}, {"w", w.to_string()}, {"B", b.str()}}));
        } else {
            emit(o, "w = " + w.to_string() + "\nB(n, w) = " + b.str() + "\n");
        }
        return kOk;
    } catch (const DegenerateCodeError& e) {
        if (o.json) {
            emit(o, dump({{"schema_version", 1}, {"degenerate", true}, {"kernel_witness", e.witness().to_string()}}));
        } else {
            emit(o, "degenerate: kernel witness " + e.witness().to_string() + "\n");
        }
        return kFailed;
    }
}

int cmd_sample(const Options& o) {
    const auto c = read_code_file(o.code_file);
    const auto ws = build_window_space(Box::cube(c.length(), o.box), c, limits_of(o));
    const auto x = sample(ws, o.seed);
    emit(o, dump(to_json(x)));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary codes, Markov subgroups and the non-rigid triple system"};
    app.require_subcommand(1);
    Options o;

    auto output = [&](CLI::App* sub) { sub->add_option("-o", o.output, "Write the output to this file"); };
    auto json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON output"); };
    auto code = [&](CLI::App* sub) { sub->add_option("codefile", o.code_file, "Code file")->required(); };

    auto* inspect = app.add_subcommand("inspect", "Properties of a code");
    code(inspect);
    json(inspect);
    output(inspect);

    auto* dual_cmd = app.add_subcommand("dual", "Dual code, in code file format");
    code(dual_cmd);
    json(dual_cmd);
    output(dual_cmd);

    auto* check = app.add_subcommand("check", "Premise checks for a pair of codes C, C'");
    code(check);
    check->add_option("codefile_prime", o.code_file_prime, "Code file for C'")->required();
    check->add_option("--samples", o.samples, "Random n for the mixing certificates")->default_val(50);
    check->add_option("--seed", o.seed, "Random seed");
    json(check);
    output(check);

    auto* construct_cmd = app.add_subcommand("construct", "The pair (C, C') for dimension d");
    construct_cmd->add_option("-d", o.d, "Dimension (at least 8)")->required();
    json(construct_cmd);
    output(construct_cmd);

    auto* verify = app.add_subcommand("verify", "Full verification suite for dimension d");
    verify->add_option("-d", o.d, "Dimension (at least 8)")->required();
    verify->add_option("--box", o.box, "Window side N")->check(CLI::PositiveNumber);
    verify->add_option("--samples", o.samples, "Sampled triples");
    verify->add_option("--seed", o.seed, "Random seed");
    verify->add_option("--max-sites", o.max_sites, "Window size guard");
    json(verify);
    output(verify);

    auto* entropy = app.add_subcommand("entropy", "Per-site log-counts on cubes of side 1..N");
    code(entropy);
    entropy->add_option("--box", o.box, "Largest side N")->check(CLI::PositiveNumber);
    entropy->add_option("--max-sites", o.max_sites, "Window size guard");
    json(entropy);
    output(entropy);

    auto* mixing = app.add_subcommand("mixing-witness", "Codeword w with B(n, w) != 0");
    code(mixing);
    mixing->add_option("--n", o.n, "Comma-separated integers")->required();
    json(mixing);
    output(mixing);

    auto* sample_cmd = app.add_subcommand("sample", "Seeded uniform window configuration, as JSON");
    code(sample_cmd);
    sample_cmd->add_option("--box", o.box, "Window side N")->check(CLI::PositiveNumber);
    sample_cmd->add_option("--seed", o.seed, "Random seed");
    sample_cmd->add_option("--max-sites", o.max_sites, "Window size guard");
    json(sample_cmd);
    output(sample_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (inspect->parsed()) return cmd_inspect(o);
        if (dual_cmd->parsed()) return cmd_dual(o);
        if (check->parsed()) return cmd_check(o);
        if (construct_cmd->parsed()) return cmd_construct(o);
        if (verify->parsed()) return cmd_verify(o);
        if (entropy->parsed()) return cmd_entropy(o);
        if (mixing->parsed()) return cmd_mixing_witness(o);
        if (sample_cmd->parsed()) return cmd_sample(o);
    } catch (const ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResource;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
