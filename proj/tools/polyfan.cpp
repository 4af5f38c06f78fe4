// polyfan analyze|usd|zremove|verify|replay [options] <file|->

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "polyfan/cli.hpp"
#include "polyfan/error.hpp"

namespace {

using polyfan::ExitCode;

std::string slurp(const std::string& path) {
    if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    std::ifstream in(path, std::ios::binary);
    if (!in) throw polyfan::Error(polyfan::ErrorKind::ParseError, "cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

polyfan::Field parse_field(const std::string& s) {
    if (s == "q" || s == "Q") return polyfan::Field::rationals();
    if (s.rfind("fp:", 0) == 0) {
        const std::string digits = s.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw polyfan::Error(polyfan::ErrorKind::ParseError, "bad prime in --field " + s);
        return polyfan::Field::prime(std::stoul(digits));
    }
    throw polyfan::Error(polyfan::ErrorKind::ParseError, "--field expects q or fp:<p>, got " + s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton polyhedra, z-removable faces and upward subdivisions of face cone decompositions"};
    app.require_subcommand(1);

    std::string field = "q", format = "json", input;
    std::optional<std::uint64_t> seed;
    polyfan::RunConfig cfg;
    bool no_verify = false;

    auto common = [&](CLI::App* sub, bool takes_input) {
        sub->add_option("--field", field, "coefficient field: q or fp:<p>");
        sub->add_option("--z", cfg.z, "name of the designated variable");
        sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--seed", seed, "seed for randomized batteries (default: $POLYFAN_SEED, then fixed)");
        sub->add_option("--max-iter", cfg.max_iter, "cap on removable-face substitutions");
        sub->add_flag("--timing", cfg.timing, "add wall-clock fields (output is then not reproducible)");
        if (takes_input) sub->add_option("input", input, "input file, or - for stdin")->required();
    };
    auto* analyze = app.add_subcommand("analyze", "Newton polyhedron, z-report and removable faces");
    auto* usd = app.add_subcommand("usd", "upward subdivision trace with both height-inequality checks");
    auto* zremove = app.add_subcommand("zremove", "substitute z -> z - χ until no removable face is left");
    auto* verify = app.add_subcommand("verify", "randomized invariant batteries");
    auto* replay = app.add_subcommand("replay", "rebuild the final fan of a usd trace from its centers");
    for (auto* s : {analyze, usd, zremove, replay}) common(s, true);
    common(verify, false);
    usd->add_flag("--no-verify", no_verify, "skip the verification reports");
    for (auto* s : {usd, verify})
        s->add_flag("--inject-fault", cfg.inject_fault, "corrupt one γ at the top level (negative control)");
    verify->add_option("--battery", cfg.battery, "random inputs per suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? ExitCode::Ok : ExitCode::UsageOrParse;
    }

    polyfan::CommandOutput res;
    try {
        cfg.field = parse_field(field);
        cfg.format = format == "text" ? polyfan::OutputFormat::Text : polyfan::OutputFormat::Json;
        cfg.verify = !no_verify;
        if (seed) {
            cfg.seed = *seed;
        } else if (const char* env = std::getenv("POLYFAN_SEED")) {
            try {
                cfg.seed = std::stoull(env);
            } catch (const std::exception&) {
                throw polyfan::Error(polyfan::ErrorKind::ParseError, std::string("POLYFAN_SEED is not a number: ") + env);
            }
        }
        if (analyze->parsed()) res = polyfan::cmd_analyze(slurp(input), cfg);
        else if (usd->parsed()) res = polyfan::cmd_usd(slurp(input), cfg);
        else if (zremove->parsed()) res = polyfan::cmd_zremove(slurp(input), cfg);
        else if (verify->parsed()) res = polyfan::cmd_verify(cfg);
        else res = polyfan::cmd_replay(slurp(input), cfg);
    } catch (const polyfan::Error& e) {
        std::cerr << e.what() << "\n";
        return ExitCode::UsageOrParse;
    }
    std::cout << res.out;
    std::cerr << res.err;
    return res.exit_code;
}
