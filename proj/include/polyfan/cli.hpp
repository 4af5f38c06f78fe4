#pragma once

// Command handlers behind the polyfan executable. Each handler returns the exact
// bytes to print, so identical (input, config, seed) give identical output.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "polyfan/fan.hpp"
#include "polyfan/newton.hpp"
#include "polyfan/upward.hpp"

namespace polyfan {

inline constexpr std::uint64_t kDefaultSeed = 20240607;

enum class OutputFormat { Json, Text };

struct RunConfig {
    Field field;
    std::string z = "z";
    std::size_t max_iter = 64;
    OutputFormat format = OutputFormat::Json;
    std::uint64_t seed = kDefaultSeed;
    std::size_t battery = 100;   // polynomials per verify suite
    bool verify = true;          // embed both height-inequality reports in usd traces
    bool inject_fault = false;   // corrupt one γ at the top level of every upward run
    bool timing = false;         // wall-clock fields make output nondeterministic
};

enum ExitCode : int { Ok = 0, UsageOrParse = 1, Precondition = 2, VerificationFailed = 3, IterationCap = 4 };

struct CommandOutput {
    int exit_code = ExitCode::Ok;
    std::string out;
    std::string err;
};

// {dim, lattice, rays (lex, primitive), cones (maximal, as ray indices)}.
nlohmann::json fan_to_json(const Fan& f);
// Throws ParseError.
Fan fan_from_json(const nlohmann::json& j);
// Each center as indices into `table`, which must hold all its rays.
nlohmann::json centers_to_json(const std::vector<Cone>& centers, const std::vector<LatticeVector>& table);

// Text grammar, or the JSON polynomial schema when the input starts with '{'.
Polynomial read_polynomial(const std::string& source, const RunConfig& cfg);

// Up to five terms of total degree ≤ 5 with small coefficients; never zero.
Polynomial random_polynomial(std::mt19937_64& rng, const Polynomial& ring);
// z^h plus up to four monomials of lower z-degree, redrawn until the Newton
// polyhedron is z-Weierstrass and z-simple with h(Γ₊) = h.
Polynomial random_z_simple(std::mt19937_64& rng, std::size_t nvars, long h);

CommandOutput cmd_analyze(const std::string& source, const RunConfig& cfg);
CommandOutput cmd_usd(const std::string& source, const RunConfig& cfg);
CommandOutput cmd_zremove(const std::string& source, const RunConfig& cfg);
CommandOutput cmd_verify(const RunConfig& cfg);
// Rebuilds the final fan of a usd trace from its recorded centers.
CommandOutput cmd_replay(const std::string& trace, const RunConfig& cfg);

}  // namespace polyfan
