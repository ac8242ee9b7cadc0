#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace dendrite {

/// Parsed command line. Unset optionals take per-command defaults.
struct RunConfig {
    std::string command;
    std::string input;
    std::optional<std::string> lambda;
    std::optional<int> depth;
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
    std::string out;
    std::string size = "512";
    std::optional<std::string> window;
    double radius = 0.75;
};

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitComputation = 3;

/// Executes one subcommand. Text artifacts go to `out` unless --out names a
/// file; diagnostics go to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv into a RunConfig and runs it.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dendrite
