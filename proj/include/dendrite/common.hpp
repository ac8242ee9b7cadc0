#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace dendrite {

using Complex = std::complex<double>;

/// Raised when a computation cannot produce its result (as opposed to a
/// malformed request, which raises std::invalid_argument). The stage names the
/// pipeline step that gave up, e.g. "root", "kneading", "solve_c".
class ComputationError : public std::runtime_error {
public:
    ComputationError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

/// Seeded 64-bit generator. Only raw engine output is used so that streams are
/// identical across standard library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    int bit() { return static_cast<int>(engine_() >> 63); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // Lemire's multiply-shift with rejection.
        while (true) {
            const unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
            const auto low = static_cast<std::uint64_t>(m);
            if (low >= (0 - n) % n) {
                return static_cast<std::uint64_t>(m >> 64);
            }
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace dendrite
