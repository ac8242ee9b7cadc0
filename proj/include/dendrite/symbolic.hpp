#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dendrite/common.hpp"
#include "dendrite/series.hpp"
#include "dendrite/tent_system.hpp"

namespace dendrite {

using Rational = boost::multiprecision::cpp_rational;

/// Eventually periodic binary stream: `preperiod` then `period` forever, or
/// zeros forever when `period` is empty. Index 0 is the first symbol.
struct PeriodicBits {
    std::vector<std::uint8_t> preperiod;
    std::vector<std::uint8_t> period;

    std::uint8_t at(std::size_t n) const;

    friend bool operator==(const PeriodicBits&, const PeriodicBits&) = default;
};

/// Itineraries e_0 e_1 ... of addresses.
using Itinerary = PeriodicBits;
/// Kneading sequences nu_1 nu_2 ...; index 0 holds nu_1.
using KneadingSequence = PeriodicBits;

/// Words such as "1(100)"; a missing period means trailing zeros.
PeriodicBits parse_bits(std::string_view text);
std::string format_bits(const PeriodicBits& bits);

/// Minimal preperiod and primitive period. An empty period becomes "(0)".
PeriodicBits canonical_bits(const PeriodicBits& bits);

/// Reduced fraction in [0, 1).
class Angle {
public:
    Angle() = default;
    /// Reduces num/den modulo 1. Throws std::invalid_argument when den = 0.
    Angle(std::uint64_t num, std::uint64_t den);

    std::uint64_t num() const { return num_; }
    std::uint64_t den() const { return den_; }
    double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    Angle doubled() const;
    Rational exact() const { return Rational(num_, den_); }

    friend bool operator==(const Angle&, const Angle&) = default;

private:
    std::uint64_t num_ = 0;
    std::uint64_t den_ = 1;
};

/// "3/14"; also accepts a bare integer numerator over 1.
Angle parse_angle(std::string_view text);
std::string format_angle(const Angle& angle);

/// Orbit of an angle under doubling: `preperiod` steps before entering a cycle
/// of length `period`.
struct DoublingOrbit {
    std::vector<Angle> points;
    int preperiod = 0;
    int period = 0;
};
DoublingOrbit doubling_orbit(const Angle& theta);

Itinerary itinerary_of_address(const AddressWord& a);
AddressWord address_of_itinerary(const Itinerary& e, std::size_t length);

enum class KneadingCase { A0, A1 };

/// Throws std::invalid_argument when a coefficient is 0 or the constant term is not +1.
KneadingSequence kneading_of_coeffs(const SignedSeries& s);
/// The case realized by a coefficient word: A1 when b_1 = -1.
KneadingCase kneading_case(const SignedSeries& s);
SignedSeries coeffs_of_kneading(const KneadingSequence& nu, KneadingCase kcase);

/// Strict lexicographic dominance of nu over all its shifts.
bool admissible_sufficient(const KneadingSequence& w);

/// theta = sum_n (1 - nu_n) 2^{-n}. Throws std::invalid_argument when the
/// exact value does not fit 64-bit integers (preperiod + period > 62).
Angle external_angle(const KneadingSequence& nu);

struct DoublingKneading {
    std::optional<KneadingSequence> kneading;
    std::optional<int> boundary_index;  ///< 1-based n with 2^{n-1} theta on the partition boundary
};

/// Itinerary of theta under doubling with respect to the arcs
/// (theta/2, (theta+1)/2) -> 1 and its complement -> 0.
DoublingKneading doubling_kneading(const Angle& theta);

/// Closed arc [lo, hi] with 0 <= lo <= hi <= 1.
struct ArcInterval {
    Rational lo;
    Rational hi;
    Rational width() const { return hi - lo; }
};

/// The symbol for the critical value's two preimage angles shared by both halves.
constexpr std::uint8_t kCriticalSymbol = 2;

class ItineraryInconsistency : public ComputationError {
public:
    explicit ItineraryInconsistency(std::size_t index)
        : ComputationError("itinerary", "empty refinement at symbol " + std::to_string(index)), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Angles whose doubling itinerary starts with e_0 .. e_{depth-1}, sorted by
/// left endpoint. Symbols are 0, 1 or kCriticalSymbol.
std::vector<ArcInterval> angle_from_itinerary(const std::vector<std::uint8_t>& e, const Angle& theta,
                                              std::size_t depth);

}  // namespace dendrite
