#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dendrite/common.hpp"
#include "dendrite/series.hpp"

namespace dendrite {

/// The pair of contractions z -> lambda z and z -> lambda z + 1.
class TentSystem {
public:
    /// Throws std::invalid_argument unless 0 < |lambda| < 1.
    explicit TentSystem(Complex lambda);

    Complex lambda() const { return lambda_; }

    /// The common point of the two pieces: 1 / (2 (1 - lambda)).
    Complex critical_point() const { return 0.5 / (1.0 - lambda_); }

    /// z -> -z + 1/(1 - lambda); swaps the pieces and fixes the critical point.
    Complex involution(Complex z) const { return -z + 1.0 / (1.0 - lambda_); }

    Complex f0(Complex z) const { return lambda_ * z; }
    Complex f1(Complex z) const { return lambda_ * z + 1.0; }

    /// |lambda|^n / (1 - |lambda|): distance bound between a depth-n address
    /// point and any point sharing its first n symbols.
    double cell_radius(int n) const;

private:
    Complex lambda_;
};

/// Binary digits a_0 a_1 ... of the coding sum_n a_n lambda^n.
using AddressWord = std::vector<std::uint8_t>;

std::string format_address(const AddressWord& a);

Complex point_of_address(const TentSystem& sys, const AddressWord& a);

/// Shift, complemented when a_0 = 1. Throws std::invalid_argument on empty input.
AddressWord act_q(const TentSystem& sys, const AddressWord& a);

/// Branch 0: z / lambda. Branch 1: (1 - z)/lambda + 1/(1 - lambda).
Complex map_q(const TentSystem& sys, Complex z, int branch);

struct CloudPoint {
    AddressWord address;
    Complex point;
};

struct Sampler {
    enum class Kind { Exhaustive, Random };
    Kind kind = Kind::Exhaustive;
    std::size_t count = 0;
    std::uint64_t seed = 0;

    static Sampler exhaustive() { return {}; }
    static Sampler random(std::size_t count, std::uint64_t seed) { return {Kind::Random, count, seed}; }
};

constexpr int kMaxExhaustiveDepth = 24;

std::vector<CloudPoint> cloud(const TentSystem& sys, int depth, const Sampler& sampler);

/// Random address of the given length drawn bit by bit from `rng`.
AddressWord random_address(Rng& rng, int length);

struct Survivor {
    std::vector<int> word;  ///< c_1 .. c_depth (c_0 = 1 implied)
    Complex remainder;
};

/// Remainder branch-and-bound of series 1 + c_1 z + c_2 z^2 + ... at lambda.
/// Words come back in lexicographic order of the alphabet as given.
/// Throws ComputationError once more than `cap` words are alive at a level.
std::vector<Survivor> neighbor_survivors(Complex lambda, const std::vector<int>& alphabet, int depth,
                                         double slack = 1e-9, std::size_t cap = 1u << 20);

enum class TTag { CertifiedNotInM, UniqueSignBranch, MultipleBranches, ZeroCoefficientBranch, Inconclusive };

std::string tag_name(TTag tag);

struct TVerdict {
    TTag tag = TTag::Inconclusive;
    int depth = 0;
    std::vector<std::vector<int>> surviving_prefixes;  ///< words c_1..c_m of the surviving branches
    std::vector<std::size_t> state_counts;             ///< merged remainder states per level
    std::string note;
};

/// Classifies lambda by the {-1,0,1} remainder search to `depth`, merging
/// words that reach the same remainder.
TVerdict verdict_T(Complex lambda, int depth);

struct OverlapWitness {
    AddressWord first;   ///< starts with 0
    AddressWord second;  ///< starts with 1
    double distance;
};

constexpr int kMaxWitnessDepth = 22;

std::vector<OverlapWitness> overlap_witnesses(const TentSystem& sys, int depth, double eps);

enum class Block { Plus3, Plus4, Minus3, Minus4 };

Block parse_block(const std::string& text);

/// Series that agrees with +(-+++--) on coefficients 0..13 and continues with
/// `lead` once, then `cycle` forever. The block stream starts with a plus block
/// and alternates in sign, including across the cycle seam.
SignedSeries t0_series(const std::vector<Block>& lead, const std::vector<Block>& cycle);
SignedSeries t0_series(const std::vector<Block>& cycle);

}  // namespace dendrite
