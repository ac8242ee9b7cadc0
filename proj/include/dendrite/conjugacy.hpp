#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dendrite/quadratic.hpp"
#include "dendrite/series.hpp"
#include "dendrite/symbolic.hpp"
#include "dendrite/tent_system.hpp"

namespace dendrite {

/// A tent system matched with the Misiurewicz quadratic of the same kneading.
struct PairedSystem {
    SignedSeries series;
    DiskRoot root;
    TentSystem tent{Complex{0.5, 0.0}};
    KneadingSequence kneading;
    KneadingCase kneading_case = KneadingCase::A1;
    Angle angle;
    JuliaContext julia;
};

/// Root search radius and the region in which the root is taken: the closed
/// upper half of |z|^2 <= 1/2.
constexpr double kPairRootRadius = 0.75;

/// First root of the series in that region. Throws ComputationError("root").
DiskRoot pair_root(const SignedSeries& series);

/// parse -> root -> kneading -> angle -> Misiurewicz parameter. Malformed
/// words raise std::invalid_argument; later failures raise ComputationError
/// tagged "root", "kneading", "angle" or "solve_c".
PairedSystem pair_from_word(const std::string& text);

/// Angle arc of the itinerary of `a`, with symbols complemented in case A0.
std::vector<ArcInterval> phi_arcs(const PairedSystem& ps, const AddressWord& a);

/// Image of the address point under the conjugacy, via the landing point of
/// the dynamic ray at the midpoint of the lowest arc. Requires |a| >= 8.
Complex phi(const PairedSystem& ps, const AddressWord& a, int depth);

/// max |phi(act_q(a)) - p_c(phi(a))| over `samples` random addresses of
/// length `depth`. Throws std::invalid_argument when samples = 0.
double residual_semiconjugacy(const PairedSystem& ps, std::size_t samples, int depth, std::uint64_t seed);

/// Adjacency of depth-n cylinders: undirected, sorted neighbour lists.
struct CellGraph {
    int depth = 0;
    double tolerance = 1.0;
    double cell_radius = 0.0;
    std::vector<AddressWord> cells;
    std::vector<Complex> representatives;
    std::vector<std::vector<std::uint32_t>> neighbors;

    std::size_t edge_count() const;
    std::size_t component_count() const;
    bool connected() const { return component_count() == 1; }
};

constexpr int kMaxCellDepth = 18;
constexpr int kCellRefinement = 3;

/// Cylinder i and j are joined when their refined point samples come within
/// 2 tol |lambda|^{n+s} / (1 - |lambda|), s = kCellRefinement.
CellGraph cell_graph(const TentSystem& sys, int depth, double tol = 1.0);

struct BTReport {
    int depth = 0;
    double L_estimate = 1.0;
    AddressWord witness_first;
    AddressWord witness_second;
    double witness_distance = 0.0;
    double witness_arc_diameter = 0.0;
    double cell_tolerance = 1.0;
    std::size_t pair_count = 0;
};

/// Largest (diameter of shortest cell path) / (distance) over pairs drawn
/// from breadth-first trees of `sources` sampled cells. Throws
/// ComputationError when the graph is disconnected.
BTReport bt_estimate(const CellGraph& graph, std::size_t sources = 32, std::uint64_t seed = 0);
BTReport bt_estimate(const TentSystem& sys, int depth);

struct QSBucket {
    double t;
    double max_ratio;
};

struct QSReport {
    std::vector<QSBucket> t_buckets;
    double weak_H = 1.0;
    std::size_t sample_count = 0;
    std::size_t degenerate_count = 0;
    std::uint64_t seed = 0;
};

/// eta(t) = max |f x - f a| / |f x - f b| over pool triples with
/// |x - a| <= t |x - b|, on log-spaced t from 1/16 to 16.
QSReport qs_report_points(const std::vector<Complex>& domain, const std::vector<Complex>& image,
                          std::uint64_t seed);

/// Pool of `triples` random addresses of length `depth` mapped by phi.
/// Throws std::invalid_argument when triples < 100.
QSReport qs_report(const PairedSystem& ps, std::size_t triples, int depth, std::uint64_t seed);

/// The tent attractor paired with itself.
QSReport qs_identity(const TentSystem& sys, std::size_t triples, int depth, std::uint64_t seed);

struct RoundishnessReport {
    double min_ratio = std::numeric_limits<double>::infinity();
    std::size_t balls_used = 0;
    std::size_t balls_skipped = 0;
};

/// For each center index and radius: inradius at the image center (nearest
/// image of a point outside the ball) over the image diameter. A ball that
/// holds every point has infinite inradius.
RoundishnessReport roundishness_points(const std::vector<Complex>& domain, const std::vector<Complex>& image,
                                       const std::vector<std::size_t>& centers, const std::vector<double>& radii);

RoundishnessReport roundishness(const PairedSystem& ps, std::size_t centers, const std::vector<double>& radii,
                                int depth, std::uint64_t seed = 0, std::size_t pool = 1024);

}  // namespace dendrite
