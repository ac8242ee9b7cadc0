#include "dendrite/conjugacy.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <unordered_map>

namespace dendrite {

namespace {

template <typename F>
auto tagged(const char* stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ComputationError&) {
        throw;
    } catch (const std::exception& e) {
        throw ComputationError(stage, e.what());
    }
}

}  // namespace

DiskRoot pair_root(const SignedSeries& series) {
    for (const auto& r : roots_in_disk(series, kPairRootRadius)) {
        if (std::norm(r.value) <= 0.5 + 1e-12 && r.value.imag() >= -1e-12) {
            return r;
        }
    }
    throw ComputationError("root", "no zero with |z|^2 <= 1/2 in the closed upper half plane");
}

PairedSystem pair_from_word(const std::string& text) {
    PairedSystem ps;
    ps.series = canonical(parse_series(text));
    ps.series.validate();
    if (ps.series.preperiod.front() != 1) {
        throw std::invalid_argument("pair: constant term must be +1");
    }
    ps.root = tagged("root", [&] { return pair_root(ps.series); });
    ps.tent = TentSystem(ps.root.value);
    ps.kneading = tagged("kneading", [&] { return kneading_of_coeffs(ps.series); });
    ps.kneading_case = kneading_case(ps.series);
    if (!admissible_sufficient(ps.kneading)) {
        throw ComputationError("kneading", "kneading sequence " + format_bits(ps.kneading) +
                                               " fails the lexicographic test");
    }
    ps.angle = tagged("angle", [&] { return external_angle(ps.kneading); });
    ps.julia = tagged("solve_c", [&] { return solve_c(ps.angle); });
    return ps;
}

std::vector<ArcInterval> phi_arcs(const PairedSystem& ps, const AddressWord& a) {
    Itinerary e = itinerary_of_address(a);
    if (ps.kneading_case == KneadingCase::A0) {
        for (auto& bit : e.preperiod) {
            bit ^= 1;
        }
    }
    return angle_from_itinerary(e.preperiod, ps.angle, e.preperiod.size());
}

Complex phi(const PairedSystem& ps, const AddressWord& a, int depth) {
    if (a.size() < 8) {
        throw std::invalid_argument("phi: address must have at least 8 symbols");
    }
    const auto arcs = phi_arcs(ps, a);
    const auto wide = std::find_if(arcs.begin(), arcs.end(), [](const ArcInterval& r) { return r.hi > r.lo; });
    const ArcInterval& arc = wide != arcs.end() ? *wide : arcs.front();
    const Rational mid = (arc.lo + arc.hi) / 2;
    return dynamic_ray_land(ps.julia.c, mid, depth);
}

double residual_semiconjugacy(const PairedSystem& ps, std::size_t samples, int depth, std::uint64_t seed) {
    if (samples == 0) {
        throw std::invalid_argument("residual_semiconjugacy: need at least one sample");
    }
    if (depth < 9) {
        throw std::invalid_argument("residual_semiconjugacy: depth must be at least 9");
    }
    Rng rng(seed);
    const Complex c = ps.julia.c;
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const AddressWord a = random_address(rng, depth);
        const Complex z = phi(ps, a, depth);
        const Complex shifted = phi(ps, act_q(ps.tent, a), depth - 1);
        worst = std::max(worst, std::abs(shifted - (z * z + c)));
    }
    return worst;
}

std::size_t CellGraph::edge_count() const {
    std::size_t n = 0;
    for (const auto& adj : neighbors) {
        n += adj.size();
    }
    return n / 2;
}

std::size_t CellGraph::component_count() const {
    std::vector<bool> seen(cells.size(), false);
    std::size_t components = 0;
    std::vector<std::uint32_t> stack;
    for (std::size_t start = 0; start < cells.size(); ++start) {
        if (seen[start]) {
            continue;
        }
        ++components;
        seen[start] = true;
        stack.push_back(static_cast<std::uint32_t>(start));
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto w : neighbors[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
    }
    return components;
}

namespace {

struct GridKey {
    long long x, y;
    bool operator==(const GridKey&) const = default;
};

struct GridHash {
    std::size_t operator()(const GridKey& k) const noexcept {
        return std::hash<long long>{}(k.x * 0x9E3779B97F4A7C15LL ^ k.y);
    }
};

// Points of all addresses of the given length; index bits read a_0 first.
std::vector<Complex> address_points(Complex lambda, int length) {
    std::vector<Complex> pts{Complex{0.0, 0.0}};
    Complex power = 1.0;
    for (int k = 0; k < length; ++k) {
        std::vector<Complex> next(pts.size() * 2);
        for (std::size_t j = 0; j < pts.size(); ++j) {
            next[2 * j] = pts[j];
            next[2 * j + 1] = pts[j] + power;
        }
        pts = std::move(next);
        power *= lambda;
    }
    return pts;
}

AddressWord address_of_index(std::uint64_t i, int length) {
    AddressWord a(static_cast<std::size_t>(length));
    for (int k = 0; k < length; ++k) {
        a[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((i >> (length - 1 - k)) & 1u);
    }
    return a;
}

}  // namespace

CellGraph cell_graph(const TentSystem& sys, int depth, double tol) {
    if (depth < 1 || depth > kMaxCellDepth) {
        throw std::invalid_argument("cell_graph: depth must lie in [1, 18]");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("cell_graph: tolerance must be positive");
    }
    const Complex lambda = sys.lambda();
    const int fine = depth + kCellRefinement;
    const auto samples = address_points(lambda, fine);
    const double reach = 2.0 * tol * sys.cell_radius(fine);

    CellGraph g;
    g.depth = depth;
    g.tolerance = tol;
    g.cell_radius = sys.cell_radius(depth);
    const std::size_t n = std::size_t{1} << depth;
    g.cells.reserve(n);
    g.representatives.reserve(n);
    const Complex offset = std::pow(lambda, depth) * sys.critical_point();
    const auto coarse = address_points(lambda, depth);
    for (std::size_t i = 0; i < n; ++i) {
        g.cells.push_back(address_of_index(i, depth));
        g.representatives.push_back(coarse[i] + offset);
    }

    std::unordered_map<GridKey, std::vector<std::uint32_t>, GridHash> grid;
    grid.reserve(samples.size());
    const auto key_of = [reach](Complex p) {
        return GridKey{static_cast<long long>(std::floor(p.real() / reach)),
                       static_cast<long long>(std::floor(p.imag() / reach))};
    };
    for (std::size_t i = 0; i < samples.size(); ++i) {
        grid[key_of(samples[i])].push_back(static_cast<std::uint32_t>(i));
    }
    std::vector<std::vector<std::uint32_t>> adj(n);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const GridKey k = key_of(samples[i]);
        const std::uint32_t ci = static_cast<std::uint32_t>(i >> kCellRefinement);
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                const auto it = grid.find({k.x + dx, k.y + dy});
                if (it == grid.end()) {
                    continue;
                }
                for (std::uint32_t j : it->second) {
                    const std::uint32_t cj = j >> kCellRefinement;
                    if (cj > ci && std::abs(samples[i] - samples[j]) <= reach) {
                        adj[ci].push_back(cj);
                        adj[cj].push_back(ci);
                    }
                }
            }
        }
    }
    for (auto& a : adj) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
    g.neighbors = std::move(adj);
    return g;
}

BTReport bt_estimate(const CellGraph& graph, std::size_t sources, std::uint64_t seed) {
    if (graph.cells.empty() || !graph.connected()) {
        throw ComputationError("bt", "cell graph is disconnected");
    }
    const std::size_t n = graph.cells.size();
    std::vector<std::uint32_t> picks;
    if (n <= sources) {
        for (std::size_t i = 0; i < n; ++i) {
            picks.push_back(static_cast<std::uint32_t>(i));
        }
    } else {
        Rng rng(seed);
        std::vector<bool> used(n, false);
        while (picks.size() < sources) {
            const auto i = static_cast<std::uint32_t>(rng.below(n));
            if (!used[i]) {
                used[i] = true;
                picks.push_back(i);
            }
        }
    }
    const auto& rep = graph.representatives;
    BTReport report;
    report.depth = graph.depth;
    report.cell_tolerance = graph.tolerance;
    report.L_estimate = 1.0;
    constexpr std::uint32_t kNone = UINT32_MAX;
    std::vector<std::uint32_t> parent(n);
    std::vector<double> diam(n);
    std::vector<std::uint32_t> order;
    order.reserve(n);
    for (std::uint32_t src : picks) {
        std::fill(parent.begin(), parent.end(), kNone);
        order.clear();
        parent[src] = src;
        diam[src] = 0.0;
        order.push_back(src);
        for (std::size_t head = 0; head < order.size(); ++head) {
            const std::uint32_t v = order[head];
            for (std::uint32_t w : graph.neighbors[v]) {
                if (parent[w] != kNone) {
                    continue;
                }
                parent[w] = v;
                order.push_back(w);
                // Diameter of the tree path src..w from the path src..v.
                double d = diam[v];
                for (std::uint32_t u = v;; u = parent[u]) {
                    d = std::max(d, std::abs(rep[w] - rep[u]));
                    if (u == src) {
                        break;
                    }
                }
                diam[w] = d;
                const double dist = std::abs(rep[w] - rep[src]);
                if (dist > 0.0) {
                    ++report.pair_count;
                    const double ratio = d / dist;
                    if (ratio > report.L_estimate) {
                        report.L_estimate = ratio;
                        report.witness_first = graph.cells[src];
                        report.witness_second = graph.cells[w];
                        report.witness_distance = dist;
                        report.witness_arc_diameter = d;
                    }
                }
            }
        }
    }
    if (report.witness_first.empty() && !picks.empty() && n > 1) {
        report.witness_first = graph.cells[picks.front()];
        report.witness_second = graph.cells[graph.neighbors[picks.front()].front()];
        report.witness_distance = std::abs(rep[picks.front()] - rep[graph.neighbors[picks.front()].front()]);
        report.witness_arc_diameter = report.witness_distance;
    }
    return report;
}

BTReport bt_estimate(const TentSystem& sys, int depth) { return bt_estimate(cell_graph(sys, depth, 1.0)); }

namespace {

std::vector<double> qs_thresholds() {
    std::vector<double> t;
    for (int k = -8; k <= 8; ++k) {
        t.push_back(std::exp2(k / 2.0));
    }
    return t;
}

}  // namespace

QSReport qs_report_points(const std::vector<Complex>& domain, const std::vector<Complex>& image,
                          std::uint64_t seed) {
    if (domain.size() != image.size()) {
        throw std::invalid_argument("qs_report: domain and image sizes differ");
    }
    const std::size_t n = domain.size();
    const auto ts = qs_thresholds();
    std::vector<double> eta(ts.size(), 0.0);
    QSReport report;
    report.seed = seed;
    report.sample_count = n;
    std::vector<std::size_t> idx;
    std::vector<double> d, dimg, prefix;
    for (std::size_t x = 0; x < n; ++x) {
        idx.clear();
        for (std::size_t b = 0; b < n; ++b) {
            if (b == x) {
                continue;
            }
            if (std::abs(domain[b] - domain[x]) == 0.0 || std::abs(image[b] - image[x]) == 0.0) {
                ++report.degenerate_count;
                continue;
            }
            idx.push_back(b);
        }
        std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
            const double di = std::abs(domain[i] - domain[x]);
            const double dj = std::abs(domain[j] - domain[x]);
            return di < dj || (di == dj && i < j);
        });
        const std::size_t m = idx.size();
        d.resize(m);
        dimg.resize(m);
        prefix.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            d[k] = std::abs(domain[idx[k]] - domain[x]);
            dimg[k] = std::abs(image[idx[k]] - image[x]);
            prefix[k] = k == 0 ? dimg[k] : std::max(prefix[k - 1], dimg[k]);
        }
        for (std::size_t b = 0; b < m; ++b) {
            for (std::size_t q = 0; q < ts.size(); ++q) {
                const auto end = std::upper_bound(d.begin(), d.end(), ts[q] * d[b]);
                if (end == d.begin()) {
                    continue;
                }
                const double top = prefix[static_cast<std::size_t>(end - d.begin()) - 1];
                eta[q] = std::max(eta[q], top / dimg[b]);
            }
        }
    }
    double running = 0.0;
    for (std::size_t q = 0; q < ts.size(); ++q) {
        running = std::max(running, eta[q]);
        report.t_buckets.push_back({ts[q], running});
    }
    const auto one = std::find_if(ts.begin(), ts.end(), [](double t) { return t == 1.0; });
    report.weak_H = std::max(1.0, report.t_buckets[static_cast<std::size_t>(one - ts.begin())].max_ratio);
    return report;
}

namespace {

void pool_points(const PairedSystem* ps, const TentSystem& sys, std::size_t count, int depth, std::uint64_t seed,
                 std::vector<Complex>& domain, std::vector<Complex>& image) {
    Rng rng(seed);
    domain.clear();
    image.clear();
    for (std::size_t i = 0; i < count; ++i) {
        const AddressWord a = random_address(rng, depth);
        const Complex p = point_of_address(sys, a);
        domain.push_back(p);
        image.push_back(ps ? phi(*ps, a, depth) : p);
    }
}

}  // namespace

QSReport qs_report(const PairedSystem& ps, std::size_t triples, int depth, std::uint64_t seed) {
    if (triples < 100) {
        throw std::invalid_argument("qs_report: need at least 100 samples");
    }
    std::vector<Complex> domain, image;
    pool_points(&ps, ps.tent, triples, depth, seed, domain, image);
    return qs_report_points(domain, image, seed);
}

QSReport qs_identity(const TentSystem& sys, std::size_t triples, int depth, std::uint64_t seed) {
    if (triples < 100) {
        throw std::invalid_argument("qs_report: need at least 100 samples");
    }
    std::vector<Complex> domain, image;
    pool_points(nullptr, sys, triples, depth, seed, domain, image);
    return qs_report_points(domain, image, seed);
}

RoundishnessReport roundishness_points(const std::vector<Complex>& domain, const std::vector<Complex>& image,
                                       const std::vector<std::size_t>& centers, const std::vector<double>& radii) {
    if (domain.size() != image.size()) {
        throw std::invalid_argument("roundishness: domain and image sizes differ");
    }
    RoundishnessReport report;
    std::vector<std::size_t> inside;
    for (std::size_t x : centers) {
        for (double r : radii) {
            if (!(r > 0.0)) {
                throw std::invalid_argument("roundishness: radii must be positive");
            }
            inside.clear();
            double inradius = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < domain.size(); ++i) {
                if (std::abs(domain[i] - domain[x]) < r) {
                    inside.push_back(i);
                } else {
                    inradius = std::min(inradius, std::abs(image[i] - image[x]));
                }
            }
            if (inside.size() < 10) {
                ++report.balls_skipped;
                continue;
            }
            double diam = 0.0;
            for (std::size_t i = 0; i < inside.size(); ++i) {
                for (std::size_t j = i + 1; j < inside.size(); ++j) {
                    diam = std::max(diam, std::abs(image[inside[i]] - image[inside[j]]));
                }
            }
            if (diam == 0.0) {
                ++report.balls_skipped;
                continue;
            }
            ++report.balls_used;
            report.min_ratio = std::min(report.min_ratio, inradius / diam);
        }
    }
    return report;
}

RoundishnessReport roundishness(const PairedSystem& ps, std::size_t centers, const std::vector<double>& radii,
                                int depth, std::uint64_t seed, std::size_t pool) {
    std::vector<Complex> domain, image;
    pool_points(&ps, ps.tent, std::max(pool, centers), depth, seed, domain, image);
    std::vector<std::size_t> idx(centers);
    for (std::size_t i = 0; i < centers; ++i) {
        idx[i] = i;
    }
    return roundishness_points(domain, image, idx, radii);
}

}  // namespace dendrite
