#include "dendrite/tent_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace dendrite {

TentSystem::TentSystem(Complex lambda) : lambda_(lambda) {
    const double r = std::abs(lambda);
    if (!(r > 0.0 && r < 1.0)) {
        throw std::invalid_argument("tent system: need 0 < |lambda| < 1");
    }
}

double TentSystem::cell_radius(int n) const {
    const double r = std::abs(lambda_);
    return std::pow(r, n) / (1.0 - r);
}

std::string format_address(const AddressWord& a) {
    std::string s;
    s.reserve(a.size());
    for (auto bit : a) {
        s += bit ? '1' : '0';
    }
    return s;
}

Complex point_of_address(const TentSystem& sys, const AddressWord& a) {
    Complex acc = 0.0;
    const Complex lambda = sys.lambda();
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        acc = acc * lambda + static_cast<double>(*it);
    }
    return acc;
}

AddressWord act_q(const TentSystem&, const AddressWord& a) {
    if (a.empty()) {
        throw std::invalid_argument("act_q: empty address");
    }
    AddressWord out(a.begin() + 1, a.end());
    if (a.front() == 1) {
        for (auto& bit : out) {
            bit ^= 1;
        }
    }
    return out;
}

Complex map_q(const TentSystem& sys, Complex z, int branch) {
    const Complex lambda = sys.lambda();
    if (branch == 0) {
        return z / lambda;
    }
    return (1.0 - z) / lambda + 1.0 / (1.0 - lambda);
}

AddressWord random_address(Rng& rng, int length) {
    AddressWord a(static_cast<std::size_t>(std::max(length, 0)));
    for (auto& bit : a) {
        bit = static_cast<std::uint8_t>(rng.bit());
    }
    return a;
}

std::vector<CloudPoint> cloud(const TentSystem& sys, int depth, const Sampler& sampler) {
    if (depth < 0) {
        throw std::invalid_argument("cloud: negative depth");
    }
    std::vector<CloudPoint> out;
    if (sampler.kind == Sampler::Kind::Exhaustive) {
        if (depth > kMaxExhaustiveDepth) {
            throw std::invalid_argument("cloud: exhaustive depth exceeds 24");
        }
        const std::uint64_t n = std::uint64_t{1} << depth;
        out.reserve(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            AddressWord a(static_cast<std::size_t>(depth));
            for (int k = 0; k < depth; ++k) {
                a[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((i >> (depth - 1 - k)) & 1u);
            }
            const Complex p = point_of_address(sys, a);
            out.push_back({std::move(a), p});
        }
        return out;
    }
    Rng rng(sampler.seed);
    out.reserve(sampler.count);
    for (std::size_t i = 0; i < sampler.count; ++i) {
        AddressWord a = random_address(rng, depth);
        const Complex p = point_of_address(sys, a);
        out.push_back({std::move(a), p});
    }
    return out;
}

namespace {

constexpr double kUnit = 0x1.0p-53;

struct Remainder {
    Complex r;
    double err;
};

// One step r -> r / lambda + c with a running bound on the rounding error.
Remainder advance(const Remainder& prev, Complex lambda, double abs_lambda, int c) {
    const Complex next = prev.r / lambda + static_cast<double>(c);
    const double err = prev.err / abs_lambda + 4.0 * kUnit * std::abs(prev.r) / abs_lambda +
                       2.0 * kUnit * std::abs(next);
    return {next, err};
}

double prune_bound(double abs_lambda, int max_coeff, double slack) {
    return max_coeff * abs_lambda / (1.0 - abs_lambda) + slack;
}

void check_lambda(Complex lambda) {
    if (!(std::abs(lambda) < 1.0) || lambda == Complex{0.0, 0.0}) {
        throw std::invalid_argument("need 0 < |lambda| < 1");
    }
}

}  // namespace

std::vector<Survivor> neighbor_survivors(Complex lambda, const std::vector<int>& alphabet, int depth,
                                         double slack, std::size_t cap) {
    check_lambda(lambda);
    if (alphabet.empty()) {
        throw std::invalid_argument("neighbor_survivors: empty alphabet");
    }
    int max_coeff = 1;
    for (int a : alphabet) {
        max_coeff = std::max(max_coeff, std::abs(a));
    }
    const double abs_lambda = std::abs(lambda);
    const double bound = prune_bound(abs_lambda, max_coeff, slack);

    struct Node {
        std::vector<int> word;
        Remainder rem;
    };
    std::vector<Node> level{{{}, {Complex{1.0, 0.0}, 0.0}}};
    for (int k = 1; k <= depth && !level.empty(); ++k) {
        std::vector<Node> next;
        for (const Node& node : level) {
            for (int c : alphabet) {
                const Remainder rem = advance(node.rem, lambda, abs_lambda, c);
                if (std::abs(rem.r) > bound + rem.err) {
                    continue;
                }
                if (next.size() >= cap) {
                    throw ComputationError("neighbor_survivors", "survivor cap exceeded at depth " +
                                                                     std::to_string(k));
                }
                Node child{node.word, rem};
                child.word.push_back(c);
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    std::vector<Survivor> out;
    out.reserve(level.size());
    for (auto& node : level) {
        out.push_back({std::move(node.word), node.rem.r});
    }
    return out;
}

std::string tag_name(TTag tag) {
    switch (tag) {
        case TTag::CertifiedNotInM: return "CertifiedNotInM";
        case TTag::UniqueSignBranch: return "UniqueSignBranch";
        case TTag::MultipleBranches: return "MultipleBranches";
        case TTag::ZeroCoefficientBranch: return "ZeroCoefficientBranch";
        case TTag::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

constexpr std::size_t kStateCap = 4096;
constexpr std::size_t kAncestorCap = 16;

struct State {
    Remainder rem;
    bool pm = false;         // reachable by a word without zeros
    bool zero = false;       // reachable by a word containing a zero
    int pm_words = 0;        // zero-free words reaching the state, saturating at 2
    std::size_t parent = 0;  // representative predecessor
    int coeff = 0;           // coefficient on the representative edge
    std::vector<std::size_t> anchors;  // level-m ancestors, sorted, capped
};

void merge_anchors(std::vector<std::size_t>& into, const std::vector<std::size_t>& from) {
    std::vector<std::size_t> merged;
    std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(merged));
    if (merged.size() > kAncestorCap) {
        merged.resize(kAncestorCap);
    }
    into = std::move(merged);
}

struct GridKey {
    long long x, y;
    bool operator==(const GridKey&) const = default;
};

struct GridHash {
    std::size_t operator()(const GridKey& k) const noexcept {
        return std::hash<long long>{}(k.x * 0x9E3779B97F4A7C15LL ^ k.y);
    }
};

}  // namespace

TVerdict verdict_T(Complex lambda, int depth) {
    check_lambda(lambda);
    if (depth < 1) {
        throw std::invalid_argument("verdict_T: depth must be positive");
    }
    const double abs_lambda = std::abs(lambda);
    const double bound = prune_bound(abs_lambda, 1, 1e-9);
    const int lookahead = std::max(8, depth / 4);
    const int anchor_level = std::max(0, depth - lookahead);
    static constexpr int kAlphabet[3] = {-1, 0, 1};

    TVerdict verdict;
    verdict.depth = depth;
    std::vector<std::vector<State>> levels;
    State root;
    root.rem = {Complex{1.0, 0.0}, 0.0};
    root.pm = true;
    root.pm_words = 1;
    if (anchor_level == 0) {
        root.anchors = {0};
    }
    levels.push_back({root});
    verdict.state_counts.push_back(1);

    for (int k = 1; k <= depth; ++k) {
        const auto& prev = levels.back();
        std::vector<State> next;
        std::unordered_map<GridKey, std::vector<std::size_t>, GridHash> grid;
        double cell = 1e-9;
        for (const auto& s : prev) {
            cell = std::max(cell, 4.0 * (s.rem.err / abs_lambda + 4.0 * kUnit * std::abs(s.rem.r) / abs_lambda) + 1e-9);
        }
        for (std::size_t pi = 0; pi < prev.size(); ++pi) {
            const State& parent = prev[pi];
            for (int c : kAlphabet) {
                const Remainder rem = advance(parent.rem, lambda, abs_lambda, c);
                if (std::abs(rem.r) > bound + rem.err) {
                    continue;
                }
                const bool pm = parent.pm && c != 0;
                const bool zero = parent.zero || c == 0;
                const int pm_words = pm ? parent.pm_words : 0;
                const GridKey key{static_cast<long long>(std::floor(rem.r.real() / cell)),
                                  static_cast<long long>(std::floor(rem.r.imag() / cell))};
                std::size_t found = next.size();
                for (long long dx = -1; dx <= 1 && found == next.size(); ++dx) {
                    for (long long dy = -1; dy <= 1 && found == next.size(); ++dy) {
                        auto it = grid.find({key.x + dx, key.y + dy});
                        if (it == grid.end()) {
                            continue;
                        }
                        for (std::size_t idx : it->second) {
                            const State& other = next[idx];
                            if (std::abs(other.rem.r - rem.r) <= other.rem.err + rem.err + 1e-9) {
                                found = idx;
                                break;
                            }
                        }
                    }
                }
                if (found == next.size()) {
                    if (next.size() >= kStateCap) {
                        verdict.tag = TTag::Inconclusive;
                        verdict.note = "state cap reached at level " + std::to_string(k);
                        verdict.state_counts.push_back(next.size());
                        return verdict;
                    }
                    State s;
                    s.rem = rem;
                    s.pm = pm;
                    s.zero = zero;
                    s.pm_words = pm_words;
                    s.parent = pi;
                    s.coeff = c;
                    s.anchors = parent.anchors;
                    grid[key].push_back(next.size());
                    next.push_back(std::move(s));
                } else {
                    State& s = next[found];
                    s.rem.err = std::max(s.rem.err, rem.err + std::abs(rem.r - s.rem.r));
                    // Prefer a zero-free representative path.
                    if (pm && !s.pm) {
                        s.parent = pi;
                        s.coeff = c;
                    }
                    s.pm = s.pm || pm;
                    s.zero = s.zero || zero;
                    s.pm_words = std::min(2, s.pm_words + pm_words);
                    merge_anchors(s.anchors, parent.anchors);
                }
            }
        }
        if (k == anchor_level) {
            for (std::size_t i = 0; i < next.size(); ++i) {
                next[i].anchors = {i};
            }
        }
        verdict.state_counts.push_back(next.size());
        levels.push_back(std::move(next));
        if (levels.back().empty()) {
            verdict.tag = TTag::CertifiedNotInM;
            verdict.depth = k;
            verdict.note = "all branches pruned at level " + std::to_string(k);
            return verdict;
        }
    }

    std::vector<std::size_t> anchors;
    for (const auto& s : levels.back()) {
        merge_anchors(anchors, s.anchors);
    }
    const auto& anchor_states = levels[static_cast<std::size_t>(anchor_level)];
    for (std::size_t a : anchors) {
        std::vector<int> word;
        std::size_t idx = a;
        for (int k = anchor_level; k >= 1; --k) {
            const State& s = levels[static_cast<std::size_t>(k)][idx];
            word.push_back(s.coeff);
            idx = s.parent;
        }
        std::reverse(word.begin(), word.end());
        verdict.surviving_prefixes.push_back(std::move(word));
    }

    if (anchors.size() == 1) {
        const State& s = anchor_states[anchors.front()];
        if (s.pm && !s.zero && s.pm_words == 1) {
            verdict.tag = TTag::UniqueSignBranch;
            return verdict;
        }
        if (!s.pm && s.zero) {
            verdict.tag = TTag::ZeroCoefficientBranch;
            return verdict;
        }
    }
    const std::size_t now = verdict.state_counts.back();
    const std::size_t before = verdict.state_counts[static_cast<std::size_t>(depth - lookahead > 0 ? depth - lookahead : 0)];
    if (now < before) {
        verdict.tag = TTag::Inconclusive;
        verdict.note = "branch count still shrinking at depth";
        return verdict;
    }
    verdict.tag = TTag::MultipleBranches;
    return verdict;
}

std::vector<OverlapWitness> overlap_witnesses(const TentSystem& sys, int depth, double eps) {
    if (depth < 1 || depth > kMaxWitnessDepth) {
        throw std::invalid_argument("overlap_witnesses: depth must lie in [1, 22]");
    }
    if (!(eps > 0.0)) {
        throw std::invalid_argument("overlap_witnesses: eps must be positive");
    }
    // Points of the tail words a_1..a_{depth-1}; piece j adds j to lambda * tail.
    const int tail_len = depth - 1;
    const std::uint64_t n = std::uint64_t{1} << tail_len;
    std::vector<Complex> tails(n);
    const Complex lambda = sys.lambda();
    for (std::uint64_t i = 0; i < n; ++i) {
        Complex acc = 0.0;
        for (int k = 0; k < tail_len; ++k) {
            const auto bit = static_cast<double>((i >> k) & 1u);  // bit k is a_{tail_len - k}
            acc = acc * lambda + bit;
        }
        tails[i] = acc * lambda;
    }
    const auto address_of = [tail_len](int first, std::uint64_t i) {
        AddressWord a(static_cast<std::size_t>(tail_len + 1));
        a[0] = static_cast<std::uint8_t>(first);
        for (int k = 0; k < tail_len; ++k) {
            a[static_cast<std::size_t>(tail_len - k)] = static_cast<std::uint8_t>((i >> k) & 1u);
        }
        return a;
    };
    std::unordered_map<GridKey, std::vector<std::uint64_t>, GridHash> grid;
    for (std::uint64_t i = 0; i < n; ++i) {
        const Complex p = tails[i];
        grid[{static_cast<long long>(std::floor(p.real() / eps)), static_cast<long long>(std::floor(p.imag() / eps))}]
            .push_back(i);
    }
    std::vector<OverlapWitness> out;
    for (std::uint64_t j = 0; j < n; ++j) {
        const Complex q = tails[j] + 1.0;
        const long long gx = static_cast<long long>(std::floor(q.real() / eps));
        const long long gy = static_cast<long long>(std::floor(q.imag() / eps));
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = grid.find({gx + dx, gy + dy});
                if (it == grid.end()) {
                    continue;
                }
                for (std::uint64_t i : it->second) {
                    const double d = std::abs(tails[i] - q);
                    if (d <= eps) {
                        out.push_back({address_of(0, i), address_of(1, j), d});
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const OverlapWitness& a, const OverlapWitness& b) {
        if (a.distance != b.distance) {
            return a.distance < b.distance;
        }
        if (a.first != b.first) {
            return a.first < b.first;
        }
        return a.second < b.second;
    });
    return out;
}

Block parse_block(const std::string& text) {
    if (text == "+++") return Block::Plus3;
    if (text == "++++") return Block::Plus4;
    if (text == "---") return Block::Minus3;
    if (text == "----") return Block::Minus4;
    throw std::invalid_argument("t0: unknown block '" + text + "'");
}

namespace {

int block_sign(Block b) { return (b == Block::Plus3 || b == Block::Plus4) ? 1 : -1; }
int block_length(Block b) { return (b == Block::Plus3 || b == Block::Minus3) ? 3 : 4; }

void append_block(std::vector<int>& out, Block b) {
    out.insert(out.end(), static_cast<std::size_t>(block_length(b)), block_sign(b));
}

}  // namespace

SignedSeries t0_series(const std::vector<Block>& lead, const std::vector<Block>& cycle) {
    if (cycle.empty()) {
        throw std::invalid_argument("t0: cycle of blocks must be nonempty");
    }
    std::vector<Block> stream = lead;
    stream.insert(stream.end(), cycle.begin(), cycle.end());
    stream.push_back(cycle.front());  // seam between repetitions
    if (block_sign(stream.front()) != 1) {
        throw std::invalid_argument("t0: first block must be a plus block");
    }
    for (std::size_t i = 1; i < stream.size(); ++i) {
        if (block_sign(stream[i]) == block_sign(stream[i - 1])) {
            throw std::invalid_argument("t0: consecutive blocks of the same sign");
        }
    }
    SignedSeries s;
    s.preperiod = {1, -1, 1, 1, 1, -1, -1, -1, 1, 1, 1, -1, -1, -1};
    for (Block b : lead) {
        append_block(s.preperiod, b);
    }
    for (Block b : cycle) {
        append_block(s.period, b);
    }
    return canonical(s);
}

SignedSeries t0_series(const std::vector<Block>& cycle) { return t0_series({}, cycle); }

}  // namespace dendrite
