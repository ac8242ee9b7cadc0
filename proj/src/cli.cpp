#include "dendrite/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dendrite/conjugacy.hpp"
#include "dendrite/general_ifs.hpp"
#include "dendrite/json_io.hpp"
#include "dendrite/quadratic.hpp"
#include "dendrite/rational_gallery.hpp"
#include "dendrite/render.hpp"
#include "dendrite/series.hpp"
#include "dendrite/symbolic.hpp"
#include "dendrite/tent_system.hpp"

namespace dendrite {

namespace {

// Subcommand names with their help lines, in help order.
const std::vector<std::pair<std::string, std::string>> kCommands{
    {"root", "zeros of a coefficient word inside --radius, as CSV"},
    {"verdict", "dendrite verdict for a word root or --lambda"},
    {"kneading", "kneading sequence of a coefficient word"},
    {"angle", "external angle of a kneading or coefficient word"},
    {"misiurewicz", "Misiurewicz parameter for a rational angle"},
    {"pair", "root, kneading, angle and Julia parameter of a word"},
    {"verify", "verdict plus semiconjugacy check of a word"},
    {"bt", "bounded turning estimate"},
    {"qs", "quasisymmetry estimate"},
    {"c1", "separation constants of a vanishing word"},
    {"gallery", "gasket and hexagasket checks"},
    {"render-attractor", "PPM image of the attractor"},
    {"render-julia", "PPM image of the Julia set"},
    {"scan-locus", "PPM map of verdict tags over a parameter window"},
    {"t0", "series and verdict for a block word"},
};

constexpr std::size_t kMaxWitnesses = 16;
constexpr std::size_t kRenderSamples = 200000;

double parse_number(const std::string& text, const char* what) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw std::invalid_argument(std::string(what) + ": bad number '" + text + "'");
    }
    return x;
}

Complex parse_lambda(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        return {parse_number(text, "lambda"), 0.0};
    }
    return {parse_number(text.substr(0, comma), "lambda"), parse_number(text.substr(comma + 1), "lambda")};
}

std::pair<int, int> parse_size(const std::string& text) {
    const auto x = text.find('x');
    const double w = parse_number(text.substr(0, x), "size");
    const double h = x == std::string::npos ? w : parse_number(text.substr(x + 1), "size");
    if (w < 1 || h < 1 || w > 8192 || h > 8192 || w != std::floor(w) || h != std::floor(h)) {
        throw std::invalid_argument("size: expected N or WxH with 1 <= N <= 8192");
    }
    return {static_cast<int>(w), static_cast<int>(h)};
}

bool is_bits(const std::string& text) {
    return !text.empty() && text.find_first_not_of("01()") == std::string::npos;
}

void need_input(const RunConfig& cfg) {
    if (cfg.input.empty()) {
        throw std::invalid_argument(cfg.command + ": missing input");
    }
}

/// Either --lambda or a coefficient word, never both.
Complex resolve_lambda(const RunConfig& cfg) {
    if (cfg.lambda && !cfg.input.empty()) {
        throw std::invalid_argument(cfg.command + ": give a word or --lambda, not both");
    }
    if (cfg.lambda) {
        return parse_lambda(*cfg.lambda);
    }
    need_input(cfg);
    return pair_root(canonical(parse_series(cfg.input))).value;
}

std::vector<OverlapWitness> verdict_witnesses(Complex lambda, int depth) {
    const TentSystem sys(lambda);
    const int d = std::clamp(depth, 1, 12);
    auto w = overlap_witnesses(sys, d, 2.0 * sys.cell_radius(d));
    if (w.size() > kMaxWitnesses) {
        w.resize(kMaxWitnesses);
    }
    return w;
}

class Sink {
public:
    Sink(const RunConfig& cfg, std::ostream& fallback) : fallback_(fallback) {
        if (!cfg.out.empty()) {
            file_.open(cfg.out, std::ios::binary);
            if (!file_) {
                throw ComputationError("output", "cannot open " + cfg.out);
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

void emit(const RunConfig& cfg, std::ostream& out, const Json& j) {
    Sink sink(cfg, out);
    sink.stream() << j.dump(2) << '\n';
}

void emit_text(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    Sink sink(cfg, out);
    sink.stream() << text << '\n';
}

Window window_or(const RunConfig& cfg, const std::vector<Complex>& points) {
    return cfg.window ? parse_window(*cfg.window) : fit_window(points);
}

void render_points(const RunConfig& cfg, std::ostream& out, const std::vector<Complex>& points) {
    const auto [w, h] = parse_size(cfg.size);
    const HitGrid grid = accumulate(points, window_or(cfg, points), w, h);
    Sink sink(cfg, out);
    write_ppm(sink.stream(), grid);
}

int cmd_root(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    const auto roots = roots_in_disk(canonical(parse_series(cfg.input)), cfg.radius);
    Sink sink(cfg, out);
    write_roots_csv(sink.stream(), roots);
    return kExitOk;
}

int cmd_verdict(const RunConfig& cfg, std::ostream& out) {
    const Complex lambda = resolve_lambda(cfg);
    const int depth = cfg.depth.value_or(60);
    const TVerdict v = verdict_T(lambda, depth);
    Json j = to_json(v, verdict_witnesses(lambda, depth));
    j["lambda"] = complex_json(lambda);
    emit(cfg, out, j);
    return kExitOk;
}

int cmd_kneading(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    emit_text(cfg, out, format_bits(kneading_of_coeffs(canonical(parse_series(cfg.input)))));
    return kExitOk;
}

int cmd_angle(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    const KneadingSequence nu =
        is_bits(cfg.input) ? parse_bits(cfg.input) : kneading_of_coeffs(canonical(parse_series(cfg.input)));
    emit_text(cfg, out, format_angle(external_angle(nu)));
    return kExitOk;
}

int cmd_misiurewicz(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    emit(cfg, out, to_json(solve_c(parse_angle(cfg.input))));
    return kExitOk;
}

int cmd_pair(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    emit(cfg, out, to_json(pair_from_word(cfg.input)));
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    const PairedSystem ps = pair_from_word(cfg.input);
    const int depth = cfg.depth.value_or(30);
    const std::size_t samples = cfg.samples.value_or(100);
    const TVerdict v = verdict_T(ps.root.value, 60);
    const double residual = residual_semiconjugacy(ps, samples, depth, cfg.seed);
    Json j = to_json(ps);
    j["admissible"] = admissible_sufficient(ps.kneading);
    j["verdict"] = Json{{"tag", tag_name(v.tag)}, {"depth", v.depth}};
    j["semiconjugacy"] = Json{{"samples", samples}, {"depth", depth}, {"seed", cfg.seed}, {"residual", residual}};
    emit(cfg, out, j);
    return kExitOk;
}

int cmd_bt(const RunConfig& cfg, std::ostream& out) {
    const TentSystem sys(resolve_lambda(cfg));
    const CellGraph graph = cell_graph(sys, cfg.depth.value_or(10), 1.0);
    Json j = to_json(bt_estimate(graph, cfg.samples.value_or(32), cfg.seed));
    j["lambda"] = complex_json(sys.lambda());
    emit(cfg, out, j);
    return kExitOk;
}

int cmd_qs(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    const PairedSystem ps = pair_from_word(cfg.input);
    Json j = to_json(qs_report(ps, cfg.samples.value_or(1024), cfg.depth.value_or(30), cfg.seed));
    j["series"] = format_series(ps.series);
    emit(cfg, out, j);
    return kExitOk;
}

int cmd_c1(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    const SignedSeries s = canonical(parse_series(cfg.input));
    if (s.is_finite()) {
        throw std::invalid_argument("c1: the word must be eventually periodic");
    }
    const GeneralIFS ifs{pair_root(s).value, {0.0, 1.0}};
    const DifferenceSeries f = from_signed(s);
    Json j = to_json(c1_estimate(ifs, f, s.preperiod.size(), s.period.size(), cfg.depth.value_or(60)));
    j["lambda"] = complex_json(ifs.lambda);
    const UniqueDifference u = unique_difference_check(ifs, f, 1);
    j["unique_difference"] = u.unique;
    emit(cfg, out, j);
    return kExitOk;
}

int cmd_gallery(const RunConfig& cfg, std::ostream& out) {
    const std::vector<GalleryReport> reports{affine_check(gasket_system()), gasket_check(),
                                             affine_check(hexagasket_system()), hexagasket_check()};
    Json j = Json::array();
    bool ok = true;
    for (const auto& r : reports) {
        j.push_back(to_json(r));
        ok = ok && r.passed();
    }
    emit(cfg, out, j);
    if (!ok) {
        throw ComputationError("gallery", "a combinatorial check failed");
    }
    return kExitOk;
}

int cmd_render_attractor(const RunConfig& cfg, std::ostream& out) {
    const TentSystem sys(resolve_lambda(cfg));
    const int depth = cfg.depth.value_or(16);
    const Sampler sampler = depth <= 20 ? Sampler::exhaustive()
                                        : Sampler::random(cfg.samples.value_or(kRenderSamples), cfg.seed);
    std::vector<Complex> points;
    for (const auto& p : cloud(sys, depth, sampler)) {
        points.push_back(p.point);
    }
    render_points(cfg, out, points);
    return kExitOk;
}

int cmd_render_julia(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    const JuliaContext ctx =
        cfg.input.find('/') != std::string::npos ? solve_c(parse_angle(cfg.input)) : pair_from_word(cfg.input).julia;
    render_points(cfg, out, julia_cloud(ctx, cfg.samples.value_or(kRenderSamples), cfg.depth.value_or(30), cfg.seed));
    return kExitOk;
}

int cmd_scan_locus(const RunConfig& cfg, std::ostream& out) {
    const auto [w, h] = parse_size(cfg.size);
    const Window win = cfg.window ? parse_window(*cfg.window) : Window{-1.0, 0.0, 1.0, 1.0};
    const int depth = cfg.depth.value_or(30);
    std::vector<Rgb> pixels(static_cast<std::size_t>(w) * h);
    std::atomic<int> next_row{0};
    auto worker = [&] {
        for (int y = next_row++; y < h; y = next_row++) {
            for (int x = 0; x < w; ++x) {
                const Complex lambda = pixel_center(win, w, h, x, y);
                Rgb color{0, 0, 0};
                if (std::abs(lambda) > 0.0 && std::abs(lambda) < 1.0) {
                    try {
                        color = tag_color(verdict_T(lambda, depth).tag);
                    } catch (const ComputationError&) {
                        color = tag_color(TTag::Inconclusive);
                    }
                }
                pixels[static_cast<std::size_t>(y) * w + x] = color;
            }
        }
    };
    const unsigned n = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < n; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    Sink sink(cfg, out);
    write_ppm(sink.stream(), w, h, pixels);
    return kExitOk;
}

std::vector<Block> parse_blocks(const std::string& text) {
    std::vector<Block> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_block(item));
    }
    return out;
}

int cmd_t0(const RunConfig& cfg, std::ostream& out) {
    need_input(cfg);
    const auto bar = cfg.input.find('|');
    const SignedSeries s = bar == std::string::npos
                               ? t0_series(parse_blocks(cfg.input))
                               : t0_series(parse_blocks(cfg.input.substr(0, bar)), parse_blocks(cfg.input.substr(bar + 1)));
    const DiskRoot root = pair_root(s);
    const TVerdict v = verdict_T(root.value, cfg.depth.value_or(60));
    emit(cfg, out, Json{{"series", format_series(s)}, {"lambda", to_json(root)}, {"tag", tag_name(v.tag)}, {"depth", v.depth}});
    return kExitOk;
}

const std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>>& handlers() {
    static const std::map<std::string, std::function<int(const RunConfig&, std::ostream&)>> table{
        {"root", cmd_root},
        {"verdict", cmd_verdict},
        {"kneading", cmd_kneading},
        {"angle", cmd_angle},
        {"misiurewicz", cmd_misiurewicz},
        {"pair", cmd_pair},
        {"verify", cmd_verify},
        {"bt", cmd_bt},
        {"qs", cmd_qs},
        {"c1", cmd_c1},
        {"gallery", cmd_gallery},
        {"render-attractor", cmd_render_attractor},
        {"render-julia", cmd_render_julia},
        {"scan-locus", cmd_scan_locus},
        {"t0", cmd_t0},
    };
    return table;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto it = handlers().find(cfg.command);
    if (it == handlers().end()) {
        err << "usage: unknown command '" << cfg.command << "'\n";
        return kExitUsage;
    }
    try {
        return it->second(cfg, out);
    } catch (const ComputationError& e) {
        err << "error[" << e.stage() << "]: " << e.what() << '\n';
        return kExitComputation;
    } catch (const std::invalid_argument& e) {
        err << "usage: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error[internal]: " << e.what() << '\n';
        return kExitComputation;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Dendrite IFS and Misiurewicz Julia set toolkit", "dendrite"};
    app.require_subcommand(1, 1);
    RunConfig cfg;
    int depth = 0;
    std::size_t samples = 0;
    std::string lambda;
    std::string window;
    for (const auto& [name, help] : kCommands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("input", cfg.input, "coefficient word, kneading word, angle or block list");
        sub->add_option("--lambda", lambda, "parameter as re or re,im");
        sub->add_option("--depth", depth)->check(CLI::Range(1, 100000));
        sub->add_option("--samples", samples)->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed);
        sub->add_option("--out", cfg.out, "output file (default stdout)");
        sub->add_option("--size", cfg.size, "N or WxH pixels");
        sub->add_option("--window", window, "x0,y0,x1,y1");
        sub->add_option("--radius", cfg.radius, "root search radius")->check(CLI::Range(0.0, 1.0));
        sub->callback([&cfg, name] { cfg.command = name; });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage: " << e.what() << '\n' << app.help();
        return kExitUsage;
    }
    for (CLI::App* sub : app.get_subcommands()) {
        if (sub->count("--lambda")) cfg.lambda = lambda;
        if (sub->count("--depth")) cfg.depth = depth;
        if (sub->count("--samples")) cfg.samples = samples;
        if (sub->count("--window")) cfg.window = window;
    }
    return run(cfg, out, err);
}

}  // namespace dendrite
