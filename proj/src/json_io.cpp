#include "dendrite/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

namespace dendrite {

namespace {

// Non-finite values have no JSON literal; they are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string digits17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

Json complex_json(Complex z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

std::string format_signs(const std::vector<int>& word) {
    std::string out;
    for (int c : word) {
        out += c > 0 ? '+' : (c < 0 ? '-' : '0');
    }
    return out;
}

Json to_json(const DiskRoot& root) {
    return Json{{"re", number(root.value.real())},
                {"im", number(root.value.imag())},
                {"residual", number(root.residual_bound)},
                {"certified", root.certified}};
}

Json to_json(const JuliaContext& ctx) {
    return Json{{"c_re", number(ctx.c.real())}, {"c_im", number(ctx.c.imag())}, {"preperiod", ctx.preperiod},
                {"period", ctx.period},         {"angle", format_angle(ctx.angle)}, {"residual", number(ctx.residual)}};
}

Json to_json(const TVerdict& verdict, const std::vector<OverlapWitness>& witnesses) {
    Json survivors = Json::array();
    for (const auto& w : verdict.surviving_prefixes) {
        survivors.push_back(format_signs(w));
    }
    Json wit = Json::array();
    for (const auto& w : witnesses) {
        wit.push_back(Json{{"first", format_address(w.first)},
                           {"second", format_address(w.second)},
                           {"distance", number(w.distance)}});
    }
    return Json{{"tag", tag_name(verdict.tag)},
                {"depth", verdict.depth},
                {"survivors", survivors},
                {"witnesses", wit},
                {"state_counts", verdict.state_counts},
                {"note", verdict.note}};
}

Json to_json(const BTReport& report) {
    return Json{{"depth", report.depth},
                {"L_estimate", number(report.L_estimate)},
                {"witness_first", format_address(report.witness_first)},
                {"witness_second", format_address(report.witness_second)},
                {"witness_distance", number(report.witness_distance)},
                {"witness_arc_diameter", number(report.witness_arc_diameter)},
                {"cell_tolerance", number(report.cell_tolerance)},
                {"pair_count", report.pair_count}};
}

Json to_json(const QSReport& report) {
    Json buckets = Json::array();
    for (const auto& b : report.t_buckets) {
        buckets.push_back(Json{{"t", number(b.t)}, {"eta", number(b.max_ratio)}});
    }
    return Json{{"weak_H", number(report.weak_H)},
                {"t_buckets", buckets},
                {"sample_count", report.sample_count},
                {"degenerate_count", report.degenerate_count},
                {"seed", report.seed}};
}

Json to_json(const LnBound& bound) {
    return Json{{"n", bound.n},
                {"L", number(bound.value)},
                {"upper", number(bound.upper)},
                {"certified", bound.certified},
                {"nodes", bound.nodes}};
}

Json to_json(const C1Report& report) {
    Json values = Json::array();
    for (const auto& b : report.L_values) {
        values.push_back(to_json(b));
    }
    return Json{{"f", format_difference(report.f)},
                {"window_start", report.window_start},
                {"window_period", report.window_period},
                {"L_values", values},
                {"C1", number(report.C1)},
                {"note", report.note}};
}

Json to_json(const GalleryReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(Json{{"label", c.label},
                              {"error", number(c.error)},
                              {"tolerance", number(c.tolerance)},
                              {"passed", c.passed()}});
    }
    Json points = Json::array();
    for (Complex z : report.critical_points) {
        points.push_back(complex_json(z));
    }
    Json values = Json::array();
    for (Complex z : report.critical_values) {
        values.push_back(complex_json(z));
    }
    return Json{{"name", report.name},
                {"passed", report.passed()},
                {"critical_points", points},
                {"critical_values", values},
                {"checks", checks}};
}

Json to_json(const PairedSystem& ps) {
    return Json{{"series", format_series(ps.series)},
                {"lambda", to_json(ps.root)},
                {"kneading", format_bits(ps.kneading)},
                {"kneading_case", ps.kneading_case == KneadingCase::A1 ? "A1" : "A0"},
                {"angle", format_angle(ps.angle)},
                {"julia", to_json(ps.julia)}};
}

void write_roots_csv(std::ostream& out, const std::vector<DiskRoot>& roots) {
    out << "re,im,residual,certified\n";
    for (const auto& r : roots) {
        out << digits17(r.value.real()) << ',' << digits17(r.value.imag()) << ',' << digits17(r.residual_bound)
            << ',' << (r.certified ? "true" : "false") << '\n';
    }
}

void write_cloud_csv(std::ostream& out, const std::vector<CloudPoint>& points) {
    out << "re,im,address\n";
    for (const auto& p : points) {
        out << digits17(p.point.real()) << ',' << digits17(p.point.imag()) << ',' << format_address(p.address)
            << '\n';
    }
}

void write_points_csv(std::ostream& out, const std::vector<Complex>& points) {
    out << "re,im\n";
    for (Complex z : points) {
        out << digits17(z.real()) << ',' << digits17(z.imag()) << '\n';
    }
}

}  // namespace dendrite
