#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dendrite/cli.hpp"

using namespace dendrite;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_args(std::vector<std::string> args) {
    args.insert(args.begin(), "dendrite");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct Ppm {
    int width = 0;
    int height = 0;
    std::string pixels;
};

Ppm parse_ppm(const std::string& bytes) {
    std::istringstream in(bytes);
    std::string magic;
    int maxval = 0;
    Ppm p;
    in >> magic >> p.width >> p.height >> maxval;
    REQUIRE(magic == "P6");
    REQUIRE(maxval == 255);
    in.get();
    p.pixels.assign(std::istreambuf_iterator<char>(in), {});
    REQUIRE(p.pixels.size() == static_cast<std::size_t>(p.width) * p.height * 3);
    return p;
}

}  // namespace

TEST_CASE("angle and kneading") {
    const Result a = run_args({"angle", "1(10)"});
    CHECK(a.code == 0);
    CHECK(a.out == "1/6\n");
    CHECK(run_args({"angle", "+(-+++--)"}).out == "3/14\n");
    CHECK(run_args({"kneading", "+--(+)"}).out == "101(0)\n");
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_args({}).code == 2);
    CHECK(run_args({"frobnicate"}).code == 2);
    CHECK(run_args({"kneading"}).code == 2);
    CHECK(run_args({"kneading", "+x"}).code == 2);
    CHECK(run_args({"verdict", "+(-)", "--lambda", "0.5"}).code == 2);
    CHECK(run_args({"verdict", "--lambda", "abc"}).code == 2);
    CHECK(run_args({"render-attractor", "--lambda", "0.5", "--window", "1,1,0,0"}).code == 2);
}

TEST_CASE("computation failures exit 3 with a stage") {
    const Result r = run_args({"pair", "+"});
    CHECK(r.code == 3);
    CHECK(r.err.find("error[root]") != std::string::npos);
    CHECK(run_args({"misiurewicz", "1/7"}).code == 2);
}

TEST_CASE("root CSV") {
    const Result r = run_args({"root", "+(-++-)", "--radius", "0.9"});
    CHECK(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "re,im,residual,certified");
    std::string row;
    int rows = 0;
    while (std::getline(in, row)) {
        CHECK(row.rfind("0.25", 0) == 0);
        ++rows;
    }
    CHECK(rows == 2);
}

TEST_CASE("json reports") {
    const auto m = nlohmann::json::parse(run_args({"misiurewicz", "1/6"}).out);
    for (const char* key : {"c_re", "c_im", "preperiod", "period", "angle", "residual"}) {
        CHECK(m.contains(key));
    }
    CHECK(m["angle"] == "1/6");
    CHECK(std::abs(m["c_im"].get<double>() - 1.0) < 1e-8);

    const auto v = nlohmann::json::parse(run_args({"verdict", "--lambda", "0.3"}).out);
    CHECK(v["tag"] == "CertifiedNotInM");
    for (const char* key : {"tag", "depth", "survivors", "witnesses"}) {
        CHECK(v.contains(key));
    }
    const auto f2 = nlohmann::json::parse(run_args({"verdict", "+(-+++--)"}).out);
    CHECK(f2["tag"] == "UniqueSignBranch");
    CHECK(f2["depth"] == 60);

    const auto c = nlohmann::json::parse(run_args({"c1", "+(-+++--)"}).out);
    CHECK(c["L_values"].size() == 6);
    CHECK(c["C1"].get<double>() > 0.0);

    const auto g = nlohmann::json::parse(run_args({"gallery"}).out);
    REQUIRE(g.size() == 4);
    for (const auto& r : g) {
        CHECK(r["passed"] == true);
    }
    const auto t = nlohmann::json::parse(run_args({"t0", "++++,---"}).out);
    CHECK(t["tag"] == "UniqueSignBranch");
}

TEST_CASE("verify report") {
    const Result r = run_args({"verify", "+(-+++--)", "--samples", "20"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["kneading"] == "1(100)");
    CHECK(j["angle"] == "3/14");
    CHECK(std::abs(j["lambda"]["re"].get<double>() - 0.3668760) < 1e-6);
    CHECK(std::abs(j["julia"]["c_re"].get<double>() + 0.155788) < 1e-4);
    CHECK(j["verdict"]["tag"] == "UniqueSignBranch");
    CHECK(j["semiconjugacy"]["residual"].get<double>() < 1e-3);
    CHECK(run_args({"verify", "+(-+++--)", "--samples", "20"}).out == r.out);
}

TEST_CASE("attractor render spans a horizontal segment") {
    const Result r = run_args({"render-attractor", "--lambda", "0.5", "--depth", "16", "--size", "64"});
    REQUIRE(r.code == 0);
    const Ppm p = parse_ppm(r.out);
    CHECK(p.width == 64);
    std::vector<int> lit_rows;
    int lit_columns = 0;
    for (int y = 0; y < p.height; ++y) {
        bool any = false;
        for (int x = 0; x < p.width; ++x) {
            if (p.pixels[static_cast<std::size_t>(y * p.width + x) * 3] != 0) {
                any = true;
                if (y == p.height / 2) {
                    ++lit_columns;
                }
            }
        }
        if (any) {
            lit_rows.push_back(y);
        }
    }
    CHECK(lit_rows.size() == 1);
    CHECK(lit_columns > 50);
}

TEST_CASE("files and other renders") {
    const std::string path = "test_cli_scan.ppm";
    const Result r = run_args({"scan-locus", "--size", "12x6", "--depth", "12", "--out", path});
    REQUIRE(r.code == 0);
    std::ifstream in(path, std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)), {});
    const Ppm p = parse_ppm(bytes);
    CHECK(p.width == 12);
    CHECK(p.height == 6);
    std::remove(path.c_str());

    const Result j = run_args({"render-julia", "1/6", "--samples", "2000", "--size", "32"});
    REQUIRE(j.code == 0);
    CHECK(parse_ppm(j.out).width == 32);
}

TEST_CASE("seeded reports are reproducible") {
    const auto qs1 = run_args({"qs", "+(-)", "--samples", "200", "--seed", "4"});
    REQUIRE(qs1.code == 0);
    CHECK(run_args({"qs", "+(-)", "--samples", "200", "--seed", "4"}).out == qs1.out);
    const auto bt1 = run_args({"bt", "--lambda", "0.5", "--depth", "8", "--seed", "2"});
    REQUIRE(bt1.code == 0);
    CHECK(run_args({"bt", "--lambda", "0.5", "--depth", "8", "--seed", "2"}).out == bt1.out);
}
