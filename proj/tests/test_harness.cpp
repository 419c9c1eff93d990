#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "singhyp/config.hpp"
#include "singhyp/experiments.hpp"
#include "singhyp/io.hpp"

using namespace singhyp;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

std::string error_text(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

const fs::path kTmp = "harness_tmp";

} // namespace

TEST_CASE("config parsing") {
    auto cfg = Config::parse("# comment\nfamily = doubling\n\nbins=64 # trailing\nflag=yes\n");
    CHECK(cfg.get_str("family") == "doubling");
    CHECK(cfg.get_int("bins") == 64);
    CHECK(cfg.get_bool("flag", false));
    CHECK(cfg.get_num("missing", 2.5) == 2.5);
    CHECK(cfg.get_str("missing", "dflt") == "dflt");
    CHECK_FALSE(cfg.has("missing"));
}

TEST_CASE("config rejects malformed input") {
    CHECK_THROWS_AS(Config::parse("novalue\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("=5\n"), ConfigError);
    CHECK_THROWS_AS(Config::parse("a=1\na=2\n"), ConfigError);
    CHECK_THROWS_AS(Config::load("no_such_file.cfg"), ConfigError);

    auto cfg = Config::parse("bins=abc\nx=1.5\n");
    std::string msg = error_text([&] { (void)cfg.get_int("bins"); });
    CHECK(msg.find("bins") != std::string::npos);
    msg = error_text([&] { (void)cfg.get_int("x"); });
    CHECK(msg.find("x") != std::string::npos); // 1.5 is not an integer
    msg = error_text([&] { cfg.restrict_keys({"bins"}); });
    CHECK(msg.find("x") != std::string::npos);
}

TEST_CASE("canonical text sorts keys and drives the hash") {
    auto cfg = Config::parse("b=2\na=1\n");
    CHECK(cfg.canonical_text() == "a=1\nb=2\n");
    CHECK(fnv1a("") == 14695981039346656037ULL);
    CHECK(fnv1a("a") == 12638187200555641996ULL);
    CHECK(fnv1a(cfg.canonical_text()) == fnv1a(Config::parse("a=1\nb=2\n").canonical_text()));
}

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {1.0 / 3.0, 0.1, 1e-300, 12345.6789, -0.0, 2.0}) {
        std::string s = format_g17(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("csv writer emits LF rows in declared order") {
    fs::create_directories(kTmp);
    CsvTable t{{"r", "v"}, {{0.5, 1.0}, {0.25, 2.0}}};
    write_csv(kTmp / "t.csv", t);
    CHECK(slurp(kTmp / "t.csv") == "r,v\n0.5,1\n0.25,2\n");
    CsvTable bad{{"r", "v"}, {{0.5}}};
    CHECK_THROWS(write_csv(kTmp / "bad.csv", bad));
}

TEST_CASE("manifest records provenance without hidden state") {
    fs::create_directories(kTmp);
    RunManifest m;
    m.experiment = "ulam";
    m.config_hash = 7;
    m.seed = 3;
    m.workers = 2;
    m.warnings = {"w"};
    write_manifest(kTmp / "m.json", m);
    auto j = read_json(kTmp / "m.json");
    CHECK(j["experiment"] == "ulam");
    CHECK(j["config_hash"] == 7);
    CHECK(j["seed"] == 3);
    CHECK(j["workers"] == 2);
    CHECK(j["version"] == kVersion);
    CHECK(j["warnings"][0] == "w");
    CHECK(j.contains("wall_ms"));
}

TEST_CASE("experiment selector and key validation") {
    auto cfg = Config::parse("family=doubling\n");
    CHECK_THROWS_AS(run_experiment("nope", cfg, kTmp / "x", 1, 1), ConfigError);

    auto bad_family = Config::parse("family=circle\n");
    CHECK_THROWS_AS(run_experiment("ulam", bad_family, kTmp / "x", 1, 1), ConfigError);

    auto typo = Config::parse("family=doubling\nbnis=64\n");
    std::string msg =
        error_text([&] { run_experiment("ulam", typo, kTmp / "x", 1, 1); });
    CHECK(msg.find("bnis") != std::string::npos);

    auto bad_alpha = Config::parse("family=lorenz\nalpha=0.4\n");
    CHECK_THROWS_AS(run_experiment("ulam", bad_alpha, kTmp / "x", 1, 1), ConfigError);

    auto mismatch = Config::parse("family=doubling\nexperiment=convergence\n");
    CHECK_THROWS_AS(run_experiment("ulam", mismatch, kTmp / "x", 1, 1), ConfigError);
}

TEST_CASE("ulam experiment writes density, summary, and manifest") {
    auto dir = kTmp / "ulam";
    auto cfg = Config::parse("family=doubling\nbins=64\nexport_matrix=true\n");
    run_experiment("ulam", cfg, dir, 1, 1);
    CHECK(fs::exists(dir / "density.csv"));
    CHECK(fs::exists(dir / "matrix.txt"));
    auto summary = read_json(dir / "summary.json");
    CHECK(summary["residual"].get<double>() <= 1e-12);
    CHECK(summary["leading_eigenvalue"].get<double>() == Approx(1.0).epsilon(1e-10));
    auto manifest = read_json(dir / "manifest.json");
    CHECK(manifest["experiment"] == "ulam");
    CHECK(manifest["config_hash"].get<std::uint64_t>() == fnv1a(cfg.canonical_text()));

    std::string csv = slurp(dir / "density.csv");
    CHECK(csv.find("bin_left,density\n") == 0);
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("convergence experiment recovers the spectral rate") {
    auto dir = kTmp / "conv";
    run_experiment("convergence", Config::parse("family=doubling\nbins=256\nmax_lag=12\n"),
                   dir, 1, 1);
    auto summary = read_json(dir / "summary.json");
    CHECK(summary["rate"].get<double>() == Approx(0.5).epsilon(0.02));
    CHECK(summary["r2"].get<double>() > 0.99);
}

TEST_CASE("correlations experiment on the affine skew") {
    auto dir = kTmp / "corr";
    run_experiment("correlations",
                   Config::parse("family=affine-skew\nobservable=sawtooth-sine\n"
                                 "orbit_length=50000\nmax_lag=10\n"),
                   dir, 1, 1);
    auto summary = read_json(dir / "summary.json");
    CHECK(summary["rate"].get<double>() == Approx(0.5).epsilon(0.3));
    CHECK(fs::exists(dir / "decay.csv"));
}

TEST_CASE("norms audit finds no violations") {
    auto dir = kTmp / "norms";
    run_experiment("norms-audit", Config::parse("family=lorenz\ntrials=2\n"), dir, 1, 1);
    auto summary = read_json(dir / "summary.json");
    CHECK(summary["violations"].get<int>() == 0);
}

TEST_CASE("hitting experiment is worker-count invariant") {
    auto cfg = Config::parse("family=affine-skew\nsamples=20\nhorizon=50000\n"
                             "r_count=3\nburn_in=500\n");
    run_experiment("loglaw-map", cfg, kTmp / "ll1", 2, 1);
    run_experiment("loglaw-map", cfg, kTmp / "ll2", 2, 2);
    CHECK(slurp(kTmp / "ll1" / "loglaw.csv") == slurp(kTmp / "ll2" / "loglaw.csv"));
    CHECK(slurp(kTmp / "ll1" / "summary.json") == slurp(kTmp / "ll2" / "summary.json"));
}

TEST_CASE("experiment knob ranges are enforced") {
    CHECK_THROWS_AS(run_experiment("ulam", Config::parse("family=doubling\nbins=1\n"),
                                   kTmp / "x", 1, 1),
                    ConfigError);
    CHECK_THROWS_AS(
        run_experiment("loglaw-map",
                       Config::parse("family=doubling\nr_max=0.75\n"), kTmp / "x", 1, 1),
        ConfigError);
    CHECK_THROWS_AS(
        run_experiment("correlations",
                       Config::parse("family=affine-skew\nobservable=step\n"), kTmp / "x",
                       1, 1),
        ConfigError);
    CHECK_THROWS_AS(
        run_experiment("flow-loglaw",
                       Config::parse("family=affine-skew\nroof=trapezoid\n"), kTmp / "x",
                       1, 1),
        ConfigError);
}
