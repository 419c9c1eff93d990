#include <cstdio>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "singhyp/acceptance.hpp"
#include "singhyp/config.hpp"
#include "singhyp/experiments.hpp"

namespace {

unsigned default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct Options {
    std::string config;
    std::string out;
    std::string suite = "all";
    std::uint64_t seed = 1;
    unsigned workers = default_workers();
};

int run_one_experiment(const std::string& name, const Options& opt) {
    auto cfg = singhyp::Config::load(opt.config);
    std::string out_dir = opt.out.empty() ? "out/" + name : opt.out;
    auto outcome = singhyp::run_experiment(name, cfg, out_dir, opt.seed, opt.workers);
    std::printf("%s: wrote %s (seed %llu, %u workers)\n", name.c_str(), out_dir.c_str(),
                static_cast<unsigned long long>(opt.seed), opt.workers);
    for (const auto& w : outcome.warnings) std::printf("warning: %s\n", w.c_str());
    return 0;
}

int run_acceptance_cmd(const Options& opt) {
    std::string out_dir = opt.out.empty() ? "out/acceptance" : opt.out;
    auto results = singhyp::run_acceptance(opt.suite, opt.seed, opt.workers, out_dir);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s %s  %s  [%.2f s]\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str(), r.seconds);
        if (!r.pass) ++failed;
    }
    singhyp::write_verdicts(out_dir, opt.suite, opt.seed, results);
    std::printf("%s: %zu criteria, %d failed; verdicts in %s\n", opt.suite.c_str(),
                results.size(), failed, out_dir.c_str());
    // Failures are verdicts, not process errors; the verdict files carry them.
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"desk-scale laboratory for skew products with contracting fibers"};
    app.require_subcommand(1);

    Options opt;
    std::vector<std::pair<CLI::App*, std::string>> experiment_subs;
    for (const auto& name : singhyp::kExperimentNames) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment");
        sub->add_option("--config", opt.config, "key=value config file")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", opt.seed, "master seed (default 1)");
        sub->add_option("--workers", opt.workers, "worker threads (default: hardware)");
        sub->add_option("--out", opt.out, "output directory (default out/<experiment>)");
        experiment_subs.emplace_back(sub, name);
    }
    auto* acc = app.add_subcommand("acceptance", "run an acceptance suite");
    acc->add_option("--suite", opt.suite, "suite name or 'all'")
        ->check(CLI::IsMember(singhyp::acceptance_suites()));
    acc->add_option("--seed", opt.seed, "master seed (default 1)");
    acc->add_option("--workers", opt.workers, "worker threads (default: hardware)");
    acc->add_option("--out", opt.out, "output directory (default out/acceptance)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors exit 1, --help exits 0
    }

    try {
        for (const auto& [sub, name] : experiment_subs)
            if (sub->parsed()) return run_one_experiment(name, opt);
        if (acc->parsed()) return run_acceptance_cmd(opt);
        return 1;
    } catch (const singhyp::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
