// Acceptance gate: runs every criterion at its stated scale and prints one
// verdict line each. Exit status is the number of failed criteria.
#include <cstdio>

#include "singhyp/acceptance.hpp"

int main() {
    const std::uint64_t seed = 1;
    const unsigned workers = 4;
    auto results = singhyp::run_acceptance("all", seed, workers, "acceptance_scratch");
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s %s  %s  [%.1f s]\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str(), r.seconds);
        if (!r.pass) ++failed;
    }
    singhyp::write_verdicts("acceptance_scratch", "all", seed, results);
    std::printf("%d of %zu criteria failed\n", failed, results.size());
    return failed;
}
