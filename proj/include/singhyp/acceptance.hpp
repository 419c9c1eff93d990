#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace singhyp {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;   // deterministic numbers only, no timings
    double seconds = 0.0; // stdout reporting only, never written to verdicts
};

/// Suite selectors, "all" last.
const std::vector<std::string>& acceptance_suites();

/// Runs the selected suite. scratch_dir receives the work directories of the
/// criteria that rerun experiments (determinism checks). Results come back
/// in criterion order; failures are verdicts, not exceptions.
std::vector<CriterionResult> run_acceptance(const std::string& suite, std::uint64_t seed,
                                            unsigned workers,
                                            const std::filesystem::path& scratch_dir);

/// One "PASS name  detail" / "FAIL name  detail" line per criterion.
std::string verdict_lines(const std::vector<CriterionResult>& results);

/// Writes verdict.txt and verdict.json under dir. Neither file contains
/// timings, so reruns with one seed are byte-identical.
void write_verdicts(const std::filesystem::path& dir, const std::string& suite,
                    std::uint64_t seed, const std::vector<CriterionResult>& results);

} // namespace singhyp
