#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "singhyp/config.hpp"
#include "singhyp/maps.hpp"
#include "singhyp/norms.hpp"

namespace singhyp {

/// Valid values for the `experiment` selector.
extern const std::vector<std::string> kExperimentNames;

/// Base map from the `family` key (doubling, tent, lorenz, affine-skew;
/// affine-skew contributes its doubling base). Lorenz reads `alpha`.
PiecewiseExpandingMap base_from_config(const Config& cfg);

/// Skew product from the `family` key. doubling/tent are wrapped with a
/// neutral 1/3-contracting fiber so base-only orbit statistics work.
SkewProductMap skew_from_config(const Config& cfg);

/// Lipschitz bump seated over the Lorenz fiber strips; sup 1, Lip 4.
Observable2D bump_observable();
/// x - 1/2 (zero mean under the doubling-invariant measure).
Observable2D sawtooth_observable();
/// sin(2 pi x).
Observable2D sine_observable();

/// r_max, r_max/factor, ..., `count` values.
std::vector<double> geometric_radii(double r_max, double factor, std::size_t count);

struct RunOutcome {
    std::vector<std::string> warnings;
};

/// Runs one experiment and writes its CSVs, summary.json, and manifest.json
/// under out_dir. Throws ConfigError on bad keys or out-of-range knobs and
/// domain errors (singhyp::Error) on invariant violations.
RunOutcome run_experiment(const std::string& name, const Config& cfg,
                          const std::filesystem::path& out_dir, std::uint64_t seed,
                          unsigned workers);

} // namespace singhyp
