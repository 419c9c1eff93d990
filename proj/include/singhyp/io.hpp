#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "singhyp/transfer.hpp"

namespace singhyp {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal form (printf %.17g).
std::string format_g17(double v);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows; // each row matches columns in size
};

/// Header row, comma separators, LF line endings, %.17g floats.
void write_csv(const std::filesystem::path& path, const CsvTable& t);

void write_text(const std::filesystem::path& path, const std::string& text);

/// Row-stochastic matrix as "row col value" triplet lines.
void write_ulam_triplets(const std::filesystem::path& path, const UlamOperator& P);

/// FNV-1a over the canonical config text; ties outputs to their inputs.
std::uint64_t fnv1a(const std::string& text);

/// Provenance record for one experiment run. wall_ms is the only field that
/// may differ between reruns of the same config and seed.
struct RunManifest {
    std::string experiment;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string version = kVersion;
    double wall_ms = 0.0;
    std::vector<std::string> warnings;
};

void write_manifest(const std::filesystem::path& path, const RunManifest& m);

} // namespace singhyp
