#include "singhyp/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace singhyp {

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    if (!out) throw std::runtime_error("short write to " + path.string());
}

void write_csv(const std::filesystem::path& path, const CsvTable& t) {
    std::string text;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) text += ',';
        text += t.columns[c];
    }
    text += '\n';
    for (const auto& row : t.rows) {
        if (row.size() != t.columns.size())
            throw std::invalid_argument("csv row width does not match the header");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) text += ',';
            text += format_g17(row[c]);
        }
        text += '\n';
    }
    write_text(path, text);
}

void write_ulam_triplets(const std::filesystem::path& path, const UlamOperator& P) {
    std::string text;
    for (std::size_t i = 0; i < P.rows.size(); ++i) {
        for (const auto& [col, prob] : P.rows[i]) {
            text += std::to_string(i);
            text += ' ';
            text += std::to_string(col);
            text += ' ';
            text += format_g17(prob);
            text += '\n';
        }
    }
    write_text(path, text);
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& m) {
    nlohmann::json j;
    j["experiment"] = m.experiment;
    j["config_hash"] = m.config_hash;
    j["seed"] = m.seed;
    j["workers"] = m.workers;
    j["version"] = m.version;
    j["wall_ms"] = m.wall_ms;
    j["warnings"] = m.warnings;
    write_text(path, j.dump(2) + "\n");
}

} // namespace singhyp
