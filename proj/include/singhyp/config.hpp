#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "singhyp/errors.hpp"

namespace singhyp {

/// Flat key=value configuration. '#' starts a comment, blank lines are
/// skipped, duplicate keys are rejected. Values keep their literal text;
/// typed getters parse on demand.
class Config {
  public:
    static Config parse(const std::string& text);
    static Config load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string get_str(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& fallback) const;
    double get_num(const std::string& key) const;
    double get_num(const std::string& key, double fallback) const;
    long long get_int(const std::string& key) const;
    long long get_int(const std::string& key, long long fallback) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;

    /// Throws ConfigError naming the first key outside `allowed`.
    void restrict_keys(const std::vector<std::string>& allowed) const;

    /// Sorted key=value lines; the manifest hashes this form.
    std::string canonical_text() const;

  private:
    std::map<std::string, std::string> values_;
    std::map<std::string, int> lines_; // for diagnostics

    double parse_num(const std::string& key) const;
};

} // namespace singhyp
