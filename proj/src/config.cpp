#include "singhyp/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace singhyp {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string body = trim(line);
        if (body.empty()) continue;
        std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value");
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty value for key '" +
                              key + "'");
        if (cfg.values_.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key +
                              "' (first set on line " + std::to_string(cfg.lines_.at(key)) +
                              ")");
        cfg.values_[key] = value;
        cfg.lines_[key] = lineno;
    }
    return cfg;
}

Config Config::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string Config::get_str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

std::string Config::get_str(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double Config::parse_num(const std::string& key) const {
    const std::string& text = values_.at(key);
    errno = 0;
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw ConfigError("key '" + key + "' (line " + std::to_string(lines_.at(key)) +
                          "): '" + text + "' is not a finite number");
    return v;
}

double Config::get_num(const std::string& key) const {
    if (!has(key)) throw ConfigError("missing required key '" + key + "'");
    return parse_num(key);
}

double Config::get_num(const std::string& key, double fallback) const {
    return has(key) ? parse_num(key) : fallback;
}

long long Config::get_int(const std::string& key) const {
    double v = get_num(key);
    auto n = static_cast<long long>(v);
    if (static_cast<double>(n) != v)
        throw ConfigError("key '" + key + "' (line " + std::to_string(lines_.at(key)) +
                          "): expected an integer");
    return n;
}

long long Config::get_int(const std::string& key, long long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    long long v = get_int(key);
    if (v < 0)
        throw ConfigError("key '" + key + "' (line " + std::to_string(lines_.at(key)) +
                          "): expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

bool Config::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string& v = values_.at(key);
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("key '" + key + "' (line " + std::to_string(lines_.at(key)) +
                      "): expected true/false");
}

void Config::restrict_keys(const std::vector<std::string>& allowed) const {
    for (const auto& [key, value] : values_) {
        bool ok = false;
        for (const auto& a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok)
            throw ConfigError("unknown key '" + key + "' (line " +
                              std::to_string(lines_.at(key)) + ")");
    }
}

std::string Config::canonical_text() const {
    std::string text;
    for (const auto& [key, value] : values_) {
        text += key;
        text += '=';
        text += value;
        text += '\n';
    }
    return text;
}

} // namespace singhyp
