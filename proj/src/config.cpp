#include "mswave/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mswave/io.hpp"

namespace mswave::config {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& text, const std::string& key) {
    const std::string t = trim(text);
    const char* begin = t.data();
    const char* end = begin + t.size();
    if (begin != end && *begin == '+') {
        ++begin;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (begin == end || ec != std::errc{} || ptr != end) {
        throw ConfigError("key '" + key + "': bad number '" + text + "'");
    }
    return value;
}

struct UnitEntry {
    const char* suffix;
    Dimension dim;
    double to_base;
};

// SI suffixes accepted after a number. Base units: kg, m/s, 1/m, m.
constexpr UnitEntry UNITS[] = {
    {"kg", Dimension::Mass, 1.0},
    {"g", Dimension::Mass, 1e-3},
    {"m/s", Dimension::Velocity, 1.0},
    {"mm/s", Dimension::Velocity, 1e-3},
    {"1/m", Dimension::WaveNumber, 1.0},
    {"1/mm", Dimension::WaveNumber, 1e3},
    {"m", Dimension::Length, 1.0},
    {"mm", Dimension::Length, 1e-3},
};

}  // namespace

bool Config::has(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    return s != sections.end() && s->second.count(key) > 0;
}

const std::string& Config::raw(const std::string& section, const std::string& key) const {
    const auto s = sections.find(section);
    if (s == sections.end()) {
        throw ConfigError("missing section [" + section + "]");
    }
    const auto k = s->second.find(key);
    if (k == s->second.end()) {
        throw ConfigError("missing key '" + key + "' in [" + section + "]");
    }
    return k->second;
}

Config parse_config_text(const std::string& text, const std::string& origin) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) {
            line.erase(comment);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::string where = origin + ":" + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3) {
                throw ConfigError(where + ": malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections[section];  // a section may be empty
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected key = value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(where + ": empty key");
        }
        if (section.empty()) {
            throw ConfigError(where + ": key '" + key + "' appears before any [section]");
        }
        if (!cfg.sections[section].emplace(key, value).second) {
            throw ConfigError(where + ": duplicate key '" + key + "' in [" + section + "]");
        }
    }
    return cfg;
}

Config parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), path);
}

Quantity parse_quantity(const std::string& text, Dimension dim, const std::string& key) {
    const std::string t = trim(text);
    const auto space = t.find_first_of(" \t");
    if (space == std::string::npos) {
        return {parse_number(t, key), false};
    }
    const std::string number = t.substr(0, space);
    const std::string unit = trim(t.substr(space + 1));
    if (dim == Dimension::None) {
        throw ConfigError("key '" + key + "': value is nondimensional; drop the unit '" + unit +
                          "'");
    }
    for (const auto& entry : UNITS) {
        if (unit == entry.suffix) {
            if (entry.dim != dim) {
                throw ConfigError("key '" + key + "': unit '" + unit +
                                  "' has the wrong dimension");
            }
            return {parse_number(number, key) * entry.to_base, true};
        }
    }
    throw ConfigError("key '" + key + "': unknown unit '" + unit + "'");
}

Section::Section(const Config& cfg, std::string name) : cfg_(cfg), name_(std::move(name)) {}

bool Section::has(const std::string& key) const { return cfg_.has(name_, key); }

const std::string& Section::require(const std::string& key) {
    touched_.push_back(key);
    return cfg_.raw(name_, key);
}

std::string Section::get_string(const std::string& key) { return require(key); }

std::string Section::get_string(const std::string& key, const std::string& fallback) {
    touched_.push_back(key);
    return has(key) ? cfg_.raw(name_, key) : fallback;
}

double Section::get_number(const std::string& key) { return parse_number(require(key), key); }

double Section::get_number(const std::string& key, double fallback) {
    touched_.push_back(key);
    return has(key) ? parse_number(cfg_.raw(name_, key), key) : fallback;
}

long long Section::get_integer(const std::string& key, long long fallback) {
    touched_.push_back(key);
    if (!has(key)) {
        return fallback;
    }
    const std::string t = trim(cfg_.raw(name_, key));
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size()) {
        throw ConfigError("key '" + key + "': bad integer '" + t + "'");
    }
    return value;
}

Complex Section::get_complex(const std::string& key) {
    const std::string raw = require(key);
    try {
        return io::parse_complex(raw);
    } catch (const io::ParseError& e) {
        throw ConfigError("key '" + key + "': " + e.what());
    }
}

Complex Section::get_complex(const std::string& key, const Complex& fallback) {
    touched_.push_back(key);
    if (!has(key)) {
        return fallback;
    }
    try {
        return io::parse_complex(cfg_.raw(name_, key));
    } catch (const io::ParseError& e) {
        throw ConfigError("key '" + key + "': " + e.what());
    }
}

bool Section::get_flag(const std::string& key, bool fallback) {
    touched_.push_back(key);
    if (!has(key)) {
        return fallback;
    }
    const std::string v = trim(cfg_.raw(name_, key));
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("key '" + key + "': bad flag '" + v + "'");
}

Quantity Section::get_quantity(const std::string& key, Dimension dim) {
    const Quantity q = parse_quantity(require(key), dim, key);
    if (q.has_unit) {
        ++with_unit_;
    } else {
        ++without_unit_;
    }
    return q;
}

std::optional<Quantity> Section::maybe_quantity(const std::string& key, Dimension dim) {
    touched_.push_back(key);
    if (!has(key)) {
        return std::nullopt;
    }
    const Quantity q = parse_quantity(cfg_.raw(name_, key), dim, key);
    if (q.has_unit) {
        ++with_unit_;
    } else {
        ++without_unit_;
    }
    return q;
}

void Section::reject_unknown_keys() const {
    const auto s = cfg_.sections.find(name_);
    if (s == cfg_.sections.end()) {
        return;
    }
    for (const auto& [key, value] : s->second) {
        if (std::find(touched_.begin(), touched_.end(), key) == touched_.end()) {
            throw ConfigError("unknown key '" + key + "' in [" + name_ + "]");
        }
    }
}

void Section::reject_mixed_units() const {
    if (with_unit_ > 0 && without_unit_ > 0) {
        throw ConfigError("[" + name_ +
                          "]: physical inputs mix SI units with nondimensional values");
    }
}

}  // namespace mswave::config
