#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mswave/types.hpp"

namespace mswave::config {

// Any problem with a run configuration; the CLI maps it to exit status 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Flat INI-style text: [section] headers, key = value lines, '#'/';' comments.
// Duplicate keys within a section are rejected.
struct Config {
    std::map<std::string, std::map<std::string, std::string>> sections;

    bool has(const std::string& section, const std::string& key) const;
    const std::string& raw(const std::string& section, const std::string& key) const;
};

Config parse_config_text(const std::string& text, const std::string& origin = "<config>");
Config parse_config_file(const std::string& path);

// Physical dimension a config value may carry. Dimensioned values accept one
// SI suffix after the number ("9.1e-31 kg"); bare numbers are nondimensional.
enum class Dimension { None, Mass, Velocity, WaveNumber, Length };

struct Quantity {
    double value;       // in SI base units when a suffix was given
    bool has_unit;
};

// Parses "<number> [unit]" and converts to the base unit of the dimension.
// A unit on a Dimension::None value, or a unit from the wrong dimension, is a
// ConfigError.
Quantity parse_quantity(const std::string& text, Dimension dim, const std::string& key);

// Typed accessors over one section with strict key checking: after reading,
// call reject_unknown_keys with every key touched.
class Section {
  public:
    Section(const Config& cfg, std::string name);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key);
    std::string get_string(const std::string& key, const std::string& fallback);
    double get_number(const std::string& key);
    double get_number(const std::string& key, double fallback);
    long long get_integer(const std::string& key, long long fallback);
    Complex get_complex(const std::string& key);
    Complex get_complex(const std::string& key, const Complex& fallback);
    bool get_flag(const std::string& key, bool fallback);
    Quantity get_quantity(const std::string& key, Dimension dim);
    std::optional<Quantity> maybe_quantity(const std::string& key, Dimension dim);

    // Throws ConfigError if the section holds keys never requested.
    void reject_unknown_keys() const;
    // Throws ConfigError unless dimensioned inputs were all-SI or all-bare.
    void reject_mixed_units() const;

    const std::string& name() const { return name_; }

  private:
    const std::string& require(const std::string& key);

    const Config& cfg_;
    std::string name_;
    std::vector<std::string> touched_;
    std::size_t with_unit_ = 0;
    std::size_t without_unit_ = 0;
};

}  // namespace mswave::config
