#include <doctest.h>

#include <string>

#include "mswave/config.hpp"

using namespace mswave;
using config::Config;
using config::ConfigError;
using config::Dimension;
using config::Section;

TEST_CASE("ini text parses sections, comments, and values") {
    const auto cfg = config::parse_config_text(
        "# leading comment\n"
        "[run]\n"
        "output = out.csv   # trailing\n"
        "format = csv\n"
        "\n"
        "[params]\n"
        "k = 1.5\n"
        "name = spaced value here\n",
        "test.ini");
    CHECK(cfg.has("run", "output"));
    CHECK(cfg.raw("run", "output") == "out.csv");
    CHECK(cfg.raw("params", "name") == "spaced value here");
    CHECK_FALSE(cfg.has("params", "missing"));
}

TEST_CASE("ini structural errors") {
    CHECK_THROWS_AS((void)config::parse_config_text("key = 1\n"), ConfigError);  // before section
    CHECK_THROWS_AS((void)config::parse_config_text("[run\nx = 1\n"), ConfigError);
    CHECK_THROWS_AS((void)config::parse_config_text("[run]\n= 1\n"), ConfigError);
    CHECK_THROWS_AS((void)config::parse_config_text("[run]\nx = 1\nx = 2\n"), ConfigError);
    CHECK_THROWS_AS((void)config::parse_config_text("[run]\njust words\n"), ConfigError);
    // error message carries the origin and line
    try {
        (void)config::parse_config_text("[run]\nbroken line\n", "my.ini");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("my.ini") != std::string::npos);
        CHECK(msg.find("2") != std::string::npos);
    }
}

TEST_CASE("typed getters with fallbacks") {
    const auto cfg = config::parse_config_text(
        "[params]\n"
        "k = 2.5\n"
        "n = 42\n"
        "z = 0.5-0.25i\n"
        "on = true\n"
        "off = no\n");
    Section s(cfg, "params");
    CHECK(s.get_number("k") == 2.5);
    CHECK(s.get_number("absent", 7.0) == 7.0);
    CHECK(s.get_integer("n", 0) == 42);
    CHECK(s.get_complex("z") == Complex{0.5, -0.25});
    CHECK(s.get_complex("zz", Complex{1.0, 0.0}) == Complex{1.0, 0.0});
    CHECK(s.get_flag("on", false));
    CHECK_FALSE(s.get_flag("off", true));
    CHECK(s.get_flag("missing", true));
    CHECK_NOTHROW(s.reject_unknown_keys());
    CHECK_THROWS_AS((void)s.get_number("k2"), ConfigError);  // required key missing
}

TEST_CASE("malformed typed values raise ConfigError") {
    const auto cfg = config::parse_config_text(
        "[params]\n"
        "k = notanumber\n"
        "n = 1.5\n"
        "z = 1+2\n"
        "b = perhaps\n");
    Section s(cfg, "params");
    CHECK_THROWS_AS((void)s.get_number("k"), ConfigError);
    CHECK_THROWS_AS((void)s.get_integer("n", 0), ConfigError);
    CHECK_THROWS_AS((void)s.get_complex("z"), ConfigError);
    CHECK_THROWS_AS((void)s.get_flag("b", false), ConfigError);
}

TEST_CASE("unknown keys are rejected after reading") {
    const auto cfg = config::parse_config_text(
        "[params]\n"
        "k = 1\n"
        "typo_key = 2\n");
    Section s(cfg, "params");
    (void)s.get_number("k");
    try {
        s.reject_unknown_keys();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("typo_key") != std::string::npos);
    }
}

TEST_CASE("quantities accept an SI suffix and convert to base units") {
    CHECK(config::parse_quantity("9.1e-31 kg", Dimension::Mass, "mass").value ==
          doctest::Approx(9.1e-31));
    CHECK(config::parse_quantity("2.5 g", Dimension::Mass, "mass").value ==
          doctest::Approx(2.5e-3));
    CHECK(config::parse_quantity("3 mm/s", Dimension::Velocity, "v").value ==
          doctest::Approx(3e-3));
    CHECK(config::parse_quantity("8.7 1/mm", Dimension::WaveNumber, "k").value ==
          doctest::Approx(8700.0));
    CHECK(config::parse_quantity("0.5 m", Dimension::Length, "L").value == doctest::Approx(0.5));
    const auto bare = config::parse_quantity("1.25", Dimension::WaveNumber, "k");
    CHECK(bare.value == 1.25);
    CHECK_FALSE(bare.has_unit);
    CHECK(config::parse_quantity("1.25 1/m", Dimension::WaveNumber, "k").has_unit);

    CHECK_THROWS_AS((void)config::parse_quantity("1.0 kg", Dimension::Velocity, "v"),
                    ConfigError);
    CHECK_THROWS_AS((void)config::parse_quantity("1.0 parsec", Dimension::Length, "L"),
                    ConfigError);
    CHECK_THROWS_AS((void)config::parse_quantity("1.0 kg", Dimension::None, "x"), ConfigError);
    CHECK_THROWS_AS((void)config::parse_quantity("", Dimension::Mass, "m"), ConfigError);
}

TEST_CASE("mixing SI and nondimensional inputs in one section is an error") {
    const auto cfg = config::parse_config_text(
        "[params]\n"
        "mass = 9.1e-31 kg\n"
        "velocity = 1\n");
    Section s(cfg, "params");
    (void)s.get_quantity("mass", Dimension::Mass);
    (void)s.get_quantity("velocity", Dimension::Velocity);
    CHECK_THROWS_AS(s.reject_mixed_units(), ConfigError);

    const auto ok = config::parse_config_text(
        "[params]\n"
        "mass = 9.1e-31 kg\n"
        "velocity = 1 m/s\n");
    Section s2(ok, "params");
    (void)s2.get_quantity("mass", Dimension::Mass);
    (void)s2.get_quantity("velocity", Dimension::Velocity);
    CHECK_NOTHROW(s2.reject_mixed_units());
}

TEST_CASE("maybe_quantity distinguishes absence from malformation") {
    const auto cfg = config::parse_config_text("[params]\nmass = 2 g\n");
    Section s(cfg, "params");
    const auto m = s.maybe_quantity("mass", Dimension::Mass);
    REQUIRE(m.has_value());
    CHECK(m->value == doctest::Approx(2e-3));
    CHECK_FALSE(s.maybe_quantity("velocity", Dimension::Velocity).has_value());
}

TEST_CASE("missing section behaves as empty for optional reads") {
    const auto cfg = config::parse_config_text("[run]\noutput = x\n");
    Section s(cfg, "params");
    CHECK_FALSE(s.has("k"));
    CHECK(s.get_number("k", 3.0) == 3.0);
    CHECK_NOTHROW(s.reject_unknown_keys());
    CHECK_THROWS_AS((void)s.get_number("k"), ConfigError);
}
