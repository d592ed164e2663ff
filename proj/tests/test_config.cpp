#include <gtest/gtest.h>

#include <fstream>

#include "bergman/config.hpp"

using namespace bergman;
using namespace bergman::config;

TEST(Config, DefaultParses) {
  const auto cfg = parse_config_text(default_config_text());
  EXPECT_EQ(cfg.seed, 24301u);
  EXPECT_EQ(cfg.degree_cap, 32);
  EXPECT_EQ(cfg.radial_nodes, 64);
  EXPECT_FALSE(cfg.checks.is_null());
  EXPECT_NEAR(std::abs(cfg.map("affine")[1] - Complex(0.4)), 0.0, 0.0);
  EXPECT_THROW(cfg.map("missing"), ConfigError);
  EXPECT_EQ(build_checks(cfg).size(), cfg.checks.size());
}

TEST(Config, ShippedFileMatchesEmbeddedDefault) {
  std::ifstream in(BERGMAN_SOURCE_DIR "/configs/default.json");
  ASSERT_TRUE(in);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(Json::parse(text), Json::parse(default_config_text()));
}

TEST(Config, RejectsUnknownKeys) {
  EXPECT_THROW(parse_config_text(R"({"alpha": 0, "colour": 1})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"tolerances": {"exact": 1e-12, "loose": 1}})"), ConfigError);
  const auto cfg = parse_config_text(
      R"({"maps": {"a": [[0, 0], [0.5, 0]]}, "checks": [{"type": "normal", "map": "a", "N": 3}]})");
  EXPECT_THROW(build_checks(cfg), ConfigError);
}

TEST(Config, RejectsOutOfRangeValues) {
  EXPECT_THROW(parse_config_text(R"({"alpha": -1})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"degree_cap": -3})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"output": {"format": "xml"}})"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"tolerances": {"exact": 0}})"), ConfigError);
  EXPECT_THROW(parse_config_text("{not json"), ConfigError);
  EXPECT_THROW(parse_config_text(R"({"alpha": "zero"})"), ConfigError);
}

TEST(Config, MapLiterals) {
  const auto m = parse_map(Json::parse("[[0.3, 0], [0, 0.4]]"));
  EXPECT_EQ(m[1], Complex(0.0, 0.4));
  const auto mob = parse_map(Json::parse(R"({"mobius": [0.3, 0], "degree": 10})"));
  EXPECT_EQ(mob.degree(), 10);
  EXPECT_NEAR(std::abs(mob[0] - Complex(0.3)), 0.0, 1e-16);
  EXPECT_THROW(parse_map(Json::parse("[]")), ConfigError);
  EXPECT_THROW(parse_map(Json::parse("[[1, 2, 3]]")), ConfigError);
  EXPECT_THROW(parse_map(Json::parse(R"({"mobius": [1.0, 0], "degree": 4})")), ConfigError);
  EXPECT_THROW(parse_map(Json::parse(R"({"mobius": [0.1, 0], "degree": 4, "x": 1})")), ConfigError);
  EXPECT_EQ(parse_complex(Json::parse("2.5")), Complex(2.5));
}

TEST(Config, EmptyMapSetIsAnError) {
  EXPECT_THROW(build_checks(parse_config_text(R"({"maps": {}})")), ConfigError);
  EXPECT_THROW(build_checks(parse_config_text("{}")), ConfigError);
}

TEST(Config, StandardSuiteWhenChecksAbsent) {
  const auto cfg = parse_config_text(R"({"degree_cap": 8, "maps": {"a": [[0, 0], [0.5, 0]], "b": [[0.2, 0]]}})");
  // Two space-level checks plus five per map.
  EXPECT_EQ(build_checks(cfg).size(), 12u);
}

TEST(Config, UnknownCheckType) {
  const auto cfg = parse_config_text(R"({"maps": {"a": [[0.2, 0]]}, "checks": [{"type": "spectral"}]})");
  EXPECT_THROW(build_checks(cfg), ConfigError);
}

TEST(Config, HarnessOptionsCarryTolerances) {
  const auto cfg = parse_config_text(R"({"seed": 5, "tolerances": {"analytic": 1e-5}})");
  const auto opt = cfg.harness_options();
  EXPECT_EQ(opt.seed, 5u);
  EXPECT_EQ(opt.analytic_tol, 1e-5);
  EXPECT_EQ(opt.exact_tol, 1e-12);
}
