#include <gtest/gtest.h>

#include <sstream>

#include "spreadline/config.hpp"
#include "spreadline/fixtures.hpp"

namespace spreadline {
namespace {

SpreadLineConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

TEST(Config, DefaultsWhenOnlyEgoGiven) {
  const auto cfg = parse(R"({"ego": "SI"})");
  EXPECT_EQ(cfg.ego, "SI");
  EXPECT_EQ(cfg.focus, Focus::kVerticalSpace);
  EXPECT_FALSE(cfg.stack_by_line_identity);
  EXPECT_EQ(cfg.space_division_rule, "edge-direction");
  EXPECT_FALSE(cfg.affinity_mode);
  EXPECT_EQ(cfg.max_sweeps, 10);
}

TEST(Config, ReadsEveryKey) {
  const auto cfg = parse(R"({
    "ego": "x", "focus": "straight-line", "stackByLineIdentity": true,
    "timeStretch": {"2": 1.5}, "annotations": {"3": "note"}, "affinityMode": "node-link",
    "spaceDivisionRule": "team", "minGap": 10, "padding": 4, "baseStep": 90,
    "egoEmphasis": 2.5, "maxSweeps": 3, "blockGapSlots": 3, "seed": 9,
    "colorScales": {"lines": {"a": "#000000"}, "nodes": {"ok": "#ffffff"}}})");
  EXPECT_EQ(cfg.focus, Focus::kStraightLine);
  EXPECT_TRUE(cfg.stack_by_line_identity);
  EXPECT_DOUBLE_EQ(cfg.time_stretch.at("2"), 1.5);
  EXPECT_EQ(cfg.annotations.at("3"), "note");
  EXPECT_EQ(cfg.affinity_mode, AffinityMode::kNodeLink);
  EXPECT_EQ(cfg.space_division_rule, "team");
  EXPECT_DOUBLE_EQ(cfg.min_gap, 10);
  EXPECT_EQ(cfg.block_gap_slots, 3);
  EXPECT_EQ(cfg.seed, 9u);
  EXPECT_EQ(cfg.color_scales.lines.at("a"), "#000000");
}

TEST(Config, WriteThenParseRoundTrips) {
  auto cfg = fixtures::farm().config;
  cfg.time_stretch["2023-03-10"] = 2.0;
  cfg.affinity_mode = AffinityMode::kCoordinates;
  std::ostringstream out;
  write_config(out, cfg);
  EXPECT_EQ(parse(out.str()), cfg);
}

TEST(Config, RejectsUnknownKeysAndBadTypes) {
  EXPECT_THROW(parse(R"({"ego": "x", "egoo": 1})"), ConfigError);
  EXPECT_THROW(parse(R"({"focus": "straight-line"})"), ConfigError);
  EXPECT_THROW(parse(R"({"ego": "x", "focus": "diagonal"})"), ConfigError);
  EXPECT_THROW(parse(R"({"ego": "x", "minGap": "wide"})"), ConfigError);
  EXPECT_THROW(parse("[1, 2]"), ConfigError);
}

TEST(Config, ValidationChecksEgoAndAxisLabels) {
  const auto d = fixtures::six_farms();
  auto cfg = d.config;
  EXPECT_NO_THROW(validate_config(cfg, d.events));

  cfg.ego = "Nobody";
  EXPECT_THROW(validate_config(cfg, d.events), ConfigError);

  cfg = d.config;
  cfg.time_stretch["7"] = 2.0;
  EXPECT_THROW(validate_config(cfg, d.events), ConfigError);

  cfg = d.config;
  cfg.time_stretch["2"] = 0.0;
  EXPECT_THROW(validate_config(cfg, d.events), ConfigError);

  cfg = d.config;
  cfg.annotations["3"] = "off axis";
  EXPECT_THROW(validate_config(cfg, d.events), ConfigError);
}

TEST(Config, ValidationNormalisesLabels) {
  const auto d = fixtures::six_farms();
  auto cfg = d.config;
  cfg.time_stretch["02"] = 2.0;
  EXPECT_EQ(validate_config(cfg, d.events).time_stretch.count("2"), 1u);
}

TEST(Config, NumericRanges) {
  const auto d = fixtures::six_farms();
  auto bad = [&](auto mutate) {
    auto cfg = d.config;
    mutate(cfg);
    return [&d, cfg] { validate_config(cfg, d.events); };
  };
  EXPECT_THROW(bad([](auto& c) { c.min_gap = 0; })(), ConfigError);
  EXPECT_THROW(bad([](auto& c) { c.base_step = -1; })(), ConfigError);
  EXPECT_THROW(bad([](auto& c) { c.padding = -1; })(), ConfigError);
  EXPECT_THROW(bad([](auto& c) { c.ego_emphasis = 1.0; })(), ConfigError);
  EXPECT_THROW(bad([](auto& c) { c.max_sweeps = -1; })(), ConfigError);
  EXPECT_THROW(bad([](auto& c) { c.block_gap_slots = 0; })(), ConfigError);
}

}  // namespace
}  // namespace spreadline
