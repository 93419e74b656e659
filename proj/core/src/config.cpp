#include "spreadline/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

namespace spreadline {

using nlohmann::json;

namespace {

template <class T>
T field(const json& doc, const char* key, const char* expected) {
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("'") + key + "' must be " + expected);
  }
}

}  // namespace

SpreadLineConfig parse_config(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::vector<std::string> known = {
      "ego",     "focus",   "stackByLineIdentity", "timeStretch", "annotations",   "affinityMode",
      "spaceDivisionRule", "minGap",  "padding",    "baseStep",   "egoEmphasis", "maxSweeps",
      "blockGapSlots",     "seed",    "colorScales"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("unknown key '" + key + "'");
    }
  }

  SpreadLineConfig cfg;
  if (!doc.contains("ego")) throw ConfigError("'ego' is required");
  cfg.ego = field<std::string>(doc, "ego", "a string");
  if (doc.contains("focus")) {
    const auto f = parse_focus(field<std::string>(doc, "focus", "a string"));
    if (!f) throw ConfigError("focus must be vertical-space or straight-line");
    cfg.focus = *f;
  }
  if (doc.contains("stackByLineIdentity")) {
    cfg.stack_by_line_identity = field<bool>(doc, "stackByLineIdentity", "a boolean");
  }
  if (doc.contains("timeStretch")) {
    cfg.time_stretch = field<std::map<std::string, double>>(doc, "timeStretch", "an object of numbers");
  }
  if (doc.contains("annotations")) {
    cfg.annotations =
        field<std::map<std::string, std::string>>(doc, "annotations", "an object of strings");
  }
  if (doc.contains("affinityMode")) {
    const auto mode = field<std::string>(doc, "affinityMode", "a string");
    if (mode == "coordinates") {
      cfg.affinity_mode = AffinityMode::kCoordinates;
    } else if (mode == "node-link") {
      cfg.affinity_mode = AffinityMode::kNodeLink;
    } else {
      throw ConfigError("affinityMode must be coordinates or node-link");
    }
  }
  if (doc.contains("spaceDivisionRule")) {
    cfg.space_division_rule = field<std::string>(doc, "spaceDivisionRule", "a string");
  }
  if (doc.contains("minGap")) cfg.min_gap = field<double>(doc, "minGap", "a number");
  if (doc.contains("padding")) cfg.padding = field<double>(doc, "padding", "a number");
  if (doc.contains("baseStep")) cfg.base_step = field<double>(doc, "baseStep", "a number");
  if (doc.contains("egoEmphasis")) cfg.ego_emphasis = field<double>(doc, "egoEmphasis", "a number");
  if (doc.contains("maxSweeps")) cfg.max_sweeps = field<int>(doc, "maxSweeps", "an integer");
  if (doc.contains("blockGapSlots")) {
    cfg.block_gap_slots = field<int>(doc, "blockGapSlots", "an integer");
  }
  if (doc.contains("seed")) cfg.seed = field<std::uint64_t>(doc, "seed", "an unsigned integer");
  if (doc.contains("colorScales")) {
    const auto& scales = doc.at("colorScales");
    if (!scales.is_object()) throw ConfigError("'colorScales' must be an object");
    for (const auto& [key, _] : scales.items()) {
      if (key != "lines" && key != "nodes") throw ConfigError("unknown colorScales key '" + key + "'");
    }
    if (scales.contains("lines")) {
      cfg.color_scales.lines =
          field<std::map<std::string, std::string>>(scales, "lines", "an object of colors");
    }
    if (scales.contains("nodes")) {
      cfg.color_scales.nodes =
          field<std::map<std::string, std::string>>(scales, "nodes", "an object of colors");
    }
  }
  return cfg;
}

SpreadLineConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  return parse_config(in);
}

void write_config(std::ostream& out, const SpreadLineConfig& cfg) {
  json doc;
  doc["ego"] = cfg.ego;
  doc["focus"] = std::string(to_string(cfg.focus));
  doc["stackByLineIdentity"] = cfg.stack_by_line_identity;
  if (!cfg.time_stretch.empty()) doc["timeStretch"] = cfg.time_stretch;
  if (!cfg.annotations.empty()) doc["annotations"] = cfg.annotations;
  if (cfg.affinity_mode) doc["affinityMode"] = std::string(to_string(*cfg.affinity_mode));
  doc["spaceDivisionRule"] = cfg.space_division_rule;
  doc["minGap"] = cfg.min_gap;
  doc["padding"] = cfg.padding;
  doc["baseStep"] = cfg.base_step;
  doc["egoEmphasis"] = cfg.ego_emphasis;
  doc["maxSweeps"] = cfg.max_sweeps;
  doc["blockGapSlots"] = cfg.block_gap_slots;
  doc["seed"] = cfg.seed;
  if (!cfg.color_scales.lines.empty() || !cfg.color_scales.nodes.empty()) {
    doc["colorScales"]["lines"] = cfg.color_scales.lines;
    doc["colorScales"]["nodes"] = cfg.color_scales.nodes;
  }
  out << doc.dump(2) << '\n';
}

SpreadLineConfig validate_config(SpreadLineConfig config, const std::vector<EventRecord>& events) {
  if (config.ego.empty()) throw ConfigError("ego is required");
  const bool ego_found = std::any_of(events.begin(), events.end(), [&](const EventRecord& e) {
    return e.source == config.ego || e.target == config.ego;
  });
  if (!ego_found) throw ConfigError("ego '" + config.ego + "' does not appear in any event");

  const TimeAxis axis = TimeAxis::from_events(events);
  // Normalise keys to the axis spelling so later lookups are exact.
  std::map<std::string, double> stretch;
  for (const auto& [label, factor] : config.time_stretch) {
    const auto t = axis.find_label(label);
    if (!t) throw ConfigError("stretch timestamp '" + label + "' is not on the time axis");
    if (!(factor > 0.0) || !std::isfinite(factor)) {
      throw ConfigError("stretch factor for '" + label + "' must be positive");
    }
    stretch[t->label()] = factor;
  }
  config.time_stretch = std::move(stretch);

  std::map<std::string, std::string> annotations;
  for (const auto& [label, text] : config.annotations) {
    const auto t = axis.find_label(label);
    if (!t) throw ConfigError("annotation timestamp '" + label + "' is not on the time axis");
    annotations[t->label()] = text;
  }
  config.annotations = std::move(annotations);

  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive");
  };
  positive(config.min_gap, "minGap");
  positive(config.base_step, "baseStep");
  if (config.padding < 0.0 || !std::isfinite(config.padding)) {
    throw ConfigError("padding must be non-negative");
  }
  if (!(config.ego_emphasis > 1.0)) throw ConfigError("egoEmphasis must exceed 1");
  if (config.max_sweeps < 0) throw ConfigError("maxSweeps must be non-negative");
  if (config.block_gap_slots < 1) throw ConfigError("blockGapSlots must be at least 1");
  if (config.space_division_rule.empty()) throw ConfigError("spaceDivisionRule must not be empty");
  return config;
}

}  // namespace spreadline
