#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spreadline/types.hpp"

namespace spreadline {

struct EventRecord {
  Timestamp time;
  EntityId source;
  EntityId target;
  double weight = 1.0;
  std::string kind;
  // Undirected relations count toward both directions with the same weight.
  bool directed = true;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct ContextPoint {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const ContextPoint&, const ContextPoint&) = default;
};

inline constexpr std::string_view kUnknownCategory = "unknown";

// Content-aspect attributes. Values keyed by timestamp; a value stored without
// a timestamp (static) applies at every time that has no explicit value.
class EntityAttributeTable {
 public:
  void set_line_identity(const EntityId& id, std::optional<Timestamp> at, std::string value);
  void set_status(const EntityId& id, std::optional<Timestamp> at, std::string value);
  void set_context(const EntityId& id, std::optional<Timestamp> at, ContextPoint p);
  void set_display_name(const EntityId& id, std::string name);
  void set_categorical(const std::string& attribute, const EntityId& id,
                       std::optional<Timestamp> at, std::string value);

  // Identity at the entity's earliest recorded row; "unknown" when absent.
  std::string line_identity(const EntityId& id) const;
  std::string status_at(const EntityId& id, Timestamp t) const;
  std::optional<ContextPoint> context_at(const EntityId& id, Timestamp t) const;
  std::string display_name(const EntityId& id) const;
  // Generic categorical lookup; "lineIdentity" and "status" resolve to the
  // dedicated columns.
  std::string categorical_at(const std::string& attribute, const EntityId& id, Timestamp t) const;

  bool has_context() const { return !context_.empty(); }
  bool has_attribute(const std::string& attribute) const;
  std::set<EntityId> entities() const;

 private:
  template <class V>
  using Series = std::map<EntityId, std::map<std::optional<Timestamp>, V>>;

  Series<std::string> identity_;
  Series<std::string> status_;
  Series<ContextPoint> context_;
  std::map<EntityId, std::string> names_;
  std::map<std::string, Series<std::string>> extra_;
};

// Column-role mapping. Roles left empty are unmapped.
struct DataSchema {
  std::string time;
  std::string source;
  std::string target;
  std::string weight;
  std::string kind;
  std::string entity;
  std::string line_identity;
  std::string status;
  std::string context_x;
  std::string context_y;
  std::string name;
  bool directed = true;

  friend bool operator==(const DataSchema&, const DataSchema&) = default;
};

struct TimeAxis {
  std::vector<Timestamp> times;
  std::vector<bool> included;

  static TimeAxis from_events(const std::vector<EventRecord>& events);
  std::optional<std::size_t> index_of(Timestamp t) const;
  std::optional<Timestamp> find_label(const std::string& label) const;
};

enum class Focus : std::uint8_t { kVerticalSpace, kStraightLine };
enum class AffinityMode : std::uint8_t { kCoordinates, kNodeLink };

std::string_view to_string(Focus f);
std::string_view to_string(AffinityMode m);
std::optional<Focus> parse_focus(std::string_view s);

inline constexpr std::string_view kEdgeDirectionRule = "edge-direction";

struct ColorScales {
  // Explicit category -> color maps. Empty means auto-assign.
  std::map<std::string, std::string> lines;
  std::map<std::string, std::string> nodes;
  friend bool operator==(const ColorScales&, const ColorScales&) = default;
};

struct SpreadLineConfig {
  EntityId ego;
  Focus focus = Focus::kVerticalSpace;
  bool stack_by_line_identity = false;
  // Keyed by timestamp label.
  std::map<std::string, double> time_stretch;
  std::map<std::string, std::string> annotations;
  // Unset: coordinates when context data exists, node-link otherwise.
  std::optional<AffinityMode> affinity_mode;
  std::string space_division_rule{kEdgeDirectionRule};
  double min_gap = 14.0;
  double padding = 10.0;
  double base_step = 120.0;
  double ego_emphasis = 1.8;
  int max_sweeps = 10;
  int block_gap_slots = 2;
  std::uint64_t seed = 42;
  ColorScales color_scales;

  friend bool operator==(const SpreadLineConfig&, const SpreadLineConfig&) = default;
};

}  // namespace spreadline
