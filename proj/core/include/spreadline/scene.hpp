#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spreadline/layout.hpp"
#include "spreadline/metrics.hpp"

namespace spreadline {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

enum class SegmentKind : std::uint8_t { kLine, kCubic };

// One path command. Lines ignore the control points.
struct PathSegment {
  SegmentKind kind = SegmentKind::kLine;
  Point2 c1;
  Point2 c2;
  Point2 end;
  friend bool operator==(const PathSegment&, const PathSegment&) = default;
};

struct IdleSpan {
  int time_index = 0;
  IdleRouting routing = IdleRouting::kNone;
  friend bool operator==(const IdleSpan&, const IdleSpan&) = default;
};

struct SceneLine {
  EntityId id;
  std::string name;
  std::string line_identity;
  std::string stroke;
  double stroke_width = 1.0;
  bool is_ego = false;
  Point2 start;
  std::vector<PathSegment> segments;
  std::vector<IdleSpan> idle;
  friend bool operator==(const SceneLine&, const SceneLine&) = default;
};

struct ScenePoint {
  EntityId id;
  int time_index = 0;
  Point2 at;
  double radius = 3.0;
  std::string fill;
  std::string status;
  double agg_weight = 0.0;
  int level = 0;
  std::string compartment;  // "top", "bottom" or "ego"
  friend bool operator==(const ScenePoint&, const ScenePoint&) = default;
};

struct SceneTriangle {
  EntityId id;
  bool first = true;  // first appearance points right, last points left
  Point2 at;
  double size = 5.0;
  std::string fill;
  friend bool operator==(const SceneTriangle&, const SceneTriangle&) = default;
};

struct SceneBlock {
  int time_index = 0;
  BlockKind kind = BlockKind::kPrimary;
  double x = 0.0;
  double y = 0.0;
  double width = 0.0;
  double height = 0.0;
  double corner_radius = 0.0;
  friend bool operator==(const SceneBlock&, const SceneBlock&) = default;
};

struct SceneConnector {
  int time_index = 0;
  Point2 from;
  Point2 to;
  friend bool operator==(const SceneConnector&, const SceneConnector&) = default;
};

struct SceneLabel {
  int time_index = 0;
  Point2 at;
  std::string text;
  bool annotation = false;
  friend bool operator==(const SceneLabel&, const SceneLabel&) = default;
};

// Expanded-block payload for one timestamp. Positions live in a local
// rectangle [0, width] x [0, height].
struct AffinityViewSpec {
  std::string time;
  int time_index = 0;
  EntityId ego;
  bool ego_present = false;
  double ego_emphasis = 1.8;
  double width = 240.0;
  double height = 240.0;
  std::map<EntityId, Point2> positions;
  std::vector<std::pair<EntityId, EntityId>> edges;  // node-link mode only
  std::vector<int> collapsed_blocks;                 // indices into RenderScene::blocks
  friend bool operator==(const AffinityViewSpec&, const AffinityViewSpec&) = default;
};

struct RenderScene {
  double width = 0.0;
  double height = 0.0;
  EntityId ego;
  std::string focus;
  double block_width = 0.0;
  std::vector<std::string> time_labels;
  std::vector<double> column_x;
  std::vector<SceneBlock> blocks;
  std::vector<SceneConnector> connectors;
  std::vector<SceneLine> lines;
  std::vector<ScenePoint> points;
  std::vector<SceneTriangle> triangles;
  std::vector<SceneLabel> labels;
  std::vector<AffinityViewSpec> affinity;
  friend bool operator==(const RenderScene&, const RenderScene&) = default;
};

inline constexpr double kEgoStrokeWidth = 4.0;
inline constexpr double kAlterStrokeWidth = 1.6;
inline constexpr const char* kEgoStroke = "#222222";
inline constexpr const char* kNeutralFill = "#bdbdbd";

// Line hues: at most three saturated colors, further categories desaturated.
// Node fills: sequential scale of at most seven bins.
class ColorResolver {
 public:
  ColorResolver(const LayoutResult& result, const EntityAttributeTable& attributes,
                const ColorScales& scales);

  const std::string& line_color(const std::string& identity) const;
  std::string node_color(const std::string& status) const;

  static const std::vector<std::string>& categorical_palette();
  static const std::vector<std::string>& sequential_palette();

 private:
  std::map<std::string, std::string> lines_;
  std::map<std::string, std::string> nodes_;
  bool numeric_status_ = false;
  double status_min_ = 0.0;
  double status_max_ = 0.0;
};

RenderScene realize_geometry(const LayoutResult& result, const EntityAttributeTable& attributes,
                             const SpreadLineConfig& config);

AffinityViewSpec build_affinity_view(const EgoSnapshot& snapshot,
                                     const EntityAttributeTable& attributes,
                                     const SpreadLineConfig& config);

// Mode in effect for `config`: explicit, else coordinates when context exists.
AffinityMode effective_affinity_mode(const SpreadLineConfig& config,
                                     const EntityAttributeTable& attributes);

}  // namespace spreadline
