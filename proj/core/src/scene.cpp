#include "spreadline/scene.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <type_traits>
#include <unordered_map>

namespace spreadline {

namespace {

constexpr double kMarginLeft = 60.0;
constexpr double kMarginRight = 60.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;
constexpr double kBlockShare = 0.3;
constexpr double kPointRadius = 3.0;
constexpr double kTriangleSize = 5.0;
constexpr double kAffinityMargin = 20.0;

std::optional<double> numeric(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) return std::nullopt;
  return v;
}

}  // namespace

// --- Colors -----------------------------------------------------------------

const std::vector<std::string>& ColorResolver::categorical_palette() {
  static const std::vector<std::string> palette = {"#1b9e77", "#d95f02", "#7570b3"};
  return palette;
}

const std::vector<std::string>& ColorResolver::sequential_palette() {
  static const std::vector<std::string> palette = {"#ffffb2", "#fed976", "#feb24c", "#fd8d3c",
                                                   "#fc4e2a", "#e31a1c", "#b10026"};
  return palette;
}

ColorResolver::ColorResolver(const LayoutResult& result, const EntityAttributeTable& attributes,
                             const ColorScales& scales) {
  // Identities in order of first appearance on the timeline.
  std::vector<std::string> identities;
  std::set<std::string> seen;
  std::set<std::string> statuses;
  for (std::size_t c = 0; c < result.snapshots.size(); ++c) {
    const auto& snap = result.snapshots[c];
    std::set<std::string> fresh;
    for (const auto& a : snap.alters) {
      const auto identity = attributes.line_identity(a.id);
      if (!seen.contains(identity)) fresh.insert(identity);
      statuses.insert(attributes.status_at(a.id, snap.time));
    }
    statuses.insert(attributes.status_at(snap.ego, snap.time));
    for (const auto& identity : fresh) {
      seen.insert(identity);
      identities.push_back(identity);
    }
  }

  if (!scales.lines.empty()) {
    std::string missing;
    for (const auto& identity : identities) {
      if (!scales.lines.contains(identity)) missing += (missing.empty() ? "" : ", ") + identity;
    }
    if (!missing.empty()) throw StyleError("line color scale has no entry for: " + missing);
    lines_ = scales.lines;
  } else {
    static const std::vector<std::string> desaturated = {"#8c8c8c", "#a6a6a6", "#737373",
                                                         "#bfbfbf"};
    const auto& saturated = categorical_palette();
    for (std::size_t i = 0; i < identities.size(); ++i) {
      lines_[identities[i]] = i < saturated.size()
                                  ? saturated[i]
                                  : desaturated[(i - saturated.size()) % desaturated.size()];
    }
  }

  statuses.erase(std::string(kUnknownCategory));
  if (!scales.nodes.empty()) {
    nodes_ = scales.nodes;
    return;
  }
  numeric_status_ = !statuses.empty() && std::all_of(statuses.begin(), statuses.end(),
                                                     [](const auto& s) { return numeric(s).has_value(); });
  const auto& seq = sequential_palette();
  if (numeric_status_) {
    status_min_ = std::numeric_limits<double>::max();
    status_max_ = std::numeric_limits<double>::lowest();
    for (const auto& s : statuses) {
      status_min_ = std::min(status_min_, *numeric(s));
      status_max_ = std::max(status_max_, *numeric(s));
    }
    return;
  }
  const std::vector<std::string> ordered(statuses.begin(), statuses.end());
  const std::size_t n = ordered.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t bin = 0;
    if (n == 1) {
      bin = seq.size() / 2;
    } else if (n <= seq.size()) {
      bin = static_cast<std::size_t>(std::lround(static_cast<double>(i) * (seq.size() - 1) / (n - 1)));
    } else {
      bin = i * seq.size() / n;
    }
    nodes_[ordered[i]] = seq[bin];
  }
}

const std::string& ColorResolver::line_color(const std::string& identity) const {
  const auto it = lines_.find(identity);
  if (it == lines_.end()) throw StyleError("unknown lineIdentity category: " + identity);
  return it->second;
}

std::string ColorResolver::node_color(const std::string& status) const {
  if (status == kUnknownCategory) return kNeutralFill;
  if (const auto it = nodes_.find(status); it != nodes_.end()) return it->second;
  if (numeric_status_) {
    if (const auto v = numeric(status)) {
      const auto& seq = sequential_palette();
      if (status_max_ <= status_min_) return seq[seq.size() / 2];
      const double unit = (*v - status_min_) / (status_max_ - status_min_);
      const auto bin = std::min<std::size_t>(seq.size() - 1,
                                             static_cast<std::size_t>(unit * seq.size()));
      return seq[bin];
    }
  }
  return kNeutralFill;
}

// --- Affinity view ----------------------------------------------------------

AffinityMode effective_affinity_mode(const SpreadLineConfig& config,
                                     const EntityAttributeTable& attributes) {
  if (config.affinity_mode) return *config.affinity_mode;
  return attributes.has_context() ? AffinityMode::kCoordinates : AffinityMode::kNodeLink;
}

namespace {

// Min-max normalisation into [margin, size - margin]; flat axes are centred.
void normalise(std::map<EntityId, Point2>& positions, double width, double height) {
  if (positions.empty()) return;
  double min_x = std::numeric_limits<double>::max();
  double max_x = std::numeric_limits<double>::lowest();
  double min_y = min_x;
  double max_y = max_x;
  for (const auto& [_, p] : positions) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  auto scale = [](double v, double lo, double hi, double size) {
    if (hi <= lo) return size / 2.0;
    return kAffinityMargin + (v - lo) / (hi - lo) * (size - 2.0 * kAffinityMargin);
  };
  for (auto& [_, p] : positions) {
    p = Point2{scale(p.x, min_x, max_x, width), scale(p.y, min_y, max_y, height)};
  }
}

// Fruchterman-Reingold with a fixed iteration count and seeded start.
std::map<EntityId, Point2> force_directed(const std::vector<EntityId>& nodes,
                                          const std::vector<std::pair<EntityId, EntityId>>& edges,
                                          double width, double height, std::uint64_t seed) {
  constexpr int kIterations = 150;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = nodes.size();
  std::vector<Point2> pos(n);
  for (auto& p : pos) p = Point2{unit(rng) * width, unit(rng) * height};
  std::unordered_map<EntityId, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(nodes[i], i);

  const double k = std::sqrt(width * height / std::max<std::size_t>(n, 1));
  double temperature = width / 10.0;
  std::vector<Point2> disp(n);
  for (int iter = 0; iter < kIterations; ++iter) {
    std::fill(disp.begin(), disp.end(), Point2{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = pos[i].x - pos[j].x;
        double dy = pos[i].y - pos[j].y;
        const double d = std::max(std::hypot(dx, dy), 1e-6);
        const double f = k * k / d;
        disp[i].x += dx / d * f;
        disp[i].y += dy / d * f;
        disp[j].x -= dx / d * f;
        disp[j].y -= dy / d * f;
      }
    }
    for (const auto& [a, b] : edges) {
      const std::size_t i = index.at(a);
      const std::size_t j = index.at(b);
      const double dx = pos[i].x - pos[j].x;
      const double dy = pos[i].y - pos[j].y;
      const double d = std::max(std::hypot(dx, dy), 1e-6);
      const double f = d * d / k;
      disp[i].x -= dx / d * f;
      disp[i].y -= dy / d * f;
      disp[j].x += dx / d * f;
      disp[j].y += dy / d * f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double len = std::max(std::hypot(disp[i].x, disp[i].y), 1e-9);
      const double step = std::min(len, temperature);
      pos[i].x = std::clamp(pos[i].x + disp[i].x / len * step, 0.0, width);
      pos[i].y = std::clamp(pos[i].y + disp[i].y / len * step, 0.0, height);
    }
    temperature *= 0.97;
  }
  std::map<EntityId, Point2> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace(nodes[i], pos[i]);
  return out;
}

}  // namespace

AffinityViewSpec build_affinity_view(const EgoSnapshot& snapshot,
                                     const EntityAttributeTable& attributes,
                                     const SpreadLineConfig& config) {
  AffinityViewSpec spec;
  spec.time = snapshot.time.label();
  spec.ego = snapshot.ego;
  spec.ego_present = snapshot.ego_present;
  spec.ego_emphasis = config.ego_emphasis;

  std::vector<EntityId> present;
  if (snapshot.ego_present) present.push_back(snapshot.ego);
  for (const auto& a : snapshot.alters) present.push_back(a.id);
  std::sort(present.begin(), present.end());

  if (effective_affinity_mode(config, attributes) == AffinityMode::kCoordinates) {
    for (const auto& id : present) {
      const auto p = attributes.context_at(id, snapshot.time);
      if (!p) {
        throw DataError("render", "entity '" + id + "' has no context coordinates at " +
                                      snapshot.time.label());
      }
      spec.positions.emplace(id, Point2{p->x, p->y});
    }
  } else {
    for (const auto& a : snapshot.alters) {
      if (a.level == 1) {
        spec.edges.emplace_back(std::min(snapshot.ego, a.id), std::max(snapshot.ego, a.id));
      } else {
        for (const auto& anchor : a.anchors) {
          spec.edges.emplace_back(std::min(anchor, a.id), std::max(anchor, a.id));
        }
      }
    }
    std::sort(spec.edges.begin(), spec.edges.end());
    const std::uint64_t seed =
        config.seed ^ (static_cast<std::uint64_t>(snapshot.time.ordinal) * 0x9E3779B97F4A7C15ULL);
    spec.positions = force_directed(present, spec.edges, spec.width, spec.height, seed);
  }
  normalise(spec.positions, spec.width, spec.height);
  return spec;
}

// --- Geometry ---------------------------------------------------------------

RenderScene realize_geometry(const LayoutResult& result, const EntityAttributeTable& attributes,
                             const SpreadLineConfig& config) {
  const Layout& layout = result.layout;
  const ColorResolver colors(result, attributes, config.color_scales);
  RenderScene scene;
  scene.ego = layout.ego;
  scene.focus = std::string(to_string(layout.focus));
  const std::size_t columns = layout.times.size();

  // Keys may use any spelling that parses to an axis timestamp.
  auto by_axis_label = [&](const auto& keyed) {
    std::decay_t<decltype(keyed)> out;
    for (const auto& [label, value] : keyed) {
      const auto t = result.axis.find_label(label);
      out[t ? t->label() : label] = value;
    }
    return out;
  };
  const auto stretches = by_axis_label(config.time_stretch);
  const auto annotations = by_axis_label(config.annotations);

  double min_stretch = 1.0;
  double x = kMarginLeft;
  for (std::size_t c = 0; c < columns; ++c) {
    const auto label = layout.times[c].label();
    scene.time_labels.push_back(label);
    double stretch = 1.0;
    if (const auto it = stretches.find(label); it != stretches.end()) {
      stretch = it->second;
    }
    if (c > 0) {
      x += config.base_step * stretch;
      min_stretch = std::min(min_stretch, stretch);
    }
    scene.column_x.push_back(x);
  }
  const double w = kBlockShare * config.base_step * min_stretch;
  scene.block_width = w;

  double min_y = 0.0;
  double max_y = 0.0;
  for (const auto& blocks : layout.blocks) {
    for (const auto& b : blocks) {
      min_y = std::min(min_y, b.top);
      max_y = std::max(max_y, b.bottom);
    }
  }
  for (const auto& track : layout.tracks) {
    for (const auto& cell : track.cells) {
      if (cell.state == CellState::kOutside) continue;
      min_y = std::min(min_y, cell.y);
      max_y = std::max(max_y, cell.y);
    }
  }
  const double offset = kMarginTop - min_y;
  const double label_band = annotations.empty() ? kMarginBottom - 20.0 : kMarginBottom;
  scene.height = max_y + offset + label_band;
  scene.width = (columns ? scene.column_x.back() : kMarginLeft) + kMarginRight;

  // Blocks and connectors.
  std::vector<std::vector<int>> column_blocks(columns);
  for (std::size_t c = 0; c < columns; ++c) {
    const BlockExtent* primary = nullptr;
    for (const auto& b : layout.blocks[c]) {
      if (b.kind == BlockKind::kPrimary) primary = &b;
    }
    for (const auto& b : layout.blocks[c]) {
      column_blocks[c].push_back(static_cast<int>(scene.blocks.size()));
      scene.blocks.push_back(SceneBlock{static_cast<int>(c), b.kind, scene.column_x[c] - w / 2.0,
                                        b.top + offset, w, b.bottom - b.top, std::min(8.0, w / 4.0)});
      if (primary && b.kind == BlockKind::kTopSecondary) {
        scene.connectors.push_back(SceneConnector{static_cast<int>(c),
                                                  Point2{scene.column_x[c], primary->top + offset},
                                                  Point2{scene.column_x[c], b.bottom + offset}});
      } else if (primary && b.kind == BlockKind::kBottomSecondary) {
        scene.connectors.push_back(SceneConnector{static_cast<int>(c),
                                                  Point2{scene.column_x[c], primary->bottom + offset},
                                                  Point2{scene.column_x[c], b.top + offset}});
      }
    }
  }

  std::unordered_map<EntityId, std::vector<const AlterEntry*>> alter_cells;
  for (const auto& track : layout.tracks) alter_cells[track.id].assign(columns, nullptr);
  for (std::size_t c = 0; c < result.snapshots.size() && c < columns; ++c) {
    for (const auto& a : result.snapshots[c].alters) alter_cells[a.id][c] = &a;
  }

  for (const auto& track : layout.tracks) {
    std::optional<std::size_t> first;
    std::size_t last = 0;
    for (std::size_t c = 0; c < columns; ++c) {
      if (!track.cells[c].present()) continue;
      if (!first) first = c;
      last = c;
    }
    if (!first) continue;

    SceneLine line;
    line.id = track.id;
    line.name = attributes.display_name(track.id);
    line.is_ego = track.is_ego;
    line.line_identity = track.is_ego ? "ego" : attributes.line_identity(track.id);
    line.stroke = track.is_ego ? kEgoStroke : colors.line_color(line.line_identity);
    line.stroke_width = track.is_ego ? kEgoStrokeWidth : kAlterStrokeWidth;
    line.start = Point2{scene.column_x[*first] - w / 2.0, track.cells[*first].y + offset};
    for (std::size_t c = *first; c <= last; ++c) {
      const double y = track.cells[c].y + offset;
      line.segments.push_back(PathSegment{SegmentKind::kLine, {}, {}, Point2{scene.column_x[c] + w / 2.0, y}});
      if (c < last) {
        const double x0 = scene.column_x[c] + w / 2.0;
        const double x1 = scene.column_x[c + 1] - w / 2.0;
        const double xm = (x0 + x1) / 2.0;
        const double y1 = track.cells[c + 1].y + offset;
        line.segments.push_back(
            PathSegment{SegmentKind::kCubic, Point2{xm, y}, Point2{xm, y1}, Point2{x1, y1}});
      }
      if (track.cells[c].state == CellState::kIdle) {
        line.idle.push_back(IdleSpan{static_cast<int>(c), track.cells[c].routing});
      }
    }

    for (std::size_t c = *first; c <= last; ++c) {
      const Cell& cell = track.cells[c];
      if (!cell.present()) continue;
      ScenePoint point;
      point.id = track.id;
      point.time_index = static_cast<int>(c);
      point.at = Point2{scene.column_x[c], cell.y + offset};
      point.radius = track.is_ego ? kPointRadius * 1.5 : kPointRadius;
      point.status = attributes.status_at(track.id, layout.times[c]);
      point.fill = colors.node_color(point.status);
      point.level = cell.level;
      if (const AlterEntry* a = alter_cells[track.id][c]) {
        point.agg_weight = a->agg_weight;
        point.compartment = std::string(to_string(a->compartment));
      } else {
        point.compartment = "ego";
      }
      scene.points.push_back(std::move(point));
    }

    scene.triangles.push_back(SceneTriangle{track.id, true, line.start, kTriangleSize, line.stroke});
    scene.triangles.push_back(SceneTriangle{
        track.id, false, Point2{scene.column_x[last] + w / 2.0, track.cells[last].y + offset},
        kTriangleSize, line.stroke});
    scene.lines.push_back(std::move(line));
  }

  for (std::size_t c = 0; c < columns; ++c) {
    const double label_y = max_y + offset + 24.0;
    scene.labels.push_back(SceneLabel{static_cast<int>(c), Point2{scene.column_x[c], label_y},
                                      scene.time_labels[c], false});
    if (const auto it = annotations.find(scene.time_labels[c]); it != annotations.end()) {
      scene.labels.push_back(SceneLabel{static_cast<int>(c),
                                        Point2{scene.column_x[c], label_y + 18.0}, it->second, true});
    }
  }

  for (std::size_t c = 0; c < result.snapshots.size() && c < columns; ++c) {
    auto spec = build_affinity_view(result.snapshots[c], attributes, config);
    spec.time_index = static_cast<int>(c);
    spec.collapsed_blocks = column_blocks[c];
    scene.affinity.push_back(std::move(spec));
  }
  return scene;
}

}  // namespace spreadline
