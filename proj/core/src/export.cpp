#include "spreadline/export.hpp"

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace spreadline {

// --- SVG --------------------------------------------------------------------

namespace {

std::string num(double v) {
  if (std::abs(v) < 0.005) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string_view block_class(BlockKind k) {
  switch (k) {
    case BlockKind::kPrimary: return "primary";
    case BlockKind::kTopSecondary: return "secondary top";
    case BlockKind::kBottomSecondary: return "secondary bottom";
  }
  return "primary";
}

std::string path_data(const SceneLine& line) {
  std::string d = "M" + num(line.start.x) + "," + num(line.start.y);
  for (const auto& s : line.segments) {
    if (s.kind == SegmentKind::kLine) {
      d += " L" + num(s.end.x) + "," + num(s.end.y);
    } else {
      d += " C" + num(s.c1.x) + "," + num(s.c1.y) + " " + num(s.c2.x) + "," + num(s.c2.y) + " " +
           num(s.end.x) + "," + num(s.end.y);
    }
  }
  return d;
}

}  // namespace

std::string export_svg(const RenderScene& scene) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(scene.width)
      << "\" height=\"" << num(scene.height) << "\" viewBox=\"0 0 " << num(scene.width) << ' '
      << num(scene.height) << "\"";
  const bool empty = scene.blocks.empty() && scene.connectors.empty() && scene.lines.empty() &&
                     scene.points.empty() && scene.triangles.empty() && scene.labels.empty();
  if (empty) {
    out << "/>\n";
    return out.str();
  }
  out << ">\n";

  if (!scene.blocks.empty()) {
    out << "<g class=\"blocks\">\n";
    for (const auto& b : scene.blocks) {
      out << "<rect class=\"block " << block_class(b.kind) << "\" data-time=\"" << b.time_index
          << "\" x=\"" << num(b.x) << "\" y=\"" << num(b.y) << "\" width=\"" << num(b.width)
          << "\" height=\"" << num(b.height) << "\" rx=\"" << num(b.corner_radius)
          << "\" fill=\"#f4f4f4\" stroke=\"#9e9e9e\" stroke-width=\"1\"/>\n";
    }
    out << "</g>\n";
  }
  if (!scene.connectors.empty()) {
    out << "<g class=\"connectors\">\n";
    for (const auto& c : scene.connectors) {
      out << "<line class=\"connector\" data-time=\"" << c.time_index << "\" x1=\"" << num(c.from.x)
          << "\" y1=\"" << num(c.from.y) << "\" x2=\"" << num(c.to.x) << "\" y2=\"" << num(c.to.y)
          << "\" stroke=\"#9e9e9e\" stroke-width=\"2\"/>\n";
    }
    out << "</g>\n";
  }
  if (!scene.lines.empty()) {
    out << "<g class=\"lines\">\n";
    for (const auto& l : scene.lines) {
      out << "<path class=\"line" << (l.is_ego ? " ego" : "") << "\" data-entity=\""
          << xml_escape(l.id) << "\" d=\"" << path_data(l) << "\" fill=\"none\" stroke=\""
          << l.stroke << "\" stroke-width=\"" << num(l.stroke_width) << "\"/>\n";
    }
    out << "</g>\n";
  }
  if (!scene.points.empty()) {
    out << "<g class=\"points\">\n";
    for (const auto& p : scene.points) {
      out << "<circle class=\"presence\" data-entity=\"" << xml_escape(p.id) << "\" data-time=\""
          << p.time_index << "\" cx=\"" << num(p.at.x) << "\" cy=\"" << num(p.at.y) << "\" r=\""
          << num(p.radius) << "\" fill=\"" << p.fill << "\" stroke=\"#444444\" stroke-width=\"0.5\"/>\n";
    }
    out << "</g>\n";
  }
  if (!scene.triangles.empty()) {
    out << "<g class=\"triangles\">\n";
    for (const auto& t : scene.triangles) {
      const double dir = t.first ? -1.0 : 1.0;
      const double back = t.at.x + dir * 1.6 * t.size;
      out << "<polygon class=\"marker " << (t.first ? "first" : "last") << "\" data-entity=\""
          << xml_escape(t.id) << "\" points=\"" << num(t.at.x) << ',' << num(t.at.y) << ' '
          << num(back) << ',' << num(t.at.y - t.size) << ' ' << num(back) << ','
          << num(t.at.y + t.size) << "\" fill=\"" << t.fill << "\"/>\n";
    }
    out << "</g>\n";
  }
  if (!scene.labels.empty()) {
    out << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">\n";
    for (const auto& l : scene.labels) {
      out << "<text class=\"" << (l.annotation ? "annotation" : "time-label") << "\" data-time=\""
          << l.time_index << "\" x=\"" << num(l.at.x) << "\" y=\"" << num(l.at.y) << "\""
          << (l.annotation ? " font-style=\"italic\"" : "") << ">" << xml_escape(l.text)
          << "</text>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

// --- Scene document ---------------------------------------------------------

using nlohmann::json;

void to_json(json& j, const Point2& p) { j = json::array({p.x, p.y}); }
void from_json(const json& j, Point2& p) {
  p.x = j.at(0).get<double>();
  p.y = j.at(1).get<double>();
}

NLOHMANN_JSON_SERIALIZE_ENUM(BlockKind, {{BlockKind::kPrimary, "primary"},
                                         {BlockKind::kTopSecondary, "top-secondary"},
                                         {BlockKind::kBottomSecondary, "bottom-secondary"}})
NLOHMANN_JSON_SERIALIZE_ENUM(IdleRouting, {{IdleRouting::kNone, "none"},
                                           {IdleRouting::kCircumvent, "circumvent"},
                                           {IdleRouting::kTraverse, "traverse"}})

void to_json(json& j, const PathSegment& s) {
  if (s.kind == SegmentKind::kLine) {
    j = json{{"L", s.end}};
  } else {
    j = json{{"C", json::array({s.c1, s.c2, s.end})}};
  }
}
void from_json(const json& j, PathSegment& s) {
  if (j.contains("L")) {
    s = PathSegment{SegmentKind::kLine, {}, {}, j.at("L").get<Point2>()};
  } else {
    const auto& c = j.at("C");
    s = PathSegment{SegmentKind::kCubic, c.at(0).get<Point2>(), c.at(1).get<Point2>(),
                    c.at(2).get<Point2>()};
  }
}

void to_json(json& j, const IdleSpan& s) {
  j = json{{"timeIndex", s.time_index}, {"routing", s.routing}};
}
void from_json(const json& j, IdleSpan& s) {
  j.at("timeIndex").get_to(s.time_index);
  j.at("routing").get_to(s.routing);
}

void to_json(json& j, const SceneLine& l) {
  j = json{{"id", l.id},         {"name", l.name},   {"lineIdentity", l.line_identity},
           {"stroke", l.stroke}, {"strokeWidth", l.stroke_width}, {"isEgo", l.is_ego},
           {"start", l.start},   {"segments", l.segments}, {"idle", l.idle}};
}
void from_json(const json& j, SceneLine& l) {
  j.at("id").get_to(l.id);
  j.at("name").get_to(l.name);
  j.at("lineIdentity").get_to(l.line_identity);
  j.at("stroke").get_to(l.stroke);
  j.at("strokeWidth").get_to(l.stroke_width);
  j.at("isEgo").get_to(l.is_ego);
  j.at("start").get_to(l.start);
  j.at("segments").get_to(l.segments);
  j.at("idle").get_to(l.idle);
}

void to_json(json& j, const ScenePoint& p) {
  j = json{{"id", p.id},         {"timeIndex", p.time_index}, {"at", p.at},
           {"radius", p.radius}, {"fill", p.fill},            {"status", p.status},
           {"aggWeight", p.agg_weight}, {"level", p.level},   {"compartment", p.compartment}};
}
void from_json(const json& j, ScenePoint& p) {
  j.at("id").get_to(p.id);
  j.at("timeIndex").get_to(p.time_index);
  j.at("at").get_to(p.at);
  j.at("radius").get_to(p.radius);
  j.at("fill").get_to(p.fill);
  j.at("status").get_to(p.status);
  j.at("aggWeight").get_to(p.agg_weight);
  j.at("level").get_to(p.level);
  j.at("compartment").get_to(p.compartment);
}

void to_json(json& j, const SceneTriangle& t) {
  j = json{{"id", t.id}, {"first", t.first}, {"at", t.at}, {"size", t.size}, {"fill", t.fill}};
}
void from_json(const json& j, SceneTriangle& t) {
  j.at("id").get_to(t.id);
  j.at("first").get_to(t.first);
  j.at("at").get_to(t.at);
  j.at("size").get_to(t.size);
  j.at("fill").get_to(t.fill);
}

void to_json(json& j, const SceneBlock& b) {
  j = json{{"timeIndex", b.time_index}, {"kind", b.kind},     {"x", b.x},
           {"y", b.y},                  {"width", b.width},   {"height", b.height},
           {"cornerRadius", b.corner_radius}};
}
void from_json(const json& j, SceneBlock& b) {
  j.at("timeIndex").get_to(b.time_index);
  j.at("kind").get_to(b.kind);
  j.at("x").get_to(b.x);
  j.at("y").get_to(b.y);
  j.at("width").get_to(b.width);
  j.at("height").get_to(b.height);
  j.at("cornerRadius").get_to(b.corner_radius);
}

void to_json(json& j, const SceneConnector& c) {
  j = json{{"timeIndex", c.time_index}, {"from", c.from}, {"to", c.to}};
}
void from_json(const json& j, SceneConnector& c) {
  j.at("timeIndex").get_to(c.time_index);
  j.at("from").get_to(c.from);
  j.at("to").get_to(c.to);
}

void to_json(json& j, const SceneLabel& l) {
  j = json{{"timeIndex", l.time_index}, {"at", l.at}, {"text", l.text}, {"annotation", l.annotation}};
}
void from_json(const json& j, SceneLabel& l) {
  j.at("timeIndex").get_to(l.time_index);
  j.at("at").get_to(l.at);
  j.at("text").get_to(l.text);
  j.at("annotation").get_to(l.annotation);
}

void to_json(json& j, const AffinityViewSpec& a) {
  json edges = json::array();
  for (const auto& [from, to] : a.edges) edges.push_back(json::array({from, to}));
  j = json{{"time", a.time},
           {"timeIndex", a.time_index},
           {"ego", a.ego},
           {"egoPresent", a.ego_present},
           {"egoEmphasis", a.ego_emphasis},
           {"width", a.width},
           {"height", a.height},
           {"positions", a.positions},
           {"edges", edges},
           {"collapsedBlocks", a.collapsed_blocks}};
}
void from_json(const json& j, AffinityViewSpec& a) {
  j.at("time").get_to(a.time);
  j.at("timeIndex").get_to(a.time_index);
  j.at("ego").get_to(a.ego);
  j.at("egoPresent").get_to(a.ego_present);
  j.at("egoEmphasis").get_to(a.ego_emphasis);
  j.at("width").get_to(a.width);
  j.at("height").get_to(a.height);
  j.at("positions").get_to(a.positions);
  a.edges.clear();
  for (const auto& e : j.at("edges")) {
    a.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  j.at("collapsedBlocks").get_to(a.collapsed_blocks);
}

void to_json(json& j, const RenderScene& s) {
  j = json{{"width", s.width},
           {"height", s.height},
           {"ego", s.ego},
           {"focus", s.focus},
           {"blockWidth", s.block_width},
           {"timeLabels", s.time_labels},
           {"columnX", s.column_x},
           {"blocks", s.blocks},
           {"connectors", s.connectors},
           {"lines", s.lines},
           {"points", s.points},
           {"triangles", s.triangles},
           {"labels", s.labels},
           {"affinity", s.affinity}};
}
void from_json(const json& j, RenderScene& s) {
  j.at("width").get_to(s.width);
  j.at("height").get_to(s.height);
  j.at("ego").get_to(s.ego);
  j.at("focus").get_to(s.focus);
  j.at("blockWidth").get_to(s.block_width);
  j.at("timeLabels").get_to(s.time_labels);
  j.at("columnX").get_to(s.column_x);
  j.at("blocks").get_to(s.blocks);
  j.at("connectors").get_to(s.connectors);
  j.at("lines").get_to(s.lines);
  j.at("points").get_to(s.points);
  j.at("triangles").get_to(s.triangles);
  j.at("labels").get_to(s.labels);
  j.at("affinity").get_to(s.affinity);
}

void to_json(json& j, const QualityReport& q) {
  j = json{{"crossings", q.crossings},
           {"egoCrossings", q.ego_crossings},
           {"wiggleSum", q.wiggle_sum},
           {"whitespace", q.whitespace}};
}
void from_json(const json& j, QualityReport& q) {
  j.at("crossings").get_to(q.crossings);
  j.at("egoCrossings").get_to(q.ego_crossings);
  j.at("wiggleSum").get_to(q.wiggle_sum);
  j.at("whitespace").get_to(q.whitespace);
}

void to_json(json& j, const LifespanEntry& e) {
  j = json{{"firstTime", e.first_time.label()},
           {"lastTime", e.last_time.label()},
           {"presenceCount", e.presence_count},
           {"egoCrossingCount", e.ego_crossing_count}};
}
void from_json(const json& j, LifespanEntry& e) {
  const auto first = parse_timestamp(j.at("firstTime").get<std::string>());
  const auto last = parse_timestamp(j.at("lastTime").get<std::string>());
  if (!first || !last) throw DataError("scene", "bad lifespan timestamp");
  e.first_time = *first;
  e.last_time = *last;
  j.at("presenceCount").get_to(e.presence_count);
  j.at("egoCrossingCount").get_to(e.ego_crossing_count);
}

std::string export_scene(const SceneDocument& document) {
  json j;
  j["schemaVersion"] = document.schema_version;
  j["scene"] = document.scene;
  j["lifespan"] = document.lifespan;
  j["quality"] = document.quality;
  j["annotations"] = document.annotations;
  return j.dump(1) + "\n";
}

SceneDocument parse_scene(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw DataError("scene", std::string("malformed scene document: ") + e.what());
  }
  SceneDocument doc;
  try {
    j.at("schemaVersion").get_to(doc.schema_version);
    if (doc.schema_version != kSceneSchemaVersion) {
      throw DataError("scene", "unsupported schemaVersion " + std::to_string(doc.schema_version));
    }
    j.at("scene").get_to(doc.scene);
    j.at("lifespan").get_to(doc.lifespan);
    j.at("quality").get_to(doc.quality);
    j.at("annotations").get_to(doc.annotations);
  } catch (const json::exception& e) {
    throw DataError("scene", std::string("malformed scene document: ") + e.what());
  }
  return doc;
}

}  // namespace spreadline
