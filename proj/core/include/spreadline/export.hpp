#pragma once

#include <string>

#include "spreadline/egonet.hpp"
#include "spreadline/metrics.hpp"
#include "spreadline/scene.hpp"

namespace spreadline {

inline constexpr int kSceneSchemaVersion = 1;

// Standalone SVG 1.1. Element order: blocks, connectors, lines, points,
// triangles, labels. Identical scenes give identical bytes.
std::string export_svg(const RenderScene& scene);

struct SceneDocument {
  int schema_version = kSceneSchemaVersion;
  RenderScene scene;
  LifespanIndex lifespan;
  QualityReport quality;
  std::map<std::string, std::string> annotations;  // by timestamp label
  friend bool operator==(const SceneDocument&, const SceneDocument&) = default;
};

std::string export_scene(const SceneDocument& document);
// Throws DataError on malformed input or an unsupported schemaVersion.
SceneDocument parse_scene(const std::string& text);

}  // namespace spreadline
