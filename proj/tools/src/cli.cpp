#include "spreadline/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "spreadline/config.hpp"
#include "spreadline/export.hpp"
#include "spreadline/fixtures.hpp"
#include "spreadline/ingest.hpp"

namespace spreadline::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputOptions {
  std::string events;
  std::string attributes;
  std::string schema;
  std::string config;
  std::string fixture;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string ego;
  std::string focus;
  bool stack = false;
  std::vector<std::string> stretch;
  std::vector<std::string> annotate;
};

struct Loaded {
  std::vector<EventRecord> events;
  EntityAttributeTable attributes;
  SpreadLineConfig config;
};

DataSchema default_schema() {
  DataSchema s;
  s.time = "time";
  s.source = "source";
  s.target = "target";
  s.weight = "weight";
  s.kind = "kind";
  s.entity = "entity";
  s.line_identity = "lineIdentity";
  s.status = "status";
  return s;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* flag) {
  const auto eq = text.rfind('=');
  if (eq == std::string::npos || eq == 0) {
    throw UsageError(std::string(flag) + " expects LABEL=VALUE, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

fixtures::Dataset named_fixture(const std::string& name, std::uint64_t seed) {
  if (name == "six-farms") return fixtures::six_farms();
  if (name == "farm") return fixtures::farm();
  if (name == "coauthor") return fixtures::coauthor();
  if (name == "ordering") return fixtures::ordering_optimum();
  if (name == "synthetic") return fixtures::synthetic(seed);
  throw UsageError("unknown fixture '" + name + "' (six-farms, farm, synthetic, coauthor, ordering)");
}

Loaded load(const InputOptions& opt) {
  Loaded in;
  if (!opt.fixture.empty()) {
    auto d = named_fixture(opt.fixture, opt.seed_set ? opt.seed : 1);
    in.events = std::move(d.events);
    in.attributes = std::move(d.attributes);
    in.config = std::move(d.config);
  } else {
    if (opt.events.empty()) throw UsageError("--events (or --fixture) is required");
    if (!opt.config.empty()) in.config = read_config_file(opt.config);
    if (!opt.ego.empty()) in.config.ego = opt.ego;
    if (in.config.ego.empty()) throw UsageError("no ego given: pass --ego or set \"ego\" in --config");
    const Table events = read_table_file(opt.events);
    DataSchema schema;
    if (!opt.schema.empty()) {
      schema = read_schema_file(opt.schema);
    } else {
      // Default column names; optional roles only when the column exists.
      schema = default_schema();
      if (events.column(schema.weight) < 0) schema.weight.clear();
      if (events.column(schema.kind) < 0) schema.kind.clear();
    }
    in.events = merge_events(parse_events(events, schema));
    if (!opt.attributes.empty()) {
      const Table attrs = read_table_file(opt.attributes);
      for (auto* role : {&schema.line_identity, &schema.status}) {
        if (opt.schema.empty() && attrs.column(*role) < 0) role->clear();
      }
      in.attributes = parse_attributes(attrs, schema);
    }
  }
  if (!opt.ego.empty()) in.config.ego = opt.ego;
  if (in.config.ego.empty()) throw UsageError("no ego given: pass --ego or set \"ego\" in --config");
  if (!opt.focus.empty()) {
    const auto f = parse_focus(opt.focus);
    if (!f) throw UsageError("--focus must be vertical-space or straight-line");
    in.config.focus = *f;
  }
  if (opt.stack) in.config.stack_by_line_identity = true;
  if (opt.seed_set) in.config.seed = opt.seed;
  for (const auto& s : opt.stretch) {
    auto [label, value] = split_assignment(s, "--stretch");
    double factor = 0.0;
    try {
      std::size_t used = 0;
      factor = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw UsageError("--stretch factor '" + value + "' is not a number");
    }
    in.config.time_stretch[label] = factor;
  }
  for (const auto& a : opt.annotate) {
    auto [label, text] = split_assignment(a, "--annotate");
    in.config.annotations[label] = text;
  }
  return in;
}

void add_input_options(CLI::App* cmd, InputOptions& opt) {
  cmd->add_option("--events", opt.events, "Events table (.csv or .json records)");
  cmd->add_option("--attributes", opt.attributes, "Entity attribute table");
  cmd->add_option("--schema", opt.schema, "Column-role schema file");
  cmd->add_option("--config", opt.config, "JSON configuration");
  cmd->add_option("--fixture", opt.fixture, "Use a built-in dataset: six-farms, farm, synthetic, coauthor, ordering");
  cmd->add_option("--seed", opt.seed, "Seed for the synthetic fixture and node-link views")
      ->each([&opt](const std::string&) { opt.seed_set = true; });
  cmd->add_option("--ego", opt.ego, "Ego entity id (overrides the config)");
  cmd->add_option("--focus", opt.focus, "vertical-space or straight-line");
  cmd->add_flag("--stack", opt.stack, "Stack lines by line identity");
  cmd->add_option("--stretch", opt.stretch, "Column stretch LABEL=FACTOR (repeatable)");
  cmd->add_option("--annotate", opt.annotate, "Annotation LABEL=TEXT (repeatable)");
}

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

void print_report(std::ostream& out, const QualityReport& q) {
  out << "crossings     " << q.crossings << '\n'
      << "egoCrossings  " << q.ego_crossings << '\n'
      << "wiggleSum     " << fixed(q.wiggle_sum) << '\n'
      << "whitespace    " << fixed(q.whitespace) << '\n';
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw DataError("export", "cannot write " + path);
}

int cmd_layout(const InputOptions& opt, const std::string& out_svg, const std::string& out_scene,
               std::ostream& out) {
  const Loaded in = load(opt);
  const LayoutResult result = generate_layout(in.events, in.attributes, in.config);
  const RenderScene scene = realize_geometry(result, in.attributes, in.config);
  const std::string svg = export_svg(scene);
  if (!out_scene.empty()) {
    SceneDocument doc;
    doc.scene = scene;
    doc.lifespan = result.lifespan;
    doc.quality = evaluate(result.layout, result.snapshots);
    doc.annotations = validate_config(in.config, in.events).annotations;
    write_file(out_scene, export_scene(doc));
  }
  if (!out_svg.empty()) {
    write_file(out_svg, svg);
  } else if (out_scene.empty()) {
    out << svg;
  }
  return 0;
}

int cmd_metrics(const InputOptions& opt, std::ostream& out) {
  const Loaded in = load(opt);
  const LayoutResult result = generate_layout(in.events, in.attributes, in.config);
  out << "focus         " << to_string(in.config.focus) << '\n';
  print_report(out, evaluate(result.layout, result.snapshots));
  return 0;
}

int cmd_compare(const InputOptions& opt, std::ostream& out) {
  Loaded in = load(opt);
  QualityReport reports[2];
  const Focus focuses[2] = {Focus::kVerticalSpace, Focus::kStraightLine};
  for (int i = 0; i < 2; ++i) {
    in.config.focus = focuses[i];
    const auto result = generate_layout(in.events, in.attributes, in.config);
    reports[i] = evaluate(result.layout, result.snapshots);
  }
  auto row = [&](const char* name, const std::string& a, const std::string& b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-14s%16s%16s\n", name, a.c_str(), b.c_str());
    out << buf;
  };
  row("metric", "vertical-space", "straight-line");
  row("crossings", std::to_string(reports[0].crossings), std::to_string(reports[1].crossings));
  row("egoCrossings", std::to_string(reports[0].ego_crossings),
      std::to_string(reports[1].ego_crossings));
  row("wiggleSum", fixed(reports[0].wiggle_sum), fixed(reports[1].wiggle_sum));
  row("whitespace", fixed(reports[0].whitespace), fixed(reports[1].whitespace));
  return 0;
}

int cmd_fixtures(const std::string& name, std::uint64_t seed, const std::string& out_dir,
                 std::ostream& out) {
  const auto d = named_fixture(name, seed);
  fixtures::write_dataset(d, out_dir);
  out << "wrote " << d.name << " (" << d.events.size() << " events) to " << out_dir << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Egocentric storyline layouts for dynamic networks"};
  app.name("spreadline");
  app.require_subcommand(1);

  InputOptions opt;
  std::string out_svg;
  std::string out_scene;
  auto* layout = app.add_subcommand("layout", "Compute a layout and write SVG and scene JSON");
  add_input_options(layout, opt);
  layout->add_option("--out-svg", out_svg, "SVG output path");
  layout->add_option("--out-scene", out_scene, "Scene JSON output path");

  auto* metrics = app.add_subcommand("metrics", "Print layout quality metrics");
  add_input_options(metrics, opt);

  auto* compare = app.add_subcommand("compare-focus", "Compare both focus modes side by side");
  add_input_options(compare, opt);

  std::string fixture_name = "six-farms";
  std::uint64_t fixture_seed = 1;
  std::string out_dir = ".";
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write a built-in dataset to disk");
  fixtures_cmd->add_option("--name", fixture_name, "six-farms, farm, synthetic, coauthor or ordering");
  fixtures_cmd->add_option("--seed", fixture_seed, "Seed for the synthetic generator");
  fixtures_cmd->add_option("--out-dir", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (layout->parsed()) return cmd_layout(opt, out_svg, out_scene, out);
    if (metrics->parsed()) return cmd_metrics(opt, out);
    if (compare->parsed()) return cmd_compare(opt, out);
    if (fixtures_cmd->parsed()) return cmd_fixtures(fixture_name, fixture_seed, out_dir, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace spreadline::cli
