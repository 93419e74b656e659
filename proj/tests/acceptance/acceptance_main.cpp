// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "spreadline/config.hpp"
#include "spreadline/export.hpp"
#include "spreadline/fixtures.hpp"
#include "spreadline/ingest.hpp"
#include "spreadline/scene.hpp"

#ifndef SPREADLINE_DATA_DIR
#define SPREADLINE_DATA_DIR "data"
#endif

namespace {

using namespace spreadline;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct TestCase {
  std::string name;
  std::string intent;
  std::function<Outcome()> run;
};

// Collects the first few failure messages.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (messages_.size() < 3) messages_.push_back(what);
  }
  Outcome outcome(std::string summary) const {
    if (failures_ == 0) return {true, std::move(summary)};
    std::string detail = std::to_string(failures_) + " violation(s): ";
    for (std::size_t i = 0; i < messages_.size(); ++i) detail += (i ? "; " : "") + messages_[i];
    return {false, detail};
  }

 private:
  int failures_ = 0;
  std::vector<std::string> messages_;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << v;
  return out.str();
}

std::set<EntityId> level(const EgoSnapshot& s, int l) {
  std::set<EntityId> out;
  for (const auto& a : s.alters) {
    if (a.level == l) out.insert(a.id);
  }
  return out;
}

// --- 1 ---------------------------------------------------------------------

Outcome six_farms_reproduction() {
  const auto start = Clock::now();
  Check check;
  const auto d = fixtures::six_farms();
  const auto r = generate_layout(d.events, d.attributes, d.config);
  check.expect(r.snapshots.size() == 2, "expected two rendered timestamps");
  if (r.snapshots.size() == 2) {
    const auto& t1 = r.snapshots[0];
    const auto& t2 = r.snapshots[1];
    check.expect(level(t1, 1) == std::set<EntityId>{"A", "B"}, "time 1 level-1 != {A,B}");
    check.expect(level(t1, 2) == std::set<EntityId>{"C", "D", "E"}, "time 1 level-2 != {C,D,E}");
    check.expect(t1.find("A") && t1.find("A")->compartment == Compartment::kTop, "A not in top");
    check.expect(t1.find("B") && t1.find("B")->compartment == Compartment::kBottom, "B not in bottom");
    check.expect(t1.find("C") && t1.find("C")->primary_anchor == "A" &&
                     t1.find("C")->compartment == t1.find("A")->compartment,
                 "C does not inherit A's compartment");
    const auto ranks = rank_alters(t2);
    check.expect(ranks.contains("D") && ranks.at("D").rank == 0, "D not at rank 0 at time 2");
    check.expect(ranks.contains("A") && ranks.at("A").rank == 1, "A not at rank 1 at time 2");
    // Rank is realised geometrically: D sits between A and the ego.
    const double ego_y = r.layout.ego_track().cells[1].y;
    const double a_y = r.layout.find("A")->cells[1].y;
    const double d_y = r.layout.find("D")->cells[1].y;
    check.expect(std::abs(d_y - ego_y) < std::abs(a_y - ego_y), "D not drawn closer to ego than A");
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 1.0, "runtime " + fmt(elapsed) + " s >= 1 s");
  return check.outcome("levels, compartments, inheritance and ranks match; " + fmt(elapsed) + " s");
}

// --- 2 ---------------------------------------------------------------------

fixtures::SyntheticParams corpus_params(std::uint64_t seed) {
  fixtures::SyntheticParams p;
  p.entities = 10 + static_cast<int>(seed * 7 % 51);
  p.timestamps = 4 + static_cast<int>(seed * 3 % 12);
  p.direct_share = 0.3 + 0.05 * static_cast<double>(seed % 6);
  return p;
}

Outcome ego_invariants() {
  const auto start = Clock::now();
  Check check;
  long long switches_total = 0;
  int layouts = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto d = fixtures::synthetic(seed, corpus_params(seed));
    for (const Focus focus : {Focus::kVerticalSpace, Focus::kStraightLine}) {
      auto cfg = d.config;
      cfg.focus = focus;
      const auto r = generate_layout(d.events, d.attributes, cfg);
      const auto scene = realize_geometry(r, d.attributes, cfg);
      ++layouts;
      const std::string tag = "seed " + std::to_string(seed) + " " + std::string(to_string(focus));
      const auto& ego = r.layout.ego_track();
      const double ego_y = ego.cells.front().y;
      for (const auto& cell : ego.cells) {
        check.expect(cell.present() && cell.y == ego_y, tag + ": ego y varies");
      }
      for (const auto& line : scene.lines) {
        if (!line.is_ego) continue;
        for (const auto& s : line.segments) {
          const bool flat = s.end.y == line.start.y &&
                             (s.kind == SegmentKind::kLine || (s.c1.y == line.start.y && s.c2.y == line.start.y));
          check.expect(flat, tag + ": ego path not flat");
        }
      }

      long long switches = 0;
      for (const auto& track : r.layout.tracks) {
        if (track.is_ego) continue;
        std::optional<Compartment> last_present;
        for (std::size_t c = 0; c + 1 < track.cells.size(); ++c) {
          const Cell& a = track.cells[c];
          const Cell& b = track.cells[c + 1];
          if (a.state == CellState::kOutside || b.state == CellState::kOutside) continue;
          const double lo = std::min(a.y, b.y);
          const double hi = std::max(a.y, b.y);
          if (a.compartment == b.compartment) {
            check.expect(!(lo <= ego_y && ego_y <= hi),
                         tag + ": " + track.id + " same-compartment segment touches ego y");
          } else {
            check.expect(lo < ego_y && ego_y < hi,
                         tag + ": " + track.id + " switch segment does not bracket ego y");
          }
        }
        for (const auto& cell : track.cells) {
          if (!cell.present()) continue;
          if (last_present && *last_present != cell.compartment) ++switches;
          last_present = cell.compartment;
        }
      }
      const long long counted = count_ego_crossings(r.layout, r.snapshots);
      check.expect(counted == switches, tag + ": countEgoCrossings " + std::to_string(counted) +
                                            " != switches " + std::to_string(switches));
      switches_total += switches;
    }
  }
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 30.0, "runtime " + fmt(elapsed) + " s >= 30 s");
  return check.outcome(std::to_string(layouts) + " layouts, " + std::to_string(switches_total) +
                       " compartment switches verified; " + fmt(elapsed) + " s");
}

// --- 3 ---------------------------------------------------------------------

long long quadratic_crossings(const Layout& layout) {
  long long n = 0;
  for (std::size_t c = 0; c + 1 < layout.times.size(); ++c) {
    for (std::size_t i = 0; i < layout.tracks.size(); ++i) {
      for (std::size_t j = i + 1; j < layout.tracks.size(); ++j) {
        const auto& a = layout.tracks[i].cells;
        const auto& b = layout.tracks[j].cells;
        if (!a[c].present() || !a[c + 1].present() || !b[c].present() || !b[c + 1].present()) continue;
        if ((a[c].slot < b[c].slot) != (a[c + 1].slot < b[c + 1].slot)) ++n;
      }
    }
  }
  return n;
}

std::vector<EventRecord> small_random_events(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = 2 + static_cast<int>(rng() % 7);  // plus the ego: at most 8 entities
  const int timestamps = 2 + static_cast<int>(rng() % 4);
  std::vector<EntityId> ids{"ego"};
  for (int i = 1; i < n; ++i) ids.push_back("v" + std::to_string(i));
  std::vector<EventRecord> events;
  for (int t = 1; t <= timestamps; ++t) {
    const Timestamp ts{t, TimeKind::kInteger};
    events.push_back({ts, ids[1 + rng() % (n - 1)], "ego", 1.0, "", true});
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (a != b && rng() % 100 < 22) {
          events.push_back({ts, ids[a], ids[b], static_cast<double>(1 + rng() % 2), "", true});
        }
      }
    }
  }
  return merge_events(std::move(events));
}

Outcome oracle_equivalence() {
  const auto start = Clock::now();
  Check check;
  long long total = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto events = small_random_events(seed);
    SpreadLineConfig cfg;
    cfg.ego = "ego";
    cfg.focus = seed % 2 ? Focus::kVerticalSpace : Focus::kStraightLine;
    const auto r = generate_layout(events, {}, cfg);
    const long long fast = count_crossings(r.layout);
    const long long slow = quadratic_crossings(r.layout);
    total += fast;
    check.expect(fast == slow, "seed " + std::to_string(seed) + ": countCrossings " +
                                   std::to_string(fast) + " != oracle " + std::to_string(slow));
    const auto initial = initialize_order(r.snapshots, {}, false);
    check.expect(count_order_crossings(r.order) <= count_order_crossings(initial),
                 "seed " + std::to_string(seed) + ": sweep increased crossings");
  }

  const auto d = fixtures::ordering_optimum();
  const auto r = generate_layout(d.events, d.attributes, d.config);
  const auto initial = initialize_order(r.snapshots, d.attributes, false);
  const long long initial_crossings = count_order_crossings(initial);
  const long long swept = count_order_crossings(r.order);
  const long long optimum = brute_force_min_crossings(initial);
  check.expect(swept == optimum, "optimal-known fixture: sweep " + std::to_string(swept) +
                                     " != brute force " + std::to_string(optimum));
  check.expect(count_crossings(r.layout) == swept, "layout crossings differ from ordering crossings");

  const double elapsed = seconds_since(start);
  check.expect(elapsed < 30.0, "runtime " + fmt(elapsed) + " s >= 30 s");
  return check.outcome("100 layouts agree with the quadratic oracle (" + std::to_string(total) +
                       " crossings); optimal-known fixture " + std::to_string(initial_crossings) +
                       " -> " + std::to_string(swept) + " = brute force " +
                       std::to_string(optimum) + "; " + fmt(elapsed) + " s");
}

// --- 4 ---------------------------------------------------------------------

Outcome focus_tradeoff() {
  const auto start = Clock::now();
  Check check;
  double wiggle[2] = {0, 0};
  double white[2] = {0, 0};
  const auto params = fixtures::focus_corpus_params();
  for (const auto seed : fixtures::focus_corpus_seeds()) {
    const auto d = fixtures::synthetic(seed, params);
    for (int i = 0; i < 2; ++i) {
      auto cfg = d.config;
      cfg.focus = i == 0 ? Focus::kVerticalSpace : Focus::kStraightLine;
      const auto r = generate_layout(d.events, d.attributes, cfg);
      const auto q = evaluate(r.layout, r.snapshots);
      wiggle[i] += q.wiggle_sum;
      white[i] += q.whitespace;
    }
  }
  check.expect(wiggle[1] <= wiggle[0], "sum wiggle straight-line " + fmt(wiggle[1], 1) +
                                            " > vertical-space " + fmt(wiggle[0], 1));
  check.expect(white[0] <= white[1], "sum whitespace vertical-space " + fmt(white[0], 1) +
                                         " > straight-line " + fmt(white[1], 1));
  const double elapsed = seconds_since(start);
  check.expect(elapsed < 60.0, "runtime " + fmt(elapsed) + " s >= 60 s");
  return check.outcome("wiggle SL " + fmt(wiggle[1], 0) + " <= VS " + fmt(wiggle[0], 0) +
                       ", whitespace VS " + fmt(white[0], 0) + " <= SL " + fmt(white[1], 0) +
                       " over " + std::to_string(fixtures::focus_corpus_seeds().size()) +
                       " instances; " + fmt(elapsed) + " s");
}

// --- 5 ---------------------------------------------------------------------

Point2 cubic_at(const Point2& p0, const PathSegment& s, double t) {
  const double u = 1 - t;
  return Point2{u * u * u * p0.x + 3 * u * u * t * s.c1.x + 3 * u * t * t * s.c2.x + t * t * t * s.end.x,
                u * u * u * p0.y + 3 * u * u * t * s.c1.y + 3 * u * t * t * s.c2.y + t * t * t * s.end.y};
}

// Liang-Barsky clip against the open rectangle interior.
bool crosses_interior(Point2 a, Point2 b, const SceneBlock& r) {
  const double x0 = r.x, x1 = r.x + r.width, y0 = r.y, y1 = r.y + r.height;
  const double dx = b.x - a.x, dy = b.y - a.y;
  double t0 = 0, t1 = 1;
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x - x0, x1 - a.x, a.y - y0, y1 - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0) {
      if (q[i] <= 0) return false;
      continue;
    }
    const double t = q[i] / p[i];
    if (p[i] < 0) t0 = std::max(t0, t);
    else t1 = std::min(t1, t);
    if (t0 >= t1) return false;
  }
  // Reject grazing contact: the clipped middle must lie strictly inside.
  const Point2 m{a.x + dx * (t0 + t1) / 2, a.y + dy * (t0 + t1) / 2};
  return m.x > x0 && m.x < x1 && m.y > y0 && m.y < y1;
}

// Polyline of the path portion from the previous column's run to the next.
std::vector<Point2> idle_polyline(const SceneLine& line, const RenderScene& scene, int column) {
  const double lo = scene.column_x[column - 1] + scene.block_width / 2 - 1e-9;
  const double hi = scene.column_x[column + 1] - scene.block_width / 2 + 1e-9;
  std::vector<Point2> pts;
  Point2 cur = line.start;
  for (const auto& s : line.segments) {
    if (s.kind == SegmentKind::kLine) {
      if (cur.x >= lo && s.end.x <= hi) {
        pts.push_back(cur);
        pts.push_back(s.end);
      }
    } else if (cur.x >= lo && s.end.x <= hi) {
      for (int k = 0; k <= 32; ++k) pts.push_back(cubic_at(cur, s, k / 32.0));
    }
    cur = s.end;
  }
  return pts;
}

Outcome idle_semantics() {
  const auto start = Clock::now();
  Check check;
  int traverse = 0;
  int circumvent = 0;
  const auto params = fixtures::focus_corpus_params();
  for (const auto seed : fixtures::focus_corpus_seeds()) {
    const auto d = fixtures::synthetic(seed, params);
    for (const Focus focus : {Focus::kVerticalSpace, Focus::kStraightLine}) {
      auto cfg = d.config;
      cfg.focus = focus;
      const auto r = generate_layout(d.events, d.attributes, cfg);
      const auto scene = realize_geometry(r, d.attributes, cfg);
      const std::string tag = "seed " + std::to_string(seed);
      std::set<std::pair<EntityId, int>> points;
      for (const auto& p : scene.points) points.emplace(p.id, p.time_index);
      for (const auto& line : scene.lines) {
        for (const auto& idle : line.idle) {
          if (focus == Focus::kStraightLine) {
            ++traverse;
            check.expect(idle.routing == IdleRouting::kTraverse, tag + ": SL idle not traversing");
            check.expect(!points.contains({line.id, idle.time_index}),
                         tag + ": point marker on traverse segment of " + line.id);
            continue;
          }
          ++circumvent;
          const auto poly = idle_polyline(line, scene, idle.time_index);
          check.expect(poly.size() >= 2, tag + ": no idle geometry for " + line.id);
          for (std::size_t k = 1; k < poly.size(); ++k) {
            for (const auto& block : scene.blocks) {
              check.expect(!crosses_interior(poly[k - 1], poly[k], block),
                           tag + ": idle " + line.id + " at column " +
                               std::to_string(idle.time_index) + " enters a block");
            }
          }
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  return check.outcome(std::to_string(traverse) + " traverse cells without markers, " +
                       std::to_string(circumvent) + " circumventing cells clear of blocks; " +
                       fmt(elapsed) + " s");
}

// --- 6 ---------------------------------------------------------------------

std::pair<std::string, std::string> full_run(const fixtures::Dataset& d, Focus focus) {
  auto cfg = d.config;
  cfg.focus = focus;
  const auto r = generate_layout(d.events, d.attributes, cfg);
  const auto scene = realize_geometry(r, d.attributes, cfg);
  SceneDocument doc;
  doc.scene = scene;
  doc.lifespan = r.lifespan;
  doc.quality = evaluate(r.layout, r.snapshots);
  doc.annotations = validate_config(cfg, d.events).annotations;
  return {export_svg(scene), export_scene(doc)};
}

Outcome determinism() {
  Check check;
  std::size_t bytes = 0;
  std::vector<fixtures::Dataset> sets = {fixtures::six_farms(), fixtures::farm(), fixtures::coauthor()};
  for (std::uint64_t seed : {1u, 17u, 99u}) sets.push_back(fixtures::synthetic(seed));
  for (const auto& d : sets) {
    for (const Focus focus : {Focus::kVerticalSpace, Focus::kStraightLine}) {
      const auto a = full_run(d, focus);
      const auto b = full_run(d, focus);
      check.expect(a.first == b.first, d.name + ": SVG bytes differ");
      check.expect(a.second == b.second, d.name + ": scene bytes differ");
      check.expect(export_scene(parse_scene(a.second)) == a.second, d.name + ": scene round trip differs");
      bytes += a.first.size() + a.second.size();
    }
  }
  return check.outcome(std::to_string(sets.size() * 2) + " run pairs byte-identical (" +
                       std::to_string(bytes) + " bytes each side)");
}

// --- 7 ---------------------------------------------------------------------

Outcome performance() {
  Check check;
  fixtures::SyntheticParams p;
  p.entities = 200;
  p.timestamps = 30;
  const auto d = fixtures::synthetic(2024, p);
  const auto start = Clock::now();
  const auto r = generate_layout(d.events, d.attributes, d.config);
  const double layout_s = seconds_since(start);
  const auto scene = realize_geometry(r, d.attributes, d.config);
  const auto svg = export_svg(scene);
  const double total_s = seconds_since(start);
  check.expect(layout_s <= 2.0, "layout took " + fmt(layout_s) + " s > 2 s");
  return check.outcome("200 entities x 30 timestamps (" + std::to_string(d.events.size()) +
                       " events): layout " + fmt(layout_s) + " s, with render " + fmt(total_s) + " s");
}

// --- 8 ---------------------------------------------------------------------

Outcome coauthorship() {
  Check check;
  const auto pubs = fixtures::toy_publications();
  std::size_t expected = 0;
  for (const auto& p : pubs) expected += p.authors.size() - 1;
  const auto net = build_coauthor_events(pubs, EntityId{"Ada"});
  check.expect(pubs.size() == 5, "toy corpus is not 5 papers");
  check.expect(net.events.size() == expected, "edges " + std::to_string(net.events.size()) +
                                                  " != sum(a_i - 1) = " + std::to_string(expected));
  for (const auto& e : net.events) {
    const bool from_first = std::any_of(pubs.begin(), pubs.end(), [&](const Publication& p) {
      return p.year == e.time.ordinal && p.authors.front() == e.source &&
             std::find(p.authors.begin() + 1, p.authors.end(), e.target) != p.authors.end();
    });
    check.expect(from_first, "edge " + e.source + "->" + e.target + " not out of a first author");
  }

  std::string extra = "relations fixture absent, not run";
  const std::filesystem::path dir = std::filesystem::path(SPREADLINE_DATA_DIR) / "metoo";
  if (std::filesystem::exists(dir / "events.csv")) {
    const auto schema = std::filesystem::exists(dir / "schema.txt")
                            ? read_schema_file((dir / "schema.txt").string())
                            : DataSchema{"time", "source", "target", "weight", "kind"};
    const auto events = merge_events(parse_events(read_table_file((dir / "events.csv").string()), schema));
    std::set<EntityId> ids;
    for (const auto& e : events) {
      ids.insert(e.source);
      ids.insert(e.target);
    }
    check.expect(ids.size() == 49, "relations fixture has " + std::to_string(ids.size()) + " entities");
    check.expect(events.size() == 178, "relations fixture has " + std::to_string(events.size()) + " relations");
    extra = "relations fixture " + std::to_string(ids.size()) + " entities / " +
            std::to_string(events.size()) + " relations";
  }
  return check.outcome(std::to_string(net.events.size()) + " edges = sum(a_i - 1), all from first authors; " +
                       extra);
}

}  // namespace

int main() {
  const std::vector<TestCase> cases = {
      {"six-farms-reproduction", "six-farm fixture levels, compartments and ranks", six_farms_reproduction},
      {"ego-invariants", "ego line straight, switches bracket the ego", ego_invariants},
      {"oracle-equivalence", "crossing counts agree with oracles", oracle_equivalence},
      {"focus-tradeoff", "straight-line trades whitespace for wiggle", focus_tradeoff},
      {"idle-line-semantics", "idle lines traverse or circumvent blocks", idle_semantics},
      {"determinism", "identical inputs give identical bytes", determinism},
      {"performance", "200 x 30 layout within 2 s", performance},
      {"coauthorship", "co-authorship edge construction", coauthorship},
  };
  int failed = 0;
  for (const auto& tc : cases) {
    Outcome o;
    try {
      o = tc.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << tc.name << "  (" << tc.intent << ")  "
              << o.detail << '\n';
  }
  std::cout << (cases.size() - failed) << "/" << cases.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
