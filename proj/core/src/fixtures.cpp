#include "spreadline/fixtures.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "spreadline/config.hpp"

namespace spreadline::fixtures {

namespace {

Timestamp at(std::int64_t t) { return Timestamp{t, TimeKind::kInteger}; }

Timestamp date(const std::string& s) { return *parse_timestamp(s); }

EventRecord edge(Timestamp t, EntityId from, EntityId to, double w) {
  return EventRecord{t, std::move(from), std::move(to), w, "", true};
}

DataSchema standard_schema() {
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

void finish(Dataset& d) {
  d.events = merge_events(std::move(d.events));
  d.attributes = parse_attributes(d.attribute_table, d.schema);
}

}  // namespace

Dataset six_farms() {
  Dataset d;
  d.name = "six-farms";
  d.schema = standard_schema();
  d.events = {
      edge(at(1), "A", "Ego", 2), edge(at(1), "Ego", "B", 2), edge(at(1), "A", "C", 1),
      edge(at(1), "B", "D", 1),   edge(at(1), "B", "E", 1),

      edge(at(2), "D", "Ego", 3), edge(at(2), "A", "Ego", 1), edge(at(2), "Ego", "B", 1),
      edge(at(2), "D", "E", 1),   edge(at(2), "A", "C", 1),
  };
  d.attribute_table.header = {"entity", "time", "lineIdentity", "status"};
  d.attribute_table.rows = {
      {"Ego", "", "breeding", "healthy"}, {"A", "", "breeding", "healthy"},
      {"B", "", "fattening", "healthy"},  {"C", "", "trading", "healthy"},
      {"D", "", "fattening", "healthy"},  {"D", "2", "fattening", "infected"},
      {"E", "", "trading", "healthy"},
  };
  d.config.ego = "Ego";
  finish(d);
  return d;
}

Dataset farm() {
  Dataset d;
  d.name = "farm";
  d.schema = standard_schema();
  d.schema.line_identity = "role";
  d.schema.status = "health";
  d.schema.context_x = "lon";
  d.schema.context_y = "lat";
  d.schema.name = "name";

  struct Farm {
    const char* id;
    const char* name;
    const char* role;
    double lon;
    double lat;
  };
  const std::vector<Farm> farms = {
      {"SI", "Sinclair Farm", "breeding", 9.93, 53.55},
      {"AB", "Abbot Holdings", "breeding", 10.21, 53.61},
      {"BR", "Brookside", "fattening", 9.71, 53.42},
      {"CL", "Clearwater", "fattening", 10.05, 53.31},
      {"DM", "Dunmore", "trading", 9.52, 53.70},
      {"EV", "Evergreen", "fattening", 10.44, 53.48},
      {"FH", "Fairhaven", "breeding", 9.88, 53.83},
      {"GL", "Glenfield", "trading", 10.30, 53.20},
      {"HW", "Hollow Way", "fattening", 9.60, 53.25},
      {"IR", "Ironbridge", "breeding", 10.62, 53.66},
  };
  const std::vector<std::string> dates = {"2023-03-06", "2023-03-08", "2023-03-10",
                                          "2023-03-13", "2023-03-15", "2023-03-17"};
  struct Shipment {
    int day;
    const char* from;
    const char* to;
    double head;
  };
  const std::vector<Shipment> shipments = {
      {0, "AB", "SI", 4}, {0, "SI", "BR", 3}, {0, "SI", "CL", 1}, {0, "FH", "AB", 2},
      {0, "BR", "HW", 1},

      {1, "AB", "SI", 2}, {1, "DM", "SI", 2}, {1, "SI", "BR", 2}, {1, "CL", "GL", 1},
      {1, "SI", "CL", 2},

      {2, "DM", "SI", 3}, {2, "SI", "EV", 2}, {2, "SI", "BR", 1}, {2, "IR", "DM", 1},
      {2, "EV", "GL", 2},

      {3, "FH", "SI", 4}, {3, "DM", "SI", 1}, {3, "SI", "EV", 3}, {3, "SI", "HW", 1},
      {3, "AB", "FH", 1}, {3, "HW", "BR", 2},

      {4, "FH", "SI", 2}, {4, "SI", "EV", 2}, {4, "SI", "GL", 1}, {4, "IR", "FH", 1},
      {4, "EV", "CL", 1},

      {5, "AB", "SI", 1}, {5, "IR", "SI", 2}, {5, "SI", "GL", 2}, {5, "SI", "BR", 1},
      {5, "GL", "DM", 1},
  };
  for (const auto& s : shipments) {
    d.events.push_back(EventRecord{date(dates[s.day]), s.from, s.to, s.head, "shipment", true});
  }

  d.attribute_table.header = {"entity", "time", "name", "role", "health", "lon", "lat"};
  auto coord = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  for (const auto& f : farms) {
    d.attribute_table.rows.push_back(
        {f.id, "", f.name, f.role, "healthy", coord(f.lon), coord(f.lat)});
  }
  // Disease spreading from Evergreen after the outbreak.
  const std::vector<std::pair<int, const char*>> infected = {
      {3, "EV"}, {4, "EV"}, {4, "CL"}, {5, "EV"}, {5, "CL"}, {5, "GL"}, {5, "SI"}};
  for (const auto& [day, id] : infected) {
    d.attribute_table.rows.push_back({id, dates[day], "", "", "infected", "", ""});
  }
  d.attribute_table.rows.push_back({"IR", dates[4], "", "", "unknown", "", ""});

  d.config.ego = "SI";
  d.config.annotations["2023-03-13"] = "outbreak";
  finish(d);
  return d;
}

Dataset ordering_optimum() {
  Dataset d;
  d.name = "ordering";
  d.schema = standard_schema();
  d.events = {
      edge(at(1), "y", "ego", 2), edge(at(1), "x", "ego", 1), edge(at(1), "ego", "p", 1),
      edge(at(1), "ego", "q", 1),

      edge(at(2), "x", "ego", 1), edge(at(2), "y", "ego", 1), edge(at(2), "ego", "q", 2),
      edge(at(2), "ego", "p", 1),

      edge(at(3), "x", "ego", 1), edge(at(3), "y", "ego", 1), edge(at(3), "ego", "p", 1),
      edge(at(3), "ego", "q", 1),
  };
  d.attribute_table.header = {"entity", "time", "lineIdentity", "status"};
  d.config.ego = "ego";
  finish(d);
  return d;
}

Dataset synthetic(std::uint64_t seed, const SyntheticParams& params) {
  Dataset d;
  d.name = "synthetic";
  d.schema = standard_schema();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> weight(1, std::max(1, params.max_weight));

  std::vector<EntityId> ids;
  for (int i = 0; i < params.entities; ++i) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "n%03d", i);
    ids.emplace_back(buf);
  }
  d.attribute_table.header = {"entity", "time", "lineIdentity", "status"};
  d.attribute_table.rows.push_back({"ego", "", "ego", "0"});
  const int identities = std::max(1, params.identities);
  for (int i = 0; i < params.entities; ++i) {
    d.attribute_table.rows.push_back(
        {ids[i], "", "g" + std::to_string(static_cast<int>(rng() % identities)), "0"});
  }

  std::vector<bool> active(params.entities, false);
  for (int t = 1; t <= params.timestamps; ++t) {
    for (int i = 0; i < params.entities; ++i) {
      active[i] = unit(rng) < (active[i] ? params.stay_probability : params.join_probability);
    }
    std::vector<int> direct;
    std::vector<int> indirect;
    for (int i = 0; i < params.entities; ++i) {
      if (!active[i]) continue;
      (unit(rng) < params.direct_share ? direct : indirect).push_back(i);
    }
    if (direct.empty() && !indirect.empty()) {
      direct.push_back(indirect.back());
      indirect.pop_back();
    }
    if (direct.empty() && params.entities > 0) {
      const int i = static_cast<int>(rng() % params.entities);
      active[i] = true;
      direct.push_back(i);
    }
    for (int i : direct) {
      const bool inbound = unit(rng) < 0.5;
      d.events.push_back(inbound ? edge(at(t), ids[i], "ego", weight(rng))
                                 : edge(at(t), "ego", ids[i], weight(rng)));
    }
    for (int i : indirect) {
      const int anchor = direct[rng() % direct.size()];
      d.events.push_back(edge(at(t), ids[anchor], ids[i], weight(rng)));
    }
    for (int i : direct) {
      if (unit(rng) < 0.3) {
        d.attribute_table.rows.push_back(
            {ids[i], std::to_string(t), "", std::to_string(static_cast<int>(rng() % 10))});
      }
    }
  }
  d.config.ego = "ego";
  d.config.seed = seed;
  finish(d);
  return d;
}

std::vector<std::uint64_t> focus_corpus_seeds() {
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 50; ++s) seeds.push_back(7001 + s);
  return seeds;
}

SyntheticParams focus_corpus_params() {
  SyntheticParams p;
  p.entities = 30;
  p.timestamps = 8;
  return p;
}

std::vector<Publication> toy_publications() {
  return {
      {2018, {"Ada", "Bob", "Cy"}, {"Northfield", "Northfield", "Eastlake"}, 12, {"graphs"}},
      {2019, {"Bob", "Ada"}, {"Northfield", "Northfield"}, 5, {"layout"}},
      {2019, {"Dee"}, {"Westbrook"}, 3, {"survey"}},
      {2020,
       {"Ada", "Cy", "Dee", "Eve"},
       {"Northfield", "Eastlake", "Westbrook", "Northfield"},
       20,
       {"graphs", "storylines"}},
      {2021, {"Eve", "Ada", "Bob"}, {"Northfield", "Northfield", "Southport"}, 7, {"storylines"}},
  };
}

Dataset coauthor() {
  Dataset d;
  d.name = "coauthor";
  d.schema = standard_schema();
  d.schema.time = "year";
  auto net = build_coauthor_events(toy_publications(), EntityId{"Ada"});
  d.events = merge_events(std::move(net.events));
  d.attribute_table.header = {"entity", "year", "lineIdentity", "status", "affiliation"};
  const auto axis = TimeAxis::from_events(d.events);
  for (const auto& id : net.attributes.entities()) {
    d.attribute_table.rows.push_back({id, "", net.attributes.line_identity(id), "", ""});
    for (const auto& t : axis.times) {
      d.attribute_table.rows.push_back({id, t.label(), "", net.attributes.status_at(id, t),
                                        net.attributes.categorical_at("affiliation", id, t)});
    }
  }
  d.attributes = std::move(net.attributes);
  d.config.ego = "Ada";
  return d;
}

void write_dataset(const Dataset& dataset, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  const fs::path base(dir);
  auto open = [&](const char* name) {
    std::ofstream out(base / name, std::ios::binary);
    if (!out) throw DataError("fixtures", "cannot write " + (base / name).string());
    return out;
  };
  {
    auto out = open("events.csv");
    write_events_csv(out, dataset.events, dataset.schema);
  }
  {
    auto out = open("attributes.csv");
    const auto& table = dataset.attribute_table;
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      out << (c ? "," : "") << csv_escape(table.header[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << csv_escape(row[c]);
      out << '\n';
    }
  }
  {
    auto out = open("schema.txt");
    write_schema(out, dataset.schema);
  }
  {
    auto out = open("config.json");
    write_config(out, dataset.config);
  }
}

}  // namespace spreadline::fixtures
