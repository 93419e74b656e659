#include "spreadline/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

namespace spreadline {

int Table::column(const std::string& name) const {
  if (name.empty()) return -1;
  const auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

// --- CSV --------------------------------------------------------------------

namespace {

// Splits one logical record; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char c = 0;
  while (in.get(c)) {
    any = true;
    if (in_quotes) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      fields.push_back(std::move(field));
      return true;
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  if (!any) return false;
  fields.push_back(std::move(field));
  return true;
}

std::string trimmed(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

Table read_csv(std::istream& in) {
  Table table;
  std::vector<std::string> fields;
  if (!read_record(in, fields)) return table;
  for (auto& f : fields) table.header.push_back(trimmed(f));
  while (read_record(in, fields)) {
    if (fields.size() == 1 && trimmed(fields[0]).empty()) continue;
    fields.resize(table.header.size());
    for (auto& f : fields) f = trimmed(f);
    table.rows.push_back(fields);
  }
  return table;
}

Table read_json_records(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed records file: ") + e.what());
  }
  if (!doc.is_array()) throw SchemaError("records file must hold a JSON array");
  Table table;
  std::set<std::string> seen;
  for (const auto& rec : doc) {
    if (!rec.is_object()) throw SchemaError("every record must be a JSON object");
    for (const auto& [key, _] : rec.items()) {
      if (seen.insert(key).second) table.header.push_back(key);
    }
  }
  for (const auto& rec : doc) {
    std::vector<std::string> row(table.header.size());
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      const auto it = rec.find(table.header[i]);
      if (it == rec.end() || it->is_null()) continue;
      if (it->is_string()) {
        row[i] = it->get<std::string>();
      } else if (it->is_number_float()) {
        row[i] = format_double(it->get<double>());
      } else {
        row[i] = it->dump();
      }
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table read_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SchemaError("cannot open " + path);
  const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  return json ? read_json_records(in) : read_csv(in);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

// --- Schema -----------------------------------------------------------------

namespace {

std::map<std::string, std::string DataSchema::*> schema_roles() {
  return {
      {"time", &DataSchema::time},
      {"source", &DataSchema::source},
      {"target", &DataSchema::target},
      {"weight", &DataSchema::weight},
      {"kind", &DataSchema::kind},
      {"entity", &DataSchema::entity},
      {"lineIdentity", &DataSchema::line_identity},
      {"status", &DataSchema::status},
      {"contextX", &DataSchema::context_x},
      {"contextY", &DataSchema::context_y},
      {"name", &DataSchema::name},
  };
}

}  // namespace

DataSchema parse_schema(std::istream& in) {
  DataSchema schema;
  const auto roles = schema_roles();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trimmed(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trimmed(line.substr(0, eq));
    const std::string value = trimmed(line.substr(eq + 1));
    if (key == "directed") {
      if (value != "true" && value != "false") {
        throw SchemaError("directed must be true or false");
      }
      schema.directed = value == "true";
      continue;
    }
    const auto it = roles.find(key);
    if (it == roles.end()) throw SchemaError("unknown role '" + key + "'");
    schema.*(it->second) = value;
  }
  if (schema.time.empty() || schema.source.empty() || schema.target.empty()) {
    throw SchemaError("time, source and target roles are mandatory");
  }
  return schema;
}

DataSchema read_schema_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  return parse_schema(in);
}

void write_schema(std::ostream& out, const DataSchema& schema) {
  for (const auto& [role, member] : schema_roles()) {
    if (!(schema.*member).empty()) out << role << " = " << schema.*member << '\n';
  }
  out << "directed = " << (schema.directed ? "true" : "false") << '\n';
}

// --- Events -----------------------------------------------------------------

namespace {

int require_column(const Table& table, const std::string& role, const std::string& name) {
  if (name.empty()) throw SchemaError("role '" + role + "' is not mapped");
  const int col = table.column(name);
  if (col < 0) throw SchemaError("column '" + name + "' for role '" + role + "' not found");
  return col;
}

int optional_column(const Table& table, const std::string& role, const std::string& name) {
  if (name.empty()) return -1;
  return require_column(table, role, name);
}

std::optional<double> parse_real(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

std::vector<EventRecord> merge_events(std::vector<EventRecord> events) {
  for (auto& e : events) {
    if (!e.directed && e.target < e.source) std::swap(e.source, e.target);
  }
  std::stable_sort(events.begin(), events.end(), [](const auto& a, const auto& b) {
    return std::tie(a.time, a.source, a.target) < std::tie(b.time, b.source, b.target);
  });
  std::vector<EventRecord> merged;
  for (auto& e : events) {
    if (!merged.empty() && merged.back().time == e.time && merged.back().source == e.source &&
        merged.back().target == e.target) {
      merged.back().weight += e.weight;
      if (merged.back().kind.empty()) merged.back().kind = e.kind;
      merged.back().directed = merged.back().directed && e.directed;
      continue;
    }
    merged.push_back(std::move(e));
  }
  return merged;
}

std::vector<EventRecord> parse_events(const Table& table, const DataSchema& schema) {
  const int time_col = require_column(table, "time", schema.time);
  const int source_col = require_column(table, "source", schema.source);
  const int target_col = require_column(table, "target", schema.target);
  const int weight_col = optional_column(table, "weight", schema.weight);
  const int kind_col = optional_column(table, "kind", schema.kind);

  std::vector<EventRecord> events;
  events.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    EventRecord e;
    const auto t = parse_timestamp(row[time_col]);
    if (!t) throw RowError(r, "unparseable timestamp '" + row[time_col] + "'");
    e.time = *t;
    e.source = row[source_col];
    e.target = row[target_col];
    if (e.source.empty() || e.target.empty()) throw RowError(r, "empty entity id");
    if (e.source == e.target) throw RowError(r, "source equals target '" + e.source + "'");
    if (weight_col >= 0 && !row[weight_col].empty()) {
      const auto w = parse_real(row[weight_col]);
      if (!w || !std::isfinite(*w)) throw RowError(r, "unparseable weight '" + row[weight_col] + "'");
      if (*w < 0.0) throw RowError(r, "negative weight " + row[weight_col]);
      e.weight = *w;
    }
    if (kind_col >= 0) e.kind = row[kind_col];
    e.directed = schema.directed;
    events.push_back(std::move(e));
  }
  return merge_events(std::move(events));
}

void write_events_csv(std::ostream& out, const std::vector<EventRecord>& events,
                      const DataSchema& schema) {
  const std::string weight = schema.weight.empty() ? "weight" : schema.weight;
  out << csv_escape(schema.time) << ',' << csv_escape(schema.source) << ','
      << csv_escape(schema.target) << ',' << csv_escape(weight);
  if (!schema.kind.empty()) out << ',' << csv_escape(schema.kind);
  out << '\n';
  for (const auto& e : events) {
    out << e.time.label() << ',' << csv_escape(e.source) << ',' << csv_escape(e.target) << ','
        << format_double(e.weight);
    if (!schema.kind.empty()) out << ',' << csv_escape(e.kind);
    out << '\n';
  }
}

// --- Attributes -------------------------------------------------------------

EntityAttributeTable parse_attributes(const Table& table, const DataSchema& schema) {
  const int entity_col = require_column(table, "entity", schema.entity);
  // A time column is optional here; without it every value is static.
  const int time_col = table.column(schema.time);
  const int identity_col = optional_column(table, "lineIdentity", schema.line_identity);
  const int status_col = optional_column(table, "status", schema.status);
  const int x_col = optional_column(table, "contextX", schema.context_x);
  const int y_col = optional_column(table, "contextY", schema.context_y);
  const int name_col = optional_column(table, "name", schema.name);
  if ((x_col < 0) != (y_col < 0)) throw SchemaError("contextX and contextY must be mapped together");

  std::vector<int> extra_cols;
  const std::set<int> mapped{entity_col, time_col, identity_col, status_col, x_col, y_col, name_col};
  for (int c = 0; c < static_cast<int>(table.header.size()); ++c) {
    if (!mapped.contains(c) && !table.header[c].empty()) extra_cols.push_back(c);
  }

  EntityAttributeTable attrs;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const EntityId& id = row[entity_col];
    if (id.empty()) throw RowError(r, "empty entity id");
    std::optional<Timestamp> at;
    if (time_col >= 0 && !row[time_col].empty()) {
      at = parse_timestamp(row[time_col]);
      if (!at) throw RowError(r, "unparseable timestamp '" + row[time_col] + "'");
    }
    if (identity_col >= 0 && !row[identity_col].empty()) {
      attrs.set_line_identity(id, at, row[identity_col]);
    }
    if (status_col >= 0 && !row[status_col].empty()) attrs.set_status(id, at, row[status_col]);
    if (name_col >= 0 && !row[name_col].empty()) attrs.set_display_name(id, row[name_col]);
    if (x_col >= 0 && (!row[x_col].empty() || !row[y_col].empty())) {
      const auto x = parse_real(row[x_col]);
      const auto y = parse_real(row[y_col]);
      if (!x || !y || !std::isfinite(*x) || !std::isfinite(*y)) {
        throw RowError(r, "non-finite context coordinate for '" + id + "'");
      }
      attrs.set_context(id, at, ContextPoint{*x, *y});
    }
    for (int c : extra_cols) {
      if (!row[c].empty()) attrs.set_categorical(table.header[c], id, at, row[c]);
    }
  }
  return attrs;
}

// --- Co-authorship ----------------------------------------------------------

CoauthorNetwork build_coauthor_events(const std::vector<Publication>& publications,
                                      const std::optional<EntityId>& ego) {
  CoauthorNetwork net;
  std::vector<const Publication*> ordered;
  for (std::size_t i = 0; i < publications.size(); ++i) {
    if (publications[i].authors.empty()) {
      throw DataError("ingest", "publication " + std::to_string(i) + " has no authors");
    }
    ordered.push_back(&publications[i]);
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto* a, const auto* b) { return a->year < b->year; });

  std::map<EntityId, std::map<int, long long>> citations;  // per author per year
  std::set<EntityId> identified;
  for (const auto* pub : ordered) {
    const Timestamp t{pub->year, TimeKind::kInteger};
    const auto& first = pub->authors.front();
    for (std::size_t k = 1; k < pub->authors.size(); ++k) {
      if (pub->authors[k] == first) {
        throw DataError("ingest", "author '" + first + "' listed twice on one paper");
      }
      net.events.push_back(EventRecord{t, first, pub->authors[k], 1.0, "coauthor", true});
    }

    auto affiliation = [&](std::size_t k) {
      return k < pub->affiliations.size() && !pub->affiliations[k].empty()
                 ? pub->affiliations[k]
                 : std::string(kUnknownCategory);
    };
    std::optional<std::string> ego_affiliation;
    if (ego) {
      for (std::size_t k = 0; k < pub->authors.size(); ++k) {
        if (pub->authors[k] == *ego) ego_affiliation = affiliation(k);
      }
    }
    for (std::size_t k = 0; k < pub->authors.size(); ++k) {
      const auto& author = pub->authors[k];
      if (ego && !ego_affiliation) {
        // Papers without the ego only contribute overall citations.
        continue;
      }
      std::string identity = affiliation(k);
      if (ego) {
        identity = author == *ego ? "ego"
                   : affiliation(k) == *ego_affiliation ? "internal"
                                                        : "external";
        net.attributes.set_categorical("affiliation", author, t, identity);
      }
      if (identified.insert(author).second) net.attributes.set_line_identity(author, t, identity);
      citations[author][pub->year] += pub->citations;
    }
  }
  for (const auto& [author, per_year] : citations) {
    long long running = 0;
    for (const auto& [year, count] : per_year) {
      running += count;
      net.attributes.set_status(author, Timestamp{year, TimeKind::kInteger},
                                std::to_string(running));
    }
  }
  return net;
}

}  // namespace spreadline
