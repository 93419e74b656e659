#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "spreadline/model.hpp"

namespace spreadline {

// A header plus string cells, the common shape of CSV and JSON record input.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index or -1.
  int column(const std::string& name) const;
};

// RFC 4180 style: comma separated, double-quoted fields with "" escapes.
Table read_csv(std::istream& in);
// A JSON array of flat objects. Non-string values are stringified.
Table read_json_records(std::istream& in);
// Picks the reader from the file extension (.json -> records, otherwise CSV).
Table read_table_file(const std::string& path);

// Parses `key = value` lines; `#` starts a comment.
DataSchema parse_schema(std::istream& in);
DataSchema read_schema_file(const std::string& path);
void write_schema(std::ostream& out, const DataSchema& schema);

std::vector<EventRecord> parse_events(const Table& table, const DataSchema& schema);

// Sorts by (time, source, target) and sums the weights of duplicates.
// Undirected records are stored with source < target.
std::vector<EventRecord> merge_events(std::vector<EventRecord> events);
EntityAttributeTable parse_attributes(const Table& table, const DataSchema& schema);

// Writes events with the columns named by `schema` (time, source, target, weight, kind).
void write_events_csv(std::ostream& out, const std::vector<EventRecord>& events,
                      const DataSchema& schema);

std::string csv_escape(const std::string& field);

struct Publication {
  int year = 0;
  std::vector<EntityId> authors;
  std::vector<std::string> affiliations;
  int citations = 0;
  std::vector<std::string> keywords;
};

struct CoauthorNetwork {
  std::vector<EventRecord> events;
  EntityAttributeTable attributes;
};

// First author links to every non-first author, weight 1 per paper. When `ego`
// is given, line identity records whether each co-author shared the ego's
// affiliation at their first joint paper ("internal"/"external"), and the
// time-varying "affiliation" attribute carries the same split per year.
// Status is the cumulative citation count gained with the ego (or overall).
CoauthorNetwork build_coauthor_events(const std::vector<Publication>& publications,
                                      const std::optional<EntityId>& ego = std::nullopt);

}  // namespace spreadline
