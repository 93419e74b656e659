#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spreadline/ingest.hpp"
#include "spreadline/model.hpp"

namespace spreadline::fixtures {

// A self-contained dataset: events, attributes, the schema naming their
// columns, and a config.
struct Dataset {
  std::string name;
  std::vector<EventRecord> events;
  EntityAttributeTable attributes;
  DataSchema schema;
  SpreadLineConfig config;
  // Attribute rows as written to attributes.csv.
  Table attribute_table;
};

// Six farms over two timepoints. At time 1, A sends to the ego, the ego sends
// to B, and C, D, E hang off A and B. At time 2, D (weight 3) and A (weight 1)
// both send to the ego.
Dataset six_farms();

// Farm trade network around ego "SI" with production roles, health status,
// geographic coordinates and an "outbreak" annotation.
Dataset farm();

// Three timestamps whose equal-weight groups start in a crossing order; the
// best ordering has no crossings.
Dataset ordering_optimum();

struct SyntheticParams {
  int entities = 40;
  int timestamps = 10;
  // Probability an inactive entity becomes active / an active one stays active.
  double join_probability = 0.25;
  double stay_probability = 0.7;
  // Share of active entities linked to the ego directly.
  double direct_share = 0.45;
  int max_weight = 4;
  int identities = 3;
};

// Seeded random egocentric dataset, ego id "ego", entities "n000".."nXXX".
Dataset synthetic(std::uint64_t seed, const SyntheticParams& params = {});

// Pinned seeds and parameters for the focus trade-off corpus.
std::vector<std::uint64_t> focus_corpus_seeds();
SyntheticParams focus_corpus_params();

// Five papers used by the co-authorship checks; ego is "Ada".
std::vector<Publication> toy_publications();
Dataset coauthor();

// Writes events.csv, attributes.csv, schema.txt and config.json into `dir`.
void write_dataset(const Dataset& dataset, const std::string& dir);

}  // namespace spreadline::fixtures
