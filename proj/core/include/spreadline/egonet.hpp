#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "spreadline/model.hpp"

namespace spreadline {

struct AlterEntry {
  EntityId id;
  int level = 1;
  Compartment compartment = Compartment::kTop;
  // Level 1: summed ego-alter weight. Level 2: summed weight to the chosen anchor.
  double agg_weight = 0.0;
  // Level-2 only, sorted. The primary (chosen) anchor is `primary_anchor`.
  std::vector<EntityId> anchors;
  EntityId primary_anchor;
  // Weight of edges to each anchor, parallel to `anchors`.
  std::vector<double> anchor_weights;

  friend bool operator==(const AlterEntry&, const AlterEntry&) = default;
};

struct EgoSnapshot {
  Timestamp time;
  EntityId ego;
  std::vector<AlterEntry> alters;  // sorted by (level, id)
  bool ego_present = false;

  const AlterEntry* find(const EntityId& id) const;
  friend bool operator==(const EgoSnapshot&, const EgoSnapshot&) = default;
};

// Membership only; compartments are left at their default until assigned.
EgoSnapshot extract_snapshot(const std::vector<EventRecord>& events, const EntityId& ego,
                             Timestamp t);

struct DirectionWeights {
  double to_ego = 0.0;
  double from_ego = 0.0;
};

// Summed ego-alter weights per level-1 alter at time t.
std::map<EntityId, DirectionWeights> direction_weights(const std::vector<EventRecord>& events,
                                                       const EntityId& ego, Timestamp t);

// Strictly heavier direction wins; ties keep `previous` when known, else toEgo.
Direction resolve_direction(const DirectionWeights& w, std::optional<Compartment> previous);

std::map<EntityId, Direction> resolve_directions(
    const EgoSnapshot& snapshot, const std::vector<EventRecord>& events,
    const std::map<EntityId, Compartment>& previous);

// Sets level-1 compartments from `directions` (edge-direction rule) or from the
// categorical attribute named by config.space_division_rule, then level-2
// compartments from their primary anchor. `category_order` maps the two
// allowed categories to top (index 0) and bottom (index 1).
void assign_compartments(EgoSnapshot& snapshot, const SpreadLineConfig& config,
                         const std::map<EntityId, Direction>& directions,
                         const EntityAttributeTable& attributes,
                         const std::vector<std::string>& category_order);

// Distinct categories observed for level-1 alters over the snapshots; more than
// two is a configuration error.
std::vector<std::string> categorical_division_order(const std::vector<EgoSnapshot>& snapshots,
                                                    const SpreadLineConfig& config,
                                                    const EntityAttributeTable& attributes);

struct ProximityRank {
  int rank = 0;   // 0 adjacent to the ego (level 1 only)
  int group = 0;  // entities sharing a group may be permuted
  friend bool operator==(const ProximityRank&, const ProximityRank&) = default;
};

// Level-1: rank by descending weight within compartment (id breaks ties),
// equal weights share a group. Level-2: one group per compartment, rank by id.
std::map<EntityId, ProximityRank> rank_alters(const EgoSnapshot& snapshot);

struct LifespanEntry {
  Timestamp first_time;
  Timestamp last_time;
  int presence_count = 0;
  int ego_crossing_count = 0;
  friend bool operator==(const LifespanEntry&, const LifespanEntry&) = default;
};

using LifespanIndex = std::map<EntityId, LifespanEntry>;

// Snapshots must be in time order. The ego is indexed with zero crossings.
LifespanIndex build_lifespan_index(const std::vector<EgoSnapshot>& snapshots);

// Extracts, resolves and assigns compartments for every timestamp where the ego
// is present, running the tie-break pass in time order.
std::vector<EgoSnapshot> build_snapshots(const std::vector<EventRecord>& events,
                                         const EntityAttributeTable& attributes,
                                         const SpreadLineConfig& config);

}  // namespace spreadline
