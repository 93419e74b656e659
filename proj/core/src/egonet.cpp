#include "spreadline/egonet.hpp"

#include <algorithm>
#include <span>

namespace spreadline {

const AlterEntry* EgoSnapshot::find(const EntityId& id) const {
  for (const auto& a : alters) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

namespace {

using Adjacency = std::map<EntityId, std::map<EntityId, double>>;

Adjacency undirected_adjacency(std::span<const EventRecord> events, Timestamp t) {
  Adjacency adj;
  for (const auto& e : events) {
    if (e.time != t) continue;
    adj[e.source][e.target] += e.weight;
    adj[e.target][e.source] += e.weight;
  }
  return adj;
}

EgoSnapshot extract_from(std::span<const EventRecord> events, const EntityId& ego, Timestamp t) {
  EgoSnapshot snap;
  snap.time = t;
  snap.ego = ego;
  const Adjacency adj = undirected_adjacency(events, t);
  const auto ego_it = adj.find(ego);
  if (ego_it == adj.end()) return snap;

  const auto& direct = ego_it->second;
  snap.ego_present = !direct.empty();
  std::map<EntityId, AlterEntry> second;
  for (const auto& [alter, weight] : direct) {
    AlterEntry entry;
    entry.id = alter;
    entry.level = 1;
    entry.agg_weight = weight;
    snap.alters.push_back(std::move(entry));

    for (const auto& [other, w] : adj.at(alter)) {
      if (other == ego || direct.contains(other)) continue;
      auto& l2 = second[other];
      l2.id = other;
      l2.level = 2;
      l2.anchors.push_back(alter);
      l2.anchor_weights.push_back(w);
    }
  }
  for (auto& [id, entry] : second) {
    // Anchors arrive in id order since `direct` is an ordered map.
    std::size_t best = 0;
    for (std::size_t k = 1; k < entry.anchors.size(); ++k) {
      if (entry.anchor_weights[k] > entry.anchor_weights[best]) best = k;
    }
    entry.primary_anchor = entry.anchors[best];
    entry.agg_weight = entry.anchor_weights[best];
    snap.alters.push_back(std::move(entry));
  }
  return snap;
}

std::map<EntityId, DirectionWeights> weights_from(std::span<const EventRecord> events,
                                                  const EntityId& ego, Timestamp t) {
  std::map<EntityId, DirectionWeights> out;
  for (const auto& e : events) {
    if (e.time != t) continue;
    if (e.source != ego && e.target != ego) continue;
    const EntityId& alter = e.source == ego ? e.target : e.source;
    auto& w = out[alter];
    if (!e.directed) {
      w.to_ego += e.weight;
      w.from_ego += e.weight;
    } else if (e.target == ego) {
      w.to_ego += e.weight;
    } else {
      w.from_ego += e.weight;
    }
  }
  return out;
}

}  // namespace

EgoSnapshot extract_snapshot(const std::vector<EventRecord>& events, const EntityId& ego,
                             Timestamp t) {
  return extract_from(events, ego, t);
}

std::map<EntityId, DirectionWeights> direction_weights(const std::vector<EventRecord>& events,
                                                       const EntityId& ego, Timestamp t) {
  return weights_from(events, ego, t);
}

Direction resolve_direction(const DirectionWeights& w, std::optional<Compartment> previous) {
  if (w.to_ego > w.from_ego) return Direction::kToEgo;
  if (w.from_ego > w.to_ego) return Direction::kFromEgo;
  if (previous) return *previous == Compartment::kTop ? Direction::kToEgo : Direction::kFromEgo;
  return Direction::kToEgo;
}

std::map<EntityId, Direction> resolve_directions(
    const EgoSnapshot& snapshot, const std::vector<EventRecord>& events,
    const std::map<EntityId, Compartment>& previous) {
  const auto weights = weights_from(events, snapshot.ego, snapshot.time);
  std::map<EntityId, Direction> out;
  for (const auto& a : snapshot.alters) {
    if (a.level != 1) continue;
    const auto wit = weights.find(a.id);
    const DirectionWeights w = wit == weights.end() ? DirectionWeights{} : wit->second;
    const auto pit = previous.find(a.id);
    out[a.id] = resolve_direction(
        w, pit == previous.end() ? std::nullopt : std::optional<Compartment>(pit->second));
  }
  return out;
}

std::vector<std::string> categorical_division_order(const std::vector<EgoSnapshot>& snapshots,
                                                    const SpreadLineConfig& config,
                                                    const EntityAttributeTable& attributes) {
  const auto& attr = config.space_division_rule;
  if (attr == kEdgeDirectionRule) return {};
  if (!attributes.has_attribute(attr)) {
    throw ConfigError("space division attribute '" + attr + "' not found in attributes");
  }
  std::set<std::string> seen;
  for (const auto& snap : snapshots) {
    for (const auto& a : snap.alters) {
      if (a.level == 1) seen.insert(attributes.categorical_at(attr, a.id, snap.time));
    }
  }
  if (seen.size() > 2) {
    std::string list;
    for (const auto& c : seen) list += (list.empty() ? "" : ", ") + c;
    throw ConfigError("space division attribute '" + attr + "' has more than two categories: " +
                      list);
  }
  return {seen.begin(), seen.end()};
}

void assign_compartments(EgoSnapshot& snapshot, const SpreadLineConfig& config,
                         const std::map<EntityId, Direction>& directions,
                         const EntityAttributeTable& attributes,
                         const std::vector<std::string>& category_order) {
  const bool by_direction = config.space_division_rule == kEdgeDirectionRule;
  std::map<EntityId, Compartment> level1;
  for (auto& a : snapshot.alters) {
    if (a.level != 1) continue;
    if (by_direction) {
      const auto it = directions.find(a.id);
      const Direction d = it == directions.end() ? Direction::kToEgo : it->second;
      a.compartment = d == Direction::kToEgo ? Compartment::kTop : Compartment::kBottom;
    } else {
      const auto value = attributes.categorical_at(config.space_division_rule, a.id, snapshot.time);
      const auto pos = std::find(category_order.begin(), category_order.end(), value);
      if (pos == category_order.end()) {
        throw ConfigError("category '" + value + "' of '" + a.id + "' is not in the division order");
      }
      a.compartment = pos == category_order.begin() ? Compartment::kTop : Compartment::kBottom;
    }
    level1[a.id] = a.compartment;
  }
  for (auto& a : snapshot.alters) {
    if (a.level == 2) a.compartment = level1.at(a.primary_anchor);
  }
}

std::map<EntityId, ProximityRank> rank_alters(const EgoSnapshot& snapshot) {
  std::map<EntityId, ProximityRank> out;
  int next_group = 0;
  for (const Compartment c : {Compartment::kTop, Compartment::kBottom}) {
    std::vector<const AlterEntry*> l1;
    std::vector<const AlterEntry*> l2;
    for (const auto& a : snapshot.alters) {
      if (a.compartment != c) continue;
      (a.level == 1 ? l1 : l2).push_back(&a);
    }
    std::stable_sort(l1.begin(), l1.end(), [](const auto* a, const auto* b) {
      if (a->agg_weight != b->agg_weight) return a->agg_weight > b->agg_weight;
      return a->id < b->id;
    });
    for (std::size_t i = 0; i < l1.size(); ++i) {
      if (i > 0 && l1[i]->agg_weight != l1[i - 1]->agg_weight) ++next_group;
      out[l1[i]->id] = ProximityRank{static_cast<int>(i), next_group};
    }
    if (!l1.empty()) ++next_group;
    std::sort(l2.begin(), l2.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    for (std::size_t i = 0; i < l2.size(); ++i) {
      out[l2[i]->id] = ProximityRank{static_cast<int>(i), next_group};
    }
    if (!l2.empty()) ++next_group;
  }
  return out;
}

LifespanIndex build_lifespan_index(const std::vector<EgoSnapshot>& snapshots) {
  LifespanIndex index;
  std::map<EntityId, Compartment> last;
  auto touch = [&](const EntityId& id, Timestamp t) -> LifespanEntry& {
    auto [it, inserted] = index.try_emplace(id);
    if (inserted) it->second.first_time = t;
    it->second.last_time = t;
    ++it->second.presence_count;
    return it->second;
  };
  for (const auto& snap : snapshots) {
    if (snap.ego_present) touch(snap.ego, snap.time);
    for (const auto& a : snap.alters) {
      auto& entry = touch(a.id, snap.time);
      const auto it = last.find(a.id);
      if (it != last.end() && it->second != a.compartment) ++entry.ego_crossing_count;
      last[a.id] = a.compartment;
    }
  }
  return index;
}

std::vector<EgoSnapshot> build_snapshots(const std::vector<EventRecord>& events,
                                         const EntityAttributeTable& attributes,
                                         const SpreadLineConfig& config) {
  std::map<Timestamp, std::vector<EventRecord>> by_time;
  for (const auto& e : events) by_time[e.time].push_back(e);

  std::vector<EgoSnapshot> snapshots;
  for (const auto& [t, bucket] : by_time) {
    auto snap = extract_from(bucket, config.ego, t);
    if (snap.ego_present) snapshots.push_back(std::move(snap));
  }

  const auto order = categorical_division_order(snapshots, config, attributes);
  // Most recent compartment per entity, feeding the equal-weight tie-break.
  std::map<EntityId, Compartment> previous;
  for (auto& snap : snapshots) {
    const auto& bucket = by_time.at(snap.time);
    std::map<EntityId, Direction> directions;
    if (config.space_division_rule == kEdgeDirectionRule) {
      const auto weights = weights_from(bucket, snap.ego, snap.time);
      for (const auto& a : snap.alters) {
        if (a.level != 1) continue;
        const auto pit = previous.find(a.id);
        directions[a.id] = resolve_direction(
            weights.at(a.id),
            pit == previous.end() ? std::nullopt : std::optional<Compartment>(pit->second));
      }
    }
    assign_compartments(snap, config, directions, attributes, order);
    for (const auto& a : snap.alters) previous[a.id] = a.compartment;
  }
  return snapshots;
}

}  // namespace spreadline
