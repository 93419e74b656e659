#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

#include "spreadline/layout.hpp"

namespace spreadline {

Compartment compartment_of(Region r) {
  return (r == Region::kTopSecondary || r == Region::kTopPrimary) ? Compartment::kTop
                                                                  : Compartment::kBottom;
}

bool is_secondary(Region r) { return r == Region::kTopSecondary || r == Region::kBottomSecondary; }

std::size_t OrderedColumn::ego_index() const {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i].region == Region::kEgo) return i;
  }
  throw LayoutError("column without ego");
}

std::optional<int> OrderedColumn::offset_of(const EntityId& id) const {
  const auto ego = static_cast<int>(ego_index());
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i].id == id) return static_cast<int>(i) - ego;
  }
  return std::nullopt;
}

namespace {

// Identity group index by first appearance over the timeline.
std::map<std::string, int> identity_groups(const std::vector<EgoSnapshot>& snapshots,
                                           const EntityAttributeTable& attributes) {
  std::map<std::string, int> groups;
  for (const auto& snap : snapshots) {
    std::set<std::string> fresh;
    for (const auto& a : snap.alters) {
      if (a.level != 1) continue;
      auto identity = attributes.line_identity(a.id);
      if (!groups.contains(identity)) fresh.insert(std::move(identity));
    }
    for (const auto& identity : fresh) {
      const int next = static_cast<int>(groups.size());
      groups.emplace(identity, next);
    }
  }
  return groups;
}

OrderedColumn order_snapshot(const EgoSnapshot& snap, const EntityAttributeTable& attributes,
                             bool stack, const std::map<std::string, int>& identity_index) {
  const auto ranks = rank_alters(snap);
  struct Item {
    const AlterEntry* alter;
    ProximityRank rank;
    int identity;
  };
  std::vector<Item> primary[2];
  std::vector<Item> secondary[2];
  for (const auto& a : snap.alters) {
    const int side = a.compartment == Compartment::kTop ? 0 : 1;
    const int identity = stack && a.level == 1 ? identity_index.at(attributes.line_identity(a.id)) : 0;
    (a.level == 1 ? primary : secondary)[side].push_back(Item{&a, ranks.at(a.id), identity});
  }

  // Permutable groups: rank groups, refined by identity when stacking.
  std::map<std::pair<int, int>, int> group_ids;
  auto group_of = [&](const Item& item) {
    const auto key = std::make_pair(item.identity, item.rank.group);
    const auto [it, _] = group_ids.try_emplace(key, static_cast<int>(group_ids.size()));
    return it->second;
  };

  // Ego-outward order: identity group first (when stacking), then rank.
  for (auto& side : primary) {
    std::sort(side.begin(), side.end(), [](const Item& a, const Item& b) {
      return std::tie(a.identity, a.rank.rank) < std::tie(b.identity, b.rank.rank);
    });
  }
  for (auto& side : secondary) {
    std::sort(side.begin(), side.end(),
              [](const Item& a, const Item& b) { return a.alter->id < b.alter->id; });
  }

  OrderedColumn col;
  col.time = snap.time;
  for (const auto& item : secondary[0]) {
    col.order.push_back(Placement{item.alter->id, Region::kTopSecondary, group_of(item)});
  }
  // Above the ego the sequence runs outward-in. Stacked identity groups keep
  // first-appearance order top-to-bottom, with rank increasing toward the ego.
  std::vector<Item> top = primary[0];
  if (stack) {
    std::stable_sort(top.begin(), top.end(), [](const Item& a, const Item& b) {
      if (a.identity != b.identity) return a.identity < b.identity;
      return a.rank.rank > b.rank.rank;
    });
  } else {
    std::reverse(top.begin(), top.end());
  }
  for (const auto& item : top) {
    col.order.push_back(Placement{item.alter->id, Region::kTopPrimary, group_of(item)});
  }
  col.order.push_back(Placement{snap.ego, Region::kEgo, kFixedGroup});
  for (const auto& item : primary[1]) {
    col.order.push_back(Placement{item.alter->id, Region::kBottomPrimary, group_of(item)});
  }
  for (const auto& item : secondary[1]) {
    col.order.push_back(Placement{item.alter->id, Region::kBottomSecondary, group_of(item)});
  }
  return col;
}

using OffsetMap = std::unordered_map<EntityId, int>;

OffsetMap offsets(const OrderedColumn& col) {
  OffsetMap out;
  const int ego = static_cast<int>(col.ego_index());
  for (std::size_t i = 0; i < col.order.size(); ++i) {
    out.emplace(col.order[i].id, static_cast<int>(i) - ego);
  }
  return out;
}

long long pair_crossings(const OrderedColumn& a, const OrderedColumn& b) {
  const auto pos_b = offsets(b);
  std::vector<int> seq;
  for (const auto& p : a.order) {
    if (const auto it = pos_b.find(p.id); it != pos_b.end()) seq.push_back(it->second);
  }
  long long inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] > seq[j]) ++inversions;
    }
  }
  return inversions;
}

// Sorts each permutable group of `col` by the position of its members in
// `ref`. Members absent from `ref` keep their slots.
bool reorder_against(OrderedColumn& col, const OrderedColumn& ref) {
  const auto ref_pos = offsets(ref);
  std::map<int, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < col.order.size(); ++i) {
    if (col.order[i].group != kFixedGroup) groups[col.order[i].group].push_back(i);
  }
  bool changed = false;
  for (const auto& [group, indices] : groups) {
    if (indices.size() < 2) continue;
    std::vector<std::size_t> slots;
    std::vector<std::pair<double, Placement>> movable;
    for (std::size_t i : indices) {
      const auto it = ref_pos.find(col.order[i].id);
      if (it == ref_pos.end()) continue;
      slots.push_back(i);
      movable.emplace_back(static_cast<double>(it->second), col.order[i]);
    }
    std::stable_sort(movable.begin(), movable.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return a.second.id < b.second.id;
    });
    for (std::size_t k = 0; k < slots.size(); ++k) {
      if (col.order[slots[k]].id != movable[k].second.id) {
        col.order[slots[k]] = movable[k].second;
        changed = true;
      }
    }
  }
  return changed;
}

}  // namespace

OrderedTimeline initialize_order(const std::vector<EgoSnapshot>& snapshots,
                                 const EntityAttributeTable& attributes,
                                 bool stack_by_line_identity) {
  const auto identities =
      stack_by_line_identity ? identity_groups(snapshots, attributes) : std::map<std::string, int>{};
  OrderedTimeline timeline;
  timeline.columns.reserve(snapshots.size());
  for (const auto& snap : snapshots) {
    timeline.columns.push_back(order_snapshot(snap, attributes, stack_by_line_identity, identities));
  }
  return timeline;
}

long long count_order_crossings(const OrderedTimeline& timeline) {
  long long total = 0;
  for (std::size_t i = 0; i + 1 < timeline.columns.size(); ++i) {
    total += pair_crossings(timeline.columns[i], timeline.columns[i + 1]);
  }
  return total;
}

OrderedTimeline barycenter_sweep(const OrderedTimeline& timeline, int max_sweeps) {
  OrderedTimeline current = timeline;
  OrderedTimeline best = timeline;
  long long best_crossings = count_order_crossings(timeline);
  const std::size_t n = current.columns.size();

  auto consider = [&] {
    const long long c = count_order_crossings(current);
    if (c < best_crossings) {
      best_crossings = c;
      best = current;
    }
  };

  for (int sweep = 0; sweep < max_sweeps && n > 1; ++sweep) {
    bool changed = false;
    for (std::size_t i = 1; i < n; ++i) {
      changed |= reorder_against(current.columns[i], current.columns[i - 1]);
    }
    consider();
    for (std::size_t i = n - 1; i-- > 0;) {
      changed |= reorder_against(current.columns[i], current.columns[i + 1]);
    }
    consider();
    if (!changed) break;
  }
  return best;
}

}  // namespace spreadline
