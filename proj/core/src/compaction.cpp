#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <unordered_map>

#include "spreadline/layout.hpp"

namespace spreadline {

const EntityTrack* Layout::find(const EntityId& id) const {
  const auto it = std::lower_bound(tracks.begin(), tracks.end(), id,
                                   [](const EntityTrack& t, const EntityId& v) { return t.id < v; });
  return it != tracks.end() && it->id == id ? &*it : nullptr;
}

const EntityTrack& Layout::ego_track() const {
  const auto* t = find(ego);
  if (!t) throw LayoutError("layout has no ego track");
  return *t;
}

namespace {

int level_of(Region r) {
  if (r == Region::kEgo) return 0;
  return is_secondary(r) ? 2 : 1;
}

// One side of a column listed ego-outward, with the minimum slot distance
// from the previous item.
struct SideItem {
  EntityId id;
  Region region;
  int gap;
};

std::vector<SideItem> side_items(const OrderedColumn& col, Compartment side, int block_gap) {
  std::vector<SideItem> items;
  const std::size_t ego = col.ego_index();
  auto push = [&](const Placement& p) {
    const bool after_primary = items.empty() || !is_secondary(items.back().region);
    const int gap = is_secondary(p.region) && after_primary ? block_gap : 1;
    items.push_back(SideItem{p.id, p.region, gap});
  };
  if (side == Compartment::kTop) {
    for (std::size_t i = ego; i-- > 0;) push(col.order[i]);
  } else {
    for (std::size_t i = ego + 1; i < col.order.size(); ++i) push(col.order[i]);
  }
  return items;
}

// Distances d_k >= d_{k-1} + gap_k minimising sum_k sum_t |d_k - t| over the
// target distances of item k. Substituting e_k = d_k - (gap_1 + ... + gap_k)
// turns this into an L1 isotonic fit over e_k >= 0, solved exactly over the
// integer range. Among optimal fits the most compact one is returned.
std::vector<int> fit_distances(const std::vector<SideItem>& items,
                               const std::vector<std::vector<int>>& targets) {
  const std::size_t n = items.size();
  std::vector<int> prefix(n);
  int range = 0;
  for (std::size_t k = 0, sum = 0; k < n; ++k) {
    sum += items[k].gap;
    prefix[k] = static_cast<int>(sum);
    for (const int t : targets[k]) range = std::max(range, t - prefix[k]);
  }
  const std::size_t width = static_cast<std::size_t>(range) + 1;
  // best[k][v]: minimum cost of items 0..k with e_k <= v; arg[k][v] attains it.
  std::vector<std::vector<long long>> best(n, std::vector<long long>(width));
  std::vector<std::vector<int>> arg(n, std::vector<int>(width));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t v = 0; v < width; ++v) {
      long long cost = k > 0 ? best[k - 1][v] : 0;
      for (const int t : targets[k]) cost += std::abs(static_cast<int>(v) + prefix[k] - t);
      if (v > 0 && best[k][v - 1] <= cost) {
        best[k][v] = best[k][v - 1];
        arg[k][v] = arg[k][v - 1];
      } else {
        best[k][v] = cost;
        arg[k][v] = static_cast<int>(v);
      }
    }
  }
  std::vector<int> out(n);
  int bound = range;
  for (std::size_t k = n; k-- > 0;) {
    const int e = arg[k][static_cast<std::size_t>(bound)];
    out[k] = e + prefix[k];
    bound = e;
  }
  return out;
}

int sign_of(Compartment c) { return c == Compartment::kTop ? -1 : 1; }

// Skeleton shared by both focuses: tracks for every entity, ego at slot 0.
Layout empty_layout(const OrderedTimeline& timeline, Focus focus, const CompactParams& params) {
  Layout layout;
  layout.focus = focus;
  layout.min_gap = params.min_gap;
  std::set<EntityId> ids;
  for (const auto& col : timeline.columns) {
    layout.times.push_back(col.time);
    for (const auto& p : col.order) ids.insert(p.id);
  }
  if (!timeline.columns.empty()) {
    const auto& first = timeline.columns.front();
    layout.ego = first.order.at(first.ego_index()).id;
  }
  for (const auto& id : ids) {
    layout.tracks.push_back(EntityTrack{id, id == layout.ego, std::vector<Cell>(timeline.columns.size())});
  }
  layout.blocks.resize(timeline.columns.size());
  return layout;
}

using TrackIndex = std::unordered_map<EntityId, std::size_t>;

TrackIndex index_tracks(const Layout& layout) {
  TrackIndex out;
  for (std::size_t i = 0; i < layout.tracks.size(); ++i) out.emplace(layout.tracks[i].id, i);
  return out;
}

void place(Layout& layout, const TrackIndex& index, std::size_t column, const EntityId& id,
           Region region, int slot) {
  Cell& cell = layout.tracks[index.at(id)].cells[column];
  cell.state = CellState::kPresent;
  cell.slot = slot;
  cell.y = slot * layout.min_gap;
  cell.level = level_of(region);
  cell.compartment = region == Region::kEgo ? Compartment::kTop : compartment_of(region);
}

void compute_blocks(Layout& layout, const OrderedTimeline& timeline, const TrackIndex& index,
                    double padding) {
  for (std::size_t c = 0; c < timeline.columns.size(); ++c) {
    int primary_min = 0;
    int primary_max = 0;
    std::optional<std::pair<int, int>> secondary[2];
    for (const auto& p : timeline.columns[c].order) {
      const int slot = layout.tracks[index.at(p.id)].cells[c].slot;
      if (!is_secondary(p.region)) {
        primary_min = std::min(primary_min, slot);
        primary_max = std::max(primary_max, slot);
        continue;
      }
      auto& s = secondary[p.region == Region::kTopSecondary ? 0 : 1];
      s = s ? std::make_pair(std::min(s->first, slot), std::max(s->second, slot))
            : std::make_pair(slot, slot);
    }
    const double g = layout.min_gap;
    auto& blocks = layout.blocks[c];
    blocks.clear();
    if (secondary[0]) {
      blocks.push_back(BlockExtent{BlockKind::kTopSecondary, secondary[0]->first * g - padding,
                                   secondary[0]->second * g + padding});
    }
    blocks.push_back(BlockExtent{BlockKind::kPrimary, primary_min * g - padding,
                                 primary_max * g + padding});
    if (secondary[1]) {
      blocks.push_back(BlockExtent{BlockKind::kBottomSecondary, secondary[1]->first * g - padding,
                                   secondary[1]->second * g + padding});
    }
  }
}

// Marks idle cells between first and last presence; routing and height are
// filled by the caller.
template <class RouteFn>
void mark_idle(Layout& layout, IdleRouting routing, RouteFn&& route) {
  for (auto& track : layout.tracks) {
    int last_present = -1;
    for (std::size_t c = 0; c < track.cells.size(); ++c) {
      if (track.cells[c].present()) {
        for (std::size_t k = last_present + 1; last_present >= 0 && k < c; ++k) {
          Cell& idle = track.cells[k];
          const Cell& before = track.cells[last_present];
          idle.state = CellState::kIdle;
          idle.routing = routing;
          idle.compartment = before.compartment;
          idle.level = before.level;
          idle.slot = before.slot;
          idle.y = before.y;
        }
        last_present = static_cast<int>(c);
      }
    }
  }
  route(layout);
}

void record_dropped(Layout& layout, const AlignmentPlan& plan, const TrackIndex& index) {
  layout.dropped_alignments.assign(plan.pairs.size(), {});
  for (std::size_t i = 0; i < plan.pairs.size() && i + 1 < layout.times.size(); ++i) {
    for (const auto& id : plan.pairs[i]) {
      const auto& cells = layout.tracks[index.at(id)].cells;
      if (!cells[i].present() || !cells[i + 1].present() || cells[i].slot != cells[i + 1].slot) {
        layout.dropped_alignments[i].push_back(id);
      }
    }
  }
}

}  // namespace

Layout compact_vertical_space(const OrderedTimeline& timeline, const AlignmentPlan& plan,
                              const CompactParams& params) {
  Layout layout = empty_layout(timeline, Focus::kVerticalSpace, params);
  const auto index = index_tracks(layout);
  for (std::size_t c = 0; c < timeline.columns.size(); ++c) {
    const auto& col = timeline.columns[c];
    place(layout, index, c, layout.ego, Region::kEgo, 0);
    for (const Compartment side : {Compartment::kTop, Compartment::kBottom}) {
      int distance = 0;
      for (const auto& item : side_items(col, side, params.block_gap_slots)) {
        distance += item.gap;
        place(layout, index, c, item.id, item.region, sign_of(side) * distance);
      }
    }
  }
  compute_blocks(layout, timeline, index, params.padding);

  // Idle lines leave the column outside every block, stacked outward in the
  // order of their last height so they do not cross each other.
  mark_idle(layout, IdleRouting::kCircumvent, [&](Layout& l) {
    for (std::size_t c = 0; c < l.times.size(); ++c) {
      double top_edge = std::numeric_limits<double>::max();
      double bottom_edge = std::numeric_limits<double>::lowest();
      for (const auto& b : l.blocks[c]) {
        top_edge = std::min(top_edge, b.top);
        bottom_edge = std::max(bottom_edge, b.bottom);
      }
      std::vector<std::pair<double, Cell*>> above;
      std::vector<std::pair<double, Cell*>> below;
      for (auto& track : l.tracks) {
        Cell& cell = track.cells[c];
        if (cell.state != CellState::kIdle) continue;
        (cell.compartment == Compartment::kTop ? above : below).emplace_back(cell.y, &cell);
      }
      std::stable_sort(above.begin(), above.end(),
                       [](const auto& a, const auto& b) { return a.first > b.first; });
      std::stable_sort(below.begin(), below.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t k = 0; k < above.size(); ++k) {
        above[k].second->y = top_edge - l.min_gap * static_cast<double>(k + 1);
      }
      for (std::size_t k = 0; k < below.size(); ++k) {
        below[k].second->y = bottom_edge + l.min_gap * static_cast<double>(k + 1);
      }
    }
  });
  record_dropped(layout, plan, index);
  return layout;
}

namespace {

// Per column and side, the entities listed ego-outward.
using SideLists = std::vector<std::array<std::vector<SideItem>, 2>>;

long long total_wiggle(const Layout& layout) {
  long long sum = 0;
  for (const auto& track : layout.tracks) {
    std::optional<int> prev;
    for (const auto& cell : track.cells) {
      if (!cell.present()) continue;
      if (prev) sum += std::abs(cell.slot - *prev);
      prev = cell.slot;
    }
  }
  return sum;
}

// Slot of the nearest presence before (step -1) or after (step +1) column c.
std::optional<int> neighbour_slot(const EntityTrack& track, std::size_t c, int step) {
  for (auto k = static_cast<long long>(c) + step;
       k >= 0 && k < static_cast<long long>(track.cells.size()); k += step) {
    const Cell& cell = track.cells[static_cast<std::size_t>(k)];
    if (cell.present()) return cell.slot;
  }
  return std::nullopt;
}

void place_side(Layout& layout, const TrackIndex& index, std::size_t c, const std::vector<SideItem>& items,
                int sign, const std::vector<int>& distances) {
  for (std::size_t k = 0; k < items.size(); ++k) {
    place(layout, index, c, items[k].id, items[k].region, sign * distances[k]);
  }
}

// Refits one column at a time against the heights of each entity's previous
// and next presence until no column improves. Every refit is optimal for its
// column, so total wiggle never increases.
void straighten(Layout& layout, const TrackIndex& index, const SideLists& sides) {
  constexpr int kMaxRounds = 50;
  for (int round = 0; round < kMaxRounds; ++round) {
    bool changed = false;
    for (std::size_t c = 0; c < sides.size(); ++c) {
      for (int s = 0; s < 2; ++s) {
        const int sign = s == 0 ? -1 : 1;
        const auto& items = sides[c][s];
        std::vector<std::vector<int>> targets(items.size());
        std::vector<int> current(items.size());
        for (std::size_t k = 0; k < items.size(); ++k) {
          const auto& track = layout.tracks[index.at(items[k].id)];
          current[k] = track.cells[c].slot * sign;
          for (const int step : {-1, 1}) {
            if (const auto slot = neighbour_slot(track, c, step)) targets[k].push_back(*slot * sign);
          }
        }
        const auto fitted = fit_distances(items, targets);
        if (fitted == current) continue;
        long long before = 0;
        long long after = 0;
        for (std::size_t k = 0; k < items.size(); ++k) {
          for (const int t : targets[k]) {
            before += std::abs(current[k] - t);
            after += std::abs(fitted[k] - t);
          }
        }
        if (after < before) {
          place_side(layout, index, c, items, sign, fitted);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
}

}  // namespace

Layout compact_straight_line(const OrderedTimeline& timeline, const AlignmentPlan& plan,
                             const CompactParams& params) {
  Layout held_start = empty_layout(timeline, Focus::kStraightLine, params);
  const auto index = index_tracks(held_start);
  SideLists sides(timeline.columns.size());
  for (std::size_t c = 0; c < timeline.columns.size(); ++c) {
    sides[c][0] = side_items(timeline.columns[c], Compartment::kTop, params.block_gap_slots);
    sides[c][1] = side_items(timeline.columns[c], Compartment::kBottom, params.block_gap_slots);
  }

  // Two starting points: every entity held at its last height where order
  // permits, and the tight packing. Both are straightened and the layout with
  // less wiggle is kept.
  Layout packed = held_start;
  std::unordered_map<EntityId, int> held;
  for (std::size_t c = 0; c < timeline.columns.size(); ++c) {
    place(held_start, index, c, held_start.ego, Region::kEgo, 0);
    place(packed, index, c, packed.ego, Region::kEgo, 0);
    for (int s = 0; s < 2; ++s) {
      const int sign = s == 0 ? -1 : 1;
      const auto& items = sides[c][s];
      std::vector<std::vector<int>> targets(items.size());
      std::vector<int> tight(items.size());
      for (std::size_t k = 0, sum = 0; k < items.size(); ++k) {
        sum += items[k].gap;
        tight[k] = static_cast<int>(sum);
        if (const auto it = held.find(items[k].id); it != held.end()) targets[k].push_back(it->second * sign);
      }
      place_side(held_start, index, c, items, sign, fit_distances(items, targets));
      place_side(packed, index, c, items, sign, tight);
    }
    for (const auto& p : timeline.columns[c].order) {
      held[p.id] = held_start.tracks[index.at(p.id)].cells[c].slot;
    }
  }
  straighten(held_start, index, sides);
  straighten(packed, index, sides);
  Layout layout = total_wiggle(packed) < total_wiggle(held_start) ? std::move(packed) : std::move(held_start);

  compute_blocks(layout, timeline, index, params.padding);
  // Traversing idle lines keep the last present height.
  mark_idle(layout, IdleRouting::kTraverse, [](Layout&) {});
  record_dropped(layout, plan, index);
  return layout;
}

}  // namespace spreadline
