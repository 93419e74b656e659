#pragma once

#include <optional>
#include <set>
#include <vector>

#include "spreadline/egonet.hpp"
#include "spreadline/model.hpp"

namespace spreadline {

// ---------------------------------------------------------------------------
// Ordering
// ---------------------------------------------------------------------------

// Top-to-bottom regions of one timestamp column.
enum class Region : std::uint8_t {
  kTopSecondary,
  kTopPrimary,
  kEgo,
  kBottomPrimary,
  kBottomSecondary,
};

Compartment compartment_of(Region r);
bool is_secondary(Region r);

inline constexpr int kFixedGroup = -1;

struct Placement {
  EntityId id;
  Region region = Region::kEgo;
  // Entities of one column sharing a non-negative group may be permuted.
  int group = kFixedGroup;

  friend bool operator==(const Placement&, const Placement&) = default;
};

struct OrderedColumn {
  Timestamp time;
  std::vector<Placement> order;

  std::size_t ego_index() const;
  // Position relative to the ego (negative above), or nullopt when absent.
  std::optional<int> offset_of(const EntityId& id) const;

  friend bool operator==(const OrderedColumn&, const OrderedColumn&) = default;
};

struct OrderedTimeline {
  std::vector<OrderedColumn> columns;
  friend bool operator==(const OrderedTimeline&, const OrderedTimeline&) = default;
};

OrderedTimeline initialize_order(const std::vector<EgoSnapshot>& snapshots,
                                 const EntityAttributeTable& attributes,
                                 bool stack_by_line_identity);

// Alternating forward/backward barycenter passes restricted to permutable
// groups. Returns the visited ordering with the fewest crossings, so the result
// never has more crossings than the input.
OrderedTimeline barycenter_sweep(const OrderedTimeline& timeline, int max_sweeps = 10);

// Inversions between consecutive columns over entities present in both.
long long count_order_crossings(const OrderedTimeline& timeline);

// ---------------------------------------------------------------------------
// Alignment
// ---------------------------------------------------------------------------

struct AlignmentPlan {
  // pairs[i] holds the entities committed to equal height at columns i and i+1.
  std::vector<std::set<EntityId>> pairs;
  friend bool operator==(const AlignmentPlan&, const AlignmentPlan&) = default;
};

// Entities matched between two sequences, in sequence order. The best
// rewarded common run is taken first (the ego's reward dominates), then the
// parts left and right of it are matched recursively.
std::vector<EntityId> align_sequences(const std::vector<EntityId>& upper,
                                      const std::vector<EntityId>& lower, const EntityId& ego);

AlignmentPlan align_timelines(const OrderedTimeline& timeline);

// ---------------------------------------------------------------------------
// Compaction
// ---------------------------------------------------------------------------

enum class CellState : std::uint8_t { kOutside, kPresent, kIdle };
enum class IdleRouting : std::uint8_t { kNone, kCircumvent, kTraverse };

struct Cell {
  CellState state = CellState::kOutside;
  int slot = 0;        // meaningful when present
  double y = 0.0;      // present: slot * min_gap; idle: routed height
  Compartment compartment = Compartment::kTop;  // idle: last known
  int level = 0;       // 0 ego, 1, 2; idle: last known
  IdleRouting routing = IdleRouting::kNone;

  bool present() const { return state == CellState::kPresent; }
  friend bool operator==(const Cell&, const Cell&) = default;
};

struct EntityTrack {
  EntityId id;
  bool is_ego = false;
  std::vector<Cell> cells;  // one per rendered timestamp
  friend bool operator==(const EntityTrack&, const EntityTrack&) = default;
};

enum class BlockKind : std::uint8_t { kPrimary, kTopSecondary, kBottomSecondary };

// Vertical extent of one block; x placement happens at render time.
struct BlockExtent {
  BlockKind kind = BlockKind::kPrimary;
  double top = 0.0;
  double bottom = 0.0;
  friend bool operator==(const BlockExtent&, const BlockExtent&) = default;
};

struct CompactParams {
  double min_gap = 14.0;
  double padding = 10.0;
  int block_gap_slots = 2;
};

struct Layout {
  std::vector<Timestamp> times;
  EntityId ego;
  Focus focus = Focus::kVerticalSpace;
  double min_gap = 14.0;
  std::vector<EntityTrack> tracks;  // sorted by id
  std::vector<std::vector<BlockExtent>> blocks;  // per timestamp
  // Per consecutive pair: committed entities whose heights differ.
  std::vector<std::vector<EntityId>> dropped_alignments;

  const EntityTrack* find(const EntityId& id) const;
  const EntityTrack& ego_track() const;
  friend bool operator==(const Layout&, const Layout&) = default;
};

// Consecutive slots within regions, fixed gap between blocks; idle lines are
// routed outside the blocks on the side of their last compartment.
Layout compact_vertical_space(const OrderedTimeline& timeline, const AlignmentPlan& plan,
                              const CompactParams& params = {});

// Committed entities keep their previous height when order permits; slots may
// be sparse; idle lines hold their height and pass through blocks.
Layout compact_straight_line(const OrderedTimeline& timeline, const AlignmentPlan& plan,
                             const CompactParams& params = {});

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

struct LayoutResult {
  TimeAxis axis;
  std::vector<EgoSnapshot> snapshots;  // rendered timestamps only
  OrderedTimeline order;
  AlignmentPlan plan;
  Layout layout;
  LifespanIndex lifespan;
};

// extract -> rank -> order -> sweep -> align -> compact (per config.focus).
LayoutResult generate_layout(const std::vector<EventRecord>& events,
                             const EntityAttributeTable& attributes,
                             const SpreadLineConfig& config);

}  // namespace spreadline
