#include "spreadline/config.hpp"
#include "spreadline/layout.hpp"

namespace spreadline {

LayoutResult generate_layout(const std::vector<EventRecord>& events,
                             const EntityAttributeTable& attributes,
                             const SpreadLineConfig& config) {
  if (events.empty()) throw LayoutError("no rendered timestamps: event list is empty");
  const SpreadLineConfig cfg = validate_config(config, events);

  LayoutResult result;
  result.axis = TimeAxis::from_events(events);
  result.snapshots = build_snapshots(events, attributes, cfg);
  if (result.snapshots.empty()) throw LayoutError("no rendered timestamps: the ego has no edges");
  for (std::size_t i = 0; i < result.axis.times.size(); ++i) {
    result.axis.included[i] = false;
    for (const auto& s : result.snapshots) {
      if (s.time == result.axis.times[i]) result.axis.included[i] = true;
    }
  }
  result.lifespan = build_lifespan_index(result.snapshots);

  const auto initial = initialize_order(result.snapshots, attributes, cfg.stack_by_line_identity);
  result.order = barycenter_sweep(initial, cfg.max_sweeps);
  result.plan = align_timelines(result.order);

  const CompactParams params{cfg.min_gap, cfg.padding, cfg.block_gap_slots};
  result.layout = cfg.focus == Focus::kVerticalSpace
                      ? compact_vertical_space(result.order, result.plan, params)
                      : compact_straight_line(result.order, result.plan, params);
  return result;
}

}  // namespace spreadline
