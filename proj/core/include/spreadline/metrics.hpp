#pragma once

#include <map>
#include <vector>

#include "spreadline/layout.hpp"

namespace spreadline {

struct QualityReport {
  long long crossings = 0;
  long long ego_crossings = 0;
  double wiggle_sum = 0.0;   // slot units
  double whitespace = 0.0;   // empty envelope slots summed over timestamps

  friend bool operator==(const QualityReport&, const QualityReport&) = default;
};

// Pairs present at two consecutive timestamps whose vertical order inverts.
long long count_crossings(const Layout& layout);

// Compartment changes between consecutive presences of each alter.
long long count_ego_crossings(const Layout& layout, const std::vector<EgoSnapshot>& snapshots);

// |slot(next presence) - slot(presence)| summed per entity.
std::map<EntityId, double> wiggle_terms(const Layout& layout);
double wiggle_sum(const Layout& layout);

double whitespace_area(const Layout& layout);

QualityReport evaluate(const Layout& layout, const std::vector<EgoSnapshot>& snapshots);

// Minimum crossings over all permutations of every permutable group, other
// positions fixed. Throws InstanceTooLarge when a group exceeds `group_limit`
// or the joint search space is unreasonably large.
long long brute_force_min_crossings(const OrderedTimeline& timeline, int group_limit = 8);

}  // namespace spreadline
