#include <limits>

#include "spreadline/layout.hpp"

namespace spreadline {

namespace {

// The ego's self-alignment reward dominates any run of ordinary entities.
constexpr long long kEgoReward = std::numeric_limits<int>::max();
constexpr long long kEntityReward = 1;

void match_range(const std::vector<EntityId>& upper, std::size_t u0, std::size_t u1,
                 const std::vector<EntityId>& lower, std::size_t l0, std::size_t l1,
                 const EntityId& ego, std::vector<EntityId>& out) {
  if (u0 >= u1 || l0 >= l1) return;
  const std::size_t rows = u1 - u0;
  const std::size_t cols = l1 - l0;
  // reward[j] / length[j]: best run ending at (i, j), rolling over i.
  std::vector<long long> prev_reward(cols + 1, 0);
  std::vector<long long> cur_reward(cols + 1, 0);
  std::vector<std::size_t> prev_len(cols + 1, 0);
  std::vector<std::size_t> cur_len(cols + 1, 0);
  long long best_reward = 0;
  std::size_t best_len = 0;
  std::size_t best_u_end = 0;
  std::size_t best_l_end = 0;
  for (std::size_t i = 1; i <= rows; ++i) {
    for (std::size_t j = 1; j <= cols; ++j) {
      const EntityId& a = upper[u0 + i - 1];
      if (a == lower[l0 + j - 1]) {
        cur_reward[j] = prev_reward[j - 1] + (a == ego ? kEgoReward : kEntityReward);
        cur_len[j] = prev_len[j - 1] + 1;
        // Strict improvement keeps the leftmost run among equals.
        if (cur_reward[j] > best_reward) {
          best_reward = cur_reward[j];
          best_len = cur_len[j];
          best_u_end = u0 + i;
          best_l_end = l0 + j;
        }
      } else {
        cur_reward[j] = 0;
        cur_len[j] = 0;
      }
    }
    std::swap(prev_reward, cur_reward);
    std::swap(prev_len, cur_len);
  }
  if (best_reward == 0) return;
  const std::size_t u_start = best_u_end - best_len;
  const std::size_t l_start = best_l_end - best_len;
  match_range(upper, u0, u_start, lower, l0, l_start, ego, out);
  for (std::size_t k = u_start; k < best_u_end; ++k) out.push_back(upper[k]);
  match_range(upper, best_u_end, u1, lower, best_l_end, l1, ego, out);
}

std::vector<EntityId> ids_of(const OrderedColumn& col) {
  std::vector<EntityId> ids;
  ids.reserve(col.order.size());
  for (const auto& p : col.order) ids.push_back(p.id);
  return ids;
}

}  // namespace

std::vector<EntityId> align_sequences(const std::vector<EntityId>& upper,
                                      const std::vector<EntityId>& lower, const EntityId& ego) {
  std::vector<EntityId> out;
  match_range(upper, 0, upper.size(), lower, 0, lower.size(), ego, out);
  return out;
}

AlignmentPlan align_timelines(const OrderedTimeline& timeline) {
  AlignmentPlan plan;
  for (std::size_t i = 0; i + 1 < timeline.columns.size(); ++i) {
    const auto& a = timeline.columns[i];
    const auto& b = timeline.columns[i + 1];
    const EntityId& ego = a.order.at(a.ego_index()).id;
    const auto matched = align_sequences(ids_of(a), ids_of(b), ego);
    plan.pairs.emplace_back(matched.begin(), matched.end());
  }
  return plan;
}

}  // namespace spreadline
