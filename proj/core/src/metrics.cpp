#include "spreadline/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace spreadline {

namespace {

// Inversions in `v` by merge sort; `v` is left sorted.
long long sort_count(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo,
                     std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  long long count = sort_count(v, scratch, lo, mid) + sort_count(v, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += static_cast<long long>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, v.begin() + lo);
  return count;
}

}  // namespace

long long count_crossings(const Layout& layout) {
  long long total = 0;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> seq;
  std::vector<int> scratch;
  for (std::size_t c = 0; c + 1 < layout.times.size(); ++c) {
    pairs.clear();
    for (const auto& track : layout.tracks) {
      const auto& a = track.cells[c];
      const auto& b = track.cells[c + 1];
      if (a.present() && b.present()) pairs.emplace_back(a.slot, b.slot);
    }
    std::sort(pairs.begin(), pairs.end());
    seq.clear();
    for (const auto& p : pairs) seq.push_back(p.second);
    scratch.resize(seq.size());
    total += sort_count(seq, scratch, 0, seq.size());
  }
  return total;
}

long long count_ego_crossings(const Layout& layout, const std::vector<EgoSnapshot>& snapshots) {
  std::unordered_map<EntityId, Compartment> last;
  long long count = 0;
  for (const auto& snap : snapshots) {
    for (const auto& a : snap.alters) {
      if (!layout.find(a.id)) continue;
      const auto [it, inserted] = last.try_emplace(a.id, a.compartment);
      if (!inserted && it->second != a.compartment) ++count;
      it->second = a.compartment;
    }
  }
  return count;
}

std::map<EntityId, double> wiggle_terms(const Layout& layout) {
  std::map<EntityId, double> terms;
  for (const auto& track : layout.tracks) {
    double sum = 0.0;
    std::optional<int> prev;
    for (const auto& cell : track.cells) {
      if (!cell.present()) continue;
      if (prev) sum += std::abs(cell.slot - *prev);
      prev = cell.slot;
    }
    terms[track.id] = sum;
  }
  return terms;
}

double wiggle_sum(const Layout& layout) {
  double total = 0.0;
  for (const auto& [_, v] : wiggle_terms(layout)) total += v;
  return total;
}

double whitespace_area(const Layout& layout) {
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  std::vector<long long> occupied(layout.times.size(), 0);
  for (const auto& track : layout.tracks) {
    for (std::size_t c = 0; c < track.cells.size(); ++c) {
      if (!track.cells[c].present()) continue;
      lo = std::min(lo, track.cells[c].slot);
      hi = std::max(hi, track.cells[c].slot);
      ++occupied[c];
    }
  }
  if (lo > hi) return 0.0;
  const long long span = static_cast<long long>(hi) - lo + 1;
  double total = 0.0;
  for (const long long n : occupied) total += static_cast<double>(span - n);
  return total;
}

QualityReport evaluate(const Layout& layout, const std::vector<EgoSnapshot>& snapshots) {
  return QualityReport{count_crossings(layout), count_ego_crossings(layout, snapshots),
                       wiggle_sum(layout), whitespace_area(layout)};
}

// --- Exhaustive oracle ------------------------------------------------------

namespace {

long long column_pair_crossings(const OrderedColumn& a, const OrderedColumn& b) {
  std::unordered_map<EntityId, std::size_t> pos_b;
  for (std::size_t i = 0; i < b.order.size(); ++i) pos_b.emplace(b.order[i].id, i);
  std::vector<std::size_t> seq;
  for (const auto& p : a.order) {
    if (const auto it = pos_b.find(p.id); it != pos_b.end()) seq.push_back(it->second);
  }
  long long n = 0;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    for (std::size_t j = i + 1; j < seq.size(); ++j) n += seq[i] > seq[j] ? 1 : 0;
  }
  return n;
}

struct Search {
  OrderedTimeline timeline;
  std::vector<std::vector<std::vector<std::size_t>>> groups;  // column -> group -> positions
  long long best = std::numeric_limits<long long>::max();

  void run(std::size_t c, std::size_t g, long long partial) {
    if (partial >= best) return;
    auto& columns = timeline.columns;
    if (c == columns.size()) {
      best = partial;
      return;
    }
    if (g == groups[c].size()) {
      const long long add = c > 0 ? column_pair_crossings(columns[c - 1], columns[c]) : 0;
      run(c + 1, 0, partial + add);
      return;
    }
    const auto& positions = groups[c][g];
    std::vector<Placement> original;
    for (std::size_t p : positions) original.push_back(columns[c].order[p]);
    std::vector<std::size_t> perm(positions.size());
    for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = k;
    do {
      for (std::size_t k = 0; k < perm.size(); ++k) columns[c].order[positions[k]] = original[perm[k]];
      run(c, g + 1, partial);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (std::size_t k = 0; k < positions.size(); ++k) columns[c].order[positions[k]] = original[k];
  }
};

}  // namespace

long long brute_force_min_crossings(const OrderedTimeline& timeline, int group_limit) {
  constexpr double kMaxStates = 2.0e7;
  Search search{timeline, {}, std::numeric_limits<long long>::max()};
  double states = 1.0;
  for (const auto& col : timeline.columns) {
    std::map<int, std::vector<std::size_t>> by_group;
    for (std::size_t i = 0; i < col.order.size(); ++i) {
      if (col.order[i].group != kFixedGroup) by_group[col.order[i].group].push_back(i);
    }
    auto& out = search.groups.emplace_back();
    for (auto& [id, positions] : by_group) {
      if (static_cast<int>(positions.size()) > group_limit) {
        throw InstanceTooLarge("permutable group of size " + std::to_string(positions.size()) +
                               " exceeds limit " + std::to_string(group_limit));
      }
      for (std::size_t k = 2; k <= positions.size(); ++k) states *= static_cast<double>(k);
      if (positions.size() > 1) out.push_back(std::move(positions));
    }
  }
  if (states > kMaxStates) {
    throw InstanceTooLarge("joint permutation space too large for exhaustive search");
  }
  search.run(0, 0, 0);
  return search.best;
}

}  // namespace spreadline
