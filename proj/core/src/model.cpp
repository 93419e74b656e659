#include "spreadline/model.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>

namespace spreadline {

std::string Timestamp::label() const {
  if (kind == TimeKind::kInteger) {
    return std::to_string(ordinal);
  }
  using namespace std::chrono;
  const year_month_day ymd{sys_days{days{ordinal}}};
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

namespace {

template <class T>
bool parse_whole(std::string_view s, T& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  text = trim(text);
  std::int64_t integer = 0;
  if (parse_whole(text, integer)) {
    return Timestamp{integer, TimeKind::kInteger};
  }
  if (text.size() == 10 && text[4] == '-' && text[7] == '-') {
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    if (!parse_whole(text.substr(0, 4), y) || !parse_whole(text.substr(5, 2), m) ||
        !parse_whole(text.substr(8, 2), d)) {
      return std::nullopt;
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{m}, day{d}};
    if (!ymd.ok()) return std::nullopt;
    return Timestamp{sys_days{ymd}.time_since_epoch().count(), TimeKind::kDate};
  }
  return std::nullopt;
}

std::string_view to_string(Compartment c) { return c == Compartment::kTop ? "top" : "bottom"; }

std::string_view to_string(Focus f) {
  return f == Focus::kVerticalSpace ? "vertical-space" : "straight-line";
}

std::string_view to_string(AffinityMode m) {
  return m == AffinityMode::kCoordinates ? "coordinates" : "node-link";
}

std::optional<Focus> parse_focus(std::string_view s) {
  if (s == "vertical-space") return Focus::kVerticalSpace;
  if (s == "straight-line") return Focus::kStraightLine;
  return std::nullopt;
}

// --- EntityAttributeTable ---------------------------------------------------

namespace {

template <class V>
const V* lookup(const std::map<EntityId, std::map<std::optional<Timestamp>, V>>& series,
                const EntityId& id, std::optional<Timestamp> t) {
  const auto it = series.find(id);
  if (it == series.end()) return nullptr;
  if (t) {
    if (const auto exact = it->second.find(t); exact != it->second.end()) return &exact->second;
  }
  if (const auto fallback = it->second.find(std::nullopt); fallback != it->second.end()) {
    return &fallback->second;
  }
  return nullptr;
}

}  // namespace

void EntityAttributeTable::set_line_identity(const EntityId& id, std::optional<Timestamp> at,
                                             std::string value) {
  identity_[id][at] = std::move(value);
}

void EntityAttributeTable::set_status(const EntityId& id, std::optional<Timestamp> at,
                                      std::string value) {
  status_[id][at] = std::move(value);
}

void EntityAttributeTable::set_context(const EntityId& id, std::optional<Timestamp> at,
                                       ContextPoint p) {
  context_[id][at] = p;
}

void EntityAttributeTable::set_display_name(const EntityId& id, std::string name) {
  names_[id] = std::move(name);
}

void EntityAttributeTable::set_categorical(const std::string& attribute, const EntityId& id,
                                           std::optional<Timestamp> at, std::string value) {
  extra_[attribute][id][at] = std::move(value);
}

std::string EntityAttributeTable::line_identity(const EntityId& id) const {
  const auto it = identity_.find(id);
  if (it == identity_.end() || it->second.empty()) return std::string(kUnknownCategory);
  // std::nullopt orders first, so a static value wins over dated ones; among
  // dated values the earliest is the identity at first appearance.
  return it->second.begin()->second;
}

std::string EntityAttributeTable::status_at(const EntityId& id, Timestamp t) const {
  const auto* v = lookup(status_, id, t);
  return v ? *v : std::string(kUnknownCategory);
}

std::optional<ContextPoint> EntityAttributeTable::context_at(const EntityId& id,
                                                             Timestamp t) const {
  const auto* v = lookup(context_, id, t);
  if (!v) return std::nullopt;
  return *v;
}

std::string EntityAttributeTable::display_name(const EntityId& id) const {
  const auto it = names_.find(id);
  return it == names_.end() ? id : it->second;
}

std::string EntityAttributeTable::categorical_at(const std::string& attribute, const EntityId& id,
                                                 Timestamp t) const {
  if (attribute == "lineIdentity") return line_identity(id);
  if (attribute == "status") return status_at(id, t);
  const auto it = extra_.find(attribute);
  if (it == extra_.end()) return std::string(kUnknownCategory);
  const auto* v = lookup(it->second, id, t);
  return v ? *v : std::string(kUnknownCategory);
}

bool EntityAttributeTable::has_attribute(const std::string& attribute) const {
  if (attribute == "lineIdentity") return !identity_.empty();
  if (attribute == "status") return !status_.empty();
  return extra_.contains(attribute);
}

std::set<EntityId> EntityAttributeTable::entities() const {
  std::set<EntityId> out;
  for (const auto& [id, _] : identity_) out.insert(id);
  for (const auto& [id, _] : status_) out.insert(id);
  for (const auto& [id, _] : context_) out.insert(id);
  for (const auto& [id, _] : names_) out.insert(id);
  for (const auto& [attr, series] : extra_) {
    for (const auto& [id, _] : series) out.insert(id);
  }
  return out;
}

// --- TimeAxis ---------------------------------------------------------------

TimeAxis TimeAxis::from_events(const std::vector<EventRecord>& events) {
  TimeAxis axis;
  for (const auto& e : events) axis.times.push_back(e.time);
  std::sort(axis.times.begin(), axis.times.end());
  axis.times.erase(std::unique(axis.times.begin(), axis.times.end()), axis.times.end());
  axis.included.assign(axis.times.size(), true);
  return axis;
}

std::optional<std::size_t> TimeAxis::index_of(Timestamp t) const {
  const auto it = std::lower_bound(times.begin(), times.end(), t);
  if (it == times.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - times.begin());
}

std::optional<Timestamp> TimeAxis::find_label(const std::string& label) const {
  for (const auto& t : times) {
    if (t.label() == label) return t;
  }
  // Accept equivalent spellings such as "+3" or "03".
  if (const auto parsed = parse_timestamp(label); parsed && index_of(*parsed)) return *parsed;
  return std::nullopt;
}

}  // namespace spreadline
