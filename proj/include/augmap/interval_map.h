#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "augmap/map.h"

// Interval stabbing on closed intervals [l, r]: a map keyed by left
// endpoint with the right endpoint as value, augmented with the maximum
// right endpoint. The identity is "no interval", a dedicated bottom element
// (empty optional), not a numeric sentinel.

namespace augmap {

template <class P>
struct interval_entry {
  using key_t = P;
  using val_t = P;
  using aug_t = std::optional<P>;
  static bool comp(const P& a, const P& b) { return a < b; }
  static aug_t get_empty() { return std::nullopt; }
  static aug_t from_entry(const P&, const P& r) { return r; }
  static aug_t combine(const aug_t& a, const aug_t& b) {
    if (!a) return b;
    if (!b) return a;
    return *a < *b ? b : a;
  }
};

template <class P = std::int64_t, class Sch = weight_balanced>
class interval_map {
 public:
  using point = P;
  using interval = std::pair<P, P>;
  using map_type = aug_map<interval_entry<P>, Sch>;

  interval_map() = default;

  // duplicate left endpoints keep the larger right endpoint
  static interval_map build(const std::vector<interval>& intervals) {
    for (const auto& iv : intervals) check_interval(iv);
    interval_map m;
    m.map_ = map_type::build(intervals, keep_max_right{});
    return m;
  }

  interval_map insert(const interval& iv) const {
    check_interval(iv);
    interval_map m;
    m.map_ = map_.insert(iv.first, iv.second, keep_max_right{});
    return m;
  }

  interval_map erase(const P& left) const {
    interval_map m;
    m.map_ = map_.erase(left);
    return m;
  }

  // is p inside any stored interval
  bool stab(const P& p) const {
    auto mx = map_.aug_left_incl(p);
    return mx && !(*mx < p);
  }

  // every interval containing p, ascending by left endpoint
  std::vector<interval> report_all(const P& p) const {
    auto sub = map_.up_to(p).aug_filter(
        [&p](const std::optional<P>& a) { return a && !(*a < p); });
    std::vector<interval> out;
    out.reserve(sub.size());
    sub.for_each([&out](const P& l, const P& r) { out.emplace_back(l, r); });
    return out;
  }

  std::size_t size() const { return map_.size(); }
  std::optional<P> max_right() const { return map_.aug_val(); }
  const map_type& map() const { return map_; }

 private:
  static void check_interval(const interval& iv) {
    if (iv.second < iv.first) throw std::invalid_argument("interval: l > r");
  }

  struct keep_max_right {
    P operator()(P a, P b) const { return a < b ? b : a; }
  };

  map_type map_;
};

}  // namespace augmap
