#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "augmap/map.h"

// Two-level map for weighted 2D range queries over closed rectangles.
// Outer map: points under x-major order, weight values; its augmented value
// is an inner map of the same points under y-major order with a weight-sum
// augmentation. The outer combine is a persistent union-with-weight-add, so
// inner maps share nodes across levels instead of copying.

namespace augmap {

template <class C = std::int64_t, class W = std::int64_t>
struct range_map_types {
  using coord = C;
  using weight = W;
  using point = std::pair<C, C>;  // (x, y)

  struct inner_entry {  // keyed (y, x)
    using key_t = point;
    using val_t = W;
    using aug_t = W;
    static bool comp(const point& a, const point& b) {
      if (a.second != b.second) return a.second < b.second;
      return a.first < b.first;
    }
    static aug_t get_empty() { return W{}; }
    static aug_t from_entry(const point&, const W& w) { return w; }
    static aug_t combine(const aug_t& a, const aug_t& b) { return a + b; }
  };
  using inner_map = aug_map<inner_entry>;

  struct add_weights {
    W operator()(W a, W b) const { return a + b; }
  };

  struct outer_entry {  // keyed (x, y); aug is the inner map of the subtree
    using key_t = point;
    using val_t = W;
    using aug_t = inner_map;
    static bool comp(const point& a, const point& b) { return a < b; }
    static aug_t get_empty() { return inner_map(); }
    static aug_t from_entry(const point& p, const W& w) {
      return inner_map::singleton(p, w);
    }
    static aug_t combine(const aug_t& a, const aug_t& b) {
      return map_union(a, b, add_weights{});
    }
  };
  using outer_map = aug_map<outer_entry>;
};

template <class C = std::int64_t, class W = std::int64_t>
class range_map {
  using types = range_map_types<C, W>;
  using inner_map = typename types::inner_map;
  using outer_map = typename types::outer_map;

 public:
  using point = typename types::point;
  using weighted_point = std::pair<point, W>;  // ((x, y), w)

  range_map() = default;

  // duplicate (x, y) points have their weights added
  static range_map build(const std::vector<weighted_point>& pts) {
    range_map m;
    m.outer_ = outer_map::build(pts, typename types::add_weights{});
    return m;
  }

  range_map insert(const point& p, const W& w) const {
    range_map m;
    m.outer_ = outer_.insert(p, w, typename types::add_weights{});
    return m;
  }

  // Sum of weights inside [xl, xr] x [yl, yr]: the inner augmented range sum
  // projected over the outer canonical decomposition, with path entries
  // tested directly. Allocation-free; equal to projecting the inner sum
  // through aug_project, which builds a transient singleton per path entry.
  W sum(C xl, C xr, C yl, C yr) const {
    point lo{xl, std::numeric_limits<C>::lowest()};
    point hi{xr, std::numeric_limits<C>::max()};
    W total{};
    outer_.scan_range(
        lo, hi, [&](const inner_map& im) { total = total + inner_sum(im, yl, yr); },
        [&](const point& p, const W& w) {
          if (!(p.second < yl) && !(yr < p.second)) total = total + w;
        });
    return total;
  }

  // the aug_project realization of the same query, kept for cross-checking
  W sum_via_project(C xl, C xr, C yl, C yr) const {
    point lo{xl, std::numeric_limits<C>::lowest()};
    point hi{xr, std::numeric_limits<C>::max()};
    auto project = [&](const inner_map& im) { return inner_sum(im, yl, yr); };
    auto add = [](W a, W b) { return a + b; };
    return outer_.template aug_project<W>(project, add, lo, hi);
  }

  // all points inside the rectangle with their weights; grouped by the
  // outer canonical subtrees (x order), y-ordered within each group
  std::vector<weighted_point> report(C xl, C xr, C yl, C yr) const {
    std::vector<weighted_point> out;
    point lo{xl, std::numeric_limits<C>::lowest()};
    point hi{xr, std::numeric_limits<C>::max()};
    outer_.scan_range(
        lo, hi, [&](const inner_map& im) { collect_inner(im, yl, yr, out); },
        [&](const point& p, const W& w) {
          if (!(p.second < yl) && !(yr < p.second)) out.emplace_back(p, w);
        });
    return out;
  }

  std::size_t size() const { return outer_.size(); }
  W total_weight() const { return outer_.aug_val().aug_val(); }
  const outer_map& outer() const { return outer_; }

  static std::int64_t inner_nodes_allocated() { return inner_map::nodes_allocated(); }
  static std::int64_t inner_nodes_live() { return inner_map::nodes_live(); }

 private:
  static W inner_sum(const inner_map& im, C yl, C yr) {
    point lo{std::numeric_limits<C>::lowest(), yl};
    point hi{std::numeric_limits<C>::max(), yr};
    return im.aug_range(lo, hi);
  }

  static void collect_inner(const inner_map& im, C yl, C yr,
                            std::vector<weighted_point>& out) {
    point lo{std::numeric_limits<C>::lowest(), yl};
    point hi{std::numeric_limits<C>::max(), yr};
    collect_range(im, lo, hi, out);
  }

  // pruned in-order walk, no node allocation
  static void collect_range(const inner_map& im, const point& lo, const point& hi,
                            std::vector<weighted_point>& out) {
    im.for_each_in_range(lo, hi,
                         [&](const point& p, const W& w) { out.emplace_back(p, w); });
  }

  outer_map outer_;
};

}  // namespace augmap
