#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "augmap/map.h"

// Longest strictly-increasing subsequence, length and count together, in
// O(n log n): insert elements left to right into a map keyed by element
// value whose entries carry (rear LIS length, rear LIS count). The combine
// keeps the larger length and sums counts on ties; an exclusive prefix
// query before each insert yields the best chain ending below the new
// element. The empty prefix counts as one subsequence, so the identity is
// (0, 1) and lis_count of an empty sequence is (0, 1).

namespace augmap {

struct lis_entry {
  using len_cnt = std::pair<std::int64_t, std::int64_t>;
  using key_t = std::int64_t;
  using val_t = len_cnt;
  using aug_t = len_cnt;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return {0, 1}; }
  static aug_t from_entry(const key_t&, const val_t& v) { return v; }
  static aug_t combine(const aug_t& a, const aug_t& b) {
    if (b.first > a.first) return b;
    if (a.first > b.first) return a;
    return {a.first, a.second + b.second};
  }
};

using lis_map = aug_map<lis_entry>;

inline std::pair<std::int64_t, std::int64_t> lis_count(const std::int64_t* s,
                                                       std::size_t n) {
  lis_map m;
  for (std::size_t i = 0; i < n; i++) {
    auto best = m.aug_left_excl(s[i]);
    lis_entry::len_cnt v{best.first + 1, best.second};
    m = std::move(m).insert(s[i], v, [](lis_entry::len_cnt a, lis_entry::len_cnt b) {
      return lis_entry::combine(a, b);
    });
  }
  return m.aug_val();
}

inline std::pair<std::int64_t, std::int64_t> lis_count(const std::vector<std::int64_t>& s) {
  return lis_count(s.data(), s.size());
}

}  // namespace augmap
