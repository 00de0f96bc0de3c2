#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "augmap/map.h"
#include "oracle.h"

namespace testutil {

using i64 = std::int64_t;

struct sum_entry {
  using key_t = i64;
  using val_t = i64;
  using aug_t = i64;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return 0; }
  static aug_t from_entry(const key_t&, const val_t& v) { return v; }
  static aug_t combine(const aug_t& a, const aug_t& b) { return a + b; }
};

struct max_entry {
  using key_t = i64;
  using val_t = i64;
  using aug_t = i64;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return INT64_MIN; }
  static aug_t from_entry(const key_t&, const val_t& v) { return v; }
  static aug_t combine(const aug_t& a, const aug_t& b) { return b > a ? b : a; }
};

// non-commutative augmentation: concatenation of value digits in key order
struct concat_entry {
  using key_t = i64;
  using val_t = std::string;
  using aug_t = std::string;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return ""; }
  static aug_t from_entry(const key_t&, const val_t& v) { return v; }
  static aug_t combine(const aug_t& a, const aug_t& b) { return a + b; }
};

using wb_sum_map = augmap::aug_map<sum_entry, augmap::weight_balanced>;
using tr_sum_map = augmap::aug_map<sum_entry, augmap::treap>;
using wb_max_map = augmap::aug_map<max_entry, augmap::weight_balanced>;

inline oracle::table to_table(const std::vector<std::pair<i64, i64>>& v) { return v; }

template <class M>
bool entries_equal(const M& m, const oracle::table& t) {
  if (m.size() != t.size()) return false;
  auto e = m.entries();
  for (std::size_t i = 0; i < t.size(); i++)
    if (e[i].first != t[i].first || e[i].second != t[i].second) return false;
  return true;
}

inline std::vector<std::pair<i64, i64>> random_entries(std::mt19937_64& rng, std::size_t n,
                                                       i64 key_range) {
  std::uniform_int_distribution<i64> key(0, key_range);
  std::uniform_int_distribution<i64> val(0, 1000);
  std::vector<std::pair<i64, i64>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; i++) out.emplace_back(key(rng), val(rng));
  return out;
}

template <class M>
M build_map(const std::vector<std::pair<i64, i64>>& entries) {
  return M::build(entries);
}

inline double log2p(double x) { return std::log2(x); }

}  // namespace testutil
