#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

// Sorted-vector reference used by the bench harness to verify results on
// small instances. Independent of the tree code on purpose: plain sorts,
// merges and scans only.

namespace augmap::bench::model {

using entry = std::pair<std::int64_t, std::int64_t>;
using table = std::vector<entry>;

// stable group-reduce by key, values combined left to right in input order
template <class H>
table build(const std::vector<entry>& in, const H& h) {
  std::vector<std::size_t> idx(in.size());
  for (std::size_t i = 0; i < idx.size(); i++) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (in[a].first != in[b].first) return in[a].first < in[b].first;
    return a < b;
  });
  table out;
  for (std::size_t i = 0; i < idx.size();) {
    std::int64_t k = in[idx[i]].first;
    std::int64_t acc = in[idx[i]].second;
    std::size_t j = i + 1;
    while (j < idx.size() && in[idx[j]].first == k) {
      acc = h(acc, in[idx[j]].second);
      j++;
    }
    out.emplace_back(k, acc);
    i = j;
  }
  return out;
}

template <class H>
table merge_union(const table& a, const table& b, const H& h) {
  table out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
      out.push_back(a[i++]);
    else if (i == a.size() || b[j].first < a[i].first)
      out.push_back(b[j++]);
    else {
      out.emplace_back(a[i].first, h(a[i].second, b[j].second));
      i++;
      j++;
    }
  }
  return out;
}

inline table slice(const table& a, std::int64_t lo, std::int64_t hi) {
  table out;
  for (const auto& e : a)
    if (e.first >= lo && e.first <= hi) out.push_back(e);
  return out;
}

inline std::int64_t sum_values(const table& a, std::int64_t lo, std::int64_t hi) {
  std::int64_t s = 0;
  for (const auto& e : a)
    if (e.first >= lo && e.first <= hi) s += e.second;
  return s;
}

template <class Pred>
table filtered(const table& a, const Pred& p) {
  table out;
  for (const auto& e : a)
    if (p(e.first, e.second)) out.push_back(e);
  return out;
}

}  // namespace augmap::bench::model
