#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "augmap/map.h"

// Weighted inverted index: term -> posting list, where a posting list maps
// document ids to nonnegative weights and is augmented with its maximum
// weight. Boolean queries are the persistent set operations with additive
// weight combining; top-k pulls maxima through the augmentation.

namespace augmap {

struct posting_entry {
  using key_t = std::int64_t;  // document id
  using val_t = double;        // weight, >= 0
  using aug_t = double;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return 0.0; }
  static aug_t from_entry(const key_t&, const val_t& w) { return w; }
  static aug_t combine(const aug_t& a, const aug_t& b) { return b > a ? b : a; }
};

using posting_list = aug_map<posting_entry>;

struct add_weight {
  double operator()(double a, double b) const { return a + b; }
};

struct index_entry {  // plain outer map: no augmentation
  using key_t = std::string;
  using val_t = posting_list;
  using aug_t = unit;
  static bool comp(const key_t& a, const key_t& b) { return a < b; }
  static aug_t get_empty() { return {}; }
  static aug_t from_entry(const key_t&, const val_t&) { return {}; }
  static aug_t combine(unit, unit) { return {}; }
};

class inverted_index {
 public:
  struct triple {
    std::string term;
    std::int64_t doc;
    double weight;
  };
  using scored_doc = std::pair<std::int64_t, double>;
  using index_map = aug_map<index_entry>;

  inverted_index() = default;

  // group by term, build one posting list per term, weights of duplicate
  // (term, doc) pairs added
  static inverted_index build(std::vector<triple> triples) {
    std::stable_sort(triples.begin(), triples.end(),
                     [](const triple& a, const triple& b) { return a.term < b.term; });
    std::vector<std::pair<std::string, posting_list>> terms;
    std::size_t i = 0;
    std::vector<std::pair<std::int64_t, double>> docs;
    while (i < triples.size()) {
      std::size_t j = i;
      docs.clear();
      while (j < triples.size() && triples[j].term == triples[i].term) {
        docs.emplace_back(triples[j].doc, triples[j].weight);
        j++;
      }
      terms.emplace_back(triples[i].term,
                         posting_list::build(docs.data(), docs.size(), add_weight{}));
      i = j;
    }
    inverted_index idx;
    idx.terms_ = index_map::build(terms);
    return idx;
  }

  posting_list get(const std::string& term) const {
    auto p = terms_.find(term);
    return p ? *p : posting_list();
  }

  static posting_list q_and(posting_list a, posting_list b) {
    return map_intersect(std::move(a), std::move(b), add_weight{});
  }
  static posting_list q_or(posting_list a, posting_list b) {
    return map_union(std::move(a), std::move(b), add_weight{});
  }
  static posting_list q_and_not(posting_list a, posting_list b) {
    return map_difference(std::move(a), std::move(b));
  }

  // min(k, |p|) entries in non-increasing weight order, ties by ascending
  // doc id; works on a private snapshot so concurrent queries share p freely
  static std::vector<scored_doc> top_k(const posting_list& p, std::size_t k) {
    std::vector<scored_doc> out;
    posting_list work = p;
    while (out.size() < k && !work.empty()) {
      double best = work.aug_val();
      auto e = work.aug_find([best](double a) { return !(a < best); });
      out.emplace_back(e->first, e->second);
      work = std::move(work).erase(e->first);
    }
    return out;
  }

  std::size_t term_count() const { return terms_.size(); }
  const index_map& terms() const { return terms_; }

 private:
  index_map terms_;
};

}  // namespace augmap
