#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "augmap/detail/augops.h"
#include "augmap/detail/balance.h"
#include "augmap/detail/kernel.h"
#include "augmap/detail/node.h"

// An ordered map augmented with a user-supplied monoid sum, implemented as
// a join-based balanced tree. Handles are cheap shareable values; no
// operation observably mutates a map reachable through another live handle.
// Every update returns a new map, sharing structure with its inputs via
// path copying. Passing a handle by rvalue donates its reference, letting
// the kernel update nodes in place when it holds the only one.
//
// The Entry parameter packs the map type's seven pieces:
//   key_t, val_t, aug_t
//   static bool  comp(key_t, key_t)          strict total order on keys
//   static aug_t from_entry(key_t, val_t)    base function g
//   static aug_t combine(aug_t, aug_t)       associative f
//   static aug_t get_empty()                 identity of f
//
// The balancing scheme is weight_balanced by default; treap is the
// randomized alternate. Both expose the same interface.

namespace augmap {

struct unit {
  friend bool operator==(unit, unit) { return true; }
};

// combine policy used where the spec leaves h to the caller: new value wins
struct take_second {
  template <class V>
  V operator()(V, V b) const {
    return b;
  }
};

template <class Entry, class Sch = weight_balanced>
class aug_map;

template <class E, class S>
struct map_split_result;

template <class E, class S, class H = take_second>
aug_map<E, S> map_union(aug_map<E, S> a, aug_map<E, S> b, const H& h = H{});
template <class E, class S, class H = take_second>
aug_map<E, S> map_intersect(aug_map<E, S> a, aug_map<E, S> b, const H& h = H{});
template <class E, class S>
aug_map<E, S> map_difference(aug_map<E, S> a, aug_map<E, S> b);
template <class E, class S>
aug_map<E, S> map_join(aug_map<E, S> l, typename E::key_t k, typename E::val_t v,
                       aug_map<E, S> r);
template <class E, class S>
aug_map<E, S> map_join2(aug_map<E, S> l, aug_map<E, S> r);
template <class E, class S>
map_split_result<E, S> split(aug_map<E, S> m, const typename E::key_t& k);
template <class E, class S>
std::tuple<aug_map<E, S>, typename E::key_t, typename E::val_t> split_last(aug_map<E, S> m);

template <class Entry, class Sch>
class aug_map {
  using N = detail::node<Entry>;
  using kern = detail::kernel<Entry, Sch>;
  using aug = detail::aug_ops<Entry, Sch>;

 public:
  using entry_type = Entry;
  using scheme = Sch;
  using key_type = typename Entry::key_t;
  using value_type = typename Entry::val_t;
  using aug_type = typename Entry::aug_t;
  using entry = std::pair<key_type, value_type>;

  aug_map() = default;
  aug_map(const aug_map& o) : root_(o.root_) { detail::retain<Entry>(root_); }
  aug_map(aug_map&& o) noexcept : root_(o.root_) { o.root_ = nullptr; }
  aug_map& operator=(const aug_map& o) {
    if (this != &o) {
      detail::retain<Entry>(o.root_);
      detail::release<Entry>(root_);
      root_ = o.root_;
    }
    return *this;
  }
  aug_map& operator=(aug_map&& o) noexcept {
    if (this != &o) {
      detail::release<Entry>(root_);
      root_ = o.root_;
      o.root_ = nullptr;
    }
    return *this;
  }
  ~aug_map() { detail::release<Entry>(root_); }

  std::size_t size() const { return detail::size_of<Entry>(root_); }
  bool empty() const { return root_ == nullptr; }

  // ---- construction ----

  template <class H = take_second>
  static aug_map build(const entry* s, std::size_t n, const H& h = H{}) {
    return adopt(kern::build(s, n, h));
  }

  template <class H = take_second>
  static aug_map build(const std::vector<entry>& s, const H& h = H{}) {
    return build(s.data(), s.size(), h);
  }

  static aug_map singleton(key_type k, value_type v) {
    return adopt(detail::make_node<Entry>(std::move(k), std::move(v)));
  }

  // ---- lookups ----

  std::optional<value_type> find(const key_type& k) const { return kern::find(root_, k); }
  bool contains(const key_type& k) const { return kern::find_node(root_, k) != nullptr; }

  std::optional<entry> first() const { return entry_of(kern::first_node(root_)); }
  std::optional<entry> last() const { return entry_of(kern::last_node(root_)); }
  std::optional<entry> next(const key_type& k) const {
    return entry_of(kern::next_node(root_, k));
  }
  std::optional<entry> previous(const key_type& k) const {
    return entry_of(kern::previous_node(root_, k));
  }

  std::size_t rank(const key_type& k) const { return kern::rank(root_, k); }
  entry select(std::size_t i) const {
    const N* n = kern::select(root_, i);
    return {n->key, n->val};
  }

  // root decomposition; returned maps share nodes with this one
  std::tuple<aug_map, key_type, value_type, aug_map> expose() const {
    if (!root_) throw std::out_of_range("expose: empty map");
    detail::retain<Entry>(root_->left);
    detail::retain<Entry>(root_->right);
    return {adopt(root_->left), root_->key, root_->val, adopt(root_->right)};
  }

  // ---- single-entry updates ----

  template <class H = take_second>
  aug_map insert(const key_type& k, const value_type& v, const H& h = H{}) const& {
    return aug_map(*this).insert_in_place(k, v, h);
  }
  template <class H = take_second>
  aug_map insert(const key_type& k, const value_type& v, const H& h = H{}) && {
    return std::move(*this).insert_in_place(k, v, h);
  }

  aug_map erase(const key_type& k) const& { return aug_map(*this).erase_in_place(k); }
  aug_map erase(const key_type& k) && { return std::move(*this).erase_in_place(k); }

  // ---- range extraction (closed bounds) ----

  aug_map up_to(const key_type& k) const { return adopt(kern::up_to(copy_root(), k)); }
  aug_map down_to(const key_type& k) const { return adopt(kern::down_to(copy_root(), k)); }
  aug_map range(const key_type& lo, const key_type& hi) const {
    check_bounds(lo, hi);
    return adopt(kern::range(copy_root(), lo, hi));
  }

  // ---- whole-map transforms ----

  template <class Pred>
  aug_map filter(const Pred& p) const& {
    return adopt(kern::filter(copy_root(), p));
  }
  template <class Pred>
  aug_map filter(const Pred& p) && {
    return adopt(kern::filter(std::move(*this).take_root(), p));
  }

  template <class B, class G, class F>
  B map_reduce(const G& g, const F& f, const B& id) const {
    return kern::template map_reduce<B>(root_, g, f, id);
  }

  template <class H = take_second>
  aug_map multi_insert(const std::vector<entry>& s, const H& h = H{}) const {
    aug_map addend = build(s, h);
    return map_union(*this, std::move(addend), h);
  }

  // ---- augmented queries ----

  aug_type aug_val() const { return aug::aug_of(root_); }
  aug_type aug_left_incl(const key_type& k) const { return aug::left_incl(root_, k); }
  aug_type aug_left_excl(const key_type& k) const { return aug::left_excl(root_, k); }
  aug_type aug_right_incl(const key_type& k) const { return aug::right_incl(root_, k); }
  aug_type aug_right_excl(const key_type& k) const { return aug::right_excl(root_, k); }
  aug_type aug_range(const key_type& lo, const key_type& hi) const {
    check_bounds(lo, hi);
    return aug::range(root_, lo, hi);
  }

  template <class H>
  aug_map aug_filter(const H& h) const& {
    return adopt(aug::aug_filter(copy_root(), h));
  }
  template <class H>
  aug_map aug_filter(const H& h) && {
    return adopt(aug::aug_filter(std::move(*this).take_root(), h));
  }

  template <class B, class G, class F>
  B aug_project(const G& gp, const F& fp, const key_type& lo, const key_type& hi) const {
    check_bounds(lo, hi);
    return aug::template project<B>(root_, gp, fp, gp(Entry::get_empty()), lo, hi);
  }

  template <class P>
  std::optional<entry> aug_find(const P& pred) const {
    return entry_of(aug::aug_find(root_, pred));
  }

  // ---- conversion / checking ----

  std::vector<entry> entries() const {
    std::vector<entry> out;
    out.reserve(size());
    kern::collect(root_, out);
    return out;
  }

  // in-order walk without materializing entries
  template <class F>
  void for_each(const F& f) const {
    walk(root_, f);
  }

  // pruned in-order walk over keys in [lo, hi]; no node allocation
  template <class F>
  void for_each_in_range(const key_type& lo, const key_type& hi, const F& f) const {
    walk_range(root_, lo, hi, f);
  }

  // canonical decomposition of [lo, hi]: cached aug per maximal whole
  // subtree, entry callback per in-range path node, in key order
  template <class FA, class FE>
  void scan_range(const key_type& lo, const key_type& hi, const FA& on_aug,
                  const FE& on_entry) const {
    check_bounds(lo, hi);
    aug::scan_range(root_, lo, hi, on_aug, on_entry);
  }

  // full structural validation: order, sizes, cached aug, balance, refcounts
  template <class AugEq = std::equal_to<aug_type>>
  bool check_valid(const AugEq& aug_eq = AugEq{}) const {
    typename kern::check_state st;
    const key_type* lo = nullptr;
    kern::check(root_, &lo, st, aug_eq);
    return st.ok;
  }

  std::uint32_t root_refcount() const {
    return root_ ? root_->refs.load(std::memory_order_relaxed) : 0;
  }

  // allocator tallies for this map type's node pool
  static std::int64_t nodes_allocated() { return pool().allocated(); }
  static std::int64_t nodes_freed() { return pool().freed(); }
  static std::int64_t nodes_live() { return pool().live(); }
  static void set_block_nodes(std::size_t n) { pool().set_block_nodes(n); }

  // ---- free-function algebra ----

  template <class E, class S, class H>
  friend aug_map<E, S> map_union(aug_map<E, S> a, aug_map<E, S> b, const H& h);
  template <class E, class S, class H>
  friend aug_map<E, S> map_intersect(aug_map<E, S> a, aug_map<E, S> b, const H& h);
  template <class E, class S>
  friend aug_map<E, S> map_difference(aug_map<E, S> a, aug_map<E, S> b);
  template <class E, class S>
  friend aug_map<E, S> map_join(aug_map<E, S> l, typename E::key_t k, typename E::val_t v,
                                aug_map<E, S> r);
  template <class E, class S>
  friend aug_map<E, S> map_join2(aug_map<E, S> l, aug_map<E, S> r);

  template <class E, class S>
  friend map_split_result<E, S> split(aug_map<E, S> m, const typename E::key_t& k);
  template <class E, class S>
  friend std::tuple<aug_map<E, S>, typename E::key_t, typename E::val_t> split_last(
      aug_map<E, S> m);

 private:
  static detail::node_pool<N>& pool() { return detail::node_pool<N>::get(); }

  explicit aug_map(N* owned) : root_(owned) {}
  static aug_map adopt(N* owned) { return aug_map(owned); }

  // an owned reference for kernel calls: +1 on the shared root
  N* copy_root() const {
    detail::retain<Entry>(root_);
    return root_;
  }
  // donate this handle's reference
  N* take_root() && {
    N* r = root_;
    root_ = nullptr;
    return r;
  }
  N* take_root() & = delete;

  template <class H>
  aug_map insert_in_place(const key_type& k, const value_type& v, const H& h) && {
    return adopt(kern::insert(std::move(*this).take_root(), k, v, h));
  }
  aug_map erase_in_place(const key_type& k) && {
    return adopt(kern::erase(std::move(*this).take_root(), k));
  }

  static std::optional<entry> entry_of(const N* n) {
    if (!n) return std::nullopt;
    return entry{n->key, n->val};
  }

  static void check_bounds(const key_type& lo, const key_type& hi) {
    if (Entry::comp(hi, lo)) throw std::invalid_argument("range: lower bound above upper");
  }

  template <class F>
  static void walk(const N* t, const F& f) {
    if (!t) return;
    walk(t->left, f);
    f(t->key, t->val);
    walk(t->right, f);
  }

  template <class F>
  static void walk_range(const N* t, const key_type& lo, const key_type& hi, const F& f) {
    if (!t) return;
    bool above_lo = !Entry::comp(t->key, lo);
    bool below_hi = !Entry::comp(hi, t->key);
    if (above_lo) walk_range(t->left, lo, hi, f);
    if (above_lo && below_hi) f(t->key, t->val);
    if (below_hi) walk_range(t->right, lo, hi, f);
  }

  N* root_ = nullptr;
};

template <class E, class S, class H>
aug_map<E, S> map_union(aug_map<E, S> a, aug_map<E, S> b, const H& h) {
  using kern = detail::kernel<E, S>;
  return aug_map<E, S>::adopt(
      kern::map_union(std::move(a).take_root(), std::move(b).take_root(), h));
}

template <class E, class S, class H>
aug_map<E, S> map_intersect(aug_map<E, S> a, aug_map<E, S> b, const H& h) {
  using kern = detail::kernel<E, S>;
  return aug_map<E, S>::adopt(
      kern::map_intersect(std::move(a).take_root(), std::move(b).take_root(), h));
}

template <class E, class S>
aug_map<E, S> map_difference(aug_map<E, S> a, aug_map<E, S> b) {
  using kern = detail::kernel<E, S>;
  return aug_map<E, S>::adopt(
      kern::map_difference(std::move(a).take_root(), std::move(b).take_root()));
}

// max(l) < k < min(r); checked in validating builds
template <class E, class S>
aug_map<E, S> map_join(aug_map<E, S> l, typename E::key_t k, typename E::val_t v,
                       aug_map<E, S> r) {
  using kern = detail::kernel<E, S>;
#ifdef AUGMAP_VALIDATE
  if (!l.empty()) assert(E::comp(l.last()->first, k));
  if (!r.empty()) assert(E::comp(k, r.first()->first));
#endif
  return aug_map<E, S>::adopt(kern::join(std::move(l).take_root(),
                                         detail::make_node<E>(std::move(k), std::move(v)),
                                         std::move(r).take_root()));
}

template <class E, class S>
aug_map<E, S> map_join2(aug_map<E, S> l, aug_map<E, S> r) {
  using kern = detail::kernel<E, S>;
  return aug_map<E, S>::adopt(
      kern::join2(std::move(l).take_root(), std::move(r).take_root()));
}

template <class E, class S>
struct map_split_result {
  aug_map<E, S> less;
  std::optional<typename E::val_t> value;
  aug_map<E, S> greater;
};

template <class E, class S>
map_split_result<E, S> split(aug_map<E, S> m, const typename E::key_t& k) {
  using kern = detail::kernel<E, S>;
  auto s = kern::split(std::move(m).take_root(), k);
  return {aug_map<E, S>::adopt(s.left), std::move(s.value), aug_map<E, S>::adopt(s.right)};
}

// the map without its maximum entry, plus that entry
template <class E, class S>
std::tuple<aug_map<E, S>, typename E::key_t, typename E::val_t> split_last(aug_map<E, S> m) {
  using kern = detail::kernel<E, S>;
  if (m.empty()) throw std::out_of_range("split_last: empty map");
  auto [rest, last] = kern::split_last(std::move(m).take_root());
  typename E::key_t k = last->key;
  typename E::val_t v = last->val;
  detail::free_single<E>(last);
  return {aug_map<E, S>::adopt(rest), std::move(k), std::move(v)};
}

}  // namespace augmap
