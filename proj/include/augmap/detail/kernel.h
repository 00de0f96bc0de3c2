#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "augmap/detail/balance.h"
#include "augmap/detail/node.h"
#include "augmap/parallel.h"

// Scheme-independent map operations on raw nodes. Ownership convention:
// every node* argument is a reference the call consumes, every node* result
// is a reference the caller owns. Read-only walks take const node* and
// borrow. Bulk operations fork their two recursive halves when both inputs
// are at or above the parallel grain.

namespace augmap::detail {

template <class Entry, class Sch>
struct kernel {
  using N = node<Entry>;
  using K = typename Entry::key_t;
  using V = typename Entry::val_t;
  using A = typename Entry::aug_t;

  static bool less(const K& a, const K& b) { return less_keys<Entry>(a, b); }

  static N* join(N* l, N* m, N* r) { return Sch::template join<Entry>(l, m, r); }

  // ---- searches (borrowing) ----

  static const N* find_node(const N* t, const K& k) {
    while (t) {
      visit<Entry>(t);
      if (less(k, t->key))
        t = t->left;
      else if (less(t->key, k))
        t = t->right;
      else
        return t;
    }
    return nullptr;
  }

  static std::optional<V> find(const N* t, const K& k) {
    const N* n = find_node(t, k);
    if (!n) return std::nullopt;
    return n->val;
  }

  static const N* first_node(const N* t) {
    if (!t) return nullptr;
    while (t->left) {
      visit<Entry>(t);
      t = t->left;
    }
    visit<Entry>(t);
    return t;
  }

  static const N* last_node(const N* t) {
    if (!t) return nullptr;
    while (t->right) {
      visit<Entry>(t);
      t = t->right;
    }
    visit<Entry>(t);
    return t;
  }

  // smallest key > k
  static const N* next_node(const N* t, const K& k) {
    const N* cand = nullptr;
    while (t) {
      visit<Entry>(t);
      if (less(k, t->key)) {
        cand = t;
        t = t->left;
      } else {
        t = t->right;
      }
    }
    return cand;
  }

  // largest key < k
  static const N* previous_node(const N* t, const K& k) {
    const N* cand = nullptr;
    while (t) {
      visit<Entry>(t);
      if (less(t->key, k)) {
        cand = t;
        t = t->right;
      } else {
        t = t->left;
      }
    }
    return cand;
  }

  // number of keys < k
  static std::size_t rank(const N* t, const K& k) {
    std::size_t r = 0;
    while (t) {
      visit<Entry>(t);
      if (less(t->key, k)) {
        r += size_of<Entry>(t->left) + 1;
        t = t->right;
      } else {
        t = t->left;
      }
    }
    return r;
  }

  static const N* select(const N* t, std::size_t i) {
    if (i >= size_of<Entry>(t)) throw std::out_of_range("select: index out of range");
    for (;;) {
      visit<Entry>(t);
      std::size_t ls = size_of<Entry>(t->left);
      if (i < ls)
        t = t->left;
      else if (i == ls)
        return t;
      else {
        i -= ls + 1;
        t = t->right;
      }
    }
  }

  // ---- split / join2 ----

  struct split_result {
    N* left = nullptr;
    N* right = nullptr;
    bool found = false;
    std::optional<V> value;
  };

  static split_result split(N* t, const K& k) {
    if (!t) return {};
    visit<Entry>(t);
    N* cur = copy_if_needed<Entry>(t);
    if (less(k, cur->key)) {
      split_result s = split(cur->left, k);
      N* merged = join(s.right, cur, cur->right);
      return {s.left, merged, s.found, std::move(s.value)};
    }
    if (less(cur->key, k)) {
      split_result s = split(cur->right, k);
      N* merged = join(cur->left, cur, s.left);
      return {merged, s.right, s.found, std::move(s.value)};
    }
    split_result s{cur->left, cur->right, true, std::move(cur->val)};
    free_single<Entry>(cur);
    return s;
  }

  // removes and returns the maximum entry; t nonempty
  static std::pair<N*, N*> split_last(N* t) {
    visit<Entry>(t);
    N* cur = copy_if_needed<Entry>(t);
    if (!cur->right) {
      N* rest = cur->left;
      cur->left = cur->right = nullptr;
      return {rest, cur};
    }
    auto [rest, last] = split_last(cur->right);
    return {join(cur->left, cur, rest), last};
  }

  static N* join2(N* l, N* r) {
    if (!l) return r;
    if (!r) return l;
    auto [rest, last] = split_last(l);
    return join(rest, last, r);
  }

  // ---- set algebra; pivot is the second argument's root ----

  template <class H>
  static N* map_union(N* a, N* b, const H& h) {
    if (!a) return b;
    if (!b) return a;
    bool par = std::min(size_of<Entry>(a), size_of<Entry>(b)) >= parallel::grain();
    N* m = copy_if_needed<Entry>(b);
    split_result s = split(a, m->key);
    if (s.found) m->val = h(std::move(*s.value), std::move(m->val));
    N* lt = nullptr;
    N* rt = nullptr;
    N* bl = m->left;
    N* br = m->right;
    parallel::par_do(par,
                     [&] { lt = map_union(s.left, bl, h); },
                     [&] { rt = map_union(s.right, br, h); });
    return join(lt, m, rt);
  }

  template <class H>
  static N* map_intersect(N* a, N* b, const H& h) {
    if (!a || !b) {
      release<Entry>(a);
      release<Entry>(b);
      return nullptr;
    }
    bool par = std::min(size_of<Entry>(a), size_of<Entry>(b)) >= parallel::grain();
    N* m = copy_if_needed<Entry>(b);
    split_result s = split(a, m->key);
    N* lt = nullptr;
    N* rt = nullptr;
    N* bl = m->left;
    N* br = m->right;
    parallel::par_do(par,
                     [&] { lt = map_intersect(s.left, bl, h); },
                     [&] { rt = map_intersect(s.right, br, h); });
    if (s.found) {
      m->val = h(std::move(*s.value), std::move(m->val));
      return join(lt, m, rt);
    }
    free_single<Entry>(m);
    return join2(lt, rt);
  }

  static N* map_difference(N* a, N* b) {
    if (!a) {
      release<Entry>(b);
      return nullptr;
    }
    if (!b) return a;
    bool par = std::min(size_of<Entry>(a), size_of<Entry>(b)) >= parallel::grain();
    detached<Entry> d = detach<Entry>(b);
    split_result s = split(a, d.key);
    N* lt = nullptr;
    N* rt = nullptr;
    parallel::par_do(par,
                     [&] { lt = map_difference(s.left, d.left); },
                     [&] { rt = map_difference(s.right, d.right); });
    return join2(lt, rt);
  }

  // ---- single-entry updates, via recursive join ----

  template <class H>
  static N* insert(N* t, const K& k, const V& v, const H& h) {
    if (!t) return make_node<Entry>(k, v);
    visit<Entry>(t);
    N* cur = copy_if_needed<Entry>(t);
    if (less(k, cur->key)) {
      N* nl = insert(cur->left, k, v, h);
      return join(nl, cur, cur->right);
    }
    if (less(cur->key, k)) {
      N* nr = insert(cur->right, k, v, h);
      return join(cur->left, cur, nr);
    }
    cur->val = h(std::move(cur->val), v);
    update<Entry>(cur);
    return cur;
  }

  static N* erase(N* t, const K& k) {
    if (!t) return nullptr;
    visit<Entry>(t);
    if (less(k, t->key)) {
      N* cur = copy_if_needed<Entry>(t);
      N* nl = erase(cur->left, k);
      return join(nl, cur, cur->right);
    }
    if (less(t->key, k)) {
      N* cur = copy_if_needed<Entry>(t);
      N* nr = erase(cur->right, k);
      return join(cur->left, cur, nr);
    }
    detached<Entry> d = detach<Entry>(t);
    return join2(d.left, d.right);
  }

  // ---- range extraction (closed bounds) ----

  static N* up_to(N* t, const K& k) {
    split_result s = split(t, k);
    release<Entry>(s.right);
    if (!s.found) return s.left;
    return join(s.left, make_node<Entry>(k, std::move(*s.value)), nullptr);
  }

  static N* down_to(N* t, const K& k) {
    split_result s = split(t, k);
    release<Entry>(s.left);
    if (!s.found) return s.right;
    return join(nullptr, make_node<Entry>(k, std::move(*s.value)), s.right);
  }

  static N* range(N* t, const K& lo, const K& hi) {
    split_result s1 = split(t, lo);
    release<Entry>(s1.left);
    split_result s2 = split(s1.right, hi);
    release<Entry>(s2.right);
    N* mid = s2.left;
    if (s2.found) mid = join(mid, make_node<Entry>(hi, std::move(*s2.value)), nullptr);
    if (s1.found) mid = join(nullptr, make_node<Entry>(lo, std::move(*s1.value)), mid);
    return mid;
  }

  // ---- whole-map transforms ----

  template <class Pred>
  static N* filter(N* t, const Pred& pred) {
    if (!t) return nullptr;
    bool par = size_of<Entry>(t) >= parallel::grain();
    N* cur = copy_if_needed<Entry>(t);
    N* lt = nullptr;
    N* rt = nullptr;
    N* cl = cur->left;
    N* cr = cur->right;
    parallel::par_do(par,
                     [&] { lt = filter(cl, pred); },
                     [&] { rt = filter(cr, pred); });
    if (pred(cur->key, cur->val)) return join(lt, cur, rt);
    free_single<Entry>(cur);
    return join2(lt, rt);
  }

  template <class B, class G, class F>
  static B map_reduce(const N* t, const G& g, const F& f, const B& id) {
    if (!t) return id;
    bool par = size_of<Entry>(t) >= parallel::grain();
    B lv = id;
    B rv = id;
    parallel::par_do(par,
                     [&] { lv = map_reduce<B>(t->left, g, f, id); },
                     [&] { rv = map_reduce<B>(t->right, g, f, id); });
    return f(std::move(lv), f(g(t->key, t->val), std::move(rv)));
  }

  // ---- construction ----

  // perfectly sized midpoint recursion over distinct sorted entries
  static N* build_sorted(const std::pair<K, V>* s, std::size_t n) {
    if (n == 0) return nullptr;
    if (n == 1) return make_node<Entry>(s[0].first, s[0].second);
    std::size_t mid = n / 2;
    N* l = nullptr;
    N* r = nullptr;
    parallel::par_do(n >= parallel::grain(),
                     [&] { l = build_sorted(s, mid); },
                     [&] { r = build_sorted(s + mid + 1, n - mid - 1); });
    return join(l, make_node<Entry>(s[mid].first, s[mid].second), r);
  }

  // unsorted input, duplicates allowed; duplicate values reduced in input
  // order by h
  template <class H>
  static N* build(const std::pair<K, V>* s, std::size_t n, const H& h) {
    if (n == 0) return nullptr;
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; i++) order[i] = std::uint32_t(i);
    auto cmp = [s](std::uint32_t x, std::uint32_t y) {
      if (less(s[x].first, s[y].first)) return true;
      if (less(s[y].first, s[x].first)) return false;
      return x < y;
    };
    parallel_sort(order.data(), n, cmp);

    std::vector<std::size_t> heads;
    heads.reserve(64);
    heads.push_back(0);
    for (std::size_t i = 1; i < n; i++)
      if (less(s[order[i - 1]].first, s[order[i]].first)) heads.push_back(i);

    std::size_t groups = heads.size();
    std::vector<std::pair<K, V>> reduced(groups, std::pair<K, V>());
    reduce_groups(s, order, heads, reduced, 0, groups, h);
    return build_sorted(reduced.data(), groups);
  }

  template <class H>
  static void reduce_groups(const std::pair<K, V>* s, const std::vector<std::uint32_t>& order,
                            const std::vector<std::size_t>& heads,
                            std::vector<std::pair<K, V>>& out, std::size_t lo, std::size_t hi,
                            const H& h) {
    if (hi - lo >= parallel::grain()) {
      std::size_t mid = lo + (hi - lo) / 2;
      parallel::par_do(true,
                       [&] { reduce_groups(s, order, heads, out, lo, mid, h); },
                       [&] { reduce_groups(s, order, heads, out, mid, hi, h); });
      return;
    }
    std::size_t n = order.size();
    for (std::size_t g = lo; g < hi; g++) {
      std::size_t b = heads[g];
      std::size_t e = g + 1 < heads.size() ? heads[g + 1] : n;
      K key = s[order[b]].first;
      V acc = s[order[b]].second;
      for (std::size_t i = b + 1; i < e; i++) acc = h(std::move(acc), s[order[i]].second);
      out[g] = {std::move(key), std::move(acc)};
    }
  }

  template <class T, class Cmp>
  static void parallel_sort(T* a, std::size_t n, const Cmp& cmp) {
    if (n < 4096 || parallel::scheduler::get().workers() <= 1) {
      std::sort(a, a + n, cmp);
      return;
    }
    std::vector<T> buf(n);
    msort(a, buf.data(), n, cmp, false);
  }

  // classic mergesort; data ends in `a` when to_buf is false
  template <class T, class Cmp>
  static void msort(T* a, T* b, std::size_t n, const Cmp& cmp, bool to_buf) {
    if (n < 4096) {
      std::sort(a, a + n, cmp);
      if (to_buf) std::copy(a, a + n, b);
      return;
    }
    std::size_t mid = n / 2;
    parallel::par_do(true,
                     [&] { msort(a, b, mid, cmp, !to_buf); },
                     [&] { msort(a + mid, b + mid, n - mid, cmp, !to_buf); });
    if (to_buf)
      parallel_merge(a, mid, a + mid, n - mid, b, cmp);
    else
      parallel_merge(b, mid, b + mid, n - mid, a, cmp);
  }

  template <class T, class Cmp>
  static void parallel_merge(T* a, std::size_t na, T* b, std::size_t nb, T* out,
                             const Cmp& cmp) {
    if (na + nb < 8192) {
      std::merge(a, a + na, b, b + nb, out, cmp);
      return;
    }
    if (na < nb) {
      parallel_merge_rev(b, nb, a, na, out, cmp);
      return;
    }
    std::size_t ma = na / 2;
    std::size_t mb = std::lower_bound(b, b + nb, a[ma], cmp) - b;
    parallel::par_do(true,
                     [&] { parallel_merge(a, ma, b, mb, out, cmp); },
                     [&] { parallel_merge(a + ma, na - ma, b + mb, nb - mb, out + ma + mb, cmp); });
  }

  // same, with operands swapped so the larger side is always bisected
  template <class T, class Cmp>
  static void parallel_merge_rev(T* a, std::size_t na, T* b, std::size_t nb, T* out,
                                 const Cmp& cmp) {
    std::size_t ma = na / 2;
    std::size_t mb = std::upper_bound(b, b + nb, a[ma], cmp) - b;
    parallel::par_do(true,
                     [&] { parallel_merge(b, mb, a, ma, out, cmp); },
                     [&] { parallel_merge(b + mb, nb - mb, a + ma, na - ma, out + ma + mb, cmp); });
  }

  // ---- extraction / checking (borrowing) ----

  static void collect(const N* t, std::vector<std::pair<K, V>>& out) {
    if (!t) return;
    collect(t->left, out);
    out.emplace_back(t->key, t->val);
    collect(t->right, out);
  }

  struct check_state {
    bool ok = true;
    const char* what = "";
    void fail(const char* w) {
      if (ok) {
        ok = false;
        what = w;
      }
    }
  };

  template <class AugEq>
  static void check(const N* t, const K** lo, check_state& st, const AugEq& aug_eq) {
    if (!t || !st.ok) return;
    check(t->left, lo, st, aug_eq);
    if (*lo && !Entry::comp(**lo, t->key)) st.fail("key order");
    *lo = &t->key;
    check(t->right, lo, st, aug_eq);
    if (t->size != size_of<Entry>(t->left) + size_of<Entry>(t->right) + 1)
      st.fail("size field");
    if (!Sch::template node_balanced<Entry>(t)) st.fail("balance invariant");
    A expect = Entry::from_entry(t->key, t->val);
    if (t->right) expect = Entry::combine(std::move(expect), t->right->aug);
    if (t->left) expect = Entry::combine(t->left->aug, std::move(expect));
    if (!aug_eq(expect, t->aug)) st.fail("cached aug");
    if (t->refs.load(std::memory_order_relaxed) == 0) st.fail("refcount");
  }
};

}  // namespace augmap::detail
