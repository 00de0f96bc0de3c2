#pragma once

#include <optional>
#include <utility>

#include "augmap/detail/kernel.h"

// Augmentation-specific queries. All of them exploit the cached subtree
// sums: a prefix/range query touches O(log n) nodes, reading whole-subtree
// contributions straight from the caches.

namespace augmap::detail {

template <class Entry, class Sch>
struct aug_ops {
  using N = node<Entry>;
  using K = typename Entry::key_t;
  using V = typename Entry::val_t;
  using A = typename Entry::aug_t;
  using kern = kernel<Entry, Sch>;

  static A aug_of(const N* t) { return t ? t->aug : Entry::get_empty(); }

  // aug over keys <= k
  static A left_incl(const N* t, const K& k) {
    if (!t) return Entry::get_empty();
    visit<Entry>(t);
    if (kern::less(k, t->key)) return left_incl(t->left, k);
    A a = Entry::combine(Entry::from_entry(t->key, t->val), left_incl(t->right, k));
    if (t->left) a = Entry::combine(t->left->aug, std::move(a));
    return a;
  }

  // aug over keys < k
  static A left_excl(const N* t, const K& k) {
    if (!t) return Entry::get_empty();
    visit<Entry>(t);
    if (!kern::less(t->key, k)) return left_excl(t->left, k);
    A a = Entry::combine(Entry::from_entry(t->key, t->val), left_excl(t->right, k));
    if (t->left) a = Entry::combine(t->left->aug, std::move(a));
    return a;
  }

  // aug over keys >= k
  static A right_incl(const N* t, const K& k) {
    if (!t) return Entry::get_empty();
    visit<Entry>(t);
    if (kern::less(t->key, k)) return right_incl(t->right, k);
    A a = Entry::combine(right_incl(t->left, k), Entry::from_entry(t->key, t->val));
    if (t->right) a = Entry::combine(std::move(a), t->right->aug);
    return a;
  }

  // aug over keys > k
  static A right_excl(const N* t, const K& k) {
    if (!t) return Entry::get_empty();
    visit<Entry>(t);
    if (!kern::less(k, t->key)) return right_excl(t->right, k);
    A a = Entry::combine(right_excl(t->left, k), Entry::from_entry(t->key, t->val));
    if (t->right) a = Entry::combine(std::move(a), t->right->aug);
    return a;
  }

  // aug over lo <= key <= hi: descend to the divergence node, then one
  // inclusive suffix walk left of it and one inclusive prefix walk right
  static A range(const N* t, const K& lo, const K& hi) {
    if (!t) return Entry::get_empty();
    visit<Entry>(t);
    if (kern::less(hi, t->key)) return range(t->left, lo, hi);
    if (kern::less(t->key, lo)) return range(t->right, lo, hi);
    A a = Entry::combine(Entry::from_entry(t->key, t->val), left_incl(t->right, hi));
    return Entry::combine(right_incl(t->left, lo), std::move(a));
  }

  // equals filter over pred(k,v) = h(g(k,v)) when h distributes over f as a
  // disjunction; subtrees whose cached aug fails h are pruned unvisited
  template <class H>
  static N* aug_filter(N* t, const H& h) {
    if (!t) return nullptr;
    visit<Entry>(t);
    if (!h(t->aug)) {
      release<Entry>(t);
      return nullptr;
    }
    bool par = size_of<Entry>(t) >= parallel::grain();
    N* cur = copy_if_needed<Entry>(t);
    N* lt = nullptr;
    N* rt = nullptr;
    N* cl = cur->left;
    N* cr = cur->right;
    parallel::par_do(par,
                     [&] { lt = aug_filter(cl, h); },
                     [&] { rt = aug_filter(cr, h); });
    if (h(Entry::from_entry(cur->key, cur->val))) return kern::join(lt, cur, rt);
    free_single<Entry>(cur);
    return kern::join2(lt, rt);
  }

  // g'(augRange(lo,hi)) computed by projecting the O(log n) cached subtree
  // sums through g' and combining with f'; needs f'(g'(a), g'(b)) = g'(f(a,b))
  template <class B, class G, class F>
  static B project(const N* t, const G& gp, const F& fp, const B& id, const K& lo,
                   const K& hi) {
    if (!t) return id;
    visit<Entry>(t);
    if (kern::less(hi, t->key)) return project(t->left, gp, fp, id, lo, hi);
    if (kern::less(t->key, lo)) return project(t->right, gp, fp, id, lo, hi);
    B mid = gp(Entry::from_entry(t->key, t->val));
    B r = fp(std::move(mid), project_left_incl(t->right, gp, fp, id, hi));
    return fp(project_right_incl(t->left, gp, fp, id, lo), std::move(r));
  }

  template <class B, class G, class F>
  static B project_left_incl(const N* t, const G& gp, const F& fp, const B& id, const K& k) {
    if (!t) return id;
    visit<Entry>(t);
    if (kern::less(k, t->key)) return project_left_incl(t->left, gp, fp, id, k);
    B a = fp(gp(Entry::from_entry(t->key, t->val)),
             project_left_incl(t->right, gp, fp, id, k));
    if (t->left) a = fp(gp(t->left->aug), std::move(a));
    return a;
  }

  template <class B, class G, class F>
  static B project_right_incl(const N* t, const G& gp, const F& fp, const B& id, const K& k) {
    if (!t) return id;
    visit<Entry>(t);
    if (kern::less(t->key, k)) return project_right_incl(t->right, gp, fp, id, k);
    B a = fp(project_right_incl(t->left, gp, fp, id, k),
             gp(Entry::from_entry(t->key, t->val)));
    if (t->right) a = fp(std::move(a), gp(t->right->aug));
    return a;
  }

  // ordered walk over the canonical decomposition of keys in [lo, hi]:
  // on_aug(a) once per maximal whole subtree (its cached aug), on_entry(k,v)
  // for the O(log n) path entries that fall inside the range
  template <class FA, class FE>
  static void scan_range(const N* t, const K& lo, const K& hi, const FA& on_aug,
                         const FE& on_entry) {
    if (!t) return;
    visit<Entry>(t);
    if (kern::less(hi, t->key)) {
      scan_range(t->left, lo, hi, on_aug, on_entry);
      return;
    }
    if (kern::less(t->key, lo)) {
      scan_range(t->right, lo, hi, on_aug, on_entry);
      return;
    }
    scan_right_incl(t->left, lo, on_aug, on_entry);
    on_entry(t->key, t->val);
    scan_left_incl(t->right, hi, on_aug, on_entry);
  }

  template <class FA, class FE>
  static void scan_left_incl(const N* t, const K& k, const FA& on_aug, const FE& on_entry) {
    if (!t) return;
    visit<Entry>(t);
    if (kern::less(k, t->key)) {
      scan_left_incl(t->left, k, on_aug, on_entry);
      return;
    }
    if (t->left) on_aug(t->left->aug);
    on_entry(t->key, t->val);
    scan_left_incl(t->right, k, on_aug, on_entry);
  }

  template <class FA, class FE>
  static void scan_right_incl(const N* t, const K& k, const FA& on_aug, const FE& on_entry) {
    if (!t) return;
    visit<Entry>(t);
    if (kern::less(t->key, k)) {
      scan_right_incl(t->right, k, on_aug, on_entry);
      return;
    }
    scan_right_incl(t->left, k, on_aug, on_entry);
    on_entry(t->key, t->val);
    if (t->right) on_aug(t->right->aug);
  }

  // locates one entry whose g satisfies pred by steering into a child whose
  // cached aug satisfies it; leftmost such entry when several qualify
  template <class P>
  static const N* aug_find(const N* t, const P& pred) {
    while (t) {
      visit<Entry>(t);
      if (t->left && pred(t->left->aug)) {
        t = t->left;
        continue;
      }
      if (pred(Entry::from_entry(t->key, t->val))) return t;
      if (t->right && pred(t->right->aug)) {
        t = t->right;
        continue;
      }
      return nullptr;
    }
    return nullptr;
  }
};

}  // namespace augmap::detail
