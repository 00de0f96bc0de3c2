#pragma once

#include <cassert>
#include <cstdint>

#include "augmap/detail/hash.h"
#include "augmap/detail/node.h"

// Balancing schemes. Each scheme supplies join(l, m, r): l and r are owned
// tree references with max(l) < m->key < min(r); m is an exclusively owned
// node whose child links are garbage and will be overwritten. join consumes
// all three and returns an owned, balanced, augmented tree. Everything else
// in the library is scheme-independent.

namespace augmap {

namespace detail {

// attach children and recompute size/aug
template <class Entry>
node<Entry>* link(node<Entry>* l, node<Entry>* m, node<Entry>* r) {
  m->left = l;
  m->right = r;
  update<Entry>(m);
  visit<Entry>(m);
  return m;
}

// rotations operate on exclusively owned tops; the pivot child is made
// exclusive on demand
template <class Entry>
node<Entry>* rotate_left(node<Entry>* t) {
  node<Entry>* u = copy_if_needed<Entry>(t->right);
  t->right = u->left;
  u->left = t;
  update<Entry>(t);
  update<Entry>(u);
  visit<Entry>(t);
  visit<Entry>(u);
  return u;
}

template <class Entry>
node<Entry>* rotate_right(node<Entry>* t) {
  node<Entry>* u = copy_if_needed<Entry>(t->left);
  t->left = u->right;
  u->right = t;
  update<Entry>(t);
  update<Entry>(u);
  visit<Entry>(t);
  visit<Entry>(u);
  return u;
}

}  // namespace detail

// BB[alpha] weight-balanced scheme, alpha = 0.29 (exact rational 29/100).
// Every subtree satisfies weight(child) >= alpha * weight(parent).
struct weight_balanced {
  static constexpr long long kAlphaNum = 29;
  static constexpr long long kAlphaDen = 100;

  static bool balanced_weights(long long lw, long long rw) {
    long long t = lw + rw;
    return kAlphaDen * lw >= kAlphaNum * t && kAlphaDen * rw >= kAlphaNum * t;
  }

  template <class Entry>
  static bool node_balanced(const detail::node<Entry>* n) {
    if (!n) return true;
    return balanced_weights(detail::weight_of<Entry>(n->left),
                            detail::weight_of<Entry>(n->right));
  }

  template <class Entry>
  static detail::node<Entry>* join(detail::node<Entry>* l, detail::node<Entry>* m,
                                   detail::node<Entry>* r) {
    long long lw = detail::weight_of<Entry>(l);
    long long rw = detail::weight_of<Entry>(r);
    if (balanced_weights(lw, rw)) return detail::link<Entry>(l, m, r);
    if (kAlphaDen * rw < kAlphaNum * (lw + rw)) return join_right<Entry>(l, m, r);
    return join_left<Entry>(l, m, r);
  }

 private:
  // l is the heavy side: walk its right spine until the pair balances,
  // attach there, repair with single/double rotations on the way back
  template <class Entry>
  static detail::node<Entry>* join_right(detail::node<Entry>* l, detail::node<Entry>* m,
                                         detail::node<Entry>* r) {
    using namespace detail;
    if (balanced_weights(weight_of<Entry>(l), weight_of<Entry>(r)))
      return link<Entry>(l, m, r);
    assert(l != nullptr);
    node<Entry>* t = copy_if_needed<Entry>(l);
    visit<Entry>(t);
    t->right = join_right<Entry>(t->right, m, r);
    long long a = weight_of<Entry>(t->left);
    long long b = weight_of<Entry>(t->right->left);
    long long c = weight_of<Entry>(t->right->right);
    if (balanced_weights(a, b + c)) {
      update<Entry>(t);
      return t;
    }
    if (balanced_weights(a, b) && balanced_weights(a + b, c)) return rotate_left<Entry>(t);
    t->right = rotate_right<Entry>(t->right);
    return rotate_left<Entry>(t);
  }

  template <class Entry>
  static detail::node<Entry>* join_left(detail::node<Entry>* l, detail::node<Entry>* m,
                                        detail::node<Entry>* r) {
    using namespace detail;
    if (balanced_weights(weight_of<Entry>(l), weight_of<Entry>(r)))
      return link<Entry>(l, m, r);
    assert(r != nullptr);
    node<Entry>* t = copy_if_needed<Entry>(r);
    visit<Entry>(t);
    t->left = join_left<Entry>(l, m, t->left);
    long long a = weight_of<Entry>(t->right);
    long long b = weight_of<Entry>(t->left->right);
    long long c = weight_of<Entry>(t->left->left);
    if (balanced_weights(b + c, a)) {
      update<Entry>(t);
      return t;
    }
    if (balanced_weights(b, a) && balanced_weights(c, a + b)) return rotate_right<Entry>(t);
    t->left = rotate_left<Entry>(t->left);
    return rotate_right<Entry>(t);
  }
};

// Treap scheme: max-heap on priorities derived from a deterministic 64-bit
// key hash, so a given key set always produces the same tree.
struct treap {
  template <class Entry>
  static std::uint64_t priority(const typename Entry::key_t& k) {
    return detail::key_hash(k);
  }

  template <class Entry>
  static bool node_balanced(const detail::node<Entry>* n) {
    if (!n) return true;
    std::uint64_t p = priority<Entry>(n->key);
    if (n->left && priority<Entry>(n->left->key) > p) return false;
    if (n->right && priority<Entry>(n->right->key) > p) return false;
    return true;
  }

  template <class Entry>
  static detail::node<Entry>* join(detail::node<Entry>* l, detail::node<Entry>* m,
                                   detail::node<Entry>* r) {
    using namespace detail;
    std::uint64_t pm = priority<Entry>(m->key);
    std::uint64_t pl = l ? priority<Entry>(l->key) : 0;
    std::uint64_t pr = r ? priority<Entry>(r->key) : 0;
    if (l && pl > pm && pl >= pr) {
      node<Entry>* t = copy_if_needed<Entry>(l);
      visit<Entry>(t);
      t->right = join<Entry>(t->right, m, r);
      update<Entry>(t);
      return t;
    }
    if (r && pr > pm) {
      node<Entry>* t = copy_if_needed<Entry>(r);
      visit<Entry>(t);
      t->left = join<Entry>(l, m, t->left);
      update<Entry>(t);
      return t;
    }
    return link<Entry>(l, m, r);
  }
};

}  // namespace augmap
