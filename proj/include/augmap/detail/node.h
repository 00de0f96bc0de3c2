#pragma once

#include <atomic>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <new>
#include <utility>
#include <vector>

#include "augmap/parallel.h"
#include "augmap/stats.h"

namespace augmap::detail {

// One tree vertex. Immutable once published except for the refcount; a node
// with refcount 1 is exclusively owned by whoever holds that reference and
// may be updated in place.
template <class Entry>
struct node {
  using key_t = typename Entry::key_t;
  using val_t = typename Entry::val_t;
  using aug_t = typename Entry::aug_t;

  node* left;
  node* right;
  std::size_t size;
  std::atomic<std::uint32_t> refs;
  key_t key;
  val_t val;
  [[no_unique_address]] aug_t aug;

  node(key_t k, val_t v)
      : left(nullptr),
        right(nullptr),
        size(1),
        refs(1),
        key(std::move(k)),
        val(std::move(v)),
        aug(Entry::from_entry(key, val)) {}

  node(const node& o)
      : left(o.left),
        right(o.right),
        size(o.size),
        refs(1),
        key(o.key),
        val(o.val),
        aug(o.aug) {}
};

// Fixed-block pool with per-thread caches refilled from a shared pool.
// Thread caches flush back on thread exit; the pool itself is leaked at
// program end so late flushes stay valid. Alloc/free tallies are exact at
// quiescence: one single-writer cell per thread, summed on demand.
template <class N>
class node_pool {
  static constexpr std::size_t kRefill = 256;

  struct tl_counts {
    std::atomic<std::int64_t> allocated{0};
    std::atomic<std::int64_t> freed{0};
  };

  struct cache {
    node_pool* owner = nullptr;
    std::vector<N*> items;
    tl_counts* counts = nullptr;
    ~cache() {
      if (owner && !items.empty()) owner->give_back(items, items.size());
    }
  };

 public:
  static node_pool& get() {
    static node_pool* p = new node_pool;
    return *p;
  }

  N* acquire_raw() {
    cache& c = tls();
    if (c.items.empty()) refill(c);
    N* n = c.items.back();
    c.items.pop_back();
    bump(c.counts->allocated);
    stats::count_alloc();
    return n;
  }

  void release_raw(N* n) {
    cache& c = tls();
    c.items.push_back(n);
    bump(c.counts->freed);
    stats::count_free();
    if (c.items.size() >= 2 * kRefill) give_back(c.items, kRefill);
  }

  std::int64_t allocated() const { return sum(&tl_counts::allocated); }
  std::int64_t freed() const { return sum(&tl_counts::freed); }
  std::int64_t live() const { return allocated() - freed(); }

  void set_block_nodes(std::size_t n) {
    std::lock_guard<std::mutex> g(mu_);
    block_nodes_ = n < kRefill ? kRefill : n;
  }

 private:
  node_pool() = default;

  cache& tls() {
    static thread_local cache c;
    if (!c.owner) {
      c.owner = this;
      std::lock_guard<std::mutex> g(reg_mu_);
      counters_.push_back(std::make_unique<tl_counts>());
      c.counts = counters_.back().get();
    }
    return c;
  }

  static void bump(std::atomic<std::int64_t>& a) {
    a.store(a.load(std::memory_order_relaxed) + 1, std::memory_order_relaxed);
  }

  std::int64_t sum(std::atomic<std::int64_t> tl_counts::*field) const {
    std::lock_guard<std::mutex> g(reg_mu_);
    std::int64_t s = 0;
    for (auto& c : counters_) s += ((*c).*field).load(std::memory_order_relaxed);
    return s;
  }

  void refill(cache& c) {
    std::lock_guard<std::mutex> g(mu_);
    for (std::size_t i = 0; i < kRefill; i++) {
      if (!free_.empty()) {
        c.items.push_back(free_.back());
        free_.pop_back();
        continue;
      }
      if (cursor_ == block_end_) {
        blocks_.push_back(std::make_unique<std::byte[]>(block_nodes_ * sizeof(N)));
        cursor_ = reinterpret_cast<N*>(blocks_.back().get());
        block_end_ = cursor_ + block_nodes_;
      }
      c.items.push_back(cursor_++);
    }
  }

  void give_back(std::vector<N*>& items, std::size_t count) {
    std::lock_guard<std::mutex> g(mu_);
    for (std::size_t i = 0; i < count; i++) {
      free_.push_back(items.back());
      items.pop_back();
    }
  }

  mutable std::mutex mu_;
  std::vector<std::unique_ptr<std::byte[]>> blocks_;
  std::vector<N*> free_;
  N* cursor_ = nullptr;
  N* block_end_ = nullptr;
  std::size_t block_nodes_ = std::size_t(1) << 16;

  mutable std::mutex reg_mu_;
  std::vector<std::unique_ptr<tl_counts>> counters_;
};

template <class Entry>
inline std::size_t size_of(const node<Entry>* n) {
  return n ? n->size : 0;
}

// weight = size + 1, the quantity the weight-balance predicate works on
template <class Entry>
inline long long weight_of(const node<Entry>* n) {
  return n ? (long long)n->size + 1 : 1;
}

template <class Entry>
inline bool less_keys(const typename Entry::key_t& a, const typename Entry::key_t& b) {
  stats::count_comparison();
  return Entry::comp(a, b);
}

template <class Entry>
inline void visit(const node<Entry>*) {
  stats::count_visit();
}

// aug = f(aug(left), f(g(key, val), aug(right))), keeping f's argument order
template <class Entry>
inline void update(node<Entry>* n) {
  using aug_t = typename Entry::aug_t;
  n->size = size_of(n->left) + size_of(n->right) + 1;
  aug_t a = Entry::from_entry(n->key, n->val);
  if (n->right) a = Entry::combine(a, n->right->aug);
  if (n->left) a = Entry::combine(n->left->aug, std::move(a));
  n->aug = std::move(a);
#ifdef AUGMAP_VALIDATE
  assert(!n->left || less_keys<Entry>(n->left->key, n->key));
  assert(!n->right || less_keys<Entry>(n->key, n->right->key));
#endif
}

template <class Entry>
inline void retain(node<Entry>* n) {
  if (n) n->refs.fetch_add(1, std::memory_order_relaxed);
}

template <class Entry>
node<Entry>* make_node(typename Entry::key_t k, typename Entry::val_t v) {
  node<Entry>* n = node_pool<node<Entry>>::get().acquire_raw();
  new (n) node<Entry>(std::move(k), std::move(v));
  return n;
}

// frees this node only; the caller has already taken over the child refs
template <class Entry>
void free_single(node<Entry>* n) {
  n->~node<Entry>();
  node_pool<node<Entry>>::get().release_raw(n);
}

// drops one reference; the last owner frees the whole subtree, forking on
// large subtrees when the scheduler is running
template <class Entry>
void release(node<Entry>* n) {
  if (!n) return;
  if (n->refs.fetch_sub(1, std::memory_order_acq_rel) != 1) return;
  node<Entry>* l = n->left;
  node<Entry>* r = n->right;
  std::size_t sz = n->size;
  free_single<Entry>(n);
  parallel::par_do(sz >= parallel::grain(),
                   [l] { release<Entry>(l); },
                   [r] { release<Entry>(r); });
}

template <class Entry>
node<Entry>* copy_node(const node<Entry>* src) {
  node<Entry>* n = node_pool<node<Entry>>::get().acquire_raw();
  new (n) node<Entry>(*src);
  retain<Entry>(n->left);
  retain<Entry>(n->right);
  return n;
}

// Consumes one reference to n and returns an exclusively owned node with the
// same entry and children. Reuses n itself when the caller holds the only
// reference. Child refs are bumped by the copy before the parent ref drops.
template <class Entry>
node<Entry>* copy_if_needed(node<Entry>* n) {
  if (n->refs.load(std::memory_order_acquire) == 1) return n;
  node<Entry>* c = copy_node<Entry>(n);
  release<Entry>(n);
  return c;
}

// Consumes one reference to n; hands the caller owned references to both
// children plus a copy of the entry.
template <class Entry>
struct detached {
  node<Entry>* left;
  node<Entry>* right;
  typename Entry::key_t key;
  typename Entry::val_t val;
};

template <class Entry>
detached<Entry> detach(node<Entry>* n) {
  detached<Entry> d{n->left, n->right, n->key, n->val};
  if (n->refs.load(std::memory_order_acquire) == 1) {
    free_single<Entry>(n);
  } else {
    retain<Entry>(d.left);
    retain<Entry>(d.right);
    release<Entry>(n);
  }
  return d;
}

}  // namespace augmap::detail
