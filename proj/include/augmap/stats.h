#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <vector>

// Per-run operation tallies. Counters are kept in thread-local cells
// registered with a global list; readers sum the cells. Each cell has a
// single writer, so increments are plain relaxed load/store pairs and do
// not contend across threads. Cells of exited threads stay registered so
// their work remains accounted for.

namespace augmap::stats {

struct totals {
  std::uint64_t comparisons = 0;
  std::uint64_t nodes_allocated = 0;
  std::uint64_t nodes_freed = 0;
  std::uint64_t nodes_visited = 0;

  friend totals operator-(const totals& a, const totals& b) {
    return {a.comparisons - b.comparisons,
            a.nodes_allocated - b.nodes_allocated,
            a.nodes_freed - b.nodes_freed,
            a.nodes_visited - b.nodes_visited};
  }
};

namespace detail {

struct cell {
  std::atomic<std::uint64_t> comparisons{0};
  std::atomic<std::uint64_t> allocated{0};
  std::atomic<std::uint64_t> freed{0};
  std::atomic<std::uint64_t> visited{0};
};

struct registry {
  std::mutex mu;
  std::vector<std::unique_ptr<cell>> cells;

  cell* make_cell() {
    std::lock_guard<std::mutex> g(mu);
    cells.push_back(std::make_unique<cell>());
    return cells.back().get();
  }
};

inline registry& reg() {
  static registry* r = new registry;  // leaked: outlives worker threads
  return *r;
}

inline cell& local() {
  static thread_local cell* c = reg().make_cell();
  return *c;
}

inline void bump(std::atomic<std::uint64_t>& a, std::uint64_t by = 1) {
  a.store(a.load(std::memory_order_relaxed) + by, std::memory_order_relaxed);
}

}  // namespace detail

inline void count_comparison() { detail::bump(detail::local().comparisons); }
inline void count_alloc() { detail::bump(detail::local().allocated); }
inline void count_free() { detail::bump(detail::local().freed); }
inline void count_visit() { detail::bump(detail::local().visited); }

inline totals snapshot() {
  auto& r = detail::reg();
  std::lock_guard<std::mutex> g(r.mu);
  totals t;
  for (auto& c : r.cells) {
    t.comparisons += c->comparisons.load(std::memory_order_relaxed);
    t.nodes_allocated += c->allocated.load(std::memory_order_relaxed);
    t.nodes_freed += c->freed.load(std::memory_order_relaxed);
    t.nodes_visited += c->visited.load(std::memory_order_relaxed);
  }
  return t;
}

// allocations - frees across every node type
inline std::int64_t live_nodes() {
  totals t = snapshot();
  return std::int64_t(t.nodes_allocated) - std::int64_t(t.nodes_freed);
}

}  // namespace augmap::stats
