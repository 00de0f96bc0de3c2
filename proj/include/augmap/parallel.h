#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

// Structured fork-join scheduler. fork_join(a, b) queues b, runs a on the
// calling thread, then either claims b back (if no worker took it) or helps
// run other queued tasks until b completes. Tasks live on the forking
// thread's stack; the queue is an intrusive doubly-linked list so an owner
// can unlink its own task in O(1).
//
// With workers() == 1 no task is ever enqueued and both branches run
// sequentially on the caller; tasks_spawned() stays flat, which the bench
// harness uses to verify the sequential baseline.

namespace augmap::parallel {

namespace detail {

struct task_base {
  task_base* prev = nullptr;
  task_base* next = nullptr;
  void (*invoke)(task_base*) = nullptr;
  std::atomic<int> phase{0};  // 0 queued, 1 claimed, 2 done
  std::exception_ptr error;
};

}  // namespace detail

class scheduler {
 public:
  static scheduler& get() {
    static scheduler s;
    return s;
  }

  // n <= 1 disables the pool. Restartable between phases; not meant to be
  // called while tasks are in flight.
  void set_workers(unsigned n) {
    stop_workers();
    workers_ = n < 1 ? 1 : n;
    if (workers_ > 1) {
      stop_ = false;
      threads_.reserve(workers_ - 1);
      for (unsigned i = 0; i + 1 < workers_; i++)
        threads_.emplace_back([this] { worker_loop(); });
    }
  }

  unsigned workers() const { return workers_; }

  std::uint64_t tasks_spawned() const {
    return tasks_spawned_.load(std::memory_order_relaxed);
  }

  template <class FA, class FB>
  void fork_join(FA&& fa, FB&& fb) {
    if (workers_ <= 1) {
      fa();
      fb();
      return;
    }
    typed_task<std::decay_t<FB>> tb(std::addressof(fb));
    enqueue(&tb);
    std::exception_ptr ea;
    try {
      fa();
    } catch (...) {
      ea = std::current_exception();
    }
    finish(&tb);  // tb is on our stack: must complete before unwinding
    if (ea) std::rethrow_exception(ea);
    if (tb.error) std::rethrow_exception(tb.error);
  }

  ~scheduler() { stop_workers(); }

  scheduler(const scheduler&) = delete;
  scheduler& operator=(const scheduler&) = delete;

 private:
  scheduler() = default;

  template <class F>
  struct typed_task : detail::task_base {
    F* fn;
    explicit typed_task(F* f) : fn(f) {
      invoke = [](detail::task_base* t) {
        auto* self = static_cast<typed_task*>(t);
        try {
          (*self->fn)();
        } catch (...) {
          self->error = std::current_exception();
        }
      };
    }
  };

  void enqueue(detail::task_base* t) {
    {
      std::lock_guard<std::mutex> g(mu_);
      t->prev = tail_;
      t->next = nullptr;
      if (tail_)
        tail_->next = t;
      else
        head_ = t;
      tail_ = t;
      queued_.fetch_add(1, std::memory_order_relaxed);
    }
    tasks_spawned_.fetch_add(1, std::memory_order_relaxed);
    cv_.notify_one();
  }

  detail::task_base* pop_front_locked() {
    detail::task_base* t = head_;
    if (!t) return nullptr;
    head_ = t->next;
    if (head_)
      head_->prev = nullptr;
    else
      tail_ = nullptr;
    queued_.fetch_sub(1, std::memory_order_relaxed);
    t->phase.store(1, std::memory_order_relaxed);
    return t;
  }

  detail::task_base* try_pop() {
    std::lock_guard<std::mutex> g(mu_);
    return pop_front_locked();
  }

  static void run_claimed(detail::task_base* t) {
    t->invoke(t);
    t->phase.store(2, std::memory_order_release);
  }

  void finish(detail::task_base* t) {
    bool run_inline = false;
    {
      std::lock_guard<std::mutex> g(mu_);
      if (t->phase.load(std::memory_order_relaxed) == 0) {
        // still queued: unlink and run on the forking thread
        if (t->prev)
          t->prev->next = t->next;
        else
          head_ = t->next;
        if (t->next)
          t->next->prev = t->prev;
        else
          tail_ = t->prev;
        queued_.fetch_sub(1, std::memory_order_relaxed);
        t->phase.store(1, std::memory_order_relaxed);
        run_inline = true;
      }
    }
    if (run_inline) {
      run_claimed(t);
      return;
    }
    // a worker has it: help with other tasks until it completes; peek the
    // queue length without the lock so idle waiting does not contend
    int spins = 0;
    while (t->phase.load(std::memory_order_acquire) != 2) {
      if (queued_.load(std::memory_order_relaxed) > 0) {
        detail::task_base* other = try_pop();
        if (other) {
          run_claimed(other);
          spins = 0;
          continue;
        }
      }
      if (++spins > 64) {
        std::this_thread::yield();
        spins = 0;
      }
    }
  }

  void worker_loop() {
    std::unique_lock<std::mutex> lk(mu_);
    for (;;) {
      cv_.wait(lk, [this] { return stop_ || head_ != nullptr; });
      if (stop_) return;
      detail::task_base* t = pop_front_locked();
      if (!t) continue;
      lk.unlock();
      run_claimed(t);
      lk.lock();
    }
  }

  void stop_workers() {
    {
      std::lock_guard<std::mutex> g(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& th : threads_) th.join();
    threads_.clear();
    workers_ = 1;
  }

  std::mutex mu_;
  std::condition_variable cv_;
  detail::task_base* head_ = nullptr;
  detail::task_base* tail_ = nullptr;
  std::vector<std::thread> threads_;
  std::atomic<std::uint64_t> tasks_spawned_{0};
  std::atomic<int> queued_{0};
  unsigned workers_ = 1;
  bool stop_ = false;
};

// Subtrees below this many nodes run sequentially inside bulk operations.
inline std::atomic<std::size_t>& grain_ref() {
  static std::atomic<std::size_t> g{256};
  return g;
}
inline std::size_t grain() { return grain_ref().load(std::memory_order_relaxed); }
inline void set_grain(std::size_t n) { grain_ref().store(n ? n : 1, std::memory_order_relaxed); }

template <class FA, class FB>
inline void par_do(bool parallel_ok, FA&& fa, FB&& fb) {
  auto& s = scheduler::get();
  if (parallel_ok && s.workers() > 1)
    s.fork_join(std::forward<FA>(fa), std::forward<FB>(fb));
  else {
    fa();
    fb();
  }
}

}  // namespace augmap::parallel
