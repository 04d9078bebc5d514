#include "dpc/parallel.hpp"

namespace dpc::par {

namespace {

std::atomic<unsigned> g_workers{0};  // 0 = unresolved, use hardware
std::atomic<int> g_live_forks{0};

thread_local int tl_worker_depth = 0;

unsigned resolve(unsigned n) {
  if (n != 0) return n;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

unsigned hardware_workers() { return resolve(0); }

void set_workers(unsigned n) { g_workers.store(resolve(n), std::memory_order_relaxed); }

unsigned workers() { return resolve(g_workers.load(std::memory_order_relaxed)); }

namespace detail {

bool in_worker() { return tl_worker_depth > 0; }
void enter_worker() { ++tl_worker_depth; }
void leave_worker() { --tl_worker_depth; }

bool try_acquire_fork() {
  const int cap = static_cast<int>(2 * workers());
  int cur = g_live_forks.load(std::memory_order_relaxed);
  while (cur < cap) {
    if (g_live_forks.compare_exchange_weak(cur, cur + 1, std::memory_order_relaxed)) {
      return true;
    }
  }
  return false;
}

void release_fork() { g_live_forks.fetch_sub(1, std::memory_order_relaxed); }

}  // namespace detail

}  // namespace dpc::par
