#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

// Minimal fork-join helpers. Loops hand out fixed-size chunks through an
// atomic counter; recursive builds fork one side onto a fresh thread while
// a live-thread budget holds. Worker count 1 runs everything inline, which
// is what the self-relative scaling runs rely on.
namespace dpc::par {

unsigned hardware_workers();

/// Set the worker count for all parallel loops and forks; 0 = hardware.
void set_workers(unsigned n);

unsigned workers();

namespace detail {

bool in_worker();
void enter_worker();
void leave_worker();
bool try_acquire_fork();
void release_fork();

struct WorkerGuard {
  WorkerGuard() { enter_worker(); }
  ~WorkerGuard() { leave_worker(); }
};

}  // namespace detail

/// Run body(i) for every i in [begin, end). Chunks of `grain` indices are
/// claimed dynamically. Nested calls from inside a parallel region run
/// sequentially. body must not throw.
template <typename F>
void parallel_for(std::size_t begin, std::size_t end, F&& body, std::size_t grain = 64) {
  if (begin >= end) return;
  const std::size_t n = end - begin;
  if (grain == 0) grain = 1;
  const std::size_t nchunks = (n + grain - 1) / grain;
  const unsigned w = workers();
  const std::size_t want = nchunks < w ? nchunks : w;
  if (want <= 1 || detail::in_worker()) {
    for (std::size_t i = begin; i < end; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  auto run_chunks = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= nchunks) break;
      const std::size_t lo = begin + c * grain;
      const std::size_t hi = lo + grain < end ? lo + grain : end;
      for (std::size_t i = lo; i < hi; ++i) body(i);
    }
  };

  std::vector<std::thread> helpers;
  helpers.reserve(want - 1);
  for (std::size_t t = 0; t + 1 < want; ++t) {
    helpers.emplace_back([&]() {
      detail::WorkerGuard guard;
      run_chunks();
    });
  }
  {
    detail::WorkerGuard guard;
    run_chunks();
  }
  for (auto& h : helpers) h.join();
}

/// Run a and b, possibly concurrently. Callers gate on problem size; the
/// fork budget keeps the live thread count bounded. a and b must not throw.
template <typename A, typename B>
void parallel_invoke(A&& a, B&& b) {
  if (workers() > 1 && detail::try_acquire_fork()) {
    std::thread t([&]() {
      detail::WorkerGuard guard;
      b();
      detail::release_fork();
    });
    a();
    t.join();
  } else {
    a();
    b();
  }
}

}  // namespace dpc::par
