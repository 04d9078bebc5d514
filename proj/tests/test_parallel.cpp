#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <atomic>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "dpc/parallel.hpp"

using namespace dpc;

namespace {

struct WorkerReset {
  ~WorkerReset() { par::set_workers(0); }
};

}  // namespace

TEST_CASE("parallel_for covers every index exactly once") {
  WorkerReset reset;
  for (unsigned w : {1u, 2u, 8u}) {
    par::set_workers(w);
    std::vector<std::atomic<int>> hits(1000);
    par::parallel_for(0, hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); }, 16);
    for (auto& h : hits) CHECK(h.load() == 1);
  }
}

TEST_CASE("parallel_for handles empty and tiny ranges") {
  WorkerReset reset;
  par::set_workers(8);
  int count = 0;
  par::parallel_for(5, 5, [&](std::size_t) { ++count; });
  CHECK(count == 0);
  par::parallel_for(0, 3, [&](std::size_t) { ++count; }, 64);  // below one grain: inline
  CHECK(count == 3);
}

TEST_CASE("nested parallel_for runs sequentially") {
  WorkerReset reset;
  par::set_workers(4);
  std::vector<std::atomic<int>> hits(64 * 8);
  par::parallel_for(
      0, 8,
      [&](std::size_t outer) {
        par::parallel_for(
            0, 64, [&](std::size_t inner) { hits[outer * 64 + inner].fetch_add(1); }, 1);
      },
      1);
  for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("parallel_invoke runs both branches, nested included") {
  WorkerReset reset;
  par::set_workers(4);
  std::atomic<long> sum{0};
  // binary recursion summing 1..2^12 via leaf increments
  struct Rec {
    std::atomic<long>& sum;
    void operator()(long lo, long hi) const {
      if (hi - lo == 1) {
        sum.fetch_add(lo);
        return;
      }
      const long mid = lo + (hi - lo) / 2;
      par::parallel_invoke([&] { (*this)(lo, mid); }, [&] { (*this)(mid, hi); });
    }
  };
  Rec rec{sum};
  rec(0, 1 << 12);
  CHECK(sum.load() == (long{1} << 11) * ((1 << 12) - 1));
}

TEST_CASE("worker count resolution") {
  WorkerReset reset;
  par::set_workers(3);
  CHECK(par::workers() == 3);
  par::set_workers(0);
  CHECK(par::workers() == par::hardware_workers());
  CHECK(par::hardware_workers() >= 1);
}
