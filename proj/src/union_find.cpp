#include "dpc/union_find.hpp"

#include <cassert>

namespace dpc {

UnionFind::UnionFind(std::size_t n)
    : parent_(n > 0 ? std::make_unique<std::atomic<std::uint32_t>[]>(n) : nullptr), n_(n) {
  for (std::size_t i = 0; i < n_; ++i) {
    parent_[i].store(static_cast<std::uint32_t>(i), std::memory_order_relaxed);
  }
}

std::uint32_t UnionFind::find(std::uint32_t a) {
  assert(a < n_);
#ifndef NDEBUG
  std::size_t steps = 0;
#endif
  std::uint32_t x = a;
  for (;;) {
#ifndef NDEBUG
    assert(++steps <= n_ + 1 && "parent chain must stay acyclic");
#endif
    std::uint32_t p = parent_[x].load(std::memory_order_acquire);
    if (p == x) return x;
    const std::uint32_t g = parent_[p].load(std::memory_order_acquire);
    if (g == p) return p;
    // path splitting: hop x over its parent, then continue from the parent
    parent_[x].compare_exchange_weak(p, g, std::memory_order_acq_rel);
    x = p;
  }
}

void UnionFind::unite(std::uint32_t a, std::uint32_t b) {
  for (;;) {
    std::uint32_t ra = find(a);
    std::uint32_t rb = find(b);
    if (ra == rb) return;
    if (ra < rb) std::swap(ra, rb);
    // ra > rb: point the higher root at the lower one
    std::uint32_t expected = ra;
    if (parent_[ra].compare_exchange_strong(expected, rb, std::memory_order_acq_rel)) {
      return;
    }
  }
}

bool UnionFind::connected(std::uint32_t a, std::uint32_t b) { return find(a) == find(b); }

}  // namespace dpc
