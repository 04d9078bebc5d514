#pragma once

#include <atomic>
#include <cstdint>
#include <memory>

namespace dpc {

/// Lock-free concurrent disjoint sets. Roots link by id (the higher root
/// points to the lower one, retrying on contention) and finds split paths,
/// so parent ids only ever decrease; any concurrent schedule of a fixed set
/// of unions produces the same final partition.
class UnionFind {
public:
  explicit UnionFind(std::size_t n);

  std::size_t size() const { return n_; }

  std::uint32_t find(std::uint32_t a);
  void unite(std::uint32_t a, std::uint32_t b);

  /// True when a and b are currently in the same set.
  bool connected(std::uint32_t a, std::uint32_t b);

private:
  std::unique_ptr<std::atomic<std::uint32_t>[]> parent_;
  std::size_t n_;
};

}  // namespace dpc
