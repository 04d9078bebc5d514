#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpc/geometry.hpp"

namespace dpc {

/// Counts the nodes a query enters; used by the pruning tests and the
/// effectiveness checks.
struct QueryStats {
  std::uint64_t nodes_visited = 0;
};

struct KdBuildOptions {
  std::uint32_t leaf_cap = 16;
  std::size_t grain = 1024;  // subtrees above this size build their halves concurrently
};

/// Balanced kd-tree over a point set (or an id subset of one). Built in
/// parallel over preallocated contiguous node storage; immutable afterwards,
/// so queries may run concurrently. Splits take the widest side of each
/// node's tight bounding box at the exact median (coordinate ties broken by
/// id, so sibling sizes differ by at most one).
class KdTree {
public:
  using BuildOptions = KdBuildOptions;

  struct Node {
    std::uint32_t begin = 0;  // id range [begin, end) in the tree's permutation
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t parent = -1;
    std::int32_t split_dim = -1;
    double split_val = 0.0;

    bool is_leaf() const { return left < 0; }
    std::uint32_t count() const { return end - begin; }
  };

  KdTree() = default;
  explicit KdTree(const PointSet& points, BuildOptions opt = {});
  KdTree(const PointSet& points, std::vector<std::uint32_t> ids, BuildOptions opt = {});

  bool empty() const { return perm_.empty(); }
  std::size_t size() const { return perm_.size(); }
  std::size_t node_count() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  static constexpr std::size_t root() { return 0; }

  BoxView node_box(std::size_t i) const {
    const std::size_t d = dim_;
    return {{box_lo_.data() + i * d, d}, {box_hi_.data() + i * d, d}};
  }

  /// Point ids stored under node i (contiguous permutation slice).
  std::span<const std::uint32_t> node_ids(std::size_t i) const {
    const Node& nd = nodes_[i];
    return {perm_.data() + nd.begin, nd.count()};
  }

  std::span<const std::uint32_t> ids() const { return perm_; }
  std::uint32_t leaf_cap() const { return leaf_cap_; }

  /// Number of points within the closed ball of radius r around center.
  /// Subtrees whose box misses the ball are pruned; with prune_contained,
  /// subtrees whose box lies fully inside the ball contribute their count
  /// without being descended.
  std::size_t range_count(PointView center, double r, bool prune_contained = true,
                          QueryStats* stats = nullptr) const;

  /// Exact nearest stored point to q (ties go to the smaller id), optionally
  /// excluding one id. Empty when every stored point is excluded.
  std::optional<Neighbor> nearest(PointView q,
                                  std::optional<std::uint32_t> exclude = std::nullopt,
                                  QueryStats* stats = nullptr) const;

private:
  struct Builder;

  void count_range(std::size_t node, PointView center, double r_sq, bool prune_contained,
                   std::size_t& acc, QueryStats* stats) const;
  void nearest_rec(std::size_t node, PointView q, std::optional<std::uint32_t> exclude,
                   std::optional<Neighbor>& best, QueryStats* stats) const;

  const PointSet* points_ = nullptr;
  std::size_t dim_ = 0;
  std::uint32_t leaf_cap_ = 16;
  std::vector<std::uint32_t> perm_;
  std::vector<Node> nodes_;
  std::vector<double> box_lo_;  // node i's box at [i*dim, (i+1)*dim)
  std::vector<double> box_hi_;
};

}  // namespace dpc
