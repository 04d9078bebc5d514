#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpc/incomplete_kdtree.hpp"
#include "dpc/kdtree.hpp"

namespace dpc {

struct PriorityBuildOptions {
  std::size_t grain = 1024;
};

/// Kd-tree variant that stores one point per node: the maximum-priority
/// point of the node's subtree, so priorities satisfy the heap property on
/// every edge. The remaining points split at the median of the widest box
/// side, giving sibling sizes within one of each other. Queries restricted
/// to priorities above a threshold therefore touch a connected top portion
/// of the tree. Immutable after the fork-join build; queries run
/// concurrently.
class PrioritySearchKdTree {
public:
  struct Node {
    std::uint32_t point_id = 0;
    PriorityKey gamma;
    std::int32_t left = -1;
    std::int32_t right = -1;
    std::int32_t parent = -1;
    std::int32_t split_dim = -1;
    double split_val = 0.0;

    bool is_leaf() const { return left < 0 && right < 0; }
  };

  using BuildOptions = PriorityBuildOptions;

  PrioritySearchKdTree(const PointSet& points, std::span<const double> gamma,
                       BuildOptions opt = {});

  std::size_t size() const { return nodes_.size(); }
  const Node& node(std::size_t i) const { return nodes_[i]; }
  static constexpr std::size_t root() { return 0; }

  BoxView node_box(std::size_t i) const {
    const std::size_t d = dim_;
    return {{box_lo_.data() + i * d, d}, {box_hi_.data() + i * d, d}};
  }

  /// Number of points in node i's subtree (derived from the slot layout).
  std::uint32_t subtree_size(std::size_t i) const;

  /// Exact nearest point among those with priority strictly above gamma_q
  /// (distance ties to the smaller id); empty when no priority qualifies.
  /// Passing a stored point's own key excludes the point itself. Subtrees
  /// with gamma <= gamma_q are never entered; with distance_pruning, neither
  /// are subtrees whose box lies beyond the current best (test hook).
  std::optional<Neighbor> priority_nearest(PointView q, PriorityKey gamma_q,
                                           QueryStats* stats = nullptr,
                                           bool distance_pruning = true) const;

  /// All point ids inside the closed query box with priority strictly above
  /// gamma_q, in ascending id order.
  std::vector<std::uint32_t> priority_range(BoxView query, PriorityKey gamma_q) const;

private:
  struct Builder;

  void nearest_rec(std::size_t node, PointView q, PriorityKey gamma_q,
                   std::optional<Neighbor>& best, QueryStats* stats,
                   bool distance_pruning) const;
  void range_rec(std::size_t node, BoxView query, PriorityKey gamma_q,
                 std::vector<std::uint32_t>& out) const;

  const PointSet* points_ = nullptr;
  std::size_t dim_ = 0;
  std::vector<Node> nodes_;  // slot i holds the subtree over permutation range starting at i
  std::vector<std::uint32_t> range_end_;  // subtree of slot i covers slots [i, range_end_[i])
  std::vector<double> box_lo_;
  std::vector<double> box_hi_;
};

/// Fully parallel dependent-point finder: every non-noise point queries the
/// priority tree with its own key, independently.
DependentAssignment priority_dependent_point(const PointSet& points,
                                             std::span<const double> rho, double rho_min);

}  // namespace dpc
