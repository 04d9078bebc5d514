#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpc/kdtree.hpp"

namespace dpc {

/// Per-point dependent assignment: lambda[i] is the dependent point id or
/// -1, delta[i] the distance to it (+inf where lambda is -1).
struct DependentAssignment {
  std::vector<std::int64_t> lambda;
  std::vector<double> delta;
};

/// A fully built kd-tree whose points start out inactive. Activating a point
/// flips subtree flags along its leaf-to-root path (stopping at the first
/// already-active ancestor); nearest-neighbor queries prune inactive
/// subtrees. Activation and queries are single-threaded by design; only the
/// underlying tree build is parallel.
class IncompleteKdTree {
public:
  explicit IncompleteKdTree(const PointSet& points, KdTree::BuildOptions opt = {});

  /// Mark a point active; idempotent.
  void activate(std::uint32_t id);

  bool point_active(std::uint32_t id) const { return point_active_[id] != 0; }
  bool node_active(std::size_t node) const { return node_active_[node] != 0; }
  std::size_t active_node_count() const;
  std::uint32_t leaf_of(std::uint32_t id) const { return leaf_of_[id]; }

  /// Exact nearest active point to q (ties to the smaller id); empty when
  /// nothing is active.
  std::optional<Neighbor> nearest_active(PointView q, QueryStats* stats = nullptr) const;

  const KdTree& base() const { return tree_; }

private:
  void nearest_rec(std::size_t node, PointView q, std::optional<Neighbor>& best,
                   QueryStats* stats) const;

  const PointSet* points_;
  KdTree tree_;
  std::vector<std::uint8_t> node_active_;
  std::vector<std::uint8_t> point_active_;
  std::vector<std::uint32_t> leaf_of_;
};

/// Sequential dependent-point finder: walk points in decreasing priority
/// order, query the active set, then activate. Points below rho_min skip
/// the query but are still activated.
DependentAssignment incomplete_dependent_point(const PointSet& points,
                                               std::span<const double> rho, double rho_min);

/// Priority-descending id permutation shared by the sequential finder and
/// the Fenwick layout.
std::vector<std::uint32_t> priority_order(std::span<const double> rho);

}  // namespace dpc
