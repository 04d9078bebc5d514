#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dpc/incomplete_kdtree.hpp"
#include "dpc/kdtree.hpp"

namespace dpc {

inline std::uint32_t lsb(std::uint32_t i) { return i & (~i + 1u); }

/// Tree indices whose sub-ranges [j - LSB(j) + 1, j] disjointly tile [1, i],
/// emitted from i downwards. Empty for i = 0.
std::vector<std::uint32_t> fenwick_cover(std::uint32_t i);

/// Points sorted by descending priority and packed into n kd-trees, tree i
/// holding the priority ranks [i - LSB(i) + 1, i]. A query against rank
/// bound i fans out over the O(log i) covering trees and keeps the
/// (distance, id)-minimum. Immutable after build; queries run concurrently.
class FenwickIndex {
public:
  FenwickIndex(const PointSet& points, std::span<const double> rho);

  std::size_t size() const { return order_.size(); }

  /// Rank r (1-based) holds point order()[r - 1]; rank 1 is the highest
  /// priority.
  std::span<const std::uint32_t> order() const { return order_; }

  /// Tree i (1-based), covering ranks [i - LSB(i) + 1, i].
  const KdTree& tree(std::uint32_t i) const { return trees_[i - 1]; }

  std::size_t total_stored() const;

  /// Nearest point among ranks [1, i] to q; empty when i = 0. Per-tree
  /// answers combine by minimum over (squared distance, id), so the fold
  /// order never matters.
  std::optional<Neighbor> query(std::uint32_t i, PointView q) const;

private:
  const PointSet* points_;
  std::vector<std::uint32_t> order_;
  std::vector<KdTree> trees_;
};

/// Fully parallel dependent-point finder over the Fenwick layout: the rank-i
/// point queries ranks [1, i - 1].
DependentAssignment fenwick_dependent_point(const PointSet& points,
                                            std::span<const double> rho, double rho_min);

}  // namespace dpc
