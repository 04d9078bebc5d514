#include "dpc/incomplete_kdtree.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace dpc {

IncompleteKdTree::IncompleteKdTree(const PointSet& points, KdTree::BuildOptions opt)
    : points_(&points), tree_(points, opt) {
  node_active_.assign(tree_.node_count(), 0);
  point_active_.assign(points.size(), 0);
  leaf_of_.assign(points.size(), 0);
  for (std::size_t i = 0; i < tree_.node_count(); ++i) {
    if (!tree_.node(i).is_leaf()) continue;
    for (std::uint32_t id : tree_.node_ids(i)) {
      leaf_of_[id] = static_cast<std::uint32_t>(i);
    }
  }
}

void IncompleteKdTree::activate(std::uint32_t id) {
  if (point_active_[id]) return;
  point_active_[id] = 1;
  std::int32_t node = static_cast<std::int32_t>(leaf_of_[id]);
  while (node >= 0 && !node_active_[node]) {
    node_active_[node] = 1;
    node = tree_.node(node).parent;
  }
}

std::size_t IncompleteKdTree::active_node_count() const {
  return static_cast<std::size_t>(
      std::count(node_active_.begin(), node_active_.end(), std::uint8_t{1}));
}

std::optional<Neighbor> IncompleteKdTree::nearest_active(PointView q, QueryStats* stats) const {
  std::optional<Neighbor> best;
  if (node_active_[KdTree::root()]) nearest_rec(KdTree::root(), q, best, stats);
  return best;
}

void IncompleteKdTree::nearest_rec(std::size_t node, PointView q, std::optional<Neighbor>& best,
                                   QueryStats* stats) const {
  if (stats) ++stats->nodes_visited;
  const KdTree::Node& nd = tree_.node(node);
  if (nd.is_leaf()) {
    for (std::uint32_t id : tree_.node_ids(node)) {
      if (!point_active_[id]) continue;
      const Neighbor cand{id, sq_dist((*points_)[id], q)};
      if (!best || neighbor_lt(cand, *best)) best = cand;
    }
    return;
  }
  const double dl = node_active_[nd.left] ? box_sq_dist(tree_.node_box(nd.left), q)
                                          : std::numeric_limits<double>::infinity();
  const double dr = node_active_[nd.right] ? box_sq_dist(tree_.node_box(nd.right), q)
                                           : std::numeric_limits<double>::infinity();
  const std::size_t first = dl <= dr ? nd.left : nd.right;
  const std::size_t second = dl <= dr ? nd.right : nd.left;
  const double d_first = dl <= dr ? dl : dr;
  const double d_second = dl <= dr ? dr : dl;
  if (d_first != std::numeric_limits<double>::infinity() && (!best || d_first <= best->sq)) {
    nearest_rec(first, q, best, stats);
  }
  if (d_second != std::numeric_limits<double>::infinity() && (!best || d_second <= best->sq)) {
    nearest_rec(second, q, best, stats);
  }
}

std::vector<std::uint32_t> priority_order(std::span<const double> rho) {
  std::vector<std::uint32_t> order(rho.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return priority_gt({rho[a], a}, {rho[b], b});
  });
  return order;
}

DependentAssignment incomplete_dependent_point(const PointSet& points,
                                               std::span<const double> rho, double rho_min) {
  if (rho.size() != points.size()) {
    throw std::invalid_argument("incomplete_dependent_point: one density per point required");
  }
  const std::size_t n = points.size();
  DependentAssignment out;
  out.lambda.assign(n, -1);
  out.delta.assign(n, std::numeric_limits<double>::infinity());

  IncompleteKdTree tree(points);
  const std::vector<std::uint32_t> order = priority_order(rho);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint32_t id = order[k];
    if (k > 0 && rho[id] >= rho_min) {
      if (auto nn = tree.nearest_active(points[id])) {
        out.lambda[id] = nn->id;
        out.delta[id] = nn->distance();
      }
    }
    tree.activate(id);
  }
  return out;
}

}  // namespace dpc
