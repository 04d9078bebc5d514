#include "dpc/priority_kdtree.hpp"

#include <algorithm>
#include <stdexcept>

#include "dpc/parallel.hpp"

namespace dpc {

struct PrioritySearchKdTree::Builder {
  PrioritySearchKdTree& tree;
  const PointSet& pts;
  std::span<const double> gamma;
  std::vector<std::uint32_t>& perm;
  std::size_t grain;

  void compute_box(std::size_t slot, std::uint32_t begin, std::uint32_t end) {
    const std::size_t d = tree.dim_;
    double* lo = tree.box_lo_.data() + slot * d;
    double* hi = tree.box_hi_.data() + slot * d;
    PointView first = pts[perm[begin]];
    for (std::size_t k = 0; k < d; ++k) lo[k] = hi[k] = first[k];
    for (std::uint32_t i = begin + 1; i < end; ++i) {
      PointView p = pts[perm[i]];
      for (std::size_t k = 0; k < d; ++k) {
        if (p[k] < lo[k]) lo[k] = p[k];
        if (p[k] > hi[k]) hi[k] = p[k];
      }
    }
  }

  int widest_dim(std::size_t slot) const {
    const std::size_t d = tree.dim_;
    const double* lo = tree.box_lo_.data() + slot * d;
    const double* hi = tree.box_hi_.data() + slot * d;
    int best = 0;
    double best_w = hi[0] - lo[0];
    for (std::size_t k = 1; k < d; ++k) {
      const double w = hi[k] - lo[k];
      if (w > best_w) {
        best_w = w;
        best = static_cast<int>(k);
      }
    }
    return best;
  }

  // Subtrees occupy contiguous slot ranges: the node for permutation range
  // [begin, end) sits at slot `begin`, so no slot arithmetic is shared
  // between concurrent branches.
  void build(std::uint32_t begin, std::uint32_t end, std::int32_t parent) {
    const std::size_t slot = begin;
    compute_box(slot, begin, end);
    tree.range_end_[slot] = end;

    std::uint32_t top = begin;
    for (std::uint32_t i = begin + 1; i < end; ++i) {
      if (priority_gt({gamma[perm[i]], perm[i]}, {gamma[perm[top]], perm[top]})) top = i;
    }
    std::swap(perm[begin], perm[top]);

    Node& nd = tree.nodes_[slot];
    nd.point_id = perm[begin];
    nd.gamma = {gamma[perm[begin]], perm[begin]};
    nd.parent = parent;

    const std::uint32_t rem = end - begin - 1;
    if (rem == 0) return;

    const int dim = widest_dim(slot);
    nd.split_dim = dim;
    auto* ids = perm.data();
    const std::uint32_t mid = begin + 1 + (rem + 1) / 2;  // left gets the larger half
    if (mid < end) {
      std::nth_element(ids + begin + 1, ids + mid, ids + end,
                       [&](std::uint32_t a, std::uint32_t b) {
                         const double ca = pts[a][dim];
                         const double cb = pts[b][dim];
                         if (ca != cb) return ca < cb;
                         return a < b;
                       });
      nd.split_val = pts[ids[mid]][dim];
    } else {
      nd.split_val = pts[ids[begin + 1]][dim];
    }

    const std::int32_t self = static_cast<std::int32_t>(slot);
    nd.left = static_cast<std::int32_t>(begin + 1);
    if (mid < end) {
      nd.right = static_cast<std::int32_t>(mid);
      if (end - begin > grain) {
        par::parallel_invoke([&]() { build(begin + 1, mid, self); },
                             [&]() { build(mid, end, self); });
      } else {
        build(begin + 1, mid, self);
        build(mid, end, self);
      }
    } else {
      build(begin + 1, end, self);
    }
  }
};

PrioritySearchKdTree::PrioritySearchKdTree(const PointSet& points,
                                           std::span<const double> gamma, BuildOptions opt)
    : points_(&points), dim_(points.dim()) {
  if (gamma.size() != points.size()) {
    throw std::invalid_argument("PrioritySearchKdTree: one priority per point required");
  }
  const std::size_t n = points.size();
  nodes_.assign(n, Node{});
  range_end_.assign(n, 0);
  box_lo_.assign(n * dim_, 0.0);
  box_hi_.assign(n * dim_, 0.0);

  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
  Builder builder{*this, points, gamma, perm, opt.grain};
  builder.build(0, static_cast<std::uint32_t>(n), -1);
}

std::uint32_t PrioritySearchKdTree::subtree_size(std::size_t i) const {
  return range_end_[i] - static_cast<std::uint32_t>(i);
}

std::optional<Neighbor> PrioritySearchKdTree::priority_nearest(PointView q, PriorityKey gamma_q,
                                                               QueryStats* stats,
                                                               bool distance_pruning) const {
  std::optional<Neighbor> best;
  if (!nodes_.empty() && priority_gt(nodes_[root()].gamma, gamma_q)) {
    nearest_rec(root(), q, gamma_q, best, stats, distance_pruning);
  }
  return best;
}

void PrioritySearchKdTree::nearest_rec(std::size_t node, PointView q, PriorityKey gamma_q,
                                       std::optional<Neighbor>& best, QueryStats* stats,
                                       bool distance_pruning) const {
  if (stats) ++stats->nodes_visited;
  const Node& nd = nodes_[node];
  const Neighbor cand{nd.point_id, sq_dist((*points_)[nd.point_id], q)};
  if (!best || neighbor_lt(cand, *best)) best = cand;

  const bool left_ok = nd.left >= 0 && priority_gt(nodes_[nd.left].gamma, gamma_q);
  const bool right_ok = nd.right >= 0 && priority_gt(nodes_[nd.right].gamma, gamma_q);
  const double dl = left_ok ? box_sq_dist(node_box(nd.left), q)
                            : std::numeric_limits<double>::infinity();
  const double dr = right_ok ? box_sq_dist(node_box(nd.right), q)
                             : std::numeric_limits<double>::infinity();
  const std::int32_t first = dl <= dr ? nd.left : nd.right;
  const std::int32_t second = dl <= dr ? nd.right : nd.left;
  const double d_first = dl <= dr ? dl : dr;
  const double d_second = dl <= dr ? dr : dl;
  if (d_first != std::numeric_limits<double>::infinity() &&
      (!distance_pruning || !best || d_first <= best->sq)) {
    nearest_rec(first, q, gamma_q, best, stats, distance_pruning);
  }
  if (d_second != std::numeric_limits<double>::infinity() &&
      (!distance_pruning || !best || d_second <= best->sq)) {
    nearest_rec(second, q, gamma_q, best, stats, distance_pruning);
  }
}

std::vector<std::uint32_t> PrioritySearchKdTree::priority_range(BoxView query,
                                                                PriorityKey gamma_q) const {
  std::vector<std::uint32_t> out;
  if (!nodes_.empty() && priority_gt(nodes_[root()].gamma, gamma_q) &&
      boxes_intersect(node_box(root()), query)) {
    range_rec(root(), query, gamma_q, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void PrioritySearchKdTree::range_rec(std::size_t node, BoxView query, PriorityKey gamma_q,
                                     std::vector<std::uint32_t>& out) const {
  const Node& nd = nodes_[node];
  if (box_contains(query, (*points_)[nd.point_id])) out.push_back(nd.point_id);
  for (std::int32_t child : {nd.left, nd.right}) {
    if (child < 0) continue;
    if (!priority_gt(nodes_[child].gamma, gamma_q)) continue;
    if (!boxes_intersect(node_box(child), query)) continue;
    range_rec(child, query, gamma_q, out);
  }
}

DependentAssignment priority_dependent_point(const PointSet& points,
                                             std::span<const double> rho, double rho_min) {
  if (rho.size() != points.size()) {
    throw std::invalid_argument("priority_dependent_point: one density per point required");
  }
  const std::size_t n = points.size();
  DependentAssignment out;
  out.lambda.assign(n, -1);
  out.delta.assign(n, std::numeric_limits<double>::infinity());

  PrioritySearchKdTree tree(points, rho);
  par::parallel_for(
      0, n,
      [&](std::size_t i) {
        if (rho[i] < rho_min) return;
        const PriorityKey key{rho[i], static_cast<std::uint32_t>(i)};
        if (auto nn = tree.priority_nearest(points[i], key)) {
          out.lambda[i] = nn->id;
          out.delta[i] = nn->distance();
        }
      },
      64);
  return out;
}

}  // namespace dpc
