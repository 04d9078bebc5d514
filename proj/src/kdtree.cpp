#include "dpc/kdtree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "dpc/parallel.hpp"

namespace dpc {

namespace {

// Median splits are size-determined, so every subtree's slot count is a pure
// function of its point count. Memoizing it lets the parallel build place
// nodes in fixed preorder slots with no coordination.
struct SlotTable {
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  std::uint32_t leaf_cap;

  std::uint64_t slots(std::uint64_t m) {
    if (m <= leaf_cap) return 1;
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    const std::uint64_t s = 1 + slots(m / 2) + slots(m - m / 2);
    memo.emplace(m, s);
    return s;
  }
};

}  // namespace

struct KdTree::Builder {
  KdTree& tree;
  const PointSet& pts;
  SlotTable slots;
  std::size_t grain;

  void compute_box(std::size_t slot, std::uint32_t begin, std::uint32_t end) {
    const std::size_t d = tree.dim_;
    double* lo = tree.box_lo_.data() + slot * d;
    double* hi = tree.box_hi_.data() + slot * d;
    PointView first = pts[tree.perm_[begin]];
    for (std::size_t k = 0; k < d; ++k) lo[k] = hi[k] = first[k];
    for (std::uint32_t i = begin + 1; i < end; ++i) {
      PointView p = pts[tree.perm_[i]];
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

  void build(std::size_t slot, std::uint32_t begin, std::uint32_t end, std::int32_t parent) {
    Node& nd = tree.nodes_[slot];
    nd.begin = begin;
    nd.end = end;
    nd.parent = parent;
    compute_box(slot, begin, end);

    const std::uint32_t m = end - begin;
    if (m <= tree.leaf_cap_) return;

    const int dim = widest_dim(slot);
    auto* ids = tree.perm_.data();
    const std::uint32_t mid = begin + m / 2;
    std::nth_element(ids + begin, ids + mid, ids + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       const double ca = pts[a][dim];
                       const double cb = pts[b][dim];
                       if (ca != cb) return ca < cb;
                       return a < b;
                     });
    nd.split_dim = dim;
    nd.split_val = pts[ids[mid]][dim];

    const std::uint64_t left_slots = slots.slots(m / 2);
    const std::int32_t left = static_cast<std::int32_t>(slot + 1);
    const std::int32_t right = static_cast<std::int32_t>(slot + 1 + left_slots);
    nd.left = left;
    nd.right = right;

    const std::int32_t self = static_cast<std::int32_t>(slot);
    if (m > grain) {
      par::parallel_invoke([&]() { build(left, begin, mid, self); },
                           [&]() { build(right, mid, end, self); });
    } else {
      build(left, begin, mid, self);
      build(right, mid, end, self);
    }
  }
};

KdTree::KdTree(const PointSet& points, BuildOptions opt)
    : KdTree(points,
             [&]() {
               std::vector<std::uint32_t> all(points.size());
               std::iota(all.begin(), all.end(), 0u);
               return all;
             }(),
             opt) {}

KdTree::KdTree(const PointSet& points, std::vector<std::uint32_t> ids, BuildOptions opt)
    : points_(&points), dim_(points.dim()), leaf_cap_(opt.leaf_cap), perm_(std::move(ids)) {
  if (perm_.empty()) throw std::invalid_argument("KdTree: need at least one point");
  if (leaf_cap_ == 0) throw std::invalid_argument("KdTree: leaf_cap must be >= 1");

  SlotTable table{{}, leaf_cap_};
  // Warm the memo sequentially; the parallel build only reads it.
  const std::uint64_t total = table.slots(perm_.size());
  nodes_.assign(total, Node{});
  box_lo_.assign(total * dim_, 0.0);
  box_hi_.assign(total * dim_, 0.0);

  Builder builder{*this, points, std::move(table), opt.grain};
  builder.build(0, 0, static_cast<std::uint32_t>(perm_.size()), -1);
}

std::size_t KdTree::range_count(PointView center, double r, bool prune_contained,
                                QueryStats* stats) const {
  if (empty()) return 0;
  if (r < 0.0) return 0;
  const double r_sq = r * r;
  std::size_t acc = 0;
  count_range(root(), center, r_sq, prune_contained, acc, stats);
  return acc;
}

void KdTree::count_range(std::size_t node, PointView center, double r_sq,
                         bool prune_contained, std::size_t& acc, QueryStats* stats) const {
  if (stats) ++stats->nodes_visited;
  const Node& nd = nodes_[node];
  const BoxView box = node_box(node);
  if (box_sq_dist(box, center) > r_sq) return;
  if (prune_contained && box_far_sq_dist(box, center) <= r_sq) {
    acc += nd.count();
    return;
  }
  if (nd.is_leaf()) {
    for (std::uint32_t id : node_ids(node)) {
      if (sq_dist((*points_)[id], center) <= r_sq) ++acc;
    }
    return;
  }
  count_range(nd.left, center, r_sq, prune_contained, acc, stats);
  count_range(nd.right, center, r_sq, prune_contained, acc, stats);
}

std::optional<Neighbor> KdTree::nearest(PointView q, std::optional<std::uint32_t> exclude,
                                        QueryStats* stats) const {
  std::optional<Neighbor> best;
  if (!empty()) nearest_rec(root(), q, exclude, best, stats);
  return best;
}

void KdTree::nearest_rec(std::size_t node, PointView q, std::optional<std::uint32_t> exclude,
                         std::optional<Neighbor>& best, QueryStats* stats) const {
  if (stats) ++stats->nodes_visited;
  const Node& nd = nodes_[node];
  if (nd.is_leaf()) {
    for (std::uint32_t id : node_ids(node)) {
      if (exclude && id == *exclude) continue;
      const Neighbor cand{id, sq_dist((*points_)[id], q)};
      if (!best || neighbor_lt(cand, *best)) best = cand;
    }
    return;
  }
  const double dl = box_sq_dist(node_box(nd.left), q);
  const double dr = box_sq_dist(node_box(nd.right), q);
  const std::size_t first = dl <= dr ? nd.left : nd.right;
  const std::size_t second = dl <= dr ? nd.right : nd.left;
  const double d_second = dl <= dr ? dr : dl;
  if (!best || (dl <= dr ? dl : dr) <= best->sq) {
    nearest_rec(first, q, exclude, best, stats);
  }
  if (!best || d_second <= best->sq) {
    nearest_rec(second, q, exclude, best, stats);
  }
}

}  // namespace dpc
