#include "dpc/fenwick_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "dpc/parallel.hpp"

namespace dpc {

std::vector<std::uint32_t> fenwick_cover(std::uint32_t i) {
  std::vector<std::uint32_t> cover;
  for (std::uint32_t j = i; j > 0; j -= lsb(j)) cover.push_back(j);
  return cover;
}

FenwickIndex::FenwickIndex(const PointSet& points, std::span<const double> rho)
    : points_(&points) {
  if (rho.size() != points.size()) {
    throw std::invalid_argument("FenwickIndex: one density per point required");
  }
  order_ = priority_order(rho);
  const std::uint32_t n = static_cast<std::uint32_t>(order_.size());
  trees_.resize(n);

  // Largest trees first so the long builds are claimed early.
  std::vector<std::uint32_t> by_size(n);
  std::iota(by_size.begin(), by_size.end(), 1u);
  std::sort(by_size.begin(), by_size.end(),
            [](std::uint32_t a, std::uint32_t b) {
              if (lsb(a) != lsb(b)) return lsb(a) > lsb(b);
              return a < b;
            });

  par::parallel_for(
      0, n,
      [&](std::size_t k) {
        const std::uint32_t i = by_size[k];
        const std::uint32_t len = lsb(i);
        std::vector<std::uint32_t> ids(order_.begin() + (i - len), order_.begin() + i);
        trees_[i - 1] = KdTree(points, std::move(ids));
      },
      1);
}

std::size_t FenwickIndex::total_stored() const {
  std::size_t total = 0;
  for (const auto& t : trees_) total += t.size();
  return total;
}

std::optional<Neighbor> FenwickIndex::query(std::uint32_t i, PointView q) const {
  std::optional<Neighbor> best;
  for (std::uint32_t j = i; j > 0; j -= lsb(j)) {
    if (auto nn = trees_[j - 1].nearest(q)) {
      if (!best || neighbor_lt(*nn, *best)) best = nn;
    }
  }
  return best;
}

DependentAssignment fenwick_dependent_point(const PointSet& points,
                                            std::span<const double> rho, double rho_min) {
  if (rho.size() != points.size()) {
    throw std::invalid_argument("fenwick_dependent_point: one density per point required");
  }
  const std::size_t n = points.size();
  DependentAssignment out;
  out.lambda.assign(n, -1);
  out.delta.assign(n, std::numeric_limits<double>::infinity());

  const FenwickIndex idx(points, rho);
  const auto order = idx.order();
  par::parallel_for(
      1, n,
      [&](std::size_t rank0) {
        const std::uint32_t id = order[rank0];
        if (rho[id] < rho_min) return;
        if (auto nn = idx.query(static_cast<std::uint32_t>(rank0), points[id])) {
          out.lambda[id] = nn->id;
          out.delta[id] = nn->distance();
        }
      },
      64);
  return out;
}

}  // namespace dpc
