#include "dpc/oracle.hpp"

#include <stdexcept>

#include "dpc/parallel.hpp"

namespace dpc {

std::vector<std::uint32_t> oracle_densities(const PointSet& points, double d_cut) {
  const std::size_t n = points.size();
  const double r_sq = d_cut * d_cut;
  std::vector<std::uint32_t> rho(n, 0);
  par::parallel_for(
      0, n,
      [&](std::size_t i) {
        std::uint32_t count = 0;
        const PointView pi = points[i];
        for (std::size_t j = 0; j < n; ++j) {
          if (sq_dist(pi, points[j]) <= r_sq) ++count;
        }
        rho[i] = count;
      },
      16);
  return rho;
}

DependentAssignment oracle_dependent(const PointSet& points, std::span<const double> rho,
                                     double rho_min) {
  if (rho.size() != points.size()) {
    throw std::invalid_argument("oracle_dependent: one density per point required");
  }
  const std::size_t n = points.size();
  DependentAssignment out;
  out.lambda.assign(n, -1);
  out.delta.assign(n, std::numeric_limits<double>::infinity());
  par::parallel_for(
      0, n,
      [&](std::size_t i) {
        if (rho[i] < rho_min) return;
        const PriorityKey key_i{rho[i], static_cast<std::uint32_t>(i)};
        std::optional<Neighbor> best;
        for (std::size_t j = 0; j < n; ++j) {
          const std::uint32_t cand = static_cast<std::uint32_t>(j);
          if (!priority_gt({rho[j], cand}, key_i)) continue;
          const Neighbor nb{cand, sq_dist(points[i], points[j])};
          if (!best || neighbor_lt(nb, *best)) best = nb;
        }
        if (best) {
          out.lambda[i] = best->id;
          out.delta[i] = best->distance();
        }
      },
      16);
  return out;
}

std::vector<std::uint32_t> oracle_priority_range(const PointSet& points,
                                                 std::span<const double> gamma, BoxView query,
                                                 PriorityKey gamma_q) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::uint32_t id = static_cast<std::uint32_t>(i);
    if (!priority_gt({gamma[i], id}, gamma_q)) continue;
    if (box_contains(query, points[i])) out.push_back(id);
  }
  return out;
}

}  // namespace dpc
