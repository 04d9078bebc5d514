#pragma once

#include <cstdint>
#include <vector>

#include "dpc/geometry.hpp"
#include "dpc/incomplete_kdtree.hpp"

namespace dpc {

/// Quadratic reference implementations. These share sq_dist and priority_gt
/// with everything else, so indexed results must match them exactly; they
/// double as the "bruteforce" CLI strategy.

/// Pairwise density counts (self included).
std::vector<std::uint32_t> oracle_densities(const PointSet& points, double d_cut);

/// Per non-noise point, linear scan over all higher-priority points taking
/// the (squared distance, id) minimum.
DependentAssignment oracle_dependent(const PointSet& points, std::span<const double> rho,
                                     double rho_min);

/// Ids inside the closed box with priority above gamma_q, ascending.
std::vector<std::uint32_t> oracle_priority_range(const PointSet& points,
                                                 std::span<const double> gamma, BoxView query,
                                                 PriorityKey gamma_q);

}  // namespace dpc
