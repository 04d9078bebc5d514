#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpc/geometry.hpp"
#include "dpc/incomplete_kdtree.hpp"
#include "dpc/kdtree.hpp"

namespace dpc {

enum class Strategy { priority, fenwick, incomplete, bruteforce };

Strategy strategy_from_string(const std::string& name);
std::string to_string(Strategy s);

inline constexpr std::int64_t kNoiseLabel = -1;

/// Wall-clock seconds per pipeline step.
struct StepTimes {
  double build = 0.0;
  double density = 0.0;
  double dependent = 0.0;
  double linkage = 0.0;

  double total() const { return build + density + dependent + linkage; }
};

/// Full clustering output. labels[i] is the union-find root id of i's
/// cluster (kNoiseLabel for noise); every cluster contains exactly one
/// center.
struct DpcResult {
  std::vector<std::uint32_t> rho;
  std::vector<std::int64_t> lambda;  // -1 = none
  std::vector<double> delta;         // +inf where lambda is -1
  std::vector<std::int64_t> labels;
  std::vector<std::uint32_t> centers;
  DpcParams params;
  Strategy strategy = Strategy::priority;

  std::size_t noise_count() const;
  std::size_t cluster_count() const { return centers.size(); }
};

/// Densities as closed-ball range counts over a shared kd-tree, one parallel
/// query per point (each point counts itself).
std::vector<std::uint32_t> compute_densities(const KdTree& tree, const PointSet& points,
                                             double d_cut);
std::vector<std::uint32_t> compute_densities(const PointSet& points, double d_cut);

/// Dispatch to the selected finder. All strategies produce identical output.
DependentAssignment find_dependent_points(const PointSet& points, std::span<const double> rho,
                                          double rho_min, Strategy strategy);

struct ClusterOutput {
  std::vector<std::int64_t> labels;
  std::vector<std::uint32_t> centers;
};

/// Union every non-noise point with its dependent when delta < delta_min;
/// non-noise points with delta >= delta_min are the centers. Noise points
/// never participate and keep kNoiseLabel.
ClusterOutput single_linkage_cluster(const PointSet& points, std::span<const double> rho,
                                     const DependentAssignment& dep, const DpcParams& params);

/// Density computation, dependent-point finding, and single-linkage
/// clustering in sequence. Output is identical for every strategy and
/// worker count.
DpcResult run_dpc(const PointSet& points, const DpcParams& params, Strategy strategy,
                  StepTimes* times = nullptr);

}  // namespace dpc
