#include "dpc/pipeline.hpp"

#include <chrono>
#include <stdexcept>

#include "dpc/fenwick_index.hpp"
#include "dpc/oracle.hpp"
#include "dpc/parallel.hpp"
#include "dpc/priority_kdtree.hpp"
#include "dpc/union_find.hpp"

namespace dpc {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

Strategy strategy_from_string(const std::string& name) {
  if (name == "priority") return Strategy::priority;
  if (name == "fenwick") return Strategy::fenwick;
  if (name == "incomplete") return Strategy::incomplete;
  if (name == "bruteforce") return Strategy::bruteforce;
  throw std::invalid_argument("unknown strategy: " + name);
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::priority: return "priority";
    case Strategy::fenwick: return "fenwick";
    case Strategy::incomplete: return "incomplete";
    case Strategy::bruteforce: return "bruteforce";
  }
  throw std::invalid_argument("unknown strategy value");
}

std::size_t DpcResult::noise_count() const {
  std::size_t count = 0;
  for (std::int64_t l : labels) {
    if (l == kNoiseLabel) ++count;
  }
  return count;
}

std::vector<std::uint32_t> compute_densities(const KdTree& tree, const PointSet& points,
                                             double d_cut) {
  if (d_cut <= 0.0) throw std::invalid_argument("compute_densities: d_cut must be > 0");
  std::vector<std::uint32_t> rho(points.size(), 0);
  par::parallel_for(
      0, points.size(),
      [&](std::size_t i) {
        rho[i] = static_cast<std::uint32_t>(tree.range_count(points[i], d_cut));
      },
      64);
  return rho;
}

std::vector<std::uint32_t> compute_densities(const PointSet& points, double d_cut) {
  const KdTree tree(points);
  return compute_densities(tree, points, d_cut);
}

DependentAssignment find_dependent_points(const PointSet& points, std::span<const double> rho,
                                          double rho_min, Strategy strategy) {
  switch (strategy) {
    case Strategy::priority: return priority_dependent_point(points, rho, rho_min);
    case Strategy::fenwick: return fenwick_dependent_point(points, rho, rho_min);
    case Strategy::incomplete: return incomplete_dependent_point(points, rho, rho_min);
    case Strategy::bruteforce: return oracle_dependent(points, rho, rho_min);
  }
  throw std::invalid_argument("unknown strategy value");
}

ClusterOutput single_linkage_cluster(const PointSet& points, std::span<const double> rho,
                                     const DependentAssignment& dep, const DpcParams& params) {
  const std::size_t n = points.size();
  if (rho.size() != n || dep.lambda.size() != n || dep.delta.size() != n) {
    throw std::invalid_argument("single_linkage_cluster: inconsistent input sizes");
  }

  UnionFind uf(n);
  par::parallel_for(
      0, n,
      [&](std::size_t i) {
        if (rho[i] < params.rho_min) return;
        if (dep.delta[i] < params.delta_min) {
          uf.unite(static_cast<std::uint32_t>(i),
                   static_cast<std::uint32_t>(dep.lambda[i]));
        }
      },
      256);

  ClusterOutput out;
  out.labels.assign(n, kNoiseLabel);
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i] >= params.rho_min && dep.delta[i] >= params.delta_min) {
      out.centers.push_back(static_cast<std::uint32_t>(i));
    }
  }
  par::parallel_for(
      0, n,
      [&](std::size_t i) {
        if (rho[i] < params.rho_min) return;
        out.labels[i] = uf.find(static_cast<std::uint32_t>(i));
      },
      256);
  return out;
}

DpcResult run_dpc(const PointSet& points, const DpcParams& params, Strategy strategy,
                  StepTimes* times) {
  params.validate();

  auto t0 = std::chrono::steady_clock::now();
  const KdTree tree(points);
  if (times) times->build = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  DpcResult result;
  result.params = params;
  result.strategy = strategy;
  result.rho = compute_densities(tree, points, params.d_cut);
  if (times) times->density = seconds_since(t0);

  std::vector<double> rho_keys(result.rho.begin(), result.rho.end());

  t0 = std::chrono::steady_clock::now();
  DependentAssignment dep = find_dependent_points(points, rho_keys, params.rho_min, strategy);
  if (times) times->dependent = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  ClusterOutput clusters = single_linkage_cluster(points, rho_keys, dep, params);
  if (times) times->linkage = seconds_since(t0);

  result.lambda = std::move(dep.lambda);
  result.delta = std::move(dep.delta);
  result.labels = std::move(clusters.labels);
  result.centers = std::move(clusters.centers);
  return result;
}

}  // namespace dpc
