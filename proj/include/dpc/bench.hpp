#pragma once

#include <cstdint>
#include <vector>

#include "dpc/datagen.hpp"
#include "dpc/io.hpp"
#include "dpc/pipeline.hpp"

namespace dpc {

/// Radius at which a uniform sample over [0, extent]^d has roughly
/// `fraction * n` points inside the ball (boundary effects ignored).
double radius_for_mean_fraction(double fraction, std::size_t d, double extent);

/// Cluster once at a given worker count and report per-step wall times.
RunReport run_once(const PointSet& points, const DpcParams& params, Strategy algo,
                   unsigned threads);

enum class SweepAxis { size, threads, dcut };

SweepAxis sweep_axis_from_string(const std::string& name);

/// One scaling study: vary dataset size, worker count, or density radius
/// while holding everything else fixed.
struct SweepSpec {
  SweepAxis axis = SweepAxis::size;
  Strategy algo = Strategy::priority;
  GenKind kind = GenKind::simden;
  std::size_t d = 2;
  std::uint64_t seed = 1;
  std::size_t clusters = 10;
  double extent = 1e5;

  std::vector<std::size_t> sizes = {1000, 10000, 100000, 1000000};  // size axis
  std::vector<unsigned> threads;            // threads axis; empty = 1,2,4,... up to hardware
  std::vector<double> fractions = {0.001, 0.01, 0.05};  // dcut axis, mean-neighbor fractions
  std::size_t n = 100000;                   // dataset size for threads/dcut axes

  double rho_min = 0.0;
  double delta_min_fraction = 0.01;  // delta_min = fraction * extent
  double dcut_fraction = 0.01;       // d_cut via radius_for_mean_fraction (size/threads axes)
};

std::vector<RunReport> bench_sweep(const SweepSpec& spec);

}  // namespace dpc
