#include "dpc/bench.hpp"

#include <cmath>
#include <stdexcept>

#include "dpc/parallel.hpp"

namespace dpc {

double radius_for_mean_fraction(double fraction, std::size_t d, double extent) {
  if (!(fraction > 0.0) || d == 0 || !(extent > 0.0)) {
    throw std::invalid_argument("radius_for_mean_fraction: bad arguments");
  }
  // fraction = V_d * r^d / extent^d with V_d the unit-ball volume
  const double dd = static_cast<double>(d);
  const double unit_ball = std::pow(3.14159265358979323846, dd / 2.0) /
                           std::tgamma(dd / 2.0 + 1.0);
  return extent * std::pow(fraction / unit_ball, 1.0 / dd);
}

RunReport run_once(const PointSet& points, const DpcParams& params, Strategy algo,
                   unsigned threads) {
  if (threads == 0) threads = par::hardware_workers();
  const unsigned before = par::workers();
  par::set_workers(threads);
  StepTimes times;
  const DpcResult result = run_dpc(points, params, algo, &times);
  par::set_workers(before);

  RunReport report;
  report.step_times = times;
  report.n = points.size();
  report.d = points.dim();
  report.params = params;
  report.algo = algo;
  report.threads = threads;
  report.clusters = result.cluster_count();
  report.noise = result.noise_count();
  report.labels_digest = labels_digest(result.labels);
  return report;
}

SweepAxis sweep_axis_from_string(const std::string& name) {
  if (name == "size") return SweepAxis::size;
  if (name == "threads") return SweepAxis::threads;
  if (name == "dcut") return SweepAxis::dcut;
  throw std::invalid_argument("unknown sweep axis: " + name);
}

std::vector<RunReport> bench_sweep(const SweepSpec& spec) {
  std::vector<RunReport> rows;
  const double delta_min = spec.delta_min_fraction * spec.extent;

  switch (spec.axis) {
    case SweepAxis::size: {
      for (std::size_t n : spec.sizes) {
        GenSpec gen{spec.kind, n, spec.d, spec.seed, spec.clusters, spec.extent};
        const PointSet points = generate(gen);
        const DpcParams params{radius_for_mean_fraction(spec.dcut_fraction, spec.d, spec.extent),
                               spec.rho_min, delta_min};
        rows.push_back(run_once(points, params, spec.algo, par::workers()));
      }
      break;
    }
    case SweepAxis::threads: {
      std::vector<unsigned> grid = spec.threads;
      if (grid.empty()) {
        for (unsigned t = 1; t <= par::hardware_workers(); t *= 2) grid.push_back(t);
      }
      GenSpec gen{spec.kind, spec.n, spec.d, spec.seed, spec.clusters, spec.extent};
      const PointSet points = generate(gen);
      const DpcParams params{radius_for_mean_fraction(spec.dcut_fraction, spec.d, spec.extent),
                             spec.rho_min, delta_min};
      for (unsigned t : grid) {
        rows.push_back(run_once(points, params, spec.algo, t));
      }
      break;
    }
    case SweepAxis::dcut: {
      GenSpec gen{spec.kind, spec.n, spec.d, spec.seed, spec.clusters, spec.extent};
      const PointSet points = generate(gen);
      for (double fraction : spec.fractions) {
        const DpcParams params{radius_for_mean_fraction(fraction, spec.d, spec.extent),
                               spec.rho_min, delta_min};
        rows.push_back(run_once(points, params, spec.algo, par::workers()));
      }
      break;
    }
  }
  return rows;
}

}  // namespace dpc
