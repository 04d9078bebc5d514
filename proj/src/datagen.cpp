#include "dpc/datagen.hpp"

#include <cmath>
#include <stdexcept>

#include "dpc/parallel.hpp"

namespace dpc {

namespace {

// splitmix64; used both as the generator and to derive per-cluster seeds so
// output does not depend on how the work is scheduled.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Box-Muller; one value per call keeps the stream layout simple.
  double gaussian() {
    double u1 = unit();
    while (u1 <= 0.0) u1 = unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }
};

// Fold x into [0, extent] (triangle wave with period 2*extent).
double reflect(double x, double extent) {
  const double period = 2.0 * extent;
  double m = std::fmod(x, period);
  if (m < 0.0) m += period;
  return m <= extent ? m : period - m;
}

void random_unit_vector(Rng& rng, std::size_t d, double* out) {
  for (;;) {
    double norm_sq = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      out[k] = rng.gaussian();
      norm_sq += out[k] * out[k];
    }
    if (norm_sq > 1e-30) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (std::size_t k = 0; k < d; ++k) out[k] *= inv;
      return;
    }
  }
}

void walk_cluster(std::uint64_t seed, std::size_t count, std::size_t d, double extent,
                  double step, double* out) {
  Rng rng(seed);
  std::vector<double> pos(d), dir(d);
  for (std::size_t k = 0; k < d; ++k) pos[k] = rng.uniform(0.0, extent);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t k = 0; k < d; ++k) out[i * d + k] = pos[k];
    random_unit_vector(rng, d, dir.data());
    for (std::size_t k = 0; k < d; ++k) {
      pos[k] = reflect(pos[k] + step * dir[k], extent);
    }
  }
}

}  // namespace

GenKind gen_kind_from_string(const std::string& name) {
  if (name == "uniform") return GenKind::uniform;
  if (name == "simden") return GenKind::simden;
  if (name == "varden") return GenKind::varden;
  throw std::invalid_argument("unknown generator kind: " + name);
}

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::uniform: return "uniform";
    case GenKind::simden: return "simden";
    case GenKind::varden: return "varden";
  }
  throw std::invalid_argument("unknown generator kind value");
}

void GenSpec::validate() const {
  if (n < 1) throw std::invalid_argument("GenSpec: n must be >= 1");
  if (d < 1) throw std::invalid_argument("GenSpec: d must be >= 1");
  if (clusters < 1) throw std::invalid_argument("GenSpec: clusters must be >= 1");
  if (!(extent > 0.0) || !std::isfinite(extent)) {
    throw std::invalid_argument("GenSpec: extent must be finite and > 0");
  }
}

PointSet generate(const GenSpec& spec) {
  spec.validate();
  std::vector<double> coords(spec.n * spec.d);

  if (spec.kind == GenKind::uniform) {
    Rng rng(spec.seed);
    for (double& c : coords) c = rng.uniform(0.0, spec.extent);
    return PointSet(std::move(coords), spec.d);
  }

  const std::size_t k = spec.clusters < spec.n ? spec.clusters : spec.n;
  const std::size_t base = spec.n / k;
  const std::size_t rem = spec.n % k;

  // Per-cluster step lengths are drawn up front from the master seed; the
  // walks then run from derived seeds, independently per cluster.
  std::vector<double> steps(k);
  Rng master(spec.seed);
  const double simden_step = spec.extent / (100.0 * std::sqrt(static_cast<double>(spec.d)));
  for (std::size_t c = 0; c < k; ++c) {
    if (spec.kind == GenKind::simden) {
      steps[c] = simden_step;
    } else {
      const double lo = std::log(spec.extent / 3000.0);
      const double hi = std::log(spec.extent / 30.0);
      steps[c] = std::exp(master.uniform(lo, hi));
    }
  }

  std::vector<std::size_t> offsets(k + 1, 0);
  for (std::size_t c = 0; c < k; ++c) {
    offsets[c + 1] = offsets[c] + base + (c < rem ? 1 : 0);
  }

  par::parallel_for(
      0, k,
      [&](std::size_t c) {
        Rng seeder(spec.seed ^ (0xc1u + c));
        const std::uint64_t cluster_seed = seeder.next();
        walk_cluster(cluster_seed, offsets[c + 1] - offsets[c], spec.d, spec.extent, steps[c],
                     coords.data() + offsets[c] * spec.d);
      },
      1);

  return PointSet(std::move(coords), spec.d);
}

}  // namespace dpc
