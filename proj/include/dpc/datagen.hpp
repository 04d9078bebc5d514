#pragma once

#include <cstdint>
#include <string>

#include "dpc/geometry.hpp"

namespace dpc {

enum class GenKind { uniform, simden, varden };

GenKind gen_kind_from_string(const std::string& name);
std::string to_string(GenKind k);

/// Synthetic dataset request. uniform samples i.i.d. in [0, extent]^d;
/// simden runs one bounded random walk per cluster with a fixed step length;
/// varden does the same with per-cluster step lengths drawn log-uniformly
/// across two orders of magnitude, so cluster densities spread widely.
/// Cluster c owns the contiguous point block starting at c * (n / clusters)
/// (earlier clusters absorb the remainder).
struct GenSpec {
  GenKind kind = GenKind::uniform;
  std::size_t n = 1000;
  std::size_t d = 2;
  std::uint64_t seed = 1;
  std::size_t clusters = 10;
  double extent = 1e5;

  void validate() const;
};

/// Deterministic for a fixed spec, independent of worker count. Walks
/// reflect at the domain boundary, so every coordinate stays in
/// [0, extent].
PointSet generate(const GenSpec& spec);

}  // namespace dpc
