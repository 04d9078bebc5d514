#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace dpc {

using PointView = std::span<const double>;

/// Immutable n x d coordinate table. Point ids are the row indices
/// (0-based internally; file formats use 1-based ids).
class PointSet {
public:
  PointSet(std::vector<double> coords, std::size_t dim);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const { return n_; }
  std::size_t dim() const { return d_; }

  PointView operator[](std::size_t i) const {
    assert(i < n_);
    return {coords_.data() + i * d_, d_};
  }

  const std::vector<double>& coords() const { return coords_; }

private:
  std::vector<double> coords_;
  std::size_t n_ = 0;
  std::size_t d_ = 0;
};

/// The three clustering hyper-parameters.
struct DpcParams {
  double d_cut = 1.0;     // density radius
  double rho_min = 0.0;   // noise cutoff
  double delta_min = 1.0; // center cutoff

  void validate() const;
};

/// Strict total order over points: higher density wins, equal densities
/// go to the smaller id. Shared by every finder and the oracle.
struct PriorityKey {
  double rho = 0.0;
  std::uint32_t id = 0;

  static PriorityKey lowest() {
    return {-std::numeric_limits<double>::infinity(),
            std::numeric_limits<std::uint32_t>::max()};
  }
};

inline bool priority_gt(PriorityKey a, PriorityKey b) {
  if (a.rho != b.rho) return a.rho > b.rho;
  return a.id < b.id;
}

/// Non-owning view of an axis-aligned box (lo/hi per dimension).
struct BoxView {
  std::span<const double> lo;
  std::span<const double> hi;

  std::size_t dim() const { return lo.size(); }
};

/// Owning axis-aligned bounding box.
struct BoundingBox {
  std::vector<double> lo;
  std::vector<double> hi;

  BoundingBox() = default;
  BoundingBox(std::vector<double> lo_, std::vector<double> hi_);

  std::size_t dim() const { return lo.size(); }
  BoxView view() const { return {lo, hi}; }
  bool contains(PointView p) const;
};

/// Squared Euclidean distance. The single comparison kernel shared by the
/// trees, the finders, and the oracle; all tie-breaking happens on these
/// exact values.
inline double sq_dist(PointView a, PointView b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double diff = a[k] - b[k];
    s += diff * diff;
  }
  return s;
}

/// Euclidean distance; throws on dimension mismatch.
double dist(PointView a, PointView b);

/// A query answer: point id plus its squared distance to the query.
/// Candidates compare by (sq, id) everywhere so ties are broken by id.
struct Neighbor {
  std::uint32_t id = 0;
  double sq = 0.0;

  double distance() const { return std::sqrt(sq); }
};

inline bool neighbor_lt(const Neighbor& a, const Neighbor& b) {
  if (a.sq != b.sq) return a.sq < b.sq;
  return a.id < b.id;
}

/// Corner of `box` farthest from `center`: per dimension, hi when the
/// center sits below the midpoint, lo otherwise (ties take lo).
std::vector<double> farthest_corner(BoxView box, PointView center);

inline bool box_contains(BoxView box, PointView p) {
  for (std::size_t k = 0; k < box.dim(); ++k) {
    if (p[k] < box.lo[k] || p[k] > box.hi[k]) return false;
  }
  return true;
}

inline bool boxes_intersect(BoxView a, BoxView b) {
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (a.lo[k] > b.hi[k] || a.hi[k] < b.lo[k]) return false;
  }
  return true;
}

/// Squared distance from p to the box (0 when inside). Never exceeds the
/// computed sq_dist(p, q) of any point q in the box, so pruning on it is
/// exact.
inline double box_sq_dist(BoxView box, PointView p) {
  double s = 0.0;
  for (std::size_t k = 0; k < box.dim(); ++k) {
    double diff = 0.0;
    if (p[k] < box.lo[k]) {
      diff = box.lo[k] - p[k];
    } else if (p[k] > box.hi[k]) {
      diff = p[k] - box.hi[k];
    }
    s += diff * diff;
  }
  return s;
}

/// Squared distance from p to the box corner farthest from it, computed as
/// the per-dimension max of the two edge offsets. At least the computed
/// sq_dist(p, q) of every point q in the box, so whole-subtree containment
/// tests on it are exact.
inline double box_far_sq_dist(BoxView box, PointView p) {
  double s = 0.0;
  for (std::size_t k = 0; k < box.dim(); ++k) {
    const double a = std::abs(p[k] - box.lo[k]);
    const double b = std::abs(box.hi[k] - p[k]);
    const double diff = a > b ? a : b;
    s += diff * diff;
  }
  return s;
}

}  // namespace dpc
