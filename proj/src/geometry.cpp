#include "dpc/geometry.hpp"

#include <cmath>
#include <string>

namespace dpc {

PointSet::PointSet(std::vector<double> coords, std::size_t dim)
    : coords_(std::move(coords)), d_(dim) {
  if (d_ == 0) throw std::invalid_argument("PointSet: dimension must be >= 1");
  if (coords_.empty() || coords_.size() % d_ != 0) {
    throw std::invalid_argument("PointSet: coordinate count must be a nonzero multiple of dim");
  }
  n_ = coords_.size() / d_;
  for (double c : coords_) {
    if (!std::isfinite(c)) throw std::invalid_argument("PointSet: non-finite coordinate");
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw std::invalid_argument("PointSet: need at least one point");
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& row : rows) {
    if (row.size() != d) throw std::invalid_argument("PointSet: inconsistent dimension");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return PointSet(std::move(flat), d);
}

void DpcParams::validate() const {
  if (!std::isfinite(d_cut) || d_cut <= 0.0) {
    throw std::invalid_argument("DpcParams: d_cut must be finite and > 0");
  }
  if (!std::isfinite(rho_min) || rho_min < 0.0) {
    throw std::invalid_argument("DpcParams: rho_min must be finite and >= 0");
  }
  if (!std::isfinite(delta_min) || delta_min <= 0.0) {
    throw std::invalid_argument("DpcParams: delta_min must be finite and > 0");
  }
}

BoundingBox::BoundingBox(std::vector<double> lo_, std::vector<double> hi_)
    : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo.size() != hi.size() || lo.empty()) {
    throw std::invalid_argument("BoundingBox: lo/hi dimension mismatch");
  }
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (lo[k] > hi[k]) throw std::invalid_argument("BoundingBox: lo > hi");
  }
}

bool BoundingBox::contains(PointView p) const { return box_contains(view(), p); }

double dist(PointView a, PointView b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dist: dimension mismatch (" + std::to_string(a.size()) +
                                " vs " + std::to_string(b.size()) + ")");
  }
  return std::sqrt(sq_dist(a, b));
}

std::vector<double> farthest_corner(BoxView box, PointView center) {
  assert(box.dim() == center.size());
  std::vector<double> corner(box.dim());
  for (std::size_t k = 0; k < box.dim(); ++k) {
    const double mid = (box.lo[k] + box.hi[k]) / 2.0;
    corner[k] = center[k] < mid ? box.hi[k] : box.lo[k];
  }
  return corner;
}

}  // namespace dpc
