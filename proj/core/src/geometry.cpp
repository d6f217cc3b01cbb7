#include "ihl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace ihl {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kUnknownPoint: return "UnknownPoint";
    case ErrorCode::kEmptyFiber: return "EmptyFiber";
    case ErrorCode::kUnsupportedBackend: return "UnsupportedBackend";
    case ErrorCode::kDegenerateFibers: return "DegenerateFibers";
    case ErrorCode::kInvalidTime: return "InvalidTime";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInvalidScenario: return "InvalidScenario";
  }
  return "Unknown";
}

namespace {

bool all_finite(std::span<const double> x) {
  for (double v : x) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace

double euclidean_prefix(std::span<const double> a, std::span<const double> b,
                        std::size_t prefix) {
  double sum = 0.0;
  for (std::size_t i = 0; i < prefix; ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double euclidean(std::span<const double> a, std::span<const double> b) {
  return euclidean_prefix(a, b, a.size());
}

bool BoundingBox::contains(std::span<const double> x) const {
  if (x.size() != min.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < min[i] || x[i] > max[i]) return false;
  }
  return true;
}

double BoundingBox::diameter() const { return euclidean(min, max); }

SampleSet::SampleSet(std::vector<Coords> points, BoundingBox box)
    : points_(std::move(points)), box_(std::move(box)) {
  if (points_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "sample set is empty");
  }
  if (box_.min.size() != box_.max.size() || box_.min.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "bounding box has inconsistent dimensions");
  }
  if (!all_finite(box_.min) || !all_finite(box_.max)) {
    throw Error(ErrorCode::kInvalidArgument, "bounding box is not finite");
  }
  for (std::size_t i = 0; i < box_.min.size(); ++i) {
    if (box_.min[i] > box_.max[i]) {
      throw Error(ErrorCode::kInvalidArgument, "bounding box min exceeds max");
    }
  }
  std::set<Coords> seen;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& p = points_[i];
    if (p.size() != box_.min.size() || !all_finite(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sample point " + std::to_string(i) + " has wrong dimension or non-finite coordinates");
    }
    if (!box_.contains(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sample point " + std::to_string(i) + " lies outside the bounding box");
    }
    if (!seen.insert(p).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "sample point " + std::to_string(i) + " is a duplicate");
    }
  }
}

BasePoint SampleSet::at(std::size_t index) const {
  if (index >= points_.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "base index " + std::to_string(index) + " out of range");
  }
  return BasePoint{index, points_[index]};
}

Quotient::Quotient(std::size_t kappa, SampleSet sample, FiberBackend backend)
    : kappa_(kappa), sample_(std::move(sample)), backend_(std::move(backend)) {
  if (kappa_ < 2) {
    throw Error(ErrorCode::kInvalidArgument, "kappa must be at least 2");
  }
  if (sample_.dim() != kappa_) {
    throw Error(ErrorCode::kInvalidArgument, "sample dimension differs from kappa");
  }
  if (const auto* affine = std::get_if<AffineGraph>(&backend_)) {
    if (affine->base_dim < 1 || affine->base_dim >= kappa_) {
      throw Error(ErrorCode::kInvalidArgument, "affine graph base_dim must satisfy 1 <= m < kappa");
    }
    // Y must lie in the image of pi, so distinct base points have disjoint fibers.
    for (std::size_t i = 0; i < sample_.size(); ++i) {
      const auto y = sample_.coords(i);
      for (std::size_t j = affine->base_dim; j < kappa_; ++j) {
        if (y[j] != 0.0) {
          throw Error(ErrorCode::kInvalidArgument,
                      "sample point " + std::to_string(i) + " is not a fixed point of the projection");
        }
      }
    }
    return;
  }

  const auto& finite = std::get<FiniteFibers>(backend_);
  if (finite.points.size() != finite.assignment.size()) {
    throw Error(ErrorCode::kInvalidArgument, "finite backend: points and assignment differ in length");
  }
  fibers_.assign(sample_.size(), {});
  for (std::size_t i = 0; i < finite.points.size(); ++i) {
    const auto& p = finite.points[i];
    if (p.size() != kappa_ || !all_finite(p)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "finite backend: point " + std::to_string(i) + " has wrong dimension or non-finite coordinates");
    }
    const std::size_t y = finite.assignment[i];
    if (y >= sample_.size()) {
      throw Error(ErrorCode::kInvalidArgument,
                  "finite backend: assignment " + std::to_string(i) + " out of range");
    }
    if (!point_index_.emplace(p, i).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "finite backend: point " + std::to_string(i) + " is listed twice");
    }
    fibers_[y].push_back(i);
  }
  for (std::size_t y = 0; y < fibers_.size(); ++y) {
    if (fibers_[y].empty()) {
      throw Error(ErrorCode::kEmptyFiber,
                  "finite backend: base index " + std::to_string(y) + " has an empty fiber");
    }
  }
}

void Quotient::check_point(std::span<const double> x) const {
  if (x.size() != kappa_ || !all_finite(x)) {
    throw Error(ErrorCode::kInvalidArgument, "ambient point must have kappa finite coordinates");
  }
}

std::size_t Quotient::lookup(std::span<const double> x) const {
  check_point(x);
  const auto it = point_index_.find(Coords(x.begin(), x.end()));
  if (it == point_index_.end()) {
    throw Error(ErrorCode::kUnknownPoint, "point is not listed in the finite backend");
  }
  return std::get<FiniteFibers>(backend_).assignment[it->second];
}

Coords Quotient::project(std::span<const double> x) const {
  check_point(x);
  if (const auto* affine = std::get_if<AffineGraph>(&backend_)) {
    Coords out(x.begin(), x.end());
    for (std::size_t j = affine->base_dim; j < kappa_; ++j) out[j] = 0.0;
    return out;
  }
  const auto y = sample_.coords(lookup(x));
  return Coords(y.begin(), y.end());
}

double Quotient::fiber_distance(std::span<const double> x, std::size_t y) const {
  if (y >= sample_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "base index " + std::to_string(y) + " out of range");
  }
  if (const auto* affine = std::get_if<AffineGraph>(&backend_)) {
    return euclidean_prefix(x, sample_.coords(y), affine->base_dim);
  }
  const auto& finite = std::get<FiniteFibers>(backend_);
  const auto& members = fibers_[y];
  if (members.empty()) {
    throw Error(ErrorCode::kEmptyFiber, "base index " + std::to_string(y) + " has an empty fiber");
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i : members) {
    best = std::min(best, euclidean(x, finite.points[i]));
  }
  return best;
}

double Quotient::base_distance(std::size_t a, std::size_t b) const {
  return euclidean(sample_.coords(a), sample_.coords(b));
}

const std::vector<std::size_t>& Quotient::fiber_members(std::size_t y) const {
  if (!std::holds_alternative<FiniteFibers>(backend_)) {
    throw Error(ErrorCode::kUnsupportedBackend, "fiber members are only listed for finite backends");
  }
  return fibers_.at(y);
}

}  // namespace ihl
