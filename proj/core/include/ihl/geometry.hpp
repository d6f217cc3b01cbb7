#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "ihl/error.hpp"

namespace ihl {

using Coords = std::vector<double>;

/// A point of the ambient space R^kappa.
struct AmbientPoint {
  Coords coords;
};

/// A point of the base sample set, identified by its position in the set.
struct BasePoint {
  std::size_t index = 0;
  std::span<const double> coords;
};

struct BoundingBox {
  Coords min;
  Coords max;

  bool contains(std::span<const double> x) const;
  double diameter() const;
};

/// Ordered, duplicate-free, nonempty list of base points inside a box.
class SampleSet {
 public:
  SampleSet(std::vector<Coords> points, BoundingBox box);

  std::size_t size() const noexcept { return points_.size(); }
  std::size_t dim() const noexcept { return box_.min.size(); }
  BasePoint at(std::size_t index) const;
  std::span<const double> coords(std::size_t index) const { return points_[index]; }
  const std::vector<Coords>& points() const noexcept { return points_; }
  const BoundingBox& box() const noexcept { return box_; }

 private:
  std::vector<Coords> points_;
  BoundingBox box_;
};

/// pi(x) keeps the first `base_dim` coordinates and zeroes the rest.
struct AffineGraph {
  std::size_t base_dim = 1;
};

/// pi is given by a table: points[i] lies in the fiber of base index
/// assignment[i].
struct FiniteFibers {
  std::vector<Coords> points;
  std::vector<std::size_t> assignment;
};

using FiberBackend = std::variant<AffineGraph, FiniteFibers>;

/// Euclidean distance; the single distance routine used by every module so
/// that partial sums agree bit-for-bit across call sites.
double euclidean(std::span<const double> a, std::span<const double> b);

/// Euclidean distance restricted to the first `prefix` coordinates.
double euclidean_prefix(std::span<const double> a, std::span<const double> b,
                        std::size_t prefix);

/// The quotient map pi: R^kappa -> Y together with its fibers over the
/// sample set. Immutable once constructed.
class Quotient {
 public:
  Quotient(std::size_t kappa, SampleSet sample, FiberBackend backend);

  std::size_t kappa() const noexcept { return kappa_; }
  const SampleSet& sample() const noexcept { return sample_; }
  const FiberBackend& backend() const noexcept { return backend_; }
  bool is_affine() const noexcept {
    return std::holds_alternative<AffineGraph>(backend_);
  }

  /// Coordinates of pi(x). Throws kUnknownPoint for a finite backend when x
  /// is not one of the listed ambient points.
  Coords project(std::span<const double> x) const;

  /// d(x, pi^{-1}(y)) for the base point with index y.
  double fiber_distance(std::span<const double> x, std::size_t y) const;

  /// Euclidean distance between two base points of the sample.
  double base_distance(std::size_t a, std::size_t b) const;

  /// Listed ambient points of the fiber over y (finite backend only).
  const std::vector<std::size_t>& fiber_members(std::size_t y) const;

  /// Base index assigned to an exactly listed ambient point (finite only).
  std::size_t lookup(std::span<const double> x) const;

 private:
  void check_point(std::span<const double> x) const;

  std::size_t kappa_;
  SampleSet sample_;
  FiberBackend backend_;
  std::vector<std::vector<std::size_t>> fibers_;
  std::map<Coords, std::size_t> point_index_;
};

}  // namespace ihl
