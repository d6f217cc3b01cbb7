#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ihl/geometry.hpp"
#include "ihl/sections.hpp"

namespace ihl {

/// Strictly increasing positive times.
class TGrid {
 public:
  explicit TGrid(std::vector<double> times);

  static TGrid linear(double t_min, double t_max, std::size_t count);
  static TGrid log(double t_min, double t_max, std::size_t count);

  std::span<const double> times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  double front() const { return times_.front(); }
  double back() const { return times_.back(); }

 private:
  std::vector<double> times_;
};

/// One evaluation cell (t, y) of the semigroup.
struct SemigroupPoint {
  double t = 0.0;
  std::size_t y_index = 0;
  double value = 0.0;
  double argmin_eps = 0.0;
  /// Every z with F(t, y, z) <= value + eps, in increasing index order.
  std::vector<std::size_t> argmin_indices;
  /// Min / max of d(f(z), pi^{-1}(y)) over argmin_indices.
  double d_minus = 0.0;
  double d_plus = 0.0;
};

enum class Side { kLeft, kRight };

struct OneSidedLimits {
  /// d_minus at the finest left offset t(1 - 2^-k).
  double d_minus_left = 0.0;
  /// d_plus at the finest right offset t(1 + 2^-k).
  double d_plus_right = 0.0;
};

/// Intrinsic Hopf-Lax evaluator over a finite sample:
///
///   iQ_t f(y) = min_z  max_j f_j(z) + d(f(z), pi^{-1}(y))^2 / (2t).
///
/// Fiber distances and max components are tabulated once at construction.
/// The quotient and section must outlive the evaluator.
class HopfLax {
 public:
  HopfLax(const Quotient& quotient, const Section& section, unsigned threads = 1);
  HopfLax(Quotient&&, const Section&, unsigned = 1) = delete;
  HopfLax(const Quotient&, Section&&, unsigned = 1) = delete;

  const Quotient& quotient() const noexcept { return quotient_; }
  const Section& section() const noexcept { return section_; }
  std::size_t size() const noexcept { return n_; }

  double max_component(std::size_t y) const { return max_component_[y]; }
  /// d(f(z), pi^{-1}(y)), tabulated.
  double fiber_distance(std::size_t y, std::size_t z) const { return distance_[y * n_ + z]; }

  double big_f(double t, std::size_t y, std::size_t z) const;
  SemigroupPoint iq(double t, std::size_t y, double eps = 0.0) const;
  /// iq(t, y, 0).value without building the argmin set.
  double value(double t, std::size_t y) const;

  /// Largest t0 with iq(t, y).value == max_component(y) for every t <= t0;
  /// +inf when no competitor has a smaller max component.
  double freeze_time(std::size_t y) const;

  /// Always +inf: bounded sections over finite samples never reach -inf.
  double t_star(std::size_t y) const;

  /// -(d_minus)^2 / (2t^2) on the left, -(d_plus)^2 / (2t^2) on the right.
  double dt_formula(double t, std::size_t y, Side side) const;
  double dt_finite_difference(double t, std::size_t y, double h, Side side) const;

  /// Grid indices k where the eps = 0 argmin set at times[k] differs from
  /// the one at times[k + 1].
  std::vector<std::size_t> argmin_changes(std::size_t y, const TGrid& grid) const;

  /// True when the eps = 0 argmin set changes somewhere in [t - band, t + band].
  bool switches_near(double t, std::size_t y, double band) const;

  OneSidedLimits one_sided_limits(double t, std::size_t y, int finest_level = 40) const;

  /// Every (t, y) cell, time-major. Output is identical for any thread count.
  std::vector<SemigroupPoint> sweep(const TGrid& grid, double eps, unsigned threads = 1) const;

 private:
  std::vector<std::size_t> argmin_set(double t, std::size_t y) const;

  const Quotient& quotient_;
  const Section& section_;
  std::size_t n_;
  std::vector<double> max_component_;
  std::vector<double> distance_;
};

}  // namespace ihl
