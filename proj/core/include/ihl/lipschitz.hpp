#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ihl/geometry.hpp"
#include "ihl/sections.hpp"

namespace ihl {

/// Strictly decreasing positive radii. The limsup in the local slopes is
/// replaced by a sup over the smallest radius of the schedule whose
/// punctured ball around the point holds at least one other sample point.
class RadiusSchedule {
 public:
  explicit RadiusSchedule(std::vector<double> radii);

  const std::vector<double>& radii() const noexcept { return radii_; }

 private:
  std::vector<double> radii_;
};

/// 5 radii starting at the bounding-box diameter, shrinking by 1/4.
RadiusSchedule default_radii(const SampleSet& sample);

struct LocalSlope {
  double value = 0.0;
  /// Radius that captured a neighbor; empty for isolated points.
  std::optional<double> radius;
  std::size_t neighbors = 0;
};

/// Smallest radius in `schedule` whose punctured ball around z holds a
/// sample point other than z.
std::optional<double> capturing_radius(const Quotient& quotient, std::size_t z,
                                       const RadiusSchedule& schedule);

/// ILS(f): sup over ordered pairs y1 != y2 of
/// |f(y1) - f(y2)| / d(f(y1), pi^{-1}(y2)). Needs at least 2 sample points
/// (kInvalidArgument otherwise); throws kDegenerateFibers when a denominator
/// vanishes.
double global_ils(const Quotient& quotient, const Section& section, unsigned threads = 1);

/// Ils(f)(z) over the smallest capturing radius; 0 at isolated points.
LocalSlope intrinsic_slope(const Quotient& quotient, const Section& section, std::size_t z,
                           const RadiusSchedule& schedule);

/// Ils_a(f)(z): same radius, sup over ordered pairs inside the closed ball
/// (z included).
LocalSlope asymptotic_slope(const Quotient& quotient, const Section& section, std::size_t z,
                            const RadiusSchedule& schedule);

/// K = max over ordered pairs y1 != y2 of d(f(y1), pi^{-1}(y2)); 0 when the
/// sample has a single point.
double k_bound(const Quotient& quotient, const Section& section, unsigned threads = 1);

struct SlopeReport {
  /// 1 for a single-point sample: the smallest admissible constant.
  double ils_global = 1.0;
  std::vector<double> slope;
  std::vector<double> slope_asymptotic;
  std::vector<std::optional<double>> radius_used;
  double k_bound = 0.0;
  RadiusSchedule radius_schedule{std::vector<double>{1.0}};
};

SlopeReport slope_report(const Quotient& quotient, const Section& section,
                         const RadiusSchedule& schedule, unsigned threads = 1);

}  // namespace ihl
