#include "ihl/lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ihl/parallel.hpp"

namespace ihl {

namespace {

double pair_ratio(const Quotient& quotient, const Section& section, std::size_t y1,
                  std::size_t y2) {
  const auto f1 = section.value(y1);
  const double denominator = quotient.fiber_distance(f1, y2);
  if (!(denominator > 0.0)) {
    throw Error(ErrorCode::kDegenerateFibers,
                "f(y" + std::to_string(y1) + ") lies on the fiber of y" + std::to_string(y2));
  }
  return euclidean(f1, section.value(y2)) / denominator;
}

std::vector<std::size_t> ball(const Quotient& quotient, std::size_t z, double radius,
                              bool include_center) {
  std::vector<std::size_t> members;
  for (std::size_t y = 0; y < quotient.sample().size(); ++y) {
    if (y == z) {
      if (include_center) members.push_back(y);
      continue;
    }
    if (quotient.base_distance(y, z) <= radius) members.push_back(y);
  }
  return members;
}

}  // namespace

RadiusSchedule::RadiusSchedule(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "radius schedule is empty");
  }
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i])) {
      throw Error(ErrorCode::kInvalidArgument, "radii must be positive and finite");
    }
    if (i > 0 && !(radii_[i] < radii_[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "radii must be strictly decreasing");
    }
  }
}

RadiusSchedule default_radii(const SampleSet& sample) {
  double r = sample.box().diameter();
  if (!(r > 0.0)) r = 1.0;
  std::vector<double> radii;
  for (int k = 0; k < 5; ++k) {
    radii.push_back(r);
    r /= 4.0;
  }
  return RadiusSchedule(std::move(radii));
}

std::optional<double> capturing_radius(const Quotient& quotient, std::size_t z,
                                       const RadiusSchedule& schedule) {
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < quotient.sample().size(); ++y) {
    if (y != z) nearest = std::min(nearest, quotient.base_distance(y, z));
  }
  const auto& radii = schedule.radii();
  for (auto it = radii.rbegin(); it != radii.rend(); ++it) {
    if (nearest <= *it) return *it;
  }
  return std::nullopt;
}

double global_ils(const Quotient& quotient, const Section& section, unsigned threads) {
  const std::size_t n = quotient.sample().size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "global ILS needs at least two sample points");
  }
  std::vector<double> row_max(n, 0.0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t y1 = begin; y1 < end; ++y1) {
      double best = 0.0;
      for (std::size_t y2 = 0; y2 < n; ++y2) {
        if (y1 != y2) best = std::max(best, pair_ratio(quotient, section, y1, y2));
      }
      row_max[y1] = best;
    }
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

LocalSlope intrinsic_slope(const Quotient& quotient, const Section& section, std::size_t z,
                           const RadiusSchedule& schedule) {
  LocalSlope out;
  out.radius = capturing_radius(quotient, z, schedule);
  if (!out.radius) return out;
  for (std::size_t y : ball(quotient, z, *out.radius, false)) {
    out.value = std::max(out.value, pair_ratio(quotient, section, y, z));
    ++out.neighbors;
  }
  return out;
}

LocalSlope asymptotic_slope(const Quotient& quotient, const Section& section, std::size_t z,
                            const RadiusSchedule& schedule) {
  LocalSlope out;
  out.radius = capturing_radius(quotient, z, schedule);
  if (!out.radius) return out;
  const auto members = ball(quotient, z, *out.radius, true);
  out.neighbors = members.size() - 1;
  for (std::size_t y1 : members) {
    for (std::size_t y2 : members) {
      if (y1 != y2) out.value = std::max(out.value, pair_ratio(quotient, section, y1, y2));
    }
  }
  return out;
}

double k_bound(const Quotient& quotient, const Section& section, unsigned threads) {
  const std::size_t n = quotient.sample().size();
  std::vector<double> row_max(n, 0.0);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t y1 = begin; y1 < end; ++y1) {
      const auto f1 = section.value(y1);
      double best = 0.0;
      for (std::size_t y2 = 0; y2 < n; ++y2) {
        if (y1 != y2) best = std::max(best, quotient.fiber_distance(f1, y2));
      }
      row_max[y1] = best;
    }
  });
  return *std::max_element(row_max.begin(), row_max.end());
}

SlopeReport slope_report(const Quotient& quotient, const Section& section,
                         const RadiusSchedule& schedule, unsigned threads) {
  const std::size_t n = quotient.sample().size();
  SlopeReport report;
  report.radius_schedule = schedule;
  report.ils_global = n >= 2 ? global_ils(quotient, section, threads) : 1.0;
  report.k_bound = k_bound(quotient, section, threads);
  report.slope.assign(n, 0.0);
  report.slope_asymptotic.assign(n, 0.0);
  report.radius_used.assign(n, std::nullopt);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t z = begin; z < end; ++z) {
      const auto local = intrinsic_slope(quotient, section, z, schedule);
      report.slope[z] = local.value;
      report.radius_used[z] = local.radius;
      report.slope_asymptotic[z] = asymptotic_slope(quotient, section, z, schedule).value;
    }
  });
  return report;
}

}  // namespace ihl
