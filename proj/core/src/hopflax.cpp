#include "ihl/hopflax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ihl/parallel.hpp"

namespace ihl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidTime, "time must be positive and finite, got " + std::to_string(t));
  }
}

// Shared by every evaluation path so that F is bitwise identical wherever
// it is recomputed.
inline double objective(double max_component, double distance, double t) {
  return max_component + (distance * distance) / (2.0 * t);
}

}  // namespace

TGrid::TGrid(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "time grid is empty");
  }
  for (std::size_t i = 0; i < times_.size(); ++i) {
    require_time(times_[i]);
    if (i > 0 && !(times_[i] > times_[i - 1])) {
      throw Error(ErrorCode::kInvalidArgument, "time grid must be strictly increasing");
    }
  }
}

TGrid TGrid::linear(double t_min, double t_max, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "time grid count must be positive");
  if (count == 1) return TGrid({t_min});
  std::vector<double> times(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(count - 1);
    times[i] = t_min + s * (t_max - t_min);
  }
  times.back() = t_max;
  return TGrid(std::move(times));
}

TGrid TGrid::log(double t_min, double t_max, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::kInvalidArgument, "time grid count must be positive");
  require_time(t_min);
  require_time(t_max);
  if (count == 1) return TGrid({t_min});
  const double lo = std::log(t_min);
  const double hi = std::log(t_max);
  std::vector<double> times(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(count - 1);
    times[i] = std::exp(lo + s * (hi - lo));
  }
  times.front() = t_min;
  times.back() = t_max;
  return TGrid(std::move(times));
}

HopfLax::HopfLax(const Quotient& quotient, const Section& section, unsigned threads)
    : quotient_(quotient), section_(section), n_(quotient.sample().size()) {
  if (section.size() != n_) {
    throw Error(ErrorCode::kInvalidArgument, "section size differs from the sample size");
  }
  max_component_.resize(n_);
  for (std::size_t z = 0; z < n_; ++z) max_component_[z] = ihl::max_component(section, z);
  distance_.resize(n_ * n_);
  parallel_for(n_, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t y = begin; y < end; ++y) {
      for (std::size_t z = 0; z < n_; ++z) {
        distance_[y * n_ + z] = quotient.fiber_distance(section.value(z), y);
      }
    }
  });
}

double HopfLax::big_f(double t, std::size_t y, std::size_t z) const {
  require_time(t);
  return objective(max_component_[z], fiber_distance(y, z), t);
}

double HopfLax::value(double t, std::size_t y) const {
  require_time(t);
  double best = kInf;
  const double* row = &distance_[y * n_];
  for (std::size_t z = 0; z < n_; ++z) {
    best = std::min(best, objective(max_component_[z], row[z], t));
  }
  return best;
}

SemigroupPoint HopfLax::iq(double t, std::size_t y, double eps) const {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(ErrorCode::kInvalidArgument, "argmin eps must be finite and nonnegative");
  }
  SemigroupPoint cell;
  cell.t = t;
  cell.y_index = y;
  cell.argmin_eps = eps;
  cell.value = value(t, y);
  const double threshold = cell.value + eps;
  const double* row = &distance_[y * n_];
  cell.d_minus = kInf;
  cell.d_plus = 0.0;
  for (std::size_t z = 0; z < n_; ++z) {
    if (objective(max_component_[z], row[z], t) <= threshold) {
      cell.argmin_indices.push_back(z);
      cell.d_minus = std::min(cell.d_minus, row[z]);
      cell.d_plus = std::max(cell.d_plus, row[z]);
    }
  }
  return cell;
}

std::vector<std::size_t> HopfLax::argmin_set(double t, std::size_t y) const {
  return iq(t, y, 0.0).argmin_indices;
}

double HopfLax::freeze_time(std::size_t y) const {
  const double top = max_component_[y];
  double t0 = kInf;
  for (std::size_t z = 0; z < n_; ++z) {
    const double gap = top - max_component_[z];
    if (z == y || !(gap > 0.0)) continue;
    const double d = fiber_distance(y, z);
    t0 = std::min(t0, (d * d) / (2.0 * gap));
  }
  return t0;
}

double HopfLax::t_star(std::size_t) const { return kInf; }

double HopfLax::dt_formula(double t, std::size_t y, Side side) const {
  const auto cell = iq(t, y, 0.0);
  const double d = side == Side::kLeft ? cell.d_minus : cell.d_plus;
  return -(d * d) / (2.0 * t * t);
}

double HopfLax::dt_finite_difference(double t, std::size_t y, double h, Side side) const {
  require_time(t);
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::kInvalidArgument, "finite-difference step must be positive");
  }
  if (side == Side::kLeft) {
    require_time(t - h);
    return (value(t, y) - value(t - h, y)) / h;
  }
  return (value(t + h, y) - value(t, y)) / h;
}

std::vector<std::size_t> HopfLax::argmin_changes(std::size_t y, const TGrid& grid) const {
  std::vector<std::size_t> changes;
  const auto times = grid.times();
  auto previous = argmin_set(times[0], y);
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    auto next = argmin_set(times[k + 1], y);
    if (next != previous) changes.push_back(k);
    previous = std::move(next);
  }
  return changes;
}

bool HopfLax::switches_near(double t, std::size_t y, double band) const {
  require_time(t);
  const auto here = argmin_set(t, y);
  // The envelope is concave in 1/(2t): one line minimal at both ends of an
  // interval is minimal throughout, so equal sets at the ends rule out a switch.
  const double lo = t - band;
  if (lo > 0.0 && argmin_set(lo, y) != here) return true;
  if (lo <= 0.0 && argmin_set(t * 0.5, y) != here) return true;
  return argmin_set(t + band, y) != here;
}

OneSidedLimits HopfLax::one_sided_limits(double t, std::size_t y, int finest_level) const {
  require_time(t);
  const double offset = std::ldexp(1.0, -finest_level);
  OneSidedLimits limits;
  limits.d_minus_left = iq(t * (1.0 - offset), y, 0.0).d_minus;
  limits.d_plus_right = iq(t * (1.0 + offset), y, 0.0).d_plus;
  return limits;
}

std::vector<SemigroupPoint> HopfLax::sweep(const TGrid& grid, double eps, unsigned threads) const {
  const auto times = grid.times();
  std::vector<SemigroupPoint> cells(times.size() * n_);
  parallel_for(cells.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t k = i / n_;
      const std::size_t y = i % n_;
      try {
        cells[i] = iq(times[k], y, eps);
      } catch (const Error& e) {
        throw Error(e.code(), "cell (t=" + std::to_string(times[k]) + ", y=" + std::to_string(y) +
                                  "): " + e.what());
      }
    }
  });
  return cells;
}

}  // namespace ihl
