#include "ihl/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "ihl/generators.hpp"
#include "ihl/lipschitz.hpp"
#include "ihl/parallel.hpp"

namespace ihl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxDetails = 16;

std::string cell(double t, std::size_t y) {
  std::ostringstream os;
  os.precision(17);
  os << "t=" << t << " y=" << y;
  return os.str();
}

std::string cell_pair(double t, std::size_t y, std::size_t z) {
  return cell(t, y) + " z=" + std::to_string(z);
}

/// Sequential margin reduction; feed cells in a fixed order.
class Tracker {
 public:
  explicit Tracker(TheoremReport& report) : report_(report) {}

  void add(double margin, const std::function<std::string()>& where) {
    ++report_.cells_checked;
    margin += 0.0;  // -0 -> +0
    worst_ = std::min(worst_, margin);
    if (margin < -report_.tolerance && report_.details.size() < kMaxDetails) {
      report_.details.push_back({where(), margin});
    }
  }

  void finish() {
    report_.worst_margin = worst_;
    report_.passed = worst_ >= -report_.tolerance;
  }

 private:
  TheoremReport& report_;
  double worst_ = kInf;
};

}  // namespace

Harness::Harness(const Scenario& scenario, HarnessOptions options)
    : scenario_(scenario),
      options_(options),
      hopf_lax_(scenario.quotient, scenario.section, options.threads),
      table_(hopf_lax_.sweep(scenario.tgrid, 0.0, options.threads)),
      n_(scenario.quotient.sample().size()),
      times_(scenario.tgrid.size()) {
  if (options_.refine != 1 && options_.refine != 2 && options_.refine != 4) {
    throw Error(ErrorCode::kInvalidArgument, "refine must be 1, 2 or 4");
  }
}

Harness::Table Harness::table_for(TheoremId) const {
  Table tab;
  tab.value.reserve(table_.size());
  tab.d_minus.reserve(table_.size());
  tab.d_plus.reserve(table_.size());
  for (const auto& c : table_) {
    tab.value.push_back(c.value);
    tab.d_minus.push_back(c.d_minus);
    tab.d_plus.push_back(c.d_plus);
  }
  return tab;
}

TheoremReport Harness::start(TheoremId id, double tol) const {
  TheoremReport report;
  report.theorem_id = id;
  report.scenario_id = scenario_.id;
  report.tolerance = tol;
  return report;
}

TheoremReport Harness::check_bounds() const {
  auto report = start(TheoremId::P_BOUNDS, tolerance::kExact);
  auto tab = table_for(TheoremId::P_BOUNDS);
  if (faulted(TheoremId::P_BOUNDS)) tab.value[0] = hopf_lax_.max_component(0) + 1.0;

  double lowest = kInf;
  double highest = -kInf;
  for (std::size_t z = 0; z < n_; ++z) {
    lowest = std::min(lowest, min_component(scenario_.section, z));
    highest = std::max(highest, hopf_lax_.max_component(z));
  }
  const auto times = scenario_.tgrid.times();
  Tracker tracker(report);
  for (std::size_t k = 0; k < times_; ++k) {
    for (std::size_t y = 0; y < n_; ++y) {
      const double v = tab.value[k * n_ + y];
      const double top = hopf_lax_.max_component(y);
      const double margin = std::min({v - lowest, top - v, highest - top});
      tracker.add(margin, [&] { return cell(times[k], y); });
    }
  }
  tracker.finish();
  return report;
}

TheoremReport Harness::check_t_to_0() const {
  auto report = start(TheoremId::P_T0, tolerance::kExact);
  const auto times = scenario_.tgrid.times();
  const auto tab = table_for(TheoremId::P_T0);
  Tracker tracker(report);
  for (std::size_t y = 0; y < n_; ++y) {
    const double t0 = hopf_lax_.freeze_time(y);
    const double probe = std::isfinite(t0) ? 0.5 * t0 : scenario_.tgrid.back();
    double v = hopf_lax_.value(probe, y);
    if (faulted(TheoremId::P_T0) && y == 0) v -= 1.0;
    const double top = hopf_lax_.max_component(y);
    tracker.add(-std::abs(v - top), [&] { return "freeze probe " + cell(probe, y); });
    for (std::size_t k = 0; k < times_ && times[k] <= t0; ++k) {
      tracker.add(-std::abs(tab.value[k * n_ + y] - top), [&] { return cell(times[k], y); });
    }
  }
  tracker.finish();
  return report;
}

TheoremReport Harness::check_time_lipschitz(std::optional<double> delta) const {
  auto report = start(TheoremId::P_TLIP, tolerance::kAlgebraic);
  const auto times = scenario_.tgrid.times();
  const double cutoff = delta.value_or(options_.delta.value_or(scenario_.tgrid.front()));
  if (!(cutoff > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be positive");
  const double osc = oscillation(scenario_.section);
  auto tab = table_for(TheoremId::P_TLIP);
  if (faulted(TheoremId::P_TLIP) && times_ >= 2) {
    const std::size_t k = times_ - 1;
    const double bound = (times[k] - times[k - 1]) / cutoff * osc;
    tab.value[k * n_] += 2.0 * bound + 1.0;
  }

  std::size_t first = 0;
  while (first < times_ && times[first] < cutoff) ++first;
  Tracker tracker(report);
  for (std::size_t y = 0; y < n_; ++y) {
    for (std::size_t k = first; k < times_; ++k) {
      for (std::size_t l = k + 1; l < times_; ++l) {
        const double vk = tab.value[k * n_ + y];
        const double vl = tab.value[l * n_ + y];
        const double bound = (times[l] - times[k]) / cutoff * osc;
        const double scale = 1.0 + std::max(std::abs(vk), std::abs(vl));
        tracker.add((bound - std::abs(vk - vl)) / scale,
                    [&] { return cell(times[k], y) + " s=" + std::to_string(times[l]); });
      }
    }
  }
  report.series.push_back({"delta", {cutoff}});
  report.series.push_back({"oscillation", {osc}});
  tracker.finish();
  return report;
}

TheoremReport Harness::check_global_lipschitz() const {
  auto report = start(TheoremId::R_GLOBAL_LIP, tolerance::kAlgebraic);
  const auto times = scenario_.tgrid.times();
  const double cutoff = scenario_.tgrid.front();
  const double osc = oscillation(scenario_.section);
  const double k = k_bound(scenario_.quotient, scenario_.section, options_.threads);
  auto osc_bound = [&](std::size_t a, std::size_t b) { return (times[b] - times[a]) / cutoff * osc; };
  // Q_t - Q_s <= d^2 (1/2t - 1/2s) <= K^2 (s - t) / (2ts) for the minimizer at s.
  auto k_bound_at = [&](std::size_t a, std::size_t b) {
    return k * k * (times[b] - times[a]) / (2.0 * times[a] * times[b]);
  };
  auto tab = table_for(TheoremId::R_GLOBAL_LIP);
  if (faulted(TheoremId::R_GLOBAL_LIP) && times_ >= 2) {
    const std::size_t last = times_ - 1;
    tab.value[last * n_] += 2.0 * std::max(osc_bound(last - 1, last), k_bound_at(last - 1, last)) + 1.0;
  }
  Tracker tracker(report);
  for (std::size_t y = 0; y < n_; ++y) {
    for (std::size_t a = 0; a < times_; ++a) {
      for (std::size_t b = a + 1; b < times_; ++b) {
        const double va = tab.value[a * n_ + y];
        const double vb = tab.value[b * n_ + y];
        const double bound = std::min(osc_bound(a, b), k_bound_at(a, b));
        const double scale = 1.0 + std::max(std::abs(va), std::abs(vb));
        tracker.add((bound - std::abs(va - vb)) / scale,
                    [&] { return cell(times[a], y) + " s=" + std::to_string(times[b]); });
      }
    }
  }
  report.series.push_back({"k_bound", {k}});
  report.series.push_back({"oscillation", {osc}});
  tracker.finish();
  return report;
}

TheoremReport Harness::check_dpm_monotone() const {
  auto report = start(TheoremId::P_DPM_MONO, tolerance::kExact);
  const auto times = scenario_.tgrid.times();
  auto tab = table_for(TheoremId::P_DPM_MONO);
  if (faulted(TheoremId::P_DPM_MONO) && times_ >= 2) {
    double top = 0.0;
    for (double d : tab.d_minus) top = std::max(top, d);
    tab.d_plus[0] = top + 1.0;
  }

  // d_plus(t) <= d_minus(s) for all t < s, via suffix minima of d_minus.
  Tracker tracker(report);
  for (std::size_t y = 0; y < n_; ++y) {
    double suffix_min = kInf;
    std::size_t suffix_arg = times_;
    std::vector<std::pair<double, std::size_t>> best(times_);
    for (std::size_t k = times_; k-- > 0;) {
      best[k] = {suffix_min, suffix_arg};
      const double dm = tab.d_minus[k * n_ + y];
      if (dm <= suffix_min) {
        suffix_min = dm;
        suffix_arg = k;
      }
    }
    for (std::size_t k = 0; k + 1 < times_; ++k) {
      const auto [dm, l] = best[k];
      tracker.add(dm - tab.d_plus[k * n_ + y],
                  [&] { return cell(times[k], y) + " s=" + std::to_string(times[l]); });
    }
  }

  // One-sided continuity: d_minus is left continuous, d_plus right continuous.
  std::vector<double> semicontinuity(table_.size());
  parallel_for(table_.size(), options_.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto limits = hopf_lax_.one_sided_limits(table_[i].t, table_[i].y_index);
      semicontinuity[i] = -std::max(std::abs(limits.d_minus_left - table_[i].d_minus),
                                    std::abs(limits.d_plus_right - table_[i].d_plus));
    }
  });
  double worst_semicontinuity = kInf;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    worst_semicontinuity = std::min(worst_semicontinuity, semicontinuity[i]);
    tracker.add(semicontinuity[i],
                [&] { return "one-sided limit " + cell(table_[i].t, table_[i].y_index); });
  }
  report.series.push_back({"semicontinuity_worst_margin", {worst_semicontinuity}});
  tracker.finish();
  return report;
}

TheoremReport Harness::check_derivative_formula() const {
  auto report = start(TheoremId::P_DERIV, tolerance::kFiniteDifference);
  const std::size_t total = table_.size();
  // Per cell: left and right relative errors; NaN marks a guarded cell.
  std::vector<double> left(total), right(total), formula_left(total), formula_right(total);
  std::vector<double> concavity_excess(total);
  parallel_for(total, options_.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double t = table_[i].t;
      const std::size_t y = table_[i].y_index;
      const double h = 1e-6 * t;
      const double v = table_[i].value;

      // Second difference vs. the curvature of the active parabola
      // d^2 / (2t), whose second derivative is d^2 / t^3.
      const double h2 = 1e-3 * t;
      const double second = hopf_lax_.value(t - h2, y) + hopf_lax_.value(t + h2, y) - 2.0 * v;
      const double curvature = table_[i].d_minus * table_[i].d_minus / std::pow(t - h2, 3);
      concavity_excess[i] = second - curvature * h2 * h2 - 1e-12 * (1.0 + std::abs(v));

      if (hopf_lax_.switches_near(t, y, 10.0 * h)) {
        left[i] = right[i] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      const double dm = table_[i].d_minus;
      const double dp = table_[i].d_plus;
      formula_left[i] = -(dm * dm) / (2.0 * t * t);
      formula_right[i] = -(dp * dp) / (2.0 * t * t);
      left[i] = hopf_lax_.dt_finite_difference(t, y, h, Side::kLeft);
      right[i] = hopf_lax_.dt_finite_difference(t, y, h, Side::kRight);
    }
  });

  bool fault_pending = faulted(TheoremId::P_DERIV);
  std::size_t guarded = 0;
  Tracker tracker(report);
  for (std::size_t i = 0; i < total; ++i) {
    const double t = table_[i].t;
    const std::size_t y = table_[i].y_index;
    if (concavity_excess[i] > 0.0 && report.warnings.size() < kMaxDetails) {
      report.warnings.push_back("semiconcavity spot check exceeded at " + cell(t, y));
    }
    if (std::isnan(left[i])) {
      ++guarded;
      continue;
    }
    if (fault_pending) {
      formula_right[i] += 1.0 + std::abs(formula_right[i]);
      fault_pending = false;
    }
    const double err_left = std::abs(left[i] - formula_left[i]) / (1.0 + std::abs(formula_left[i]));
    const double err_right = std::abs(right[i] - formula_right[i]) / (1.0 + std::abs(formula_right[i]));
    tracker.add(-err_left, [&] { return "left " + cell(t, y); });
    tracker.add(-err_right, [&] { return "right " + cell(t, y); });
  }
  report.series.push_back({"guarded_cells", {static_cast<double>(guarded)}});
  tracker.finish();
  return report;
}

TheoremReport Harness::check_2tL() const {
  auto report = start(TheoremId::P_2TL, tolerance::kExact);
  if (n_ < 2) {
    report.applicable = false;
    report.worst_margin = kInf;
    return report;
  }
  const double lipschitz = global_ils(scenario_.quotient, scenario_.section, options_.threads);
  const auto times = scenario_.tgrid.times();
  auto tab = table_for(TheoremId::P_2TL);
  if (faulted(TheoremId::P_2TL)) tab.d_plus[0] = 2.0 * times[0] * lipschitz + 1.0;
  Tracker tracker(report);
  for (std::size_t k = 0; k < times_; ++k) {
    for (std::size_t y = 0; y < n_; ++y) {
      tracker.add(2.0 * times[k] * lipschitz - tab.d_plus[k * n_ + y],
                  [&] { return cell(times[k], y); });
    }
  }
  report.series.push_back({"global_ils", {lipschitz}});
  tracker.finish();
  return report;
}

TheoremReport Harness::check_pair_slope() const {
  auto report = start(TheoremId::P_PAIR_SLOPE, tolerance::kPairSlope);
  const auto times = scenario_.tgrid.times();
  auto tab = table_for(TheoremId::P_PAIR_SLOPE);
  if (faulted(TheoremId::P_PAIR_SLOPE) && n_ >= 2) {
    const std::size_t k = times_ - 1;
    const double d = hopf_lax_.fiber_distance(0, 1);
    const double rhs = d * (tab.d_minus[k * n_] / times[k] + d / (2.0 * times[k]));
    tab.value[k * n_ + 1] = tab.value[k * n_] + rhs + 1.0;
  }

  // Per (t, y): worst margin over z for the stated orientation
  // d = d(f(z), pi^{-1}(y)) and for the swapped one d(f(y), pi^{-1}(z)).
  const std::size_t total = times_ * n_;
  std::vector<double> worst(total, kInf), worst_swapped(total, kInf);
  std::vector<std::size_t> worst_z(total, 0);
  parallel_for(total, options_.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t k = i / n_;
      const std::size_t y = i % n_;
      const double t = times[k];
      const double vy = tab.value[i];
      const double dm = tab.d_minus[i];
      for (std::size_t z = 0; z < n_; ++z) {
        const double lhs = tab.value[k * n_ + z] - vy;
        const double d = hopf_lax_.fiber_distance(y, z);
        const double margin = d * (dm / t + d / (2.0 * t)) - lhs;
        if (margin < worst[i]) {
          worst[i] = margin;
          worst_z[i] = z;
        }
        const double ds = hopf_lax_.fiber_distance(z, y);
        worst_swapped[i] = std::min(worst_swapped[i], ds * (dm / t + ds / (2.0 * t)) - lhs);
      }
    }
  });
  double swapped = kInf;
  Tracker tracker(report);
  for (std::size_t i = 0; i < total; ++i) {
    swapped = std::min(swapped, worst_swapped[i]);
    tracker.add(worst[i], [&] { return cell_pair(times[i / n_], i % n_, worst_z[i]); });
  }
  report.series.push_back({"swapped_orientation_worst_margin", {swapped}});
  tracker.finish();
  return report;
}

TheoremReport Harness::check_hj_subsolution() const {
  auto report = start(TheoremId::C_HJ, tolerance::kHamiltonJacobi);
  report.surrogate = true;
  const auto times = scenario_.tgrid.times();
  const auto schedule = scenario_.radius_schedule();
  const auto& radii = schedule.radii();
  const std::size_t levels = radii.size();

  // Neighbors sorted by base distance so every radius is a prefix.
  std::vector<std::vector<std::size_t>> neighbors(n_);
  std::vector<std::vector<double>> reach(n_);
  std::vector<std::optional<std::size_t>> finest(n_);
  for (std::size_t y = 0; y < n_; ++y) {
    for (std::size_t z = 0; z < n_; ++z) {
      if (z != y) neighbors[y].push_back(z);
    }
    std::stable_sort(neighbors[y].begin(), neighbors[y].end(), [&](std::size_t a, std::size_t b) {
      return scenario_.quotient.base_distance(y, a) < scenario_.quotient.base_distance(y, b);
    });
    for (std::size_t z : neighbors[y]) reach[y].push_back(scenario_.quotient.base_distance(y, z));
    const auto r = capturing_radius(scenario_.quotient, y, schedule);
    if (r) finest[y] = static_cast<std::size_t>(std::find(radii.begin(), radii.end(), *r) - radii.begin());
  }

  auto tab = table_for(TheoremId::C_HJ);
  if (faulted(TheoremId::C_HJ) && n_ >= 2) {
    const std::size_t k = times_ - 1;
    const std::size_t z = neighbors[0].front();
    tab.d_plus[k * n_] = 0.0;
    tab.value[k * n_ + z] = tab.value[k * n_] + std::abs(tab.value[k * n_ + z] - tab.value[k * n_]) +
                            hopf_lax_.fiber_distance(z, 0) + 1.0;
  }

  // margins[level][cell] for both orientations: normalized -(residual).
  const std::size_t total = times_ * n_;
  std::vector<std::vector<double>> stated(levels, std::vector<double>(total, kInf));
  std::vector<std::vector<double>> swapped(levels, std::vector<double>(total, kInf));
  parallel_for(total, options_.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t k = i / n_;
      const std::size_t y = i % n_;
      const double t = times[k];
      const double dp = tab.d_plus[i];
      const double derivative = -(dp * dp) / (2.0 * t * t);
      const double vy = tab.value[i];
      for (std::size_t level = 0; level < levels; ++level) {
        double slope = 0.0;
        double slope_swapped = 0.0;
        for (std::size_t j = 0; j < neighbors[y].size() && reach[y][j] <= radii[level]; ++j) {
          const std::size_t z = neighbors[y][j];
          const double rise = std::max(0.0, tab.value[k * n_ + z] - vy);
          slope = std::max(slope, rise / hopf_lax_.fiber_distance(z, y));
          slope_swapped = std::max(slope_swapped, rise / hopf_lax_.fiber_distance(y, z));
        }
        const double residual = derivative + 0.5 * slope * slope;
        const double residual_swapped = derivative + 0.5 * slope_swapped * slope_swapped;
        stated[level][i] = -residual / (1.0 + std::abs(derivative) + 0.5 * slope * slope);
        swapped[level][i] =
            -residual_swapped / (1.0 + std::abs(derivative) + 0.5 * slope_swapped * slope_swapped);
      }
    }
  });

  Series per_radius{"radius", radii};
  Series stated_worst{"worst_margin_per_radius", std::vector<double>(levels, kInf)};
  Series swapped_worst{"swapped_orientation_worst_margin_per_radius", std::vector<double>(levels, kInf)};
  Tracker tracker(report);
  for (std::size_t i = 0; i < total; ++i) {
    const std::size_t y = i % n_;
    for (std::size_t level = 0; level < levels; ++level) {
      stated_worst.values[level] = std::min(stated_worst.values[level], stated[level][i]);
      swapped_worst.values[level] = std::min(swapped_worst.values[level], swapped[level][i]);
    }
    if (!finest[y]) continue;
    tracker.add(stated[*finest[y]][i], [&] { return cell(times[i / n_], y); });
  }
  report.series.push_back(std::move(per_radius));
  report.series.push_back(std::move(stated_worst));
  report.series.push_back(std::move(swapped_worst));
  tracker.finish();
  return report;
}

namespace {

struct DualityStudy {
  double worst = kInf;
  std::size_t tested = 0;
  std::vector<Violation> violations;
};

DualityStudy duality_study(const Scenario& scenario, const HopfLax& hopf_lax,
                           const std::vector<double>* table_values, bool fault, unsigned threads) {
  const std::size_t n = scenario.quotient.sample().size();
  const auto times = scenario.tgrid.times();
  const auto schedule = scenario.radius_schedule();
  std::vector<double> margins(n, kInf);
  std::vector<std::size_t> probe(n, times.size());
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t y = begin; y < end; ++y) {
      const double t0 = hopf_lax.freeze_time(y);
      std::size_t k = 0;
      while (k < times.size() && !(times[k] > t0)) ++k;
      probe[y] = k;
    }
  });
  bool fault_pending = fault;
  std::vector<double> lhs(n, 0.0);
  for (std::size_t y = 0; y < n; ++y) {
    const std::size_t k = probe[y];
    if (k == times.size()) continue;
    double v = table_values ? (*table_values)[k * n + y] : hopf_lax.value(times[k], y);
    if (fault_pending) {
      const double slope = intrinsic_slope(scenario.quotient, scenario.section, y, schedule).value;
      v -= (slope * slope + 1.0) * times[k] / 2.0 + 1.0;
      fault_pending = false;
    }
    lhs[y] = 2.0 * (hopf_lax.max_component(y) - v) / times[k];
  }
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t y = begin; y < end; ++y) {
      if (probe[y] == times.size()) continue;
      const double slope = intrinsic_slope(scenario.quotient, scenario.section, y, schedule).value;
      margins[y] = slope * slope - lhs[y];
    }
  });
  DualityStudy study;
  for (std::size_t y = 0; y < n; ++y) {
    if (probe[y] == times.size()) continue;
    ++study.tested;
    study.worst = std::min(study.worst, margins[y]);
  }
  return study;
}

}  // namespace

double duality_margin(const Scenario& scenario, unsigned threads) {
  HopfLax hopf_lax(scenario.quotient, scenario.section, threads);
  return duality_study(scenario, hopf_lax, nullptr, false, threads).worst;
}

TheoremReport Harness::check_duality() const {
  auto report = start(TheoremId::T_DUALITY, tolerance::kAlgebraic);
  const auto tab = table_for(TheoremId::T_DUALITY);
  const auto schedule = scenario_.radius_schedule();
  const auto times = scenario_.tgrid.times();

  // Per-point margins at the base resolution.
  Tracker tracker(report);
  bool fault_pending = faulted(TheoremId::T_DUALITY);
  for (std::size_t y = 0; y < n_; ++y) {
    const double t0 = hopf_lax_.freeze_time(y);
    std::size_t k = 0;
    while (k < times_ && !(times[k] > t0)) ++k;
    if (k == times_) continue;
    const double slope = intrinsic_slope(scenario_.quotient, scenario_.section, y, schedule).value;
    double v = tab.value[k * n_ + y];
    if (fault_pending) {
      v -= (slope * slope + 1.0) * times[k] / 2.0 + 1.0;
      fault_pending = false;
    }
    const double lhs = 2.0 * (hopf_lax_.max_component(y) - v) / times[k];
    const double rhs = slope * slope;
    tracker.add((rhs - lhs) / (1.0 + rhs), [&] { return cell(times[k], y); });
  }

  Series refinement{"refinement_worst_margin", {}};
  refinement.values.push_back(
      duality_study(scenario_, hopf_lax_, &tab.value, faulted(TheoremId::T_DUALITY), options_.threads).worst);
  const auto& generator = scenario_.section.generator();
  if (options_.refine > 1 && generator) {
    for (std::size_t factor = 2; factor <= options_.refine; factor *= 2) {
      Scenario finer = generate(refined(*generator, factor));
      finer.tgrid = scenario_.tgrid;
      finer.radii = scenario_.radii;
      refinement.values.push_back(duality_margin(finer, options_.threads));
    }
    for (std::size_t i = 1; i < refinement.values.size(); ++i) {
      if (refinement.values[i] > refinement.values[i - 1]) {
        report.warnings.push_back("duality margin increased under refinement at level " +
                                  std::to_string(i));
      }
    }
  } else if (options_.refine > 1) {
    report.warnings.push_back("refinement skipped: scenario has no generator");
  }
  report.series.push_back(std::move(refinement));
  tracker.finish();
  return report;
}

TheoremReport Harness::check_ae_equal() const {
  auto report = start(TheoremId::R_AE_EQUAL, tolerance::kExact);
  const auto times = scenario_.tgrid.times();
  auto tab = table_for(TheoremId::R_AE_EQUAL);
  if (faulted(TheoremId::R_AE_EQUAL)) tab.d_plus[0] += 1.0;

  // Cells with d_minus != d_plus must sit on a switching time, and there are
  // at most |sample| of them per point.
  const std::size_t total = times_ * n_;
  std::vector<char> unequal(total, 0), switching(total, 0);
  parallel_for(total, options_.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (tab.d_minus[i] == tab.d_plus[i]) continue;
      unequal[i] = 1;
      const double t = times[i / n_];
      switching[i] = hopf_lax_.switches_near(t, i % n_, 1e-6 * t) ? 1 : 0;
    }
  });
  std::size_t worst_count = 0;
  Tracker tracker(report);
  for (std::size_t y = 0; y < n_; ++y) {
    std::size_t count = 0;
    for (std::size_t k = 0; k < times_; ++k) {
      const std::size_t i = k * n_ + y;
      if (!unequal[i]) continue;
      ++count;
      if (!switching[i]) {
        tracker.add(-(tab.d_plus[i] - tab.d_minus[i]), [&] { return "off-switch " + cell(times[k], y); });
      }
    }
    worst_count = std::max(worst_count, count);
    tracker.add(static_cast<double>(n_) - static_cast<double>(count),
                [&] { return "count y=" + std::to_string(y); });
  }
  report.series.push_back({"max_unequal_cells_per_point", {static_cast<double>(worst_count)}});
  tracker.finish();
  return report;
}

TheoremReport Harness::classical_oracle() const {
  auto report = start(TheoremId::O_CLASSICAL, tolerance::kAlgebraic);
  const auto* affine = std::get_if<AffineGraph>(&scenario_.quotient.backend());
  if (affine == nullptr) {
    report.applicable = false;
    report.worst_margin = kInf;
    return report;
  }
  const auto times = scenario_.tgrid.times();
  const auto oracle = classical_hopf_lax(scenario_.quotient.sample().points(),
                                         scenario_.section.values(), affine->base_dim, times);
  auto tab = table_for(TheoremId::O_CLASSICAL);
  if (faulted(TheoremId::O_CLASSICAL)) tab.value[0] += 1e-6 * (1.0 + std::abs(tab.value[0]));
  Tracker tracker(report);
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const double a = tab.value[i];
    const double b = oracle[i];
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    tracker.add(-std::abs(a - b) / scale, [&] { return cell(times[i / n_], i % n_); });
  }
  tracker.finish();
  return report;
}

TheoremReport Harness::run(TheoremId id) const {
  switch (id) {
    case TheoremId::P_BOUNDS: return check_bounds();
    case TheoremId::P_T0: return check_t_to_0();
    case TheoremId::P_TLIP: return check_time_lipschitz();
    case TheoremId::P_DPM_MONO: return check_dpm_monotone();
    case TheoremId::P_DERIV: return check_derivative_formula();
    case TheoremId::P_2TL: return check_2tL();
    case TheoremId::P_PAIR_SLOPE: return check_pair_slope();
    case TheoremId::C_HJ: return check_hj_subsolution();
    case TheoremId::T_DUALITY: return check_duality();
    case TheoremId::R_GLOBAL_LIP: return check_global_lipschitz();
    case TheoremId::R_AE_EQUAL: return check_ae_equal();
    case TheoremId::O_CLASSICAL: return classical_oracle();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown theorem id");
}

std::vector<TheoremReport> Harness::run(std::span<const TheoremId> ids) const {
  std::vector<TheoremReport> reports;
  reports.reserve(ids.size());
  for (TheoremId id : ids) reports.push_back(run(id));
  return reports;
}

bool all_hard_checks_passed(std::span<const TheoremReport> reports) {
  return std::all_of(reports.begin(), reports.end(), [](const TheoremReport& r) {
    return r.surrogate || !r.applicable || r.passed;
  });
}

}  // namespace ihl
