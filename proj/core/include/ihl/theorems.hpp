#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ihl/hopflax.hpp"
#include "ihl/scenario.hpp"
#include "ihl/theorem_id.hpp"

namespace ihl {

struct Violation {
  std::string where;
  double margin = 0.0;
};

struct Series {
  std::string name;
  std::vector<double> values;
};

/// Verdict of one check on one scenario. Margins are normalized slacks of
/// the exact statement (positive = satisfied); a check passes iff
/// worst_margin >= -tolerance.
struct TheoremReport {
  TheoremId theorem_id = TheoremId::P_BOUNDS;
  std::string scenario_id;
  bool passed = true;
  double worst_margin = 0.0;
  double tolerance = 0.0;
  /// Surrogate checks are reported but do not decide the verify exit code.
  bool surrogate = false;
  /// False when the check's precondition does not hold for the scenario.
  bool applicable = true;
  std::size_t cells_checked = 0;
  /// First violating cells, in deterministic order (capped).
  std::vector<Violation> details;
  std::vector<Series> series;
  /// Soft findings (semiconcavity spot check) that never fail a check.
  std::vector<std::string> warnings;
};

struct HarnessOptions {
  /// Lower time cutoff for the time-Lipschitz check; the smallest grid
  /// time when unset.
  std::optional<double> delta;
  unsigned threads = 1;
  /// Duality refinement levels: 1, 2 or 4 (runs 1x, 2x, 4x denser samples).
  std::size_t refine = 1;
};

/// Tolerances pinned per check.
namespace tolerance {
inline constexpr double kExact = 0.0;
inline constexpr double kAlgebraic = 1e-12;
inline constexpr double kFiniteDifference = 1e-3;
inline constexpr double kPairSlope = 1e-9;
inline constexpr double kHamiltonJacobi = 1e-6;
}  // namespace tolerance

/// Runs the checks on one scenario. Sweeps the scenario's grid once (eps = 0)
/// and shares the table across checks. If the scenario names a fault, only
/// the targeted check sees corrupted data.
class Harness {
 public:
  explicit Harness(const Scenario& scenario, HarnessOptions options = {});
  Harness(Scenario&&, HarnessOptions = {}) = delete;

  const HopfLax& evaluator() const noexcept { return hopf_lax_; }
  const std::vector<SemigroupPoint>& table() const noexcept { return table_; }

  TheoremReport check_bounds() const;
  TheoremReport check_t_to_0() const;
  TheoremReport check_time_lipschitz(std::optional<double> delta = std::nullopt) const;
  TheoremReport check_dpm_monotone() const;
  TheoremReport check_derivative_formula() const;
  TheoremReport check_2tL() const;
  TheoremReport check_pair_slope() const;
  TheoremReport check_hj_subsolution() const;
  TheoremReport check_duality() const;
  TheoremReport check_global_lipschitz() const;
  TheoremReport check_ae_equal() const;
  TheoremReport classical_oracle() const;

  TheoremReport run(TheoremId id) const;
  std::vector<TheoremReport> run(std::span<const TheoremId> ids) const;

 private:
  struct Table {
    std::vector<double> value;
    std::vector<double> d_minus;
    std::vector<double> d_plus;
  };

  Table table_for(TheoremId id) const;
  bool faulted(TheoremId id) const { return scenario_.fault == id; }
  TheoremReport start(TheoremId id, double tol) const;

  const Scenario& scenario_;
  HarnessOptions options_;
  HopfLax hopf_lax_;
  std::vector<SemigroupPoint> table_;
  std::size_t n_;
  std::size_t times_;
};

/// Min over z of h(z) + |z_base - y_base|^2 / (2t), h(z) = max_j f_j(z), by
/// direct enumeration on raw coordinates. Shares no code with HopfLax.
/// Output is time-major, one value per (t, y).
std::vector<double> classical_hopf_lax(std::span<const Coords> base_points,
                                       std::span<const Coords> section_values,
                                       std::size_t base_dim, std::span<const double> times);

/// The duality margin min_y [Ils(y)^2 - 2 (max f(y) - iQ_t f(y)) / t] at the
/// first grid time past each point's freeze time; +inf when every point is
/// vacuous.
double duality_margin(const Scenario& scenario, unsigned threads = 1);

/// True iff no hard (non-surrogate, applicable) report failed.
bool all_hard_checks_passed(std::span<const TheoremReport> reports);

}  // namespace ihl
