#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ihl/geometry.hpp"

namespace ihl {

/// Scenario families with closed-form or seeded section generators.
enum class Family {
  kZeroGraph,
  kAffineGraph,
  kQuadraticGraph,
  kRandomLipschitzGraph,
  kFinitePartition,
};

std::string_view to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

/// How a tabulated section was produced. Metadata only; evaluation always
/// reads the tabulated values.
struct GeneratorSpec {
  Family family = Family::kZeroGraph;
  std::size_t size = 0;
  std::uint64_t seed = 0;
  double param = 0.0;
  std::size_t kappa = 2;

  bool operator==(const GeneratorSpec&) const = default;
};

/// A tabulated map f: Y -> R^kappa, aligned with the sample order.
class Section {
 public:
  explicit Section(std::vector<Coords> values,
                   std::optional<GeneratorSpec> generator = std::nullopt);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> value(std::size_t y) const { return values_[y]; }
  const std::vector<Coords>& values() const noexcept { return values_; }
  const std::optional<GeneratorSpec>& generator() const noexcept { return generator_; }

 private:
  std::vector<Coords> values_;
  std::optional<GeneratorSpec> generator_;
};

using GraphFunction = std::function<double(std::span<const double> base)>;

/// f(y) = (y_1..y_m, g(y_1..y_m), 0, ...). Requires an affine graph backend.
Section graph_section(const Quotient& quotient, const GraphFunction& g,
                      std::optional<GeneratorSpec> generator = std::nullopt);

struct SectionViolation {
  std::size_t index = 0;
  std::string reason;
};

/// Every sample point where pi(f(y)) != y, plus shape/boundedness problems.
/// Never throws on an invalid section; an empty result means valid.
std::vector<SectionViolation> validate_section(const Quotient& quotient,
                                               const Section& section);

double max_component(const Section& section, std::size_t y);
double min_component(const Section& section, std::size_t y);

/// sup_y max_j f_j(y) - inf_y max_j f_j(y).
double oscillation(const Section& section);

}  // namespace ihl
