#include "ihl/sections.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace ihl {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 5> kFamilyNames{{
    {Family::kZeroGraph, "zero_graph"},
    {Family::kAffineGraph, "affine_graph"},
    {Family::kQuadraticGraph, "quadratic_graph"},
    {Family::kRandomLipschitzGraph, "random_lipschitz_graph"},
    {Family::kFinitePartition, "finite_partition"},
}};

}  // namespace

std::string_view to_string(Family family) noexcept {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (const auto& [f, n] : kFamilyNames) {
    if (n == name) return f;
  }
  return std::nullopt;
}

Section::Section(std::vector<Coords> values, std::optional<GeneratorSpec> generator)
    : values_(std::move(values)), generator_(std::move(generator)) {
  if (values_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "section has no values");
  }
}

Section graph_section(const Quotient& quotient, const GraphFunction& g,
                      std::optional<GeneratorSpec> generator) {
  const auto* affine = std::get_if<AffineGraph>(&quotient.backend());
  if (affine == nullptr) {
    throw Error(ErrorCode::kUnsupportedBackend, "graph sections require an affine graph backend");
  }
  const std::size_t m = affine->base_dim;
  const auto& sample = quotient.sample();
  std::vector<Coords> values;
  values.reserve(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto y = sample.coords(i);
    Coords x(quotient.kappa(), 0.0);
    std::copy_n(y.begin(), m, x.begin());
    const double gy = g(y.first(m));
    if (!std::isfinite(gy)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "graph function is not finite at sample point " + std::to_string(i));
    }
    x[m] = gy;
    values.push_back(std::move(x));
  }
  return Section(std::move(values), std::move(generator));
}

std::vector<SectionViolation> validate_section(const Quotient& quotient,
                                               const Section& section) {
  std::vector<SectionViolation> report;
  const auto& sample = quotient.sample();
  if (section.size() != sample.size()) {
    report.push_back({0, "section has " + std::to_string(section.size()) +
                             " values but the sample has " + std::to_string(sample.size())});
    return report;
  }
  for (std::size_t i = 0; i < section.size(); ++i) {
    const auto x = section.value(i);
    if (x.size() != quotient.kappa()) {
      report.push_back({i, "value has wrong dimension"});
      continue;
    }
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) {
      report.push_back({i, "value is not finite"});
      continue;
    }
    if (quotient.is_affine()) {
      const Coords p = quotient.project(x);
      const auto y = sample.coords(i);
      if (!std::equal(p.begin(), p.end(), y.begin(), y.end())) {
        report.push_back({i, "projection of f(y) differs from y"});
      }
    } else {
      try {
        if (quotient.lookup(x) != i) {
          report.push_back({i, "f(y) lies in the fiber of another base point"});
        }
      } catch (const Error&) {
        report.push_back({i, "f(y) is not a listed fiber member"});
      }
    }
  }
  return report;
}

double max_component(const Section& section, std::size_t y) {
  const auto x = section.value(y);
  return *std::max_element(x.begin(), x.end());
}

double min_component(const Section& section, std::size_t y) {
  const auto x = section.value(y);
  return *std::min_element(x.begin(), x.end());
}

double oscillation(const Section& section) {
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < section.size(); ++y) {
    const double m = max_component(section, y);
    hi = std::max(hi, m);
    lo = std::min(lo, m);
  }
  return hi - lo;
}

}  // namespace ihl
