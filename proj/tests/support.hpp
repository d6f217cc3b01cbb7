#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ihl/generators.hpp"
#include "ihl/scenario.hpp"

namespace ihl::test {

/// Points (x, 0) in R^2 over an affine graph quotient, box [min x, max x] x {0}.
inline Quotient line_quotient(const std::vector<double>& xs) {
  std::vector<Coords> points;
  for (double x : xs) points.push_back({x, 0.0});
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  return Quotient(2, SampleSet(points, BoundingBox{{*lo, 0.0}, {*hi, 0.0}}), AffineGraph{1});
}

/// Y = {0, 1} x {0}, f(0) = (0, 0), f(1) = (1, 2); iQ_t f(1) = min(2, 1/(2t)).
inline Scenario two_point(std::vector<double> times = {0.1, 1.0}) {
  Quotient q = line_quotient({0.0, 1.0});
  Section f({{0.0, 0.0}, {1.0, 2.0}});
  return Scenario{"two-point", std::move(q), std::move(f), TGrid(std::move(times)), std::nullopt,
                  std::nullopt};
}

inline Scenario with_grid(Scenario s, TGrid grid) {
  s.tgrid = std::move(grid);
  return s;
}

inline Scenario with_fault(Scenario s, TheoremId id) {
  s.fault = id;
  return s;
}

inline std::string data_path(const std::string& name) { return std::string(IHL_TEST_DATA) + "/" + name; }

}  // namespace ihl::test
