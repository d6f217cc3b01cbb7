// Classical Hopf-Lax enumeration used as an independent oracle for the
// intrinsic evaluator on affine graph backends. Deliberately self-contained:
// it reads raw coordinates and repeats its own arithmetic.
#include <limits>

#include "ihl/theorems.hpp"

namespace ihl {

std::vector<double> classical_hopf_lax(std::span<const Coords> base_points,
                                       std::span<const Coords> section_values,
                                       std::size_t base_dim, std::span<const double> times) {
  const std::size_t n = base_points.size();
  std::vector<double> h(n);
  for (std::size_t z = 0; z < n; ++z) {
    double top = -std::numeric_limits<double>::infinity();
    for (double c : section_values[z]) top = c > top ? c : top;
    h[z] = top;
  }
  std::vector<double> out;
  out.reserve(times.size() * n);
  for (double t : times) {
    for (std::size_t y = 0; y < n; ++y) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t z = 0; z < n; ++z) {
        double sq = 0.0;
        for (std::size_t i = 0; i < base_dim; ++i) {
          const double diff = base_points[z][i] - base_points[y][i];
          sq += diff * diff;
        }
        const double candidate = h[z] + sq / (2.0 * t);
        if (candidate < best) best = candidate;
      }
      out.push_back(best);
    }
  }
  return out;
}

}  // namespace ihl
