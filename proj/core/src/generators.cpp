#include "ihl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ihl {

namespace {

constexpr std::size_t kLipschitzKnots = 16;
constexpr std::uint64_t kSectionStream = 0x9e3779b97f4a7c15ULL;

// mt19937_64 output is fixed by the standard; the distributions are not, so
// map raw words to [0, 1) by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)); }

 private:
  std::mt19937_64 engine_;
};

std::vector<Coords> uniform_points(std::size_t count, std::size_t dim, std::size_t kappa,
                                   Rng& rng) {
  std::vector<Coords> points;
  points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Coords p(kappa, 0.0);
    for (std::size_t j = 0; j < dim; ++j) p[j] = rng.uniform();
    points.push_back(std::move(p));
  }
  return points;
}

std::string scenario_id(const GeneratorSpec& spec) {
  std::ostringstream os;
  os << to_string(spec.family) << '-' << spec.size << '-' << spec.seed;
  if (spec.param != default_param(spec.family)) os << "-p" << spec.param;
  if (spec.kappa != 2) os << "-k" << spec.kappa;
  return os.str();
}

Scenario finite_partition(const GeneratorSpec& spec) {
  const std::size_t n = spec.size;
  const std::size_t kappa = spec.kappa;
  const auto per_fiber = static_cast<std::size_t>(std::max(1.0, std::round(spec.param)));
  Rng rng(spec.seed);

  FiniteFibers fibers;
  fibers.points = uniform_points(n * per_fiber, kappa, kappa, rng);
  fibers.assignment.resize(fibers.points.size());
  for (std::size_t i = 0; i < fibers.points.size(); ++i) {
    fibers.assignment[i] = i < n ? i : rng.index(n);
  }

  // Base points sit at fiber centroids.
  std::vector<Coords> base(n, Coords(kappa, 0.0));
  std::vector<std::size_t> counts(n, 0);
  for (std::size_t i = 0; i < fibers.points.size(); ++i) {
    const std::size_t y = fibers.assignment[i];
    for (std::size_t j = 0; j < kappa; ++j) base[y][j] += fibers.points[i][j];
    ++counts[y];
  }
  for (std::size_t y = 0; y < n; ++y) {
    for (double& c : base[y]) c /= static_cast<double>(counts[y]);
  }

  std::vector<std::vector<std::size_t>> members(n);
  for (std::size_t i = 0; i < fibers.points.size(); ++i) {
    members[fibers.assignment[i]].push_back(i);
  }
  std::vector<Coords> values(n);
  for (std::size_t y = 0; y < n; ++y) {
    values[y] = fibers.points[members[y][rng.index(members[y].size())]];
  }

  BoundingBox box{Coords(kappa, 0.0), Coords(kappa, 1.0)};
  Quotient quotient(kappa, SampleSet(std::move(base), std::move(box)), std::move(fibers));
  Section section(std::move(values), spec);
  return Scenario{scenario_id(spec), std::move(quotient), std::move(section), default_tgrid(),
                  std::nullopt, std::nullopt};
}

}  // namespace

double default_param(Family family) noexcept {
  switch (family) {
    case Family::kZeroGraph: return 0.0;
    case Family::kAffineGraph: return 2.0;
    case Family::kQuadraticGraph: return 1.0;
    case Family::kRandomLipschitzGraph: return 1.0;
    case Family::kFinitePartition: return 3.0;
  }
  return 0.0;
}

Quotient graph_quotient(std::size_t size, std::size_t kappa, std::uint64_t seed) {
  if (size == 0) throw Error(ErrorCode::kInvalidArgument, "sample size must be positive");
  if (kappa < 2) throw Error(ErrorCode::kInvalidArgument, "kappa must be at least 2");
  const std::size_t m = kappa - 1;
  std::vector<Coords> points;
  if (m == 1) {
    points.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
      Coords p(kappa, 0.0);
      p[0] = size == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(size - 1);
      points.push_back(std::move(p));
    }
  } else {
    Rng rng(seed);
    points = uniform_points(size, m, kappa, rng);
  }
  Coords hi(kappa, 0.0);
  std::fill_n(hi.begin(), m, 1.0);
  return Quotient(kappa, SampleSet(std::move(points), BoundingBox{Coords(kappa, 0.0), hi}),
                  AffineGraph{m});
}

Section zero_graph(const Quotient& quotient) {
  return graph_section(quotient, [](std::span<const double>) { return 0.0; });
}

Section affine_graph(const Quotient& quotient, double a, double b) {
  return graph_section(quotient, [a, b](std::span<const double> u) { return a * u[0] + b; });
}

Section quadratic_graph(const Quotient& quotient, double c) {
  return graph_section(quotient, [c](std::span<const double> u) { return c * u[0] * u[0]; });
}

Section random_lipschitz_graph(const Quotient& quotient, double lipschitz, std::uint64_t seed) {
  // Knots depend on the seed only, so refined samples see the same function.
  Rng rng(seed ^ kSectionStream);
  std::vector<double> knots(kLipschitzKnots + 1);
  knots[0] = rng.uniform();
  const double width = 1.0 / static_cast<double>(kLipschitzKnots);
  for (std::size_t k = 0; k < kLipschitzKnots; ++k) {
    knots[k + 1] = knots[k] + lipschitz * (2.0 * rng.uniform() - 1.0) * width;
  }
  return graph_section(quotient, [knots, width](std::span<const double> u) {
    const double x = std::clamp(u[0], 0.0, 1.0);
    const auto k = std::min(kLipschitzKnots - 1, static_cast<std::size_t>(x / width));
    const double s = (x - static_cast<double>(k) * width) / width;
    return knots[k] + s * (knots[k + 1] - knots[k]);
  });
}

TGrid default_tgrid() { return TGrid::log(1e-3, 10.0, 50); }

Scenario generate(const GeneratorSpec& spec) {
  if (spec.family == Family::kFinitePartition) return finite_partition(spec);
  Quotient quotient = graph_quotient(spec.size, spec.kappa, spec.seed);
  auto tabulated = [&]() -> Section {
    switch (spec.family) {
      case Family::kZeroGraph: return zero_graph(quotient);
      case Family::kAffineGraph: return affine_graph(quotient, spec.param);
      case Family::kQuadraticGraph: return quadratic_graph(quotient, spec.param);
      case Family::kRandomLipschitzGraph:
        return random_lipschitz_graph(quotient, spec.param, spec.seed);
      case Family::kFinitePartition: break;
    }
    throw Error(ErrorCode::kInvalidArgument, "unknown family");
  }();
  Section section(tabulated.values(), spec);
  return Scenario{scenario_id(spec), std::move(quotient), std::move(section), default_tgrid(),
                  std::nullopt, std::nullopt};
}

GeneratorSpec refined(const GeneratorSpec& spec, std::size_t factor) {
  GeneratorSpec out = spec;
  const bool nested_grid = spec.family != Family::kFinitePartition && spec.kappa == 2;
  out.size = nested_grid && spec.size > 1 ? (spec.size - 1) * factor + 1 : spec.size * factor;
  return out;
}

std::vector<GeneratorSpec> shipped_specs() {
  std::vector<GeneratorSpec> specs;
  auto add = [&](Family family, std::size_t size, std::uint64_t seed, double param) {
    specs.push_back(GeneratorSpec{family, size, seed, param, 2});
  };
  add(Family::kZeroGraph, 200, 1, 0.0);
  add(Family::kAffineGraph, 200, 1, 0.5);
  add(Family::kAffineGraph, 200, 1, 1.0);
  for (std::size_t n : {50, 200, 1000}) add(Family::kAffineGraph, n, 1, 2.0);
  for (std::size_t n : {50, 200, 1000}) add(Family::kQuadraticGraph, n, 1, 1.0);
  for (std::size_t n : {50, 200, 1000}) add(Family::kRandomLipschitzGraph, n, 7, 1.0);
  for (std::size_t n : {50, 200, 1000}) add(Family::kRandomLipschitzGraph, n, 11, 5.0);
  add(Family::kFinitePartition, 30, 3, 3.0);
  add(Family::kFinitePartition, 100, 5, 3.0);
  return specs;
}

}  // namespace ihl
