#include <doctest.h>

#include <cmath>
#include <random>

#include "ihl/geometry.hpp"
#include "support.hpp"

using namespace ihl;

namespace {

Quotient finite_quotient(std::vector<Coords> base, std::vector<Coords> points,
                         std::vector<std::size_t> assignment) {
  BoundingBox box{{-10.0, -10.0}, {10.0, 10.0}};
  return Quotient(2, SampleSet(std::move(base), box), FiniteFibers{std::move(points), std::move(assignment)});
}

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("affine projection zeroes the fiber coordinates") {
  const auto q = test::line_quotient({0.0, 1.0, 4.0});
  CHECK(q.project(Coords{1.0, 3.0}) == Coords{1.0, 0.0});
  CHECK(q.project(Coords{4.0, 0.0}) == Coords{4.0, 0.0});
}

TEST_CASE("affine fiber distance is the base-coordinate distance") {
  const auto q = test::line_quotient({0.0, 1.0, 4.0});
  CHECK(q.fiber_distance(Coords{1.0, 3.0}, 2) == 3.0);
  CHECK(q.fiber_distance(Coords{4.0, -17.0}, 2) == 0.0);
}

TEST_CASE("finite projection is a table lookup") {
  const auto q = finite_quotient({{0.0, 0.0}, {3.0, 3.0}}, {{0.0, 0.0}, {0.0, 5.0}, {3.0, 3.0}}, {0, 0, 1});
  CHECK(q.project(Coords{0.0, 5.0}) == Coords{0.0, 0.0});
  CHECK(q.lookup(Coords{3.0, 3.0}) == 1);
  CHECK(q.fiber_members(0) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("finite fiber distance takes the nearest member") {
  const auto q = finite_quotient({{0.0, 0.0}, {2.0, 0.0}}, {{0.0, 0.0}, {2.0, 0.0}, {2.0, 7.0}}, {0, 1, 1});
  CHECK(q.fiber_distance(Coords{0.0, 0.0}, 1) == 2.0);
  CHECK(q.fiber_distance(Coords{2.0, 7.0}, 1) == 0.0);
}

TEST_CASE("errors") {
  const auto q = finite_quotient({{0.0, 0.0}}, {{0.0, 0.0}}, {0});
  SUBCASE("unknown point") {
    try {
      q.project(Coords{1.0, 1.0});
      FAIL("expected UnknownPoint");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kUnknownPoint);
    }
  }
  SUBCASE("empty fiber") {
    try {
      finite_quotient({{0.0, 0.0}, {1.0, 1.0}}, {{0.0, 0.0}}, {0});
      FAIL("expected EmptyFiber");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kEmptyFiber);
    }
  }
  SUBCASE("non-finite point") {
    CHECK_THROWS_AS(q.project(Coords{std::nan(""), 0.0}), Error);
  }
  SUBCASE("assignment out of range") {
    CHECK_THROWS_AS(finite_quotient({{0.0, 0.0}}, {{0.0, 0.0}}, {3}), Error);
  }
  SUBCASE("duplicate sample points") {
    CHECK_THROWS_AS(test::line_quotient({0.0, 0.0}), Error);
  }
  SUBCASE("base_dim out of range") {
    CHECK_THROWS_AS(Quotient(2, SampleSet({{0.0, 0.0}}, BoundingBox{{0.0, 0.0}, {1.0, 0.0}}), AffineGraph{2}),
                    Error);
  }
  SUBCASE("sample point off the zero section") {
    CHECK_THROWS_AS(Quotient(2, SampleSet({{0.0, 0.5}}, BoundingBox{{0.0, 0.0}, {1.0, 1.0}}), AffineGraph{1}),
                    Error);
  }
  SUBCASE("sample outside the box") {
    CHECK_THROWS_AS(SampleSet({{2.0, 0.0}}, BoundingBox{{0.0, 0.0}, {1.0, 0.0}}), Error);
  }
}

TEST_CASE("property: fiber distance never exceeds the distance to a listed member") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 6;
    std::vector<Coords> base, points;
    std::vector<std::size_t> assignment;
    for (std::size_t y = 0; y < n; ++y) base.push_back({u(rng), u(rng)});
    for (std::size_t i = 0; i < 4 * n; ++i) {
      points.push_back({u(rng), u(rng)});
      assignment.push_back(i < n ? i : rng() % n);
    }
    const Quotient q(2, SampleSet(base, BoundingBox{{0.0, 0.0}, {1.0, 1.0}}), FiniteFibers{points, assignment});
    for (int probe = 0; probe < 10; ++probe) {
      const Coords x{u(rng), u(rng)};
      for (std::size_t i = 0; i < points.size(); ++i) {
        CHECK(q.fiber_distance(x, assignment[i]) <= euclidean(x, points[i]));
      }
    }
  }
}

}  // TEST_SUITE
