#include <doctest.h>

#include <cmath>
#include <limits>

#include "ihl/sections.hpp"
#include "support.hpp"

using namespace ihl;

TEST_SUITE("sections") {

TEST_CASE("graph sections place g in the first fiber coordinate") {
  const auto q = test::line_quotient({0.0, 1.0, 2.0});
  CHECK(zero_graph(q).values()[1] == Coords{1.0, 0.0});
  CHECK(graph_section(q, [](std::span<const double> u) { return u[0] * u[0]; }).values()[2] == Coords{2.0, 4.0});
  CHECK(affine_graph(q, 2.0).values()[1] == Coords{1.0, 2.0});
}

TEST_CASE("graph sections need an affine backend") {
  const Quotient q(2, SampleSet({{0.0, 0.0}}, BoundingBox{{0.0, 0.0}, {1.0, 1.0}}),
                   FiniteFibers{{{0.0, 0.0}}, {0}});
  try {
    zero_graph(q);
    FAIL("expected UnsupportedBackend");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedBackend);
  }
}

TEST_CASE("validate_section") {
  const auto q = test::line_quotient({0.0, 1.0});
  CHECK(validate_section(q, affine_graph(q, 3.0, 1.0)).empty());

  const auto bad = validate_section(q, Section({{0.0, 0.0}, {2.0, 5.0}}));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].index == 1);

  CHECK(validate_section(q, Section({{0.0, 0.0}})).size() == 1);
  CHECK(validate_section(q, Section({{0.0, 0.0}, {1.0, std::numeric_limits<double>::infinity()}})).size() == 1);

  const Quotient fq(2, SampleSet({{0.0, 0.0}, {1.0, 1.0}}, BoundingBox{{0.0, 0.0}, {1.0, 1.0}}),
                    FiniteFibers{{{0.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}}, {0, 0, 1}});
  CHECK(validate_section(fq, Section({{0.0, 1.0}, {1.0, 1.0}})).empty());
  CHECK(validate_section(fq, Section({{1.0, 1.0}, {1.0, 1.0}})).size() == 1);
  CHECK(validate_section(fq, Section({{0.5, 0.5}, {1.0, 1.0}})).size() == 1);
}

TEST_CASE("max_component and min_component") {
  const Section f({{1.0, 2.0}, {-3.0, -7.0}, {5.0, 5.0}});
  CHECK(max_component(f, 0) == 2.0);
  CHECK(max_component(f, 1) == -3.0);
  CHECK(max_component(f, 2) == 5.0);
  CHECK(min_component(f, 1) == -7.0);
}

TEST_CASE("oscillation") {
  const auto q = test::line_quotient({0.0, 1.0});
  CHECK(oscillation(affine_graph(q, 0.0, 10.0)) == 0.0);
  CHECK(oscillation(affine_graph(q, 1.0)) == 1.0);
  CHECK(oscillation(Section({{3.0, 4.0}})) == 0.0);
}

TEST_CASE("family names round-trip") {
  for (auto f : {Family::kZeroGraph, Family::kAffineGraph, Family::kQuadraticGraph,
                 Family::kRandomLipschitzGraph, Family::kFinitePartition}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_FALSE(parse_family("spline_graph"));
}

TEST_CASE("generated scenarios are valid sections") {
  for (const auto& spec : shipped_specs()) {
    if (spec.size > 200) continue;
    const auto s = generate(spec);
    CAPTURE(s.id);
    CHECK(validate_section(s.quotient, s.section).empty());
    CHECK(s.section.generator() == spec);
  }
}

TEST_CASE("finite partitions cover every ambient point") {
  const auto s = generate(GeneratorSpec{Family::kFinitePartition, 30, 3, 3.0, 2});
  const auto& fibers = std::get<FiniteFibers>(s.quotient.backend());
  CHECK(fibers.points.size() == 90);
  std::size_t covered = 0;
  for (std::size_t y = 0; y < 30; ++y) covered += s.quotient.fiber_members(y).size();
  CHECK(covered == fibers.points.size());
}

TEST_CASE("refined graph samples are nested") {
  const GeneratorSpec spec{Family::kQuadraticGraph, 50, 1, 1.0, 2};
  const auto coarse = generate(spec);
  const auto fine = generate(refined(spec, 4));
  REQUIRE(fine.quotient.sample().size() == 197);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(fine.quotient.sample().points()[4 * i] == coarse.quotient.sample().points()[i]);
    CHECK(fine.section.values()[4 * i] == coarse.section.values()[i]);
  }
}

TEST_CASE("random Lipschitz graphs respect their constant") {
  const auto s = generate(GeneratorSpec{Family::kRandomLipschitzGraph, 200, 7, 5.0, 2});
  const auto& v = s.section.values();
  for (std::size_t i = 1; i < v.size(); ++i) {
    CHECK(std::abs(v[i][1] - v[i - 1][1]) <= 5.0 * (v[i][0] - v[i - 1][0]) * (1.0 + 1e-12));
  }
}

}  // TEST_SUITE
