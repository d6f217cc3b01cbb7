#pragma once

#include <cstdint>
#include <vector>

#include "ihl/scenario.hpp"
#include "ihl/sections.hpp"

namespace ihl {

/// Parameter used when a generator spec leaves it unset: slope a = 2 for
/// affine graphs, curvature 1 for quadratic graphs, Lipschitz bound 1 for
/// random graphs, 3 ambient points per fiber for finite partitions.
double default_param(Family family) noexcept;

/// Base sample for graph families: a uniform grid on [0, 1] when the base
/// is one-dimensional, seeded uniform points in [0, 1]^m otherwise.
Quotient graph_quotient(std::size_t size, std::size_t kappa, std::uint64_t seed);

Section zero_graph(const Quotient& quotient);
/// g(u) = a u_1 + b.
Section affine_graph(const Quotient& quotient, double a, double b = 0.0);
/// g(u) = c u_1^2.
Section quadratic_graph(const Quotient& quotient, double c);
/// Seeded piecewise-linear g of u_1 with slopes in [-L, L].
Section random_lipschitz_graph(const Quotient& quotient, double lipschitz, std::uint64_t seed);

/// The default grid: 50 log-spaced times in [1e-3, 10].
TGrid default_tgrid();

/// Builds a whole scenario. Same spec, same scenario, bit for bit.
Scenario generate(const GeneratorSpec& spec);

/// Same family and seed with `factor` times as many sample points; the
/// refinement used by the duality study.
GeneratorSpec refined(const GeneratorSpec& spec, std::size_t factor);

/// The scenario families the harness is expected to pass on.
std::vector<GeneratorSpec> shipped_specs();

}  // namespace ihl
