#pragma once

#include <optional>
#include <string>

#include "ihl/geometry.hpp"
#include "ihl/hopflax.hpp"
#include "ihl/lipschitz.hpp"
#include "ihl/sections.hpp"
#include "ihl/theorem_id.hpp"

namespace ihl {

/// The single immutable input object: quotient, section, time grid.
struct Scenario {
  std::string id;
  Quotient quotient;
  Section section;
  TGrid tgrid;
  /// Falls back to default_radii(sample) when absent.
  std::optional<RadiusSchedule> radii;
  /// Harness self-test: corrupt the data seen by this check only.
  std::optional<TheoremId> fault;

  RadiusSchedule radius_schedule() const {
    return radii ? *radii : default_radii(quotient.sample());
  }
};

}  // namespace ihl
