#pragma once

#include <stdexcept>
#include <vector>

#include "meettree/pautomorph.hpp"

namespace meettree {

struct ClassificationMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OrbitExtension {
  MeetTree tree;
  Orbit orbit;
  OrbitClass cls;
  std::vector<OneTypeDescriptor> added_types;  // one per added point, in order
};

inline constexpr int kOrbitExtensionBudgetCap = 8;

/// All validated forward extensions of the orbit (alone, as its consecutive
/// map) by 1..budget points, each tagged with its class. Cyclic orbits admit
/// none. Completeness comes from exhausting the one-types at every step.
std::vector<OrbitExtension> enumerate_orbit_extensions(const MeetTree& t, const Orbit& o,
                                                       int budget, Budget* nodes = nullptr);

struct QuasiCycleCompletion {
  MeetTree tree;
  Orbit cycle;        // an N-cycle, N the least multiple of u exceeding n
  int added_points;
};

/// Extends a quasi-cycle of pseudo-period u to a validated N-cycle. Below
/// length 2u every added point is constrained to keep the quasi-cycle class;
/// past that any valid continuation stays quasi-cyclic and the final closing
/// pair is forced.
QuasiCycleCompletion complete_quasicycle_to_cycle(const MeetTree& t, const Orbit& o,
                                                  Budget* nodes = nullptr);

/// The consecutive map eta_i -> eta_{i+1} of an orbit, validated in t.
PartialAutomorphism consecutive_map(const MeetTree& t, const Orbit& o);

}  // namespace meettree
