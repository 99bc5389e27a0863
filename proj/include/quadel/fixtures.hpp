#pragma once

#include <cstdint>

#include "quadel/pdp.hpp"

namespace quadel {

/// The canonical 1-quadcopter / 1-request / 1-item / 1-vehicle world:
/// request at (3,4) wanting the parcel the quadcopter at (0,0) already
/// carries, station parked at (8,1). Optimal plan is the single 5-unit
/// launch leg.
PdpInstance paper_example_instance();

/// Seeded tiny-instance generator for the equivalence corpus. Instances
/// stay within the oracle limits (<= 2 quads, <= 3 requests, <= 1
/// vehicle, integer coordinates on a 10x10 grid) and cycle through
/// delivery, fleet-split, pickup haul-back, infeasible, and low-battery
/// shapes. Capacities always cover the total item weight in the system so
/// cargo feasibility reduces to routing.
PdpInstance generate_fixture(std::uint64_t seed);

}  // namespace quadel
