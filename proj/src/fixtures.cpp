#include "quadel/fixtures.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace quadel {

PdpInstance paper_example_instance() {
    PdpInstance inst;
    inst.items.push_back(Item{"parcel", 1.0});
    inst.requests.push_back(Request{"r1", {3.0, 4.0}, {{"parcel", 1}}});
    inst.quadcopters.push_back(
        Quadcopter{"h1", {0.0, 0.0}, 2.0, 50.0, 1.0, {{"parcel", 1}}});
    inst.vehicles.push_back(GroundVehicle{"v1", {8.0, 1.0}});
    return validate_instance(inst);
}

namespace {

int rand_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Distinct integer grid points in [0,10]^2.
std::vector<Vec2> sample_points(std::mt19937_64& rng, int count) {
    std::set<std::pair<int, int>> seen;
    std::vector<Vec2> pts;
    while (static_cast<int>(pts.size()) < count) {
        int x = rand_int(rng, 0, 10);
        int y = rand_int(rng, 0, 10);
        if (!seen.insert({x, y}).second) continue;
        pts.push_back(Vec2{static_cast<double>(x), static_cast<double>(y)});
    }
    return pts;
}

}  // namespace

PdpInstance generate_fixture(std::uint64_t seed) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + 1);
    PdpInstance inst;
    const int shape = static_cast<int>(seed % 5);

    switch (shape) {
        case 0: {  // one quad, one station, pure deliveries
            int nr = rand_int(rng, 1, 3);
            auto pts = sample_points(rng, nr + 2);
            inst.items.push_back(Item{"parcel", 1.0});
            int total = 0;
            for (int i = 0; i < nr; ++i) {
                int d = rand_int(rng, 1, 2);
                total += d;
                inst.requests.push_back(
                    Request{"r" + std::to_string(i + 1), pts[i], {{"parcel", d}}});
            }
            inst.quadcopters.push_back(Quadcopter{"h1", pts[nr], total + 1.0, 60.0, 1.0,
                                                  {{"parcel", total}}});
            inst.vehicles.push_back(GroundVehicle{"v1", pts[nr + 1]});
            break;
        }
        case 1: {  // two quads, no station, split deliveries
            int nr = rand_int(rng, 2, 3);
            auto pts = sample_points(rng, nr + 2);
            inst.items.push_back(Item{"parcel", 1.0});
            for (int i = 0; i < nr; ++i)
                inst.requests.push_back(
                    Request{"r" + std::to_string(i + 1), pts[i], {{"parcel", 1}}});
            int first = rand_int(rng, 1, nr - 1);
            inst.quadcopters.push_back(Quadcopter{
                "h1", pts[nr], nr + 1.0, 60.0, 1.0, {{"parcel", first}}});
            inst.quadcopters.push_back(Quadcopter{
                "h2", pts[nr + 1], nr + 1.0, 60.0, 1.0, {{"parcel", nr - first}}});
            break;
        }
        case 2: {  // deliveries plus a pickup to haul back to the station
            int nd = rand_int(rng, 1, 2);
            auto pts = sample_points(rng, nd + 3);
            inst.items.push_back(Item{"parcel", 1.0});
            inst.items.push_back(Item{"scrap", 1.0});
            int total = 0;
            for (int i = 0; i < nd; ++i) {
                int d = rand_int(rng, 1, 2);
                total += d;
                inst.requests.push_back(
                    Request{"r" + std::to_string(i + 1), pts[i], {{"parcel", d}}});
            }
            int pick = rand_int(rng, 1, 2);
            inst.requests.push_back(
                Request{"pickup", pts[nd], {{"scrap", -pick}}});
            inst.quadcopters.push_back(Quadcopter{"h1", pts[nd + 1],
                                                  static_cast<double>(total + pick + 1),
                                                  60.0, 1.0, {{"parcel", total}}});
            inst.vehicles.push_back(GroundVehicle{"v1", pts[nd + 2]});
            break;
        }
        case 3: {  // infeasible flavors
            int flavor = rand_int(rng, 0, 2);
            if (flavor == 0) {  // request beyond range, no station
                auto pts = sample_points(rng, 2);
                inst.items.push_back(Item{"parcel", 1.0});
                inst.requests.push_back(Request{"r1", pts[0], {{"parcel", 1}}});
                inst.quadcopters.push_back(
                    Quadcopter{"h1", pts[1], 2.0, 0.5, 1.0, {{"parcel", 1}}});
            } else if (flavor == 1) {  // demand nobody can supply
                auto pts = sample_points(rng, 3);
                inst.items.push_back(Item{"parcel", 1.0});
                inst.items.push_back(Item{"gold", 1.0});
                inst.requests.push_back(Request{"r1", pts[0], {{"gold", 1}}});
                inst.quadcopters.push_back(
                    Quadcopter{"h1", pts[1], 3.0, 60.0, 1.0, {{"parcel", 1}}});
                inst.vehicles.push_back(GroundVehicle{"v1", pts[2]});
            } else {  // more quads than places to go
                auto pts = sample_points(rng, 3);
                inst.items.push_back(Item{"parcel", 1.0});
                inst.requests.push_back(Request{"r1", pts[0], {{"parcel", 1}}});
                inst.quadcopters.push_back(
                    Quadcopter{"h1", pts[1], 2.0, 60.0, 1.0, {{"parcel", 1}}});
                inst.quadcopters.push_back(Quadcopter{"h2", pts[2], 2.0, 60.0, 1.0, {}});
            }
            break;
        }
        default: {  // low battery: a recharge stop may be required
            auto pts = sample_points(rng, 3);
            inst.items.push_back(Item{"parcel", 1.0});
            inst.requests.push_back(Request{"r1", pts[0], {{"parcel", 1}}});
            double charge = 0.3 + 0.1 * rand_int(rng, 0, 4);
            inst.quadcopters.push_back(
                Quadcopter{"h1", pts[1], 2.0, 16.0, charge, {{"parcel", 1}}});
            inst.vehicles.push_back(GroundVehicle{"v1", pts[2]});
            break;
        }
    }
    return validate_instance(inst);
}

}  // namespace quadel
