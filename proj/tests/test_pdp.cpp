#include <doctest.h>

#include <limits>
#include <random>

#include "quadel/fixtures.hpp"
#include "quadel/pdp.hpp"
#include "quadel/speccheck.hpp"
#include "helpers.hpp"

using namespace quadel;

TEST_CASE("empty instance is valid and has no nodes") {
    PdpInstance inst;
    PdpInstance v = validate_instance(inst);
    CHECK(v.node_count() == 0);
    CHECK(v.edge_count() == 0);
}

TEST_CASE("paper-style instance derives 3 nodes and 9 edges") {
    PdpInstance inst = paper_example_instance();
    CHECK(inst.node_count() == 3);
    CHECK(inst.edge_count() == 9);
    // Node ordering: requests, then quad starts, then vehicles.
    CHECK(inst.node_kind(0) == NodeKind::Request);
    CHECK(inst.node_kind(1) == NodeKind::QuadStart);
    CHECK(inst.node_kind(2) == NodeKind::Vehicle);
}

TEST_CASE("node ordering is stable by construction") {
    PdpInstance inst = generate_fixture(2);  // 2 quads, multiple requests
    int nr = static_cast<int>(inst.requests.size());
    int nh = static_cast<int>(inst.quadcopters.size());
    for (int i = 0; i < nr; ++i) CHECK(inst.request_node(i) == i);
    for (int j = 0; j < nh; ++j) CHECK(inst.quad_start_node(j) == nr + j);
    for (int k = 0; k < static_cast<int>(inst.vehicles.size()); ++k)
        CHECK(inst.vehicle_node(k) == nr + nh + k);
}

TEST_CASE("validation rejects bad instances with named entities") {
    PdpInstance base = paper_example_instance();

    SUBCASE("cargo above capacity") {
        PdpInstance bad = base;
        bad.quadcopters[0].initial_cargo["parcel"] = 5;
        bad.quadcopters[0].capacity = 3.0;
        CHECK_THROWS_WITH_AS(validate_instance(bad), doctest::Contains("h1"),
                             CargoExceedsCapacity);
    }
    SUBCASE("duplicate request id") {
        PdpInstance bad = base;
        bad.requests.push_back(bad.requests[0]);
        CHECK_THROWS_AS(validate_instance(bad), DuplicateId);
    }
    SUBCASE("non-finite coordinate") {
        PdpInstance bad = base;
        bad.vehicles[0].location.x = std::numeric_limits<double>::quiet_NaN();
        CHECK_THROWS_AS(validate_instance(bad), NonFiniteCoordinate);
    }
    SUBCASE("unknown item in demand") {
        PdpInstance bad = base;
        bad.requests[0].demand["mystery"] = 1;
        CHECK_THROWS_AS(validate_instance(bad), UnknownItemReference);
    }
    SUBCASE("empty demand map") {
        PdpInstance bad = base;
        bad.requests[0].demand.clear();
        CHECK_THROWS_AS(validate_instance(bad), InvalidField);
    }
    SUBCASE("charge outside [0,1]") {
        PdpInstance bad = base;
        bad.quadcopters[0].initial_charge = 1.5;
        CHECK_THROWS_AS(validate_instance(bad), InvalidField);
    }
}

TEST_CASE("validation is idempotent") {
    PdpInstance inst = generate_fixture(7);
    PdpInstance once = validate_instance(inst);
    PdpInstance twice = validate_instance(once);
    CHECK(once == twice);
}

TEST_CASE("distances") {
    PdpInstance inst;
    inst.items.push_back(Item{"parcel", 1.0});
    inst.requests.push_back(Request{"a", {0, 0}, {{"parcel", 1}}});
    inst.requests.push_back(Request{"b", {3, 4}, {{"parcel", 1}}});
    inst.requests.push_back(Request{"c", {1, 1}, {{"parcel", 1}}});
    inst.requests.push_back(Request{"d", {4, 5}, {{"parcel", 1}}});
    inst = validate_instance(inst);

    CHECK(node_distance(inst, 0, 0) == 0.0);
    CHECK(node_distance(inst, 0, 1) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(node_distance(inst, 2, 3) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("distance is a metric on sampled node triples") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        PdpInstance inst = generate_fixture(testutil::rand_int(rng, 0, 1000));
        int n = inst.node_count();
        if (n < 2) continue;
        for (int probe = 0; probe < 30; ++probe) {
            int a = testutil::rand_int(rng, 0, n - 1);
            int b = testutil::rand_int(rng, 0, n - 1);
            int c = testutil::rand_int(rng, 0, n - 1);
            double dab = node_distance(inst, a, b);
            double dba = node_distance(inst, b, a);
            CHECK(dab >= 0.0);
            CHECK(dab == dba);
            if (inst.node_location(a) == inst.node_location(b)) CHECK(dab == 0.0);
            CHECK(node_distance(inst, a, c) <= dab + node_distance(inst, b, c) + 1e-12);
        }
    }
}

TEST_CASE("spec_check verdicts follow the requirement thresholds") {
    UavParams p;
    p.endurance_minutes = 12;
    p.thrust_to_weight = 1.8;
    p.width_inches = 24;
    p.mass_kg = 1.4;
    p.payload_kg = 0.7;
    p.max_height_ft = 12;
    p.range_sensors = p.autonomous_flight = p.wireless = p.prop_guards = true;

    SpecReport rep = spec_check(p, UavRequirements{});
    CHECK(rep.overall_pass);
    CHECK(rep.verdicts[1].pass);  // requirement 2: thrust-to-weight 1.8
    CHECK(rep.verdicts[6].pass);  // requirement 7: mass 1.4

    SUBCASE("mass 2.0 fails requirement 7 only") {
        p.mass_kg = 2.0;
        SpecReport r2 = spec_check(p, UavRequirements{});
        CHECK_FALSE(r2.verdicts[6].pass);
        CHECK_FALSE(r2.overall_pass);
        CHECK(r2.verdicts[0].pass);
    }
    SUBCASE("thrust-to-weight outside the band fails requirement 2") {
        p.thrust_to_weight = 2.5;
        SpecReport r2 = spec_check(p, UavRequirements{});
        CHECK_FALSE(r2.verdicts[1].pass);
    }
    SUBCASE("declared booleans are reported as given") {
        p.wireless = false;
        SpecReport r2 = spec_check(p, UavRequirements{});
        CHECK_FALSE(r2.verdicts[4].pass);
    }
}

TEST_CASE("default requirement constants") {
    UavRequirements r;
    CHECK(r.min_flight_minutes == 10.0);
    CHECK(r.thrust_to_weight_low == 1.5);
    CHECK(r.thrust_to_weight_high == 2.0);
    CHECK(r.max_width_inches == 30.0);
    CHECK(r.max_mass_kg == 1.5);
    CHECK(r.payload_low_kg == 0.5);
    CHECK(r.payload_high_kg == 1.0);
    CHECK(r.min_max_height_ft == 10.0);
}

TEST_CASE("uav_params_from_map names the missing key") {
    std::map<std::string, std::string> kv{{"endurance_minutes", "12"}};
    CHECK_THROWS_WITH_AS(uav_params_from_map(kv), doctest::Contains("thrust_to_weight"),
                         MissingParameter);
}
