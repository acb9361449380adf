#include <doctest.h>

#include <cmath>
#include <random>

#include "beablesim/raytrace.hpp"
#include "support/helpers.hpp"

using namespace beablesim;
using testsupport::load_canonical;

namespace {

Scenario trapped_scenario() {
    Scenario s;
    s.final_time = 30.0;
    s.grid = GridSpec{0.0, 10.0, 5, -20.0, 20.0, 41};
    for (double x : {0.0, 1e-5, 50.0}) {
        MassiveSystem sys;
        sys.components.push_back(Component{x, {1.0, 0.0}});
        s.systems.push_back(sys);
    }
    s.photons.push_back(Photon{5e-6, +1, 1.0});   // caught between the first two systems
    s.photons.push_back(Photon{-20.0, +1, 1.0});  // bounces once and escapes
    return s;
}

}  // namespace

TEST_CASE("model 1 branch 1 trajectory") {
    const Scenario s = load_canonical("model1");
    const auto branches = enumerate_branches(s);
    const Trajectory traj = trace(s.photons[0], 0, branches[0], s);

    REQUIRE(traj.bounces.size() == 1);
    CHECK(traj.bounces[0].t == 5.0);
    CHECK(traj.bounces[0].x == 0.0);

    CHECK(position_at(traj, 3.0) == -2.0);
    CHECK(position_at(traj, 5.0) == 0.0);
    CHECK(position_at(traj, 7.0) == -2.0);
    CHECK(position_at(traj, 30.0) == -25.0);
}

TEST_CASE("model 2 branch 1 right photon passes the unoccupied site") {
    const Scenario s = load_canonical("model2");
    const auto branches = enumerate_branches(s);
    const Trajectory traj = trace(s.photons[1], 1, branches[0], s);

    REQUIRE(traj.bounces.size() == 1);
    CHECK(traj.bounces[0].t == 9.0);
    CHECK(traj.bounces[0].x == 0.0);
    CHECK(position_at(traj, 5.0) == 4.0);  // x2 is not occupied in this branch
    CHECK(position_at(traj, 12.0) == 3.0);
    CHECK(position_at(traj, 30.0) == 21.0);
}

TEST_CASE("a photon with no system in its path runs straight") {
    Scenario s = load_canonical("model1");
    s.photons[0].dir = -1;  // heads away from both components
    const auto branches = enumerate_branches(s);
    const Trajectory traj = trace(s.photons[0], 0, branches[0], s);
    CHECK(traj.bounces.empty());
    REQUIRE(traj.segments.size() == 1);
    CHECK(position_at(traj, 30.0) == -35.0);
}

TEST_CASE("a photon starting on an occupied position bounces at t = 0") {
    Scenario s = load_canonical("model1");
    s.photons[0].x0 = 0.0;  // exactly on x1
    const auto branches = enumerate_branches(s);
    const Trajectory traj = trace(s.photons[0], 0, branches[0], s);
    REQUIRE(!traj.bounces.empty());
    CHECK(traj.bounces[0].t == 0.0);
    CHECK(position_at(traj, 2.0) == -2.0);
}

TEST_CASE("position_at rejects times outside the trajectory") {
    const Scenario s = load_canonical("model1");
    const auto branches = enumerate_branches(s);
    const Trajectory traj = trace(s.photons[0], 0, branches[0], s);
    CHECK_THROWS_AS(position_at(traj, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(position_at(traj, 31.0), std::invalid_argument);
}

TEST_CASE("a photon caught between two systems raises the trapped error") {
    const Scenario s = trapped_scenario();
    const auto branches = enumerate_branches(s);
    REQUIRE(branches.size() == 1);

    CHECK_THROWS_AS(trace(s.photons[0], 0, branches[0], s, 1000), TrappedPhotonError);
    try {
        trace(s.photons[0], 0, branches[0], s, 1000);
    } catch (const TrappedPhotonError& err) {
        CHECK(err.photon_id() == 0);
        CHECK(err.branch_label() == "1,1,1");
        CHECK(std::string(err.what()).find("1,1,1") != std::string::npos);
    }

    // The second photon is fine: one bounce, then out.
    const Trajectory free_photon = trace(s.photons[1], 1, branches[0], s);
    CHECK(free_photon.bounces.size() == 1);
}

TEST_CASE("trajectories run at light speed away from bounces") {
    const Scenario s = load_canonical("model2");
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> times(0.0, 29.0);
    for (const Branch& b : enumerate_branches(s)) {
        for (std::size_t j = 0; j < s.photons.size(); ++j) {
            const Trajectory traj = trace(s.photons[j], static_cast<int>(j), b, s);
            for (int i = 0; i < 200; ++i) {
                const double t = times(rng);
                const double delta = 1e-6;
                bool near_bounce = false;
                for (const Event& bounce : traj.bounces) {
                    if (std::abs(bounce.t - t) < 1e-3 || std::abs(bounce.t - (t + delta)) < 1e-3) {
                        near_bounce = true;
                    }
                }
                if (near_bounce) continue;
                const double step = std::abs(position_at(traj, t + delta) - position_at(traj, t));
                CHECK(step == doctest::Approx(delta).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("bounces happen only at occupied positions") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const Scenario s = testsupport::random_scenario(rng);
        for (const Branch& b : enumerate_branches(s)) {
            for (std::size_t j = 0; j < s.photons.size(); ++j) {
                const Trajectory traj = trace(s.photons[j], static_cast<int>(j), b, s);
                for (const Event& bounce : traj.bounces) {
                    bool occupied = false;
                    for (std::size_t i = 0; i < s.systems.size(); ++i) {
                        if (std::abs(occupied_position(s, b, static_cast<int>(i)) - bounce.x) <=
                            s.tol.pos) {
                            occupied = true;
                        }
                    }
                    CHECK(occupied);
                }
            }
        }
    }
}

TEST_CASE("model 1 branches share the trajectory before the first arrival") {
    const Scenario s = load_canonical("model1");
    const auto branches = enumerate_branches(s);
    const Trajectory t1 = trace(s.photons[0], 0, branches[0], s);
    const Trajectory t2 = trace(s.photons[0], 0, branches[1], s);
    for (double t : {0.0, 1.0, 2.5, 4.0, 4.95}) {
        CHECK(position_at(t1, t) == position_at(t2, t));
    }
    CHECK(position_at(t1, 7.0) != position_at(t2, 7.0));
}
