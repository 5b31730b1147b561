#include <cmath>
#include <set>
#include <sstream>

#include "cm/conflict.hpp"
#include "cm/io.hpp"

#include "cm/attribution.hpp"
#include "cm/scenarios.hpp"
#include "cm/sim.hpp"
#include "doctest.h"

using namespace cm;

namespace {

bool identical(const Trajectory& a, const Trajectory& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.samples[i].position != b.samples[i].position) return false;
        if (a.samples[i].velocity != b.samples[i].velocity) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("a single ballistic agent takes plain Euler steps") {
    AgentSpec spec;
    spec.id = "a";
    spec.initial.position = {0, 0};
    spec.initial.velocity = {1, 0};
    const std::vector<AgentState> next =
        step_world({spec.initial}, {spec}, {spec.goal.point}, 0.1);
    CHECK(next[0].position.x == doctest::Approx(0.1));
    CHECK(next[0].position.y == doctest::Approx(0.0));
    CHECK(next[0].velocity == Vec2{1, 0});
}

TEST_CASE("two ballistic agents move on straight lines") {
    ScenarioConfig cfg = build_dyadic(DyadicGeometry::oncoming, 1);
    const SimulationResult result = run_scenario(cfg);
    for (const auto& [id, traj] : result.trajectories) {
        const Vec2 v0 = traj.samples.front().velocity;
        for (std::size_t i = 0; i < traj.size(); ++i) {
            CHECK(traj.samples[i].velocity == v0);
            const Vec2 expect = traj.samples.front().position + v0 * (i * cfg.dt);
            CHECK((traj.samples[i].position - expect).norm() < 1e-9);
        }
    }
}

TEST_CASE("reruns with the same config are bit identical") {
    for (const char* name : {"dyadic/crossing/4", "crowd/sf", "catch"}) {
        ScenarioConfig cfg = build_by_name(name, 3);
        const SimulationResult r1 = run_scenario(cfg);
        const SimulationResult r2 = run_scenario(cfg);
        REQUIRE(r1.trajectories.size() == r2.trajectories.size());
        for (const auto& [id, traj] : r1.trajectories)
            CHECK(identical(traj, r2.trajectories.at(id)));
        CHECK(r1.events.size() == r2.events.size());
    }
}

TEST_CASE("collision events are logged exactly when agents overlap") {
    ScenarioConfig cfg = build_dyadic(DyadicGeometry::oncoming, 1);
    const SimulationResult result = run_scenario(cfg);
    bool has_collision = false;
    for (const SimEvent& e : result.events)
        if (e.kind == SimEvent::Kind::collision) has_collision = true;
    CHECK(has_collision);

    // and the responsive case keeps its distance: no collision
    ScenarioConfig evasive = build_dyadic(DyadicGeometry::oncoming, 4);
    const SimulationResult clean = run_scenario(evasive);
    for (const SimEvent& e : clean.events) CHECK(e.kind != SimEvent::Kind::collision);

    // collision event exists iff min distance < sum of radii
    double min_dist = 1e9;
    const auto& a = result.trajectories.at("robot");
    const auto& b = result.trajectories.at("alice");
    for (std::size_t i = 0; i < a.size(); ++i)
        min_dist = std::min(min_dist, (a.samples[i].position - b.samples[i].position).norm());
    CHECK(min_dist < 1.0);
}

TEST_CASE("scenario validation lists offending fields") {
    ScenarioConfig cfg = build_dyadic(DyadicGeometry::oncoming, 1);
    cfg.duration = -1.0;
    cfg.agents[1].id = cfg.agents[0].id;
    try {
        validate_scenario(cfg);
        FAIL("expected validation to throw");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("duration") != std::string::npos);
        CHECK(msg.find("duplicate agent id") != std::string::npos);
    }
}

TEST_CASE("metric overrides never change trajectories") {
    ScenarioConfig base = build_dyadic(DyadicGeometry::overtaking, 3);
    ScenarioConfig wide = build_personal_space(base);
    CHECK(wide.metrics.combined_radius_override == doctest::Approx(2.0));
    const SimulationResult r1 = run_scenario(base);
    const SimulationResult r2 = run_scenario(wide);
    for (const auto& [id, traj] : r1.trajectories)
        CHECK(identical(traj, r2.trajectories.at(id)));
}

TEST_CASE("crowd humans are identical across robot types for a fixed seed") {
    const std::uint64_t seed = 17;
    const ScenarioConfig ballistic = build_crowd(CrowdRobot::ballistic, seed);
    const ScenarioConfig dwa = build_crowd(CrowdRobot::dwa, seed);
    const ScenarioConfig sf = build_crowd(CrowdRobot::social_force, seed);
    REQUIRE(ballistic.agents.size() == 21);
    for (std::size_t i = 0; i < ballistic.agents.size(); ++i) {
        if (ballistic.agents[i].role == Role::robot) continue;
        CHECK(ballistic.agents[i].initial.position == dwa.agents[i].initial.position);
        CHECK(ballistic.agents[i].initial.position == sf.agents[i].initial.position);
        CHECK(ballistic.agents[i].goal.point == dwa.agents[i].goal.point);
        CHECK(ballistic.agents[i].goal.point == sf.agents[i].goal.point);
    }
    // different seeds give different human layouts
    const ScenarioConfig other = build_crowd(CrowdRobot::ballistic, seed + 1);
    bool any_diff = false;
    for (std::size_t i = 1; i < other.agents.size(); ++i)
        if (!(other.agents[i].initial.position == ballistic.agents[i].initial.position))
            any_diff = true;
    CHECK(any_diff);
}

TEST_CASE("crowd goals live on the arena edge and resampling matches arrivals") {
    ScenarioConfig cfg = build_crowd(CrowdRobot::ballistic, 4);
    const Rect arena = *cfg.arena;
    auto on_edge = [&arena](const Vec2& p) {
        const double eps = 1e-9;
        const bool x_edge = std::abs(p.x - arena.lo.x) < eps || std::abs(p.x - arena.hi.x) < eps;
        const bool y_edge = std::abs(p.y - arena.lo.y) < eps || std::abs(p.y - arena.hi.y) < eps;
        return (x_edge && p.y >= arena.lo.y - eps && p.y <= arena.hi.y + eps) ||
               (y_edge && p.x >= arena.lo.x - eps && p.x <= arena.hi.x + eps);
    };
    for (const AgentSpec& agent : cfg.agents)
        if (agent.role == Role::human) CHECK(on_edge(agent.goal.point));

    const SimulationResult result = run_scenario(cfg);
    std::size_t reached = 0, resampled = 0;
    for (const SimEvent& e : result.events) {
        if (e.kind == SimEvent::Kind::goal_reached) ++reached;
        if (e.kind == SimEvent::Kind::goal_resampled) ++resampled;
    }
    CHECK(reached == resampled);
    CHECK(reached > 0);
}

TEST_CASE("catalog lookup") {
    CHECK(catalog_names().size() == 20);
    for (const std::string& name : catalog_names()) CHECK(build_by_name(name).name == name);
    CHECK_THROWS_AS(build_by_name("dyadic/oncoming/9"), std::invalid_argument);
    try {
        build_by_name("nope");
        FAIL("expected unknown scenario to throw");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("crowd/sf") != std::string::npos);
    }
}

TEST_CASE("the lock fixture stays point symmetric and decelerates") {
    ScenarioConfig cfg = build_symmetric_lock();
    const SimulationResult result = run_scenario(cfg);
    const Trajectory& a = result.trajectories.at("a");
    const Trajectory& b = result.trajectories.at("b");
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK((a.samples[i].position + b.samples[i].position).norm() < 1e-9);
        CHECK(std::isfinite(a.samples[i].position.x));
        CHECK(std::isfinite(a.samples[i].velocity.x));
    }
    double min_speed = 1e9, min_gap = 1e9;
    for (std::size_t i = 0; i < a.size(); ++i) {
        min_speed = std::min(min_speed, a.samples[i].velocity.norm());
        min_gap = std::min(min_gap, (a.samples[i].position - b.samples[i].position).norm());
    }
    CHECK(min_speed < 0.4);  // the standoff grinds both down
    CHECK(min_gap < 1.5);    // and they genuinely wedge
}

TEST_CASE("policy parameter validation") {
    ScenarioConfig cfg = build_dyadic(DyadicGeometry::oncoming, 4);
    cfg.agents[0].policy.sf.gamma = 0.0;
    CHECK_THROWS_AS(validate_scenario(cfg), std::invalid_argument);

    ScenarioConfig crowd = build_crowd(CrowdRobot::dwa, 1);
    crowd.agents[0].policy.dwa.sensor_range = -1.0;
    CHECK_THROWS_AS(validate_scenario(crowd), std::invalid_argument);
}

TEST_CASE("dump then eval reproduces shares across the catalog") {
    for (const char* name : {"dyadic/oncoming/2", "dyadic/crossing/4", "dyadic/overtaking/4",
                             "group/middle", "catch", "crowd/sf"}) {
        const ScenarioConfig cfg = build_by_name(name, 1);
        const SimulationResult sim = run_scenario(cfg);
        const auto base = evaluate_all_pairs(sim.trajectories, cfg.metrics);
        std::stringstream buffer;
        write_trajectories_csv(buffer, sim.trajectories);
        const auto parsed = read_trajectories_csv(buffer);
        const auto again = evaluate_all_pairs(parsed, cfg.metrics);
        REQUIRE(base.size() == again.size());
        for (std::size_t i = 0; i < base.size(); ++i) {
            CHECK(base[i].agent_a == again[i].agent_a);
            CHECK(std::abs(base[i].r_a - again[i].r_a) < 1e-9);
            CHECK(std::abs(base[i].r_b - again[i].r_b) < 1e-9);
            CHECK(std::abs(base[i].r_time - again[i].r_time) < 1e-9);
            CHECK(std::abs(base[i].e_a - again[i].e_a) < 1e-9);
        }
    }
}

TEST_CASE("an avoided encounter's conflict builds up, peaks and dies before the anchor") {
    // One responsive agent evades a ballistic one: the conflict climbs while
    // both approach, flattens as the evasion bites, and both the potential
    // and the conflict are back at zero by the time of closest encounter.
    const ScenarioConfig cfg = build_dyadic(DyadicGeometry::oncoming, 2);
    const SimulationResult sim = run_scenario(cfg);
    const auto segments = segment_interactions(sim.trajectories.at("alice"),
                                               sim.trajectories.at("robot"), cfg.metrics);
    REQUIRE(segments.size() == 1);
    const auto series = conflict_series(sim.trajectories.at("alice"),
                                        sim.trajectories.at("robot"),
                                        segments[0].tce_anchor, cfg.metrics);
    REQUIRE(series.size() > 20);
    double peak = 0.0;
    std::size_t peak_index = 0;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (series[i].c > peak) {
            peak = series[i].c;
            peak_index = i;
        }
    CHECK(peak > 0.2);
    CHECK(peak_index > 4);
    CHECK(peak_index < series.size() - 4);  // it decays before the anchor
    CHECK(series.back().cp == doctest::Approx(0.0));
    CHECK(series.back().c == doctest::Approx(0.0));
    CHECK(series.front().c < peak / 2);
}
