#include <cmath>
#include <sstream>

#include "cm/io.hpp"
#include "cm/scenarios.hpp"
#include "doctest.h"

using namespace cm;

namespace {

std::map<std::string, Trajectory> two_walkers() {
    std::map<std::string, Trajectory> out;
    for (const std::string id : {"a", "b"}) {
        Trajectory traj;
        traj.agent_id = id;
        traj.dt = 0.1;
        const double dir = id == "a" ? 1.0 : -1.0;
        const Vec2 start = id == "a" ? Vec2{0, 0} : Vec2{20, 0.31};
        for (int i = 0; i <= 50; ++i)
            traj.samples.push_back(
                {i * 0.1, start + Vec2{dir, 0} * (i * 0.1), {dir, 0}, 0.5});
        out[id] = traj;
    }
    return out;
}

}  // namespace

TEST_CASE("round_sig9 keeps nine significant digits") {
    CHECK(round_sig9(1.0 / 3.0) == doctest::Approx(0.333333333).epsilon(1e-12));
    CHECK(round_sig9(0.0) == 0.0);
    CHECK(round_sig9(123456789012.0) == doctest::Approx(1.23456789e11));
}

TEST_CASE("trajectory csv round trip is exact") {
    const auto original = two_walkers();
    std::stringstream buffer;
    write_trajectories_csv(buffer, original);
    const auto parsed = read_trajectories_csv(buffer);
    REQUIRE(parsed.size() == original.size());
    for (const auto& [id, traj] : original) {
        const Trajectory& back = parsed.at(id);
        REQUIRE(back.size() == traj.size());
        for (std::size_t i = 0; i < traj.size(); ++i) {
            CHECK(back.samples[i].t == traj.samples[i].t);
            CHECK(back.samples[i].position == traj.samples[i].position);
            CHECK(back.samples[i].velocity == traj.samples[i].velocity);
            CHECK(back.samples[i].radius == traj.samples[i].radius);
        }
    }
}

TEST_CASE("velocities fall back to central differences when absent") {
    std::stringstream in;
    in << "t,agent_id,x,y\n";
    // quadratic motion x = t^2: central differences recover dx/dt = 2t exactly
    for (int i = 0; i <= 20; ++i) {
        const double t = i * 0.1;
        in << t << ",a," << t * t << ",0\n";
        in << t << ",b," << 5.0 - t << ",1\n";
    }
    const auto parsed = read_trajectories_csv(in);
    const Trajectory& a = parsed.at("a");
    CHECK(a.samples.front().radius == doctest::Approx(0.5));  // default radius
    for (std::size_t i = 1; i + 1 < a.size(); ++i)
        CHECK(a.samples[i].velocity.x ==
              doctest::Approx(2.0 * a.samples[i].t).epsilon(1e-9));
    // one-sided at endpoints
    CHECK(a.samples.front().velocity.x == doctest::Approx(0.1));
    const Trajectory& b = parsed.at("b");
    for (const AgentState& s : b.samples) CHECK(s.velocity.x == doctest::Approx(-1.0));
}

TEST_CASE("malformed rows report their line number") {
    std::stringstream in;
    in << "t,agent_id,x,y\n0,a,0,0\n0.1,a,oops,0\n";
    try {
        read_trajectories_csv(in);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
}

TEST_CASE("out-of-order timestamps and missing headers are rejected") {
    std::stringstream bad_order;
    bad_order << "t,agent_id,x,y\n0.2,a,0,0\n0.1,a,1,0\n";
    CHECK_THROWS_AS(read_trajectories_csv(bad_order), ParseError);

    std::stringstream no_header;
    no_header << "time,who,x,y\n0,a,0,0\n";
    CHECK_THROWS_AS(read_trajectories_csv(no_header), ParseError);
}

TEST_CASE("report json serializes deterministically and round trips") {
    ReportFile report;
    report.source_kind = "scenario";
    report.source_name = "dyadic/oncoming/1";
    report.seeds = {1};
    report.dt = 0.1;
    InteractionReport r;
    r.agent_a = "alice";
    r.agent_b = "robot";
    r.status = InteractionStatus::resolved;
    r.segment = {0.0, 10.4, 10.0, 0.3};
    r.tce_anchor = 10.0;
    r.c_total = 0.7;
    r.r_a = 1.0 / 3.0;
    r.r_b = 1.0 / 3.0;
    r.r_time = 1.0 - 2.0 / 3.0;
    r.e_time = 1.0;
    report.interactions.push_back({1, r});
    report.role_map = {{"alice", "human"}, {"robot", "robot"}};
    EventEntry ev;
    ev.seed = 1;
    ev.event = {10.0, SimEvent::Kind::collision, {"alice", "robot"}};
    report.events.push_back(ev);

    const std::string once = report_to_json(report);
    const std::string twice = report_to_json(report);
    CHECK(once == twice);

    std::stringstream in(once);
    const ReportFile back = report_from_json(in);
    CHECK(back.source_name == report.source_name);
    REQUIRE(back.interactions.size() == 1);
    CHECK(back.interactions[0].report.r_a ==
          doctest::Approx(round_sig9(r.r_a)).epsilon(1e-12));
    CHECK(back.interactions[0].report.tce_anchor == 10.0);
    CHECK(back.events.size() == 1);
    CHECK(back.events[0].event.agents.size() == 2);
    // percentages match the rounded presentation
    CHECK(once.find("\"r_percent\"") != std::string::npos);
}

TEST_CASE("scenario config json round trips") {
    ScenarioConfig cfg = build_crowd(CrowdRobot::dwa, 9);
    const std::string text = scenario_to_json(cfg);
    std::stringstream in(text);
    const ScenarioConfig back = scenario_from_json(in);
    CHECK(back.name == cfg.name);
    CHECK(back.seed == cfg.seed);
    CHECK(back.duration == cfg.duration);
    REQUIRE(back.agents.size() == cfg.agents.size());
    for (std::size_t i = 0; i < cfg.agents.size(); ++i) {
        CHECK(back.agents[i].id == cfg.agents[i].id);
        CHECK(back.agents[i].policy.kind == cfg.agents[i].policy.kind);
        CHECK(back.agents[i].initial.position == cfg.agents[i].initial.position);
        CHECK(back.agents[i].goal.point == cfg.agents[i].goal.point);
        CHECK(back.agents[i].role == cfg.agents[i].role);
    }
    REQUIRE(back.arena.has_value());
    CHECK(back.arena->hi == cfg.arena->hi);
    // a chaser spec keeps its target
    ScenarioConfig catch_cfg = build_catch();
    std::stringstream in2(scenario_to_json(catch_cfg));
    const ScenarioConfig catch_back = scenario_from_json(in2);
    CHECK(catch_back.agents[1].policy.chaser_target == "robot");
    CHECK(catch_back.agents[1].policy.chaser.dwa.max_speed ==
          doctest::Approx(catch_cfg.agents[1].policy.chaser.dwa.max_speed));
}

TEST_CASE("plot tables carry labeled columns and are deterministic") {
    ReportFile report;
    report.source_kind = "scenario";
    report.source_name = "x";
    report.seeds = {1};
    report.dt = 0.1;
    InteractionReport r;
    r.agent_a = "a";
    r.agent_b = "b";
    r.status = InteractionStatus::resolved;
    r.segment = {0.0, 5.0, 4.0, 0.3};
    r.tce_anchor = 4.0;
    r.c_total = 0.5;
    report.interactions.push_back({1, r});

    std::ostringstream shares1, shares2;
    write_shares_table(shares1, report);
    write_shares_table(shares2, report);
    CHECK(shares1.str() == shares2.str());
    CHECK(shares1.str().rfind("seed,agent_a,agent_b,", 0) == 0);

    std::ostringstream series;
    write_conflict_series_table(series, report, two_walkers());
    CHECK(series.str().rfind("pair,t,pdce,cp,n,c", 0) == 0);
    CHECK(series.str().find("a-b") != std::string::npos);

    std::ostringstream dist;
    write_distributions_table(dist, report);
    CHECK(dist.str().rfind("metric,source,median,q1,q3,n", 0) == 0);
}
