#include "cm/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "cm/rng.hpp"

namespace cm {

namespace {

constexpr double kDt = 0.1;           // seconds
constexpr double kAgentRadius = 0.5;  // meters
constexpr double kWindow = 12.0;      // seconds

// Symmetry-breaking lateral offset for collinear constellations: without it
// the anisotropic repulsion has no lateral component and head-on pairs stall
// instead of evading.
constexpr double kOncomingOffset = 0.3;    // meters
constexpr double kOvertakingOffset = 0.8;  // meters

// Builder-side random draws use domain 0; the engine's goal resampling uses
// domain 1 (see sim.cpp).
constexpr std::uint64_t kDomainInit = 0;

AgentSpec make_agent(const std::string& id, Vec2 pos, Vec2 vel, PolicyKind kind,
                     Vec2 goal, Role role = Role::human) {
    AgentSpec a;
    a.id = id;
    a.initial.position = pos;
    a.initial.velocity = vel;
    a.initial.radius = kAgentRadius;
    a.policy.kind = kind;
    a.goal.point = goal;
    a.role = role;
    return a;
}

ScenarioConfig base_config(const std::string& name, double duration) {
    ScenarioConfig cfg;
    cfg.name = name;
    cfg.duration = duration;
    cfg.dt = kDt;
    cfg.metrics.window = kWindow;
    return cfg;
}

PolicyKind dyadic_kind(int case_id, bool is_robot) {
    switch (case_id) {
        case 1: return PolicyKind::ballistic;
        case 2: return is_robot ? PolicyKind::ballistic : PolicyKind::social_force;
        case 3: return is_robot ? PolicyKind::social_force : PolicyKind::ballistic;
        case 4: return PolicyKind::social_force;
        default: throw std::invalid_argument("dyadic case must be 1..4");
    }
}

}  // namespace

ScenarioConfig build_dyadic(DyadicGeometry geometry, int case_id) {
    if (case_id < 1 || case_id > 4) throw std::invalid_argument("dyadic case must be 1..4");

    ScenarioConfig cfg = base_config("", 30.0);
    switch (geometry) {
        case DyadicGeometry::oncoming: {
            cfg.name = "dyadic/oncoming/" + std::to_string(case_id);
            // 20 m apart at 1 m/s each; the offset keeps the constellation
            // point-symmetric about the midpoint, so the responsive pair
            // splits the resolution evenly.
            AgentSpec robot = make_agent("robot", {0.0, 0.0}, {1.0, 0.0},
                                         dyadic_kind(case_id, true), {40.0, 0.0}, Role::robot);
            AgentSpec alice = make_agent("alice", {20.0, kOncomingOffset}, {-1.0, 0.0},
                                         dyadic_kind(case_id, false), {-20.0, kOncomingOffset});
            cfg.agents = {robot, alice};
            break;
        }
        case DyadicGeometry::crossing: {
            cfg.name = "dyadic/crossing/" + std::to_string(case_id);
            // 90 degree paths, about 20 m apart. Alice's leg is slightly
            // longer, so she arrives at the crossing point a moment later and
            // yields more (braking) while the robot swerves.
            AgentSpec robot = make_agent("robot", {0.0, 0.0}, {1.0, 0.0},
                                         dyadic_kind(case_id, true), {40.0, 0.0}, Role::robot);
            AgentSpec alice = make_agent("alice", {14.0, 14.7}, {0.0, -1.0},
                                         dyadic_kind(case_id, false), {14.0, -25.0});
            cfg.agents = {robot, alice};
            break;
        }
        case DyadicGeometry::overtaking: {
            cfg.name = "dyadic/overtaking/" + std::to_string(case_id);
            // Robot closes at 0.5 m/s on a slower walker one lane over, 8 m
            // ahead.
            AgentSpec robot = make_agent("robot", {0.0, 0.0}, {1.0, 0.0},
                                         dyadic_kind(case_id, true), {40.0, 0.0}, Role::robot);
            AgentSpec alice = make_agent("alice", {8.0, kOvertakingOffset}, {0.5, 0.0},
                                         dyadic_kind(case_id, false), {40.0, kOvertakingOffset});
            alice.policy.sf.desired_speed = 0.5;
            cfg.agents = {robot, alice};
            break;
        }
    }
    return cfg;
}

ScenarioConfig build_group_splitting(GroupVariant variant) {
    ScenarioConfig cfg = base_config("", 30.0);
    // Oncoming pair 25 m out, walking toward the robot in parallel lanes;
    // alice slightly in front of bob and on the robot's left.
    AgentSpec robot = make_agent("robot", {0.0, 0.0}, {1.0, 0.0}, PolicyKind::social_force,
                                 {35.0, 0.0}, Role::robot);
    AgentSpec alice = make_agent("alice", {24.5, 0.7}, {-1.0, 0.0}, PolicyKind::social_force,
                                 {-10.0, 0.7});
    AgentSpec bob = make_agent("bob", {26.0, -0.7}, {-1.0, 0.0}, PolicyKind::social_force,
                               {-10.0, -0.7});
    switch (variant) {
        case GroupVariant::left:
            cfg.name = "group/left";
            robot.goal.point = {35.0, 2.0};
            break;
        case GroupVariant::middle:
            cfg.name = "group/middle";
            robot.goal.point = {35.0, 0.0};
            break;
        case GroupVariant::right:
            cfg.name = "group/right";
            robot.goal.point = {35.0, -2.0};
            break;
    }
    cfg.agents = {robot, alice, bob};
    return cfg;
}

ScenarioConfig build_crowd(CrowdRobot robot_type, std::uint64_t seed) {
    ScenarioConfig cfg = base_config("", 60.0);
    switch (robot_type) {
        case CrowdRobot::ballistic: cfg.name = "crowd/ballistic"; break;
        case CrowdRobot::dwa: cfg.name = "crowd/dwa"; break;
        case CrowdRobot::social_force: cfg.name = "crowd/sf"; break;
    }
    cfg.seed = seed;
    cfg.arena = Rect{{0.0, 0.0}, {10.0, 10.0}};

    AgentSpec robot = make_agent("robot", {0.0, 5.0}, {1.0, 0.0}, PolicyKind::ballistic,
                                 {10.0, 5.0}, Role::robot);
    switch (robot_type) {
        case CrowdRobot::ballistic: break;
        case CrowdRobot::dwa:
            robot.policy.kind = PolicyKind::dwa;
            break;
        case CrowdRobot::social_force:
            robot.policy.kind = PolicyKind::social_force;
            break;
    }
    robot.goal.relaunch_at_start = true;
    cfg.agents.push_back(robot);

    // Human draws depend only on (seed, agent index), so the same seed gives
    // identical human initializations and goal sequences for every robot type.
    for (int i = 0; i < 20; ++i) {
        SplitMix64 rng(seed, static_cast<std::uint64_t>(i + 1), kDomainInit);
        const Vec2 pos{rng.uniform(0.0, 10.0), rng.uniform(0.0, 10.0)};
        Vec2 goal;
        switch (rng.bounded(4)) {
            case 0: goal = {rng.uniform(0.0, 10.0), 0.0}; break;
            case 1: goal = {rng.uniform(0.0, 10.0), 10.0}; break;
            case 2: goal = {0.0, rng.uniform(0.0, 10.0)}; break;
            default: goal = {10.0, rng.uniform(0.0, 10.0)}; break;
        }
        AgentSpec human = make_agent("human" + std::to_string(i + 1), pos, {0.0, 0.0},
                                     PolicyKind::social_force, goal);
        human.goal.resample_on_arena_edge = true;
        cfg.agents.push_back(human);
    }
    return cfg;
}

ScenarioConfig build_catch() {
    // One close interception: the run ends once the chaser has overshot, so
    // the follow-up circling is out of frame.
    ScenarioConfig cfg = base_config("catch", 12.0);
    // Runner heads diagonally up-left from the bottom-right corner; the
    // chaser starts in the bottom-left corner and cuts the diagonal.
    const Vec2 robot_start{8.0, 0.0};
    const Vec2 robot_goal{-22.0, 30.0};
    const Vec2 dir = (robot_goal - robot_start).normalized();
    AgentSpec robot = make_agent("robot", robot_start, dir * 1.0, PolicyKind::social_force,
                                 robot_goal, Role::robot);
    AgentSpec alice = make_agent("alice", {0.0, 0.0}, {0.0, 0.0}, PolicyKind::chaser,
                                 robot_start);
    alice.policy.chaser_target = "robot";
    // A person playing tag turns much harder than the crowd robot.
    alice.policy.chaser.dwa.max_speed = 1.25;
    alice.policy.chaser.dwa.max_accel = 2.5;
    alice.policy.chaser.dwa.max_yaw_rate = 2.0;
    alice.policy.chaser.dwa.heading_samples = 60;
    cfg.agents = {robot, alice};
    return cfg;
}

ScenarioConfig build_personal_space(ScenarioConfig base) {
    base.name += "+personal-space";
    base.metrics.combined_radius_override = 2.0;
    return base;
}

ScenarioConfig build_symmetric_lock() {
    ScenarioConfig cfg = base_config("lock", 30.0);
    // Head-on pair with crossed diagonal goals: each agent's goal lies past
    // the other's lane, so the evasion each one attempts is cancelled by its
    // own goal pull. The pair wedges into a point-symmetric standoff and
    // decelerates gradually instead of resolving. The symmetry is exact under
    // 180-degree rotation about the origin, so the block never slips.
    AgentSpec a = make_agent("a", {-8.0, -0.15}, {1.0, 0.0}, PolicyKind::social_force,
                             {8.0, 0.5}, Role::robot);
    AgentSpec b = make_agent("b", {8.0, 0.15}, {-1.0, 0.0}, PolicyKind::social_force,
                             {-8.0, -0.5});
    cfg.agents = {a, b};
    return cfg;
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> names;
    for (const char* geom : {"oncoming", "crossing", "overtaking"})
        for (int c = 1; c <= 4; ++c)
            names.push_back(std::string("dyadic/") + geom + "/" + std::to_string(c));
    names.insert(names.end(), {"group/left", "group/middle", "group/right"});
    names.insert(names.end(), {"crowd/ballistic", "crowd/dwa", "crowd/sf"});
    names.push_back("catch");
    names.push_back("lock");
    return names;
}

ScenarioConfig build_by_name(const std::string& name, std::uint64_t seed) {
    for (const char* geom : {"oncoming", "crossing", "overtaking"}) {
        for (int c = 1; c <= 4; ++c) {
            if (name == std::string("dyadic/") + geom + "/" + std::to_string(c)) {
                DyadicGeometry g = name.find("oncoming") != std::string::npos
                                       ? DyadicGeometry::oncoming
                                       : (name.find("crossing") != std::string::npos
                                              ? DyadicGeometry::crossing
                                              : DyadicGeometry::overtaking);
                ScenarioConfig cfg = build_dyadic(g, c);
                cfg.seed = seed;
                return cfg;
            }
        }
    }
    if (name == "group/left") return build_group_splitting(GroupVariant::left);
    if (name == "group/middle") return build_group_splitting(GroupVariant::middle);
    if (name == "group/right") return build_group_splitting(GroupVariant::right);
    if (name == "crowd/ballistic") return build_crowd(CrowdRobot::ballistic, seed);
    if (name == "crowd/dwa") return build_crowd(CrowdRobot::dwa, seed);
    if (name == "crowd/sf") return build_crowd(CrowdRobot::social_force, seed);
    if (name == "catch") return build_catch();
    if (name == "lock") return build_symmetric_lock();

    std::string msg = "unknown scenario '" + name + "'; available:";
    for (const std::string& n : catalog_names()) msg += "\n  " + n;
    throw std::invalid_argument(msg);
}

}  // namespace cm
