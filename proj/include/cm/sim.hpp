#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cm/policies.hpp"
#include "cm/types.hpp"

namespace cm {

enum class PolicyKind { ballistic, social_force, dwa, chaser };

struct PolicySpec {
    PolicyKind kind = PolicyKind::ballistic;
    SocialForceParams sf;
    DwaParams dwa;
    ChaserParams chaser;
    std::string chaser_target;  // agent id pursued by a chaser policy
};

/// Where an agent is headed and what happens on arrival.
struct GoalSpec {
    Vec2 point;
    /// Draw a fresh goal uniformly on the arena edge when within
    /// arrive_radius (crowd humans).
    bool resample_on_arena_edge = false;
    /// Teleport back to the initial state when within arrive_radius, keeping
    /// the same goal (crowd robot traversals).
    bool relaunch_at_start = false;
    double arrive_radius = 0.3;  // meters
};

enum class Role { robot, human };

struct AgentSpec {
    std::string id;
    AgentState initial;
    PolicySpec policy;
    GoalSpec goal;
    Role role = Role::human;
};

struct Rect {
    Vec2 lo;
    Vec2 hi;
};

/// Declarative description of one simulation run.
struct ScenarioConfig {
    std::string name;
    double duration = 30.0;  // seconds
    double dt = 0.1;         // seconds
    std::vector<AgentSpec> agents;
    std::optional<Rect> arena;
    std::uint64_t seed = 1;
    MetricsConfig metrics;

    std::map<std::string, std::string> role_map() const;
};

struct SimEvent {
    enum class Kind { collision, goal_reached, goal_resampled };
    double t = 0.0;
    Kind kind = Kind::collision;
    std::vector<std::string> agents;
};

struct SimulationResult {
    std::map<std::string, Trajectory> trajectories;
    std::vector<SimEvent> events;
};

/// Throws std::invalid_argument listing every offending field.
void validate_scenario(const ScenarioConfig& cfg);

/// One synchronous Euler step: every policy reads the same pre-step snapshot,
/// each agent's velocity becomes its policy output and positions advance by
/// velocity * dt.
std::vector<AgentState> step_world(const std::vector<AgentState>& states,
                                   const std::vector<AgentSpec>& specs,
                                   const std::vector<Vec2>& goals, double dt);

/// Fixed-step simulation of the scenario, recording every state and logging
/// collision and goal events. Deterministic for identical configs.
SimulationResult run_scenario(const ScenarioConfig& cfg);

}  // namespace cm
