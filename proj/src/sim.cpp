#include "cm/sim.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "cm/rng.hpp"

namespace cm {

namespace {

// Stream domains so that scenario builders (initial states) and the engine
// (goal resampling) never consume from each other's sequences.
constexpr std::uint64_t kDomainGoals = 1;

Vec2 random_edge_point(SplitMix64& rng, const Rect& arena) {
    const double w = arena.hi.x - arena.lo.x;
    const double h = arena.hi.y - arena.lo.y;
    switch (rng.bounded(4)) {
        case 0: return {arena.lo.x + rng.uniform01() * w, arena.lo.y};
        case 1: return {arena.lo.x + rng.uniform01() * w, arena.hi.y};
        case 2: return {arena.lo.x, arena.lo.y + rng.uniform01() * h};
        default: return {arena.hi.x, arena.lo.y + rng.uniform01() * h};
    }
}

}  // namespace

std::map<std::string, std::string> ScenarioConfig::role_map() const {
    std::map<std::string, std::string> out;
    for (const AgentSpec& a : agents)
        out[a.id] = a.role == Role::robot ? "robot" : "human";
    return out;
}

void validate_scenario(const ScenarioConfig& cfg) {
    std::string problems;
    auto complain = [&problems](const std::string& msg) {
        if (!problems.empty()) problems += "; ";
        problems += msg;
    };

    if (!(cfg.duration > 0.0)) complain("duration must be positive");
    if (!(cfg.dt > 0.0)) complain("dt must be positive");
    if (!(cfg.metrics.window > 0.0)) complain("metrics.window must be positive");
    if (!(cfg.metrics.epsilon_speed > 0.0)) complain("metrics.epsilon_speed must be positive");
    if (cfg.metrics.combined_radius_override && !(*cfg.metrics.combined_radius_override > 0.0))
        complain("metrics.combined_radius_override must be positive");
    if (cfg.agents.empty()) complain("no agents");

    std::set<std::string> ids;
    for (const AgentSpec& a : cfg.agents) {
        if (a.id.empty()) complain("agent with empty id");
        if (!ids.insert(a.id).second) complain("duplicate agent id '" + a.id + "'");
        if (!(a.initial.radius > 0.0)) complain("agent '" + a.id + "': radius must be positive");
        if (!std::isfinite(a.initial.position.x) || !std::isfinite(a.initial.position.y) ||
            !std::isfinite(a.initial.velocity.x) || !std::isfinite(a.initial.velocity.y))
            complain("agent '" + a.id + "': non-finite initial state");
        if (a.goal.resample_on_arena_edge && !cfg.arena)
            complain("agent '" + a.id + "': edge goal resampling needs an arena");
        if (a.policy.kind == PolicyKind::social_force) {
            const SocialForceParams& p = a.policy.sf;
            if (!(p.a > 0.0) || !(p.lambda > 0.0) || !(p.gamma > 0.0) || !(p.n > 0.0) ||
                !(p.n_prime > 0.0) || !(p.desired_speed > 0.0) || !(p.relaxation_time > 0.0) ||
                !(p.max_speed > 0.0))
                complain("agent '" + a.id + "': social force parameters must be positive");
        }
        const DwaParams* dwa = a.policy.kind == PolicyKind::dwa  ? &a.policy.dwa
                               : a.policy.kind == PolicyKind::chaser ? &a.policy.chaser.dwa
                                                                     : nullptr;
        if (dwa) {
            if (!(dwa->sensor_range > 0.0))
                complain("agent '" + a.id + "': sensor_range must be positive");
            if (dwa->heading_weight + dwa->clearance_weight + dwa->velocity_weight <= 0.0)
                complain("agent '" + a.id + "': planner weights must not all be zero");
            if (dwa->velocity_samples < 1 || dwa->heading_samples < 1)
                complain("agent '" + a.id + "': sample counts must be at least 1");
        }
        if (a.policy.kind == PolicyKind::chaser &&
            !(a.policy.chaser.prediction_speed_divisor > 0.0))
            complain("agent '" + a.id + "': prediction_speed_divisor must be positive");
        if (a.policy.kind == PolicyKind::chaser) {
            if (a.policy.chaser_target.empty())
                complain("agent '" + a.id + "': chaser without target");
            else {
                bool found = false;
                for (const AgentSpec& other : cfg.agents)
                    if (other.id == a.policy.chaser_target && other.id != a.id) found = true;
                if (!found)
                    complain("agent '" + a.id + "': chaser target '" + a.policy.chaser_target +
                             "' not in scenario");
            }
        }
    }
    if (!problems.empty())
        throw std::invalid_argument("invalid scenario '" + cfg.name + "': " + problems);
}

std::vector<AgentState> step_world(const std::vector<AgentState>& states,
                                   const std::vector<AgentSpec>& specs,
                                   const std::vector<Vec2>& goals, double dt) {
    std::vector<AgentState> next(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        PolicyInput in;
        in.self = states[i];
        in.goal = goals[i];
        in.dt = dt;
        in.neighbors.reserve(states.size() - 1);
        for (std::size_t j = 0; j < states.size(); ++j)
            if (j != i) in.neighbors.push_back(states[j]);

        Vec2 cmd;
        switch (specs[i].policy.kind) {
            case PolicyKind::ballistic:
                cmd = ballistic_step(in);
                break;
            case PolicyKind::social_force:
                cmd = social_force_step(in, specs[i].policy.sf);
                break;
            case PolicyKind::dwa:
                cmd = dwa_step(in, specs[i].policy.dwa);
                break;
            case PolicyKind::chaser: {
                const AgentState* target = nullptr;
                for (std::size_t j = 0; j < states.size(); ++j)
                    if (specs[j].id == specs[i].policy.chaser_target) target = &states[j];
                cmd = target ? chaser_step(in, *target, specs[i].policy.chaser)
                             : ballistic_step(in);
                break;
            }
        }
        next[i] = states[i];
        next[i].velocity = cmd;
        next[i].position = states[i].position + cmd * dt;
        next[i].t = states[i].t + dt;
    }
    return next;
}

SimulationResult run_scenario(const ScenarioConfig& cfg) {
    validate_scenario(cfg);

    const std::size_t n = cfg.agents.size();
    const std::size_t steps = static_cast<std::size_t>(std::lround(cfg.duration / cfg.dt));

    std::vector<AgentState> states(n);
    std::vector<Vec2> goals(n);
    std::vector<SplitMix64> goal_rng(n);
    for (std::size_t i = 0; i < n; ++i) {
        states[i] = cfg.agents[i].initial;
        states[i].t = 0.0;
        goals[i] = cfg.agents[i].goal.point;
        goal_rng[i] = SplitMix64(cfg.seed, i, kDomainGoals);
    }

    SimulationResult result;
    for (std::size_t i = 0; i < n; ++i) {
        Trajectory traj;
        traj.agent_id = cfg.agents[i].id;
        traj.dt = cfg.dt;
        traj.samples.reserve(steps + 1);
        traj.samples.push_back(states[i]);
        result.trajectories[cfg.agents[i].id] = std::move(traj);
    }

    std::vector<std::vector<bool>> overlapping(n, std::vector<bool>(n, false));
    auto log_collisions = [&](const std::vector<AgentState>& snapshot, double t) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = (snapshot[i].position - snapshot[j].position).norm();
                const bool over = d < snapshot[i].radius + snapshot[j].radius;
                if (over && !overlapping[i][j])
                    result.events.push_back(
                        {t, SimEvent::Kind::collision, {cfg.agents[i].id, cfg.agents[j].id}});
                overlapping[i][j] = over;
            }
        }
    };
    log_collisions(states, 0.0);

    for (std::size_t k = 0; k < steps; ++k) {
        states = step_world(states, cfg.agents, goals, cfg.dt);
        const double t = static_cast<double>(k + 1) * cfg.dt;
        for (std::size_t i = 0; i < n; ++i) states[i].t = t;  // keep the grid exact

        for (std::size_t i = 0; i < n; ++i) {
            const GoalSpec& goal = cfg.agents[i].goal;
            if ((states[i].position - goals[i]).norm() >= goal.arrive_radius) continue;
            if (goal.resample_on_arena_edge) {
                result.events.push_back({t, SimEvent::Kind::goal_reached, {cfg.agents[i].id}});
                goals[i] = random_edge_point(goal_rng[i], *cfg.arena);
                result.events.push_back({t, SimEvent::Kind::goal_resampled, {cfg.agents[i].id}});
            } else if (goal.relaunch_at_start) {
                result.events.push_back({t, SimEvent::Kind::goal_reached, {cfg.agents[i].id}});
                states[i].position = cfg.agents[i].initial.position;
                states[i].velocity = cfg.agents[i].initial.velocity;
                result.events.push_back({t, SimEvent::Kind::goal_resampled, {cfg.agents[i].id}});
            }
        }

        for (std::size_t i = 0; i < n; ++i)
            result.trajectories[cfg.agents[i].id].samples.push_back(states[i]);
        log_collisions(states, t);
    }
    return result;
}

}  // namespace cm
