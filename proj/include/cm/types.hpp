#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cm/vec2.hpp"

namespace cm {

/// One agent's kinematic snapshot at a timestamp.
struct AgentState {
    double t = 0.0;       // seconds
    Vec2 position;        // meters
    Vec2 velocity;        // meters/second
    double radius = 0.5;  // meters, > 0
};

/// Uniformly sampled state series for one agent. Timestamps are strictly
/// increasing with constant spacing dt; the radius is constant across samples.
struct Trajectory {
    std::string agent_id;
    std::vector<AgentState> samples;
    double dt = 0.1;  // seconds

    bool empty() const { return samples.empty(); }
    std::size_t size() const { return samples.size(); }
    double start_time() const { return samples.front().t; }
    double end_time() const { return samples.back().t; }
    const AgentState& operator[](std::size_t i) const { return samples[i]; }

    /// Samples with t in [t_begin, t_end] (inclusive, half-step tolerance).
    Trajectory slice(double t_begin, double t_end) const;
};

/// Throws std::invalid_argument if the trajectory violates its invariants.
void validate_trajectory(const Trajectory& traj);

/// Relative position and velocity of agent b with respect to agent a at one
/// instant. Swapping the agents negates both vectors.
struct RelKin {
    Vec2 r;  // position_b - position_a, meters
    Vec2 v;  // velocity_b - velocity_a, meters/second
};

/// Parameters of the conflict metric itself (not of any motion policy).
struct MetricsConfig {
    double window = 12.0;  // normalization window length, seconds
    /// Replaces r1 + r2 in the conflict potential when set (e.g. 2.0 m for a
    /// personal-space evaluation with 1.0 m per agent).
    std::optional<double> combined_radius_override;
    double epsilon_speed = 1e-6;  // below this, relative motion counts as rest
};

/// One timestep of the pairwise conflict series.
struct ConflictSample {
    double t = 0.0;         // seconds
    double pdce = 0.0;      // predicted distance at closest encounter, meters
    double tce_pred = 0.0;  // predicted time offset to closest encounter, seconds
    double cp = 0.0;        // conflict potential, in [0,1]
    double n = 0.0;         // time normalization, in [0,1]
    double c = 0.0;         // conflict = cp * n
};

}  // namespace cm
