#pragma once

#include <vector>

#include "cm/types.hpp"

namespace cm {

/// Everything a motion policy sees at one simulation step. Neighbors exclude
/// the agent itself and carry exact states (no sensing noise).
struct PolicyInput {
    AgentState self;
    Vec2 goal;
    std::vector<AgentState> neighbors;
    double dt = 0.1;
};

/// Anisotropic pedestrian interaction model. The repulsion exerted on an
/// agent by a neighbor at distance d along unit vector e (agent -> neighbor),
/// with relative velocity v_rel = v_agent - v_neighbor, is
///
///   D = lambda * v_rel + e,   B = gamma * |D|,   theta = angle(D -> e)
///   f = -a * w * [ exp(-d/B - (n_prime*B*theta)^2) * D_hat
///                + sign(theta) * exp(-d/B - (n*B*theta)^2) * perp(D_hat) ]
///
/// w is the classic sight-cone weight: 1 when the neighbor lies within
/// fov_half_angle of the agent's motion direction, fov_rear_factor otherwise,
/// so a walker responds at half strength to someone closing in from behind.
/// The goal term relaxes the velocity toward desired_speed along the goal
/// direction over relaxation_time.
struct SocialForceParams {
    double a = 5.1;        // interaction strength
    double lambda = 3.0;   // weight of relative velocity in D
    double gamma = 0.35;   // range scaling
    double n = 1.0;        // angular exponent, lateral term
    double n_prime = 3.0;  // angular exponent, deceleration term
    double fov_half_angle = 1.7453292519943295;  // rad (100 degrees)
    double fov_rear_factor = 0.5;  // response weight outside the sight cone
    double desired_speed = 1.0;    // m/s
    double relaxation_time = 0.5;  // s
    double max_speed = 1.3;        // m/s
};

/// Sampling-based local planner limited to a sensor range.
struct DwaParams {
    double sensor_range = 1.0;  // meters; neighbors beyond this are invisible
    int velocity_samples = 11;
    // Even count: the grid never contains the current heading exactly, so a
    // cruising agent keeps making half-step corrections like a real sampled
    // planner instead of locking perfectly onto the goal bearing.
    int heading_samples = 240;
    double max_speed = 1.0;       // m/s
    double max_accel = 2.0;       // m/s^2
    double max_yaw_rate = 0.4;    // rad/s
    double rollout_horizon = 2.0; // s
    double heading_weight = 0.8;
    double clearance_weight = 0.1;
    double velocity_weight = 0.1;
};

/// Pursuit policy: aims a range-limited DWA at a linear prediction of the
/// target, look-ahead l = distance / prediction_speed_divisor seconds.
struct ChaserParams {
    DwaParams dwa;
    double prediction_speed_divisor = 1.2;  // m/s
};

/// Unresponsive agent: keeps its current velocity.
Vec2 ballistic_step(const PolicyInput& input);

/// Goal attraction plus anisotropic pairwise repulsion; the new velocity is
/// old + accel * dt, clipped to max_speed.
Vec2 social_force_step(const PolicyInput& input, const SocialForceParams& p);

/// Samples admissible (speed, heading) commands within the acceleration
/// limits, discards commands whose constant-velocity rollout collides with a
/// perceived neighbor, and returns the best-scoring survivor (deterministic
/// tie-break: lowest sample index). When every command collides, returns the
/// maximal deceleration command along the current heading.
Vec2 dwa_step(const PolicyInput& input, const DwaParams& p);

/// dwa_step toward the predicted intercept point of the target.
Vec2 chaser_step(const PolicyInput& input, const AgentState& target,
                 const ChaserParams& p);

}  // namespace cm
