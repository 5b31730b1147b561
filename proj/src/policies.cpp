#include "cm/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cm {

namespace {

double square(double v) { return v * v; }

Vec2 clip_speed(const Vec2& v, double max_speed) {
    const double s = v.norm();
    if (s <= max_speed || s == 0.0) return v;
    return v * (max_speed / s);
}

/// Repulsion exerted on `self` by `other`; see SocialForceParams.
Vec2 social_repulsion(const AgentState& self, const AgentState& other,
                      const SocialForceParams& p) {
    const Vec2 diff = other.position - self.position;
    const double d = diff.norm();
    if (d < 1e-9) return {};
    const Vec2 e = diff / d;
    const Vec2 vel_diff = self.velocity - other.velocity;
    const Vec2 interaction = p.lambda * vel_diff + e;
    const double ilen = interaction.norm();
    if (ilen < 1e-9) return {};
    const Vec2 idir = interaction / ilen;
    const double range = p.gamma * ilen;
    const double theta = signed_angle(idir, e);
    const double sgn = theta > 0.0 ? 1.0 : (theta < 0.0 ? -1.0 : 0.0);
    const double f_velocity = -std::exp(-d / range - square(p.n_prime * range * theta));
    const double f_angle = -sgn * std::exp(-d / range - square(p.n * range * theta));
    // Sight-cone weight relative to the agent's motion direction.
    double w = 1.0;
    if (self.velocity.squared_norm() > 1e-18 &&
        std::abs(signed_angle(self.velocity, e)) > p.fov_half_angle)
        w = p.fov_rear_factor;
    return w * (f_velocity * idir + f_angle * idir.perp());
}

}  // namespace

Vec2 ballistic_step(const PolicyInput& input) { return input.self.velocity; }

Vec2 social_force_step(const PolicyInput& input, const SocialForceParams& p) {
    const Vec2 to_goal = input.goal - input.self.position;
    const Vec2 desired_dir = to_goal.normalized();
    Vec2 accel = (desired_dir * p.desired_speed - input.self.velocity) / p.relaxation_time;
    for (const AgentState& other : input.neighbors)
        accel += p.a * social_repulsion(input.self, other, p);
    return clip_speed(input.self.velocity + accel * input.dt, p.max_speed);
}

Vec2 dwa_step(const PolicyInput& input, const DwaParams& p) {
    const double dt = input.dt;
    const double speed = input.self.velocity.norm();
    const double heading = speed > 1e-9 ? input.self.velocity.angle()
                                        : (input.goal - input.self.position).angle();

    std::vector<const AgentState*> perceived;
    for (const AgentState& n : input.neighbors)
        if ((n.position - input.self.position).norm() <= p.sensor_range)
            perceived.push_back(&n);

    const double hi_s = std::min(p.max_speed, speed + p.max_accel * dt);
    // when already over the speed cap, decelerate as fast as allowed
    const double lo_s = std::min(std::max(0.0, speed - p.max_accel * dt), hi_s);
    const double lo_h = heading - p.max_yaw_rate * dt;
    const double hi_h = heading + p.max_yaw_rate * dt;
    const int steps = std::max(1, static_cast<int>(std::lround(p.rollout_horizon / dt)));

    Vec2 best_cmd{lo_s * std::cos(heading), lo_s * std::sin(heading)};  // maximal deceleration
    double best_score = -std::numeric_limits<double>::infinity();

    for (int si = 0; si < p.velocity_samples; ++si) {
        const double fs = p.velocity_samples > 1
                              ? static_cast<double>(si) / (p.velocity_samples - 1)
                              : 0.0;
        const double s = lo_s + fs * (hi_s - lo_s);
        for (int hi = 0; hi < p.heading_samples; ++hi) {
            const double fh = p.heading_samples > 1
                                  ? static_cast<double>(hi) / (p.heading_samples - 1)
                                  : 0.5;
            const double h = lo_h + fh * (hi_h - lo_h);
            const Vec2 cmd{s * std::cos(h), s * std::sin(h)};

            // Constant-velocity rollout for the agent and every perceived
            // neighbor; commands that close below the combined radius at any
            // step are inadmissible.
            double min_clear = p.sensor_range;
            bool collides = false;
            for (int k = 1; k <= steps && !collides; ++k) {
                const double tau = static_cast<double>(k) * dt;
                const Vec2 pos = input.self.position + cmd * tau;
                for (const AgentState* n : perceived) {
                    const Vec2 npos = n->position + n->velocity * tau;
                    const double clear =
                        (npos - pos).norm() - (input.self.radius + n->radius);
                    if (clear <= 0.0) {
                        collides = true;
                        break;
                    }
                    min_clear = std::min(min_clear, clear);
                }
            }
            if (collides) continue;

            const Vec2 end = input.self.position + cmd * p.rollout_horizon;
            const Vec2 to_goal = input.goal - end;
            double heading_score = 1.0;
            if (to_goal.norm() > 1e-9) {
                double diff = std::remainder(to_goal.angle() - h, 2.0 * M_PI);
                heading_score = 1.0 - std::abs(diff) / M_PI;
            }
            const double clearance_score =
                perceived.empty() ? 1.0 : std::clamp(min_clear / p.sensor_range, 0.0, 1.0);
            const double velocity_score = p.max_speed > 0.0 ? s / p.max_speed : 0.0;
            const double score = p.heading_weight * heading_score +
                                 p.clearance_weight * clearance_score +
                                 p.velocity_weight * velocity_score;
            if (score > best_score) {
                best_score = score;
                best_cmd = cmd;
            }
        }
    }
    return best_cmd;
}

Vec2 chaser_step(const PolicyInput& input, const AgentState& target,
                 const ChaserParams& p) {
    const double d = (target.position - input.self.position).norm();
    const double lookahead = d / p.prediction_speed_divisor;
    PolicyInput pursuit = input;
    pursuit.goal = target.position + target.velocity * lookahead;
    return dwa_step(pursuit, p.dwa);
}

}  // namespace cm
