#include "cm/conflict.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cm {

namespace {
constexpr double kTimeTolerance = 1e-9;  // seconds
}

Trajectory Trajectory::slice(double t_begin, double t_end) const {
    Trajectory out;
    out.agent_id = agent_id;
    out.dt = dt;
    const double tol = 0.5 * dt;
    for (const AgentState& s : samples) {
        if (s.t >= t_begin - tol && s.t <= t_end + tol) out.samples.push_back(s);
    }
    return out;
}

void validate_trajectory(const Trajectory& traj) {
    if (traj.samples.empty()) throw std::invalid_argument("trajectory '" + traj.agent_id + "' has no samples");
    if (!(traj.dt > 0.0)) throw std::invalid_argument("trajectory '" + traj.agent_id + "' has non-positive dt");
    const double radius = traj.samples.front().radius;
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const AgentState& s = traj.samples[i];
        if (!(s.radius > 0.0)) throw std::invalid_argument("trajectory '" + traj.agent_id + "': radius must be positive");
        if (std::abs(s.radius - radius) > 1e-12)
            throw std::invalid_argument("trajectory '" + traj.agent_id + "': radius changes across samples");
        if (!std::isfinite(s.position.x) || !std::isfinite(s.position.y) ||
            !std::isfinite(s.velocity.x) || !std::isfinite(s.velocity.y) || !std::isfinite(s.t))
            throw std::invalid_argument("trajectory '" + traj.agent_id + "': non-finite sample");
        if (i > 0) {
            const double gap = s.t - traj.samples[i - 1].t;
            if (std::abs(gap - traj.dt) > kTimeTolerance)
                throw std::invalid_argument("trajectory '" + traj.agent_id + "': non-uniform time step");
        }
    }
}

RelKin relative_kinematics(const AgentState& a, const AgentState& b) {
    if (std::abs(a.t - b.t) > kTimeTolerance)
        throw std::invalid_argument("relative_kinematics: mismatched timestamps");
    return RelKin{b.position - a.position, b.velocity - a.velocity};
}

double predicted_tce(const RelKin& k, double epsilon_speed) {
    const double v2 = k.v.squared_norm();
    if (v2 < epsilon_speed * epsilon_speed) return 0.0;
    return -k.r.dot(k.v) / v2;
}

double pdce(const RelKin& k, double epsilon_speed) {
    const double v2 = k.v.squared_norm();
    if (v2 < epsilon_speed * epsilon_speed) return k.r.norm();
    const double tce = -k.r.dot(k.v) / v2;
    if (tce < 0.0) return k.r.norm();  // closest encounter already happened
    return std::abs(k.r.cross(k.v)) / std::sqrt(v2);
}

double conflict_potential(double pdce_value, double combined_radius) {
    if (!(combined_radius > 0.0))
        throw std::invalid_argument("conflict_potential: combined radius must be positive");
    return std::max(0.0, 1.0 - pdce_value / combined_radius);
}

double normalization(double t, double tce_anchor, double window) {
    if (t < tce_anchor - window || t > tce_anchor) return 0.0;
    return (t - (tce_anchor - window)) / window;
}

double pair_combined_radius(const Trajectory& a, const Trajectory& b,
                            const MetricsConfig& cfg) {
    if (cfg.combined_radius_override) return *cfg.combined_radius_override;
    return a.samples.front().radius + b.samples.front().radius;
}

AlignedRange aligned_overlap(const Trajectory& a, const Trajectory& b) {
    if (a.empty() || b.empty()) throw EmptyInteractionError("empty trajectory");
    if (std::abs(a.dt - b.dt) > kTimeTolerance)
        throw std::invalid_argument("trajectories use different time steps");
    const double dt = a.dt;
    const double shift = (b.start_time() - a.start_time()) / dt;
    const double rounded = std::round(shift);
    if (std::abs(shift - rounded) > 1e-6)
        throw std::invalid_argument("trajectories are not on a common time grid");
    const long k = static_cast<long>(rounded);  // b starts k steps after a

    AlignedRange out;
    out.dt = dt;
    if (k >= 0) {
        out.offset_a = static_cast<std::size_t>(k);
        out.offset_b = 0;
    } else {
        out.offset_a = 0;
        out.offset_b = static_cast<std::size_t>(-k);
    }
    if (out.offset_a >= a.size() || out.offset_b >= b.size())
        throw EmptyInteractionError("trajectories of '" + a.agent_id + "' and '" +
                                    b.agent_id + "' do not overlap in time");
    out.count = std::min(a.size() - out.offset_a, b.size() - out.offset_b);
    out.t0 = a.samples[out.offset_a].t;
    return out;
}

std::vector<ConflictSample> conflict_series(const Trajectory& a, const Trajectory& b,
                                            double tce_anchor, const MetricsConfig& cfg) {
    if (!(cfg.window > 0.0)) throw std::invalid_argument("conflict_series: window must be positive");
    const AlignedRange range = aligned_overlap(a, b);
    const double radius = pair_combined_radius(a, b, cfg);

    std::vector<ConflictSample> out;
    const double w_begin = tce_anchor - cfg.window;
    for (std::size_t i = 0; i < range.count; ++i) {
        const double t = range.t0 + static_cast<double>(i) * range.dt;
        if (t < w_begin - kTimeTolerance) continue;
        if (t > tce_anchor + kTimeTolerance) break;
        const RelKin k = relative_kinematics(a.samples[range.offset_a + i],
                                             b.samples[range.offset_b + i]);
        ConflictSample s;
        s.t = t;
        s.pdce = pdce(k, cfg.epsilon_speed);
        s.tce_pred = predicted_tce(k, cfg.epsilon_speed);
        s.cp = conflict_potential(s.pdce, radius);
        s.n = normalization(t, tce_anchor, cfg.window);
        s.c = s.cp * s.n;
        out.push_back(s);
    }
    return out;
}

}  // namespace cm
