#pragma once

#include <stdexcept>
#include <vector>

#include "cm/types.hpp"

namespace cm {

/// Thrown when two trajectories have no usable common time range.
struct EmptyInteractionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Relative kinematics of b with respect to a. Both states must carry the
/// same timestamp (tolerance 1e-9 s); throws std::invalid_argument otherwise.
RelKin relative_kinematics(const AgentState& a, const AgentState& b);

/// Time offset minimizing |r + v*tau| under constant-velocity extrapolation.
/// Negative when the closest encounter lies in the past. Returns 0 when the
/// relative speed is below epsilon_speed.
double predicted_tce(const RelKin& k, double epsilon_speed);

/// Predicted distance at closest encounter: |r x v| / |v| while the pair is
/// closing. For receding pairs (predicted_tce < 0) and for relative speeds
/// below epsilon_speed the current distance |r| is returned, so agents that
/// have already passed each other do not register phantom conflicts.
double pdce(const RelKin& k, double epsilon_speed);

/// max(0, 1 - pdce / combined_radius), in [0,1]. Equals 1 on a direct
/// collision course, 0 once the predicted miss distance clears the combined
/// radius. combined_radius must be positive.
double conflict_potential(double pdce_value, double combined_radius);

/// Linear ramp from 0 at (tce_anchor - window) to 1 at tce_anchor, 0 outside.
double normalization(double t, double tce_anchor, double window);

/// Effective combined radius for a pair: the override when configured,
/// otherwise the sum of the two trajectory radii.
double pair_combined_radius(const Trajectory& a, const Trajectory& b,
                            const MetricsConfig& cfg);

/// Index alignment of two trajectories on a common time grid.
struct AlignedRange {
    std::size_t offset_a = 0;  // index into a of the first shared sample
    std::size_t offset_b = 0;
    std::size_t count = 0;  // number of shared samples
    double t0 = 0.0;        // time of the first shared sample
    double dt = 0.0;
};

/// Overlapping sample range of two trajectories. Requires equal dt and grid
/// alignment; throws EmptyInteractionError when there is no overlap.
AlignedRange aligned_overlap(const Trajectory& a, const Trajectory& b);

/// Per-timestep conflict over [tce_anchor - window, tce_anchor]. One sample
/// per shared timestep inside the window; the series is simply truncated when
/// a trajectory starts later than the window. Throws EmptyInteractionError
/// when the trajectories never overlap in time.
std::vector<ConflictSample> conflict_series(const Trajectory& a,
                                            const Trajectory& b,
                                            double tce_anchor,
                                            const MetricsConfig& cfg);

}  // namespace cm
