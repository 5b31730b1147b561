#pragma once

#include <string>
#include <vector>

#include "cm/sim.hpp"

namespace cm {

enum class DyadicGeometry { oncoming, crossing, overtaking };
enum class CrowdRobot { ballistic, dwa, social_force };

/// Two-agent scenarios: robot and alice in one of three geometric
/// constellations. Cases: 1 = both ballistic, 2 = ballistic robot with a
/// responsive alice, 3 = responsive robot with a ballistic alice, 4 = both
/// responsive.
ScenarioConfig build_dyadic(DyadicGeometry geometry, int case_id);

/// Robot meets a pair of oncoming walkers; the variant shifts the robot's
/// goal to pass left of both, between them, or right of both.
enum class GroupVariant { left, middle, right };
ScenarioConfig build_group_splitting(GroupVariant variant);

/// 20 seeded wanderers in a 10 m x 10 m arena plus a traversing robot of the
/// chosen type. Human starts and goal sequences depend only on (seed, agent),
/// never on the robot type.
ScenarioConfig build_crowd(CrowdRobot robot_type, std::uint64_t seed);

/// Runner/chaser game: a goal-driven runner pursued by a range-limited
/// planner homing on a linear prediction of the runner.
ScenarioConfig build_catch();

/// Same trajectories, proxemic metric: per-agent metric radius 1.0 m via
/// combined_radius_override = 2.0. Only MetricsConfig changes.
ScenarioConfig build_personal_space(ScenarioConfig base);

/// Mirror-symmetric pair with crossed goals that wedge themselves into a
/// mutual block and gradually decelerate. Regression fixture for the
/// strongly-coupled case where per-agent counterfactuals overstate
/// diminishing contributions.
ScenarioConfig build_symmetric_lock();

/// Catalog names accepted by lookup ("dyadic/oncoming/4", "crowd/sf", ...).
std::vector<std::string> catalog_names();

/// Builds a catalog scenario by name; throws std::invalid_argument for
/// unknown names (message lists the catalog).
ScenarioConfig build_by_name(const std::string& name, std::uint64_t seed = 1);

}  // namespace cm
