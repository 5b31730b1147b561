#pragma once

#include <map>
#include <string>
#include <vector>

#include "cm/conflict.hpp"
#include "cm/types.hpp"

namespace cm {

/// Per-timestep decomposition of the conflict change into per-agent and
/// time-attributed escalating (+) and diminishing (-) parts. All rates are
/// per second; integrating any field over the segment multiplies by dt.
struct ContributionSample {
    double t = 0.0;
    double cc_agent1 = 0.0;  // signed; > 0 escalated, < 0 diminished
    double cc_agent2 = 0.0;
    double cc1_plus = 0.0;
    double cc1_minus = 0.0;
    double cc2_plus = 0.0;
    double cc2_minus = 0.0;
    double cc_time_plus = 0.0;
    double cc_time_minus = 0.0;
    double dC = 0.0;  // backward difference of the conflict, per second
};

enum class InteractionStatus { resolved, degenerate_no_conflict };

/// Maximal interval around a local minimum of inter-agent distance in which
/// the pair is in conflict. tce_anchor is the time of that minimum.
struct InteractionSegment {
    double start_t = 0.0;
    double end_t = 0.0;
    double tce_anchor = 0.0;
    double min_distance = 0.0;
};

/// Responsibility and Engagement shares for one pairwise interaction.
struct InteractionReport {
    std::string agent_a;
    std::string agent_b;
    InteractionSegment segment;
    double tce_anchor = 0.0;
    double c_total = 0.0;
    InteractionStatus status = InteractionStatus::degenerate_no_conflict;
    // Shares keyed {agent_a, agent_b, time}; each triple sums to 1 for
    // resolved interactions.
    double r_a = 0.0, r_b = 0.0, r_time = 0.0;
    double e_a = 0.0, e_b = 0.0, e_time = 0.0;
    // Pre-normalization share sums minus 1, kept for diagnostics.
    double r_residual = 0.0;
    double e_residual = 0.0;
    std::vector<ContributionSample> contributions;
};

/// Below this total conflict an interaction is reported as degenerate
/// instead of dividing shares by a near-zero integral.
inline constexpr double kDegenerateConflictTotal = 1e-6;

/// Conflict at the current step if `frozen_agent` (0 = first, 1 = second) had
/// kept its previous velocity: current positions, the frozen agent's velocity
/// from the previous step, the other agent's current velocity.
double counterfactual_conflict(const AgentState& prev_a, const AgentState& prev_b,
                               const AgentState& now_a, const AgentState& now_b,
                               int frozen_agent, double tce_anchor,
                               double combined_radius, const MetricsConfig& cfg);

/// Signed conflict contribution: actual minus counterfactual conflict.
double conflict_contribution(double actual_c, double counterfactual_c);

/// Splits a signed contribution into (escalating, diminishing), both >= 0.
struct SignedSplit {
    double plus = 0.0;
    double minus = 0.0;
};
SignedSplit split_signed(double cc);

/// Time's contributions: escalation is the part of a positive conflict change
/// not explained by the agents' escalating contributions; diminution is the
/// part of a negative change the agents' diminishing contributions leave
/// unexplained.
SignedSplit time_contributions(double dC, double sum_cc_plus, double sum_cc_minus);

/// Total conflict of a segment: left Riemann sum of all escalating rates.
double total_conflict(const std::vector<ContributionSample>& samples, double dt);

/// Raw responsibility shares keyed {agent1, agent2, time}: integral of each
/// source's diminishing contributions divided by c_total. Not normalized.
struct RawShares {
    double agent1 = 0.0;
    double agent2 = 0.0;
    double time = 0.0;
    double sum() const { return agent1 + agent2 + time; }
};
RawShares responsibility_shares(const std::vector<ContributionSample>& samples,
                                double c_total, double dt);
RawShares engagement_shares(const std::vector<ContributionSample>& samples,
                            double c_total, double dt);

/// Splits a pair's shared time range into interaction segments. Segments are
/// runs of positive conflict potential (merged across gaps shorter than a
/// quarter window) extended through the following distance minimum; each is
/// anchored at its own minimum-distance time. Empty when the pair never
/// conflicts.
std::vector<InteractionSegment> segment_interactions(const Trajectory& a,
                                                     const Trajectory& b,
                                                     const MetricsConfig& cfg);

/// Full attribution pipeline for one segment: conflict series, per-step
/// counterfactuals for both agents, time attribution, integrals, shares.
/// Deterministic for identical inputs.
InteractionReport evaluate_interaction(const Trajectory& a, const Trajectory& b,
                                       const InteractionSegment& segment,
                                       const MetricsConfig& cfg);

/// Segments and evaluates every unordered pair in the set, in lexicographic
/// agent-id order. Pairs without segments contribute nothing.
std::vector<InteractionReport> evaluate_all_pairs(
    const std::map<std::string, Trajectory>& trajectories,
    const MetricsConfig& cfg);

enum class SourceRole { robot, humans, time };

/// Distribution of one source's shares over many interactions.
struct ShareDistribution {
    SourceRole source = SourceRole::robot;
    std::vector<double> values;
    double median = 0.0;
    double q1 = 0.0;
    double q3 = 0.0;
    std::size_t n = 0;
};

struct AggregateDistributions {
    ShareDistribution r_robot, r_humans, r_time;
    ShareDistribution e_robot, e_humans, e_time;
};

/// Share distributions over all resolved interactions that involve exactly
/// one robot-role agent. role_map maps agent ids to "robot" or "human".
/// Optionally weights each interaction by its c_total. Throws
/// std::invalid_argument when nothing qualifies.
AggregateDistributions aggregate_distributions(
    const std::vector<InteractionReport>& reports,
    const std::map<std::string, std::string>& role_map, bool weighted = false);

}  // namespace cm
