#include "cm/attribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cm {

namespace {

/// Conflict C = CP * N for one pair of same-time states.
double conflict_at(const AgentState& a, const AgentState& b, double combined_radius,
                   double tce_anchor, const MetricsConfig& cfg) {
    const RelKin k = relative_kinematics(a, b);
    const double cp = conflict_potential(pdce(k, cfg.epsilon_speed), combined_radius);
    return cp * normalization(a.t, tce_anchor, cfg.window);
}

struct QuantileSummary {
    double median = 0.0, q1 = 0.0, q3 = 0.0;
};

// Type-7 linear interpolation on sorted values.
double quantile_sorted(const std::vector<double>& v, double p) {
    if (v.empty()) return 0.0;
    const double h = (static_cast<double>(v.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(h);
    const std::size_t hi = std::min(lo + 1, v.size() - 1);
    return v[lo] + (h - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Weighted quantile: smallest value whose cumulative weight reaches p of the
// total (step interpolation).
double weighted_quantile(const std::vector<std::pair<double, double>>& sorted_vw, double p) {
    double total = 0.0;
    for (const auto& [v, w] : sorted_vw) total += w;
    if (total <= 0.0) return sorted_vw.empty() ? 0.0 : sorted_vw.front().first;
    const double target = p * total;
    double cum = 0.0;
    for (const auto& [v, w] : sorted_vw) {
        cum += w;
        if (cum >= target) return v;
    }
    return sorted_vw.back().first;
}

ShareDistribution make_distribution(SourceRole source, std::vector<double> values,
                                    const std::vector<double>& weights, bool weighted) {
    ShareDistribution d;
    d.source = source;
    d.n = values.size();
    d.values = values;
    if (values.empty()) return d;
    if (weighted) {
        std::vector<std::pair<double, double>> vw(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) vw[i] = {values[i], weights[i]};
        std::sort(vw.begin(), vw.end());
        d.q1 = weighted_quantile(vw, 0.25);
        d.median = weighted_quantile(vw, 0.5);
        d.q3 = weighted_quantile(vw, 0.75);
    } else {
        std::sort(values.begin(), values.end());
        d.q1 = quantile_sorted(values, 0.25);
        d.median = quantile_sorted(values, 0.5);
        d.q3 = quantile_sorted(values, 0.75);
    }
    return d;
}

}  // namespace

double counterfactual_conflict(const AgentState& prev_a, const AgentState& prev_b,
                               const AgentState& now_a, const AgentState& now_b,
                               int frozen_agent, double tce_anchor,
                               double combined_radius, const MetricsConfig& cfg) {
    AgentState cf_a = now_a;
    AgentState cf_b = now_b;
    if (frozen_agent == 0)
        cf_a.velocity = prev_a.velocity;
    else
        cf_b.velocity = prev_b.velocity;
    return conflict_at(cf_a, cf_b, combined_radius, tce_anchor, cfg);
}

double conflict_contribution(double actual_c, double counterfactual_c) {
    return actual_c - counterfactual_c;
}

SignedSplit split_signed(double cc) {
    return {std::max(cc, 0.0), -std::min(cc, 0.0)};
}

SignedSplit time_contributions(double dC, double sum_cc_plus, double sum_cc_minus) {
    SignedSplit out;
    out.plus = std::max(dC - sum_cc_plus, 0.0);
    // Time absorbs whatever decrease the agents' diminishing contributions do
    // not already explain.
    out.minus = -std::min(dC + sum_cc_minus, 0.0);
    return out;
}

double total_conflict(const std::vector<ContributionSample>& samples, double dt) {
    double sum = 0.0;
    for (const ContributionSample& s : samples)
        sum += (s.cc1_plus + s.cc2_plus + s.cc_time_plus) * dt;
    return sum;
}

RawShares responsibility_shares(const std::vector<ContributionSample>& samples,
                                double c_total, double dt) {
    if (!(c_total > 0.0))
        throw std::invalid_argument("responsibility_shares: c_total must be positive");
    RawShares out;
    for (const ContributionSample& s : samples) {
        out.agent1 += s.cc1_minus * dt;
        out.agent2 += s.cc2_minus * dt;
        out.time += s.cc_time_minus * dt;
    }
    out.agent1 /= c_total;
    out.agent2 /= c_total;
    out.time /= c_total;
    return out;
}

RawShares engagement_shares(const std::vector<ContributionSample>& samples,
                            double c_total, double dt) {
    if (!(c_total > 0.0))
        throw std::invalid_argument("engagement_shares: c_total must be positive");
    RawShares out;
    for (const ContributionSample& s : samples) {
        out.agent1 += s.cc1_plus * dt;
        out.agent2 += s.cc2_plus * dt;
        out.time += s.cc_time_plus * dt;
    }
    out.agent1 /= c_total;
    out.agent2 /= c_total;
    out.time /= c_total;
    return out;
}

std::vector<InteractionSegment> segment_interactions(const Trajectory& a,
                                                     const Trajectory& b,
                                                     const MetricsConfig& cfg) {
    const AlignedRange range = aligned_overlap(a, b);
    const double radius = pair_combined_radius(a, b, cfg);

    std::vector<double> dist(range.count);
    std::vector<bool> active(range.count);
    for (std::size_t i = 0; i < range.count; ++i) {
        const RelKin k = relative_kinematics(a.samples[range.offset_a + i],
                                             b.samples[range.offset_b + i]);
        dist[i] = k.r.norm();
        active[i] = conflict_potential(pdce(k, cfg.epsilon_speed), radius) > 0.0;
    }

    // Maximal runs of positive conflict potential.
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t i = 0; i < range.count;) {
        if (!active[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < range.count && active[j + 1]) ++j;
        runs.emplace_back(i, j);
        i = j + 1;
    }

    // Merge runs separated by less than a quarter window of zero potential.
    const double min_gap = cfg.window / 4.0;
    std::vector<std::pair<std::size_t, std::size_t>> merged;
    for (const auto& run : runs) {
        if (!merged.empty()) {
            const double gap_seconds =
                static_cast<double>(run.first - merged.back().second - 1) * range.dt;
            if (gap_seconds < min_gap) {
                merged.back().second = run.second;
                continue;
            }
        }
        merged.push_back(run);
    }

    std::vector<InteractionSegment> out;
    for (std::size_t m = 0; m < merged.size(); ++m) {
        auto [s, e] = merged[m];
        // Extend through the following distance minimum (the realized
        // encounter may come after the potential already dropped to zero).
        const std::size_t cap = (m + 1 < merged.size()) ? merged[m + 1].first - 1 : range.count - 1;
        while (e < cap && dist[e + 1] < dist[e]) ++e;

        std::size_t anchor = s;
        for (std::size_t i = s; i <= e; ++i)
            if (dist[i] < dist[anchor]) anchor = i;

        InteractionSegment seg;
        seg.start_t = range.t0 + static_cast<double>(s) * range.dt;
        seg.end_t = range.t0 + static_cast<double>(e) * range.dt;
        seg.tce_anchor = range.t0 + static_cast<double>(anchor) * range.dt;
        seg.min_distance = dist[anchor];
        out.push_back(seg);
    }
    return out;
}

InteractionReport evaluate_interaction(const Trajectory& a, const Trajectory& b,
                                       const InteractionSegment& segment,
                                       const MetricsConfig& cfg) {
    InteractionReport report;
    report.agent_a = a.agent_id;
    report.agent_b = b.agent_id;
    report.segment = segment;
    report.tce_anchor = segment.tce_anchor;

    const Trajectory sa = a.slice(segment.start_t, segment.end_t);
    const Trajectory sb = b.slice(segment.start_t, segment.end_t);
    const AlignedRange range = aligned_overlap(sa, sb);
    const double radius = pair_combined_radius(sa, sb, cfg);
    const double dt = range.dt;
    const double anchor = segment.tce_anchor;

    // Evaluated steps: the normalization window clipped to the segment, plus
    // one virtual closing step just past the anchor where N (and so C) is
    // zero, so residual conflict at the anchor is booked as time's share.
    std::vector<ContributionSample> samples;
    double prev_c = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < range.count; ++i) {
        const double t = range.t0 + static_cast<double>(i) * dt;
        if (t < anchor - cfg.window - 1e-9) continue;
        if (t > anchor + 1e-9) break;
        const AgentState& now_a = sa.samples[range.offset_a + i];
        const AgentState& now_b = sb.samples[range.offset_b + i];
        const double c_now = conflict_at(now_a, now_b, radius, anchor, cfg);

        ContributionSample s;
        s.t = t;
        if (first) {
            // No previous velocity: the agents cannot have contributed yet;
            // conflict already present at window entry books to time.
            s.dC = c_now / dt;
            first = false;
        } else {
            const AgentState& prev_a = sa.samples[range.offset_a + i - 1];
            const AgentState& prev_b = sb.samples[range.offset_b + i - 1];
            s.dC = (c_now - prev_c) / dt;
            const double cf1 = counterfactual_conflict(prev_a, prev_b, now_a, now_b, 0,
                                                       anchor, radius, cfg);
            const double cf2 = counterfactual_conflict(prev_a, prev_b, now_a, now_b, 1,
                                                       anchor, radius, cfg);
            s.cc_agent1 = conflict_contribution(c_now, cf1) / dt;
            s.cc_agent2 = conflict_contribution(c_now, cf2) / dt;
        }
        const SignedSplit s1 = split_signed(s.cc_agent1);
        const SignedSplit s2 = split_signed(s.cc_agent2);
        s.cc1_plus = s1.plus;
        s.cc1_minus = s1.minus;
        s.cc2_plus = s2.plus;
        s.cc2_minus = s2.minus;
        const SignedSplit st = time_contributions(s.dC, s.cc1_plus + s.cc2_plus,
                                                  s.cc1_minus + s.cc2_minus);
        s.cc_time_plus = st.plus;
        s.cc_time_minus = st.minus;
        samples.push_back(s);
        prev_c = c_now;
    }

    if (!samples.empty()) {
        // Virtual closing step: past the anchor the normalization is zero, so
        // the conflict drops to zero and neither agent can have contributed.
        ContributionSample close;
        close.t = samples.back().t + dt;
        close.dC = -prev_c / dt;
        const SignedSplit st = time_contributions(close.dC, 0.0, 0.0);
        close.cc_time_plus = st.plus;
        close.cc_time_minus = st.minus;
        samples.push_back(close);
    }

    report.contributions = samples;
    report.c_total = total_conflict(samples, dt);
    if (report.c_total < kDegenerateConflictTotal) {
        report.status = InteractionStatus::degenerate_no_conflict;
        return report;
    }
    report.status = InteractionStatus::resolved;

    const RawShares r = responsibility_shares(samples, report.c_total, dt);
    const RawShares e = engagement_shares(samples, report.c_total, dt);
    report.r_residual = r.sum() - 1.0;
    report.e_residual = e.sum() - 1.0;
    // Discrete counterfactuals of two simultaneously acting agents need not
    // sum exactly to the realized change; shares are renormalized to 1 and
    // the raw residual kept above.
    const double r_sum = r.sum();
    const double e_sum = e.sum();
    report.r_a = r_sum > 0.0 ? r.agent1 / r_sum : 0.0;
    report.r_b = r_sum > 0.0 ? r.agent2 / r_sum : 0.0;
    report.r_time = r_sum > 0.0 ? r.time / r_sum : 0.0;
    report.e_a = e_sum > 0.0 ? e.agent1 / e_sum : 0.0;
    report.e_b = e_sum > 0.0 ? e.agent2 / e_sum : 0.0;
    report.e_time = e_sum > 0.0 ? e.time / e_sum : 0.0;
    return report;
}

std::vector<InteractionReport> evaluate_all_pairs(
    const std::map<std::string, Trajectory>& trajectories, const MetricsConfig& cfg) {
    std::vector<InteractionReport> out;
    for (auto ia = trajectories.begin(); ia != trajectories.end(); ++ia) {
        for (auto ib = std::next(ia); ib != trajectories.end(); ++ib) {
            std::vector<InteractionSegment> segments;
            try {
                segments = segment_interactions(ia->second, ib->second, cfg);
            } catch (const EmptyInteractionError&) {
                continue;  // pair never coexists
            }
            for (const InteractionSegment& seg : segments)
                out.push_back(evaluate_interaction(ia->second, ib->second, seg, cfg));
        }
    }
    return out;
}

AggregateDistributions aggregate_distributions(
    const std::vector<InteractionReport>& reports,
    const std::map<std::string, std::string>& role_map, bool weighted) {
    if (reports.empty())
        throw std::invalid_argument("aggregate_distributions: no interactions");

    auto role_of = [&role_map](const std::string& id) -> std::string {
        auto it = role_map.find(id);
        return it == role_map.end() ? std::string("human") : it->second;
    };

    std::vector<double> r_robot, r_humans, r_time, e_robot, e_humans, e_time, weights;
    for (const InteractionReport& rep : reports) {
        if (rep.status != InteractionStatus::resolved) continue;
        const bool a_robot = role_of(rep.agent_a) == "robot";
        const bool b_robot = role_of(rep.agent_b) == "robot";
        if (a_robot == b_robot) continue;  // keep robot-vs-human interactions only
        const double rr = a_robot ? rep.r_a : rep.r_b;
        const double rh = a_robot ? rep.r_b : rep.r_a;
        const double er = a_robot ? rep.e_a : rep.e_b;
        const double eh = a_robot ? rep.e_b : rep.e_a;
        r_robot.push_back(rr);
        r_humans.push_back(rh);
        r_time.push_back(rep.r_time);
        e_robot.push_back(er);
        e_humans.push_back(eh);
        e_time.push_back(rep.e_time);
        weights.push_back(rep.c_total);
    }
    if (r_robot.empty())
        throw std::invalid_argument(
            "aggregate_distributions: no resolved robot-human interactions");

    AggregateDistributions out;
    out.r_robot = make_distribution(SourceRole::robot, r_robot, weights, weighted);
    out.r_humans = make_distribution(SourceRole::humans, r_humans, weights, weighted);
    out.r_time = make_distribution(SourceRole::time, r_time, weights, weighted);
    out.e_robot = make_distribution(SourceRole::robot, e_robot, weights, weighted);
    out.e_humans = make_distribution(SourceRole::humans, e_humans, weights, weighted);
    out.e_time = make_distribution(SourceRole::time, e_time, weights, weighted);
    return out;
}

}  // namespace cm
