#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cm/attribution.hpp"
#include "cm/sim.hpp"

namespace cm {

/// Input-file error with a 1-based line number (0 = not line-specific).
struct ParseError : std::runtime_error {
    std::size_t line;
    ParseError(std::size_t line_, const std::string& what_)
        : std::runtime_error(what_), line(line_) {}
};

/// Rounds to 9 significant digits; all numbers in reports and plot tables go
/// through this so identical inputs serialize byte-identically.
double round_sig9(double v);

/// Locale-independent formatting ('.' decimal separator always).
std::string format_double(double v, int significant_digits = 9);

// --- trajectory files -----------------------------------------------------
//
// CSV with header: t,agent_id,x,y[,vx,vy][,radius]. Rows sorted by
// (agent_id, t); per-agent uniform dt; radius defaults to 0.5 m when the
// column is absent; velocities are derived by central finite differences
// (one-sided at the endpoints) when absent. Unknown extra columns are ignored
// with a warning on stderr.

void write_trajectories_csv(std::ostream& out,
                            const std::map<std::string, Trajectory>& trajectories);
void write_trajectories_csv(const std::string& path,
                            const std::map<std::string, Trajectory>& trajectories);
std::map<std::string, Trajectory> read_trajectories_csv(std::istream& in);
std::map<std::string, Trajectory> read_trajectories_csv(const std::string& path);

/// Central finite differences over positions (forward/backward at the ends).
void derive_velocities(Trajectory& traj);

// --- report files -----------------------------------------------------------

struct ReportEntry {
    std::uint64_t seed = 0;
    InteractionReport report;
};

struct EventEntry {
    std::uint64_t seed = 0;
    SimEvent event;
};

/// Structured result document for a run or an evaluation.
struct ReportFile {
    int schema_version = 1;
    std::string source_kind;  // "scenario" or "file"
    std::string source_name;
    std::vector<std::uint64_t> seeds;
    double dt = 0.1;
    MetricsConfig metrics;
    bool weighted_aggregation = false;
    std::map<std::string, std::string> role_map;
    std::vector<ReportEntry> interactions;
    std::optional<AggregateDistributions> distributions;
    std::vector<EventEntry> events;
};

std::string report_to_json(const ReportFile& report);
void write_report(const std::string& path, const ReportFile& report);
ReportFile report_from_json(std::istream& in);
ReportFile read_report(const std::string& path);

// --- scenario config files --------------------------------------------------

std::string scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig scenario_from_json(std::istream& in);

// --- plot-ready tables --------------------------------------------------------
//
// Plain CSV tables with labeled columns, byte-deterministic for identical
// inputs.

/// Columns pair,t,pdce,cp,n,c, one block per interaction of the first seed.
/// Needs the trajectory dump of that run.
void write_conflict_series_table(std::ostream& out, const ReportFile& report,
                                 const std::map<std::string, Trajectory>& trajectories);
/// Columns seed,agent_a,agent_b,tce_anchor,c_total,status,r_*,e_*.
void write_shares_table(std::ostream& out, const ReportFile& report);
/// Columns metric,source,median,q1,q3,n.
void write_distributions_table(std::ostream& out, const ReportFile& report);

}  // namespace cm
