#include "cm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace cm {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v, int significant_digits) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, significant_digits);
    return std::string(buf, ptr);
}

double round_sig9(double v) {
    if (!std::isfinite(v)) return v;
    const std::string s = format_double(v, 9);
    double out = v;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

namespace {

double parse_double_field(const std::string& field, std::size_t line) {
    double out = 0.0;
    const char* begin = field.data();
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(line, "line " + std::to_string(line) + ": bad number '" + field + "'");
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void derive_velocities(Trajectory& traj) {
    const std::size_t n = traj.samples.size();
    if (n < 2) return;
    std::vector<Vec2> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            v[i] = (traj.samples[1].position - traj.samples[0].position) / traj.dt;
        else if (i + 1 == n)
            v[i] = (traj.samples[n - 1].position - traj.samples[n - 2].position) / traj.dt;
        else
            v[i] = (traj.samples[i + 1].position - traj.samples[i - 1].position) / (2.0 * traj.dt);
    }
    for (std::size_t i = 0; i < n; ++i) traj.samples[i].velocity = v[i];
}

void write_trajectories_csv(std::ostream& out,
                            const std::map<std::string, Trajectory>& trajectories) {
    out << "t,agent_id,x,y,vx,vy,radius\n";
    for (const auto& [id, traj] : trajectories) {
        for (const AgentState& s : traj.samples) {
            out << format_double(s.t, 17) << ',' << id << ','
                << format_double(s.position.x, 17) << ',' << format_double(s.position.y, 17)
                << ',' << format_double(s.velocity.x, 17) << ','
                << format_double(s.velocity.y, 17) << ',' << format_double(s.radius, 17)
                << '\n';
        }
    }
}

void write_trajectories_csv(const std::string& path,
                            const std::map<std::string, Trajectory>& trajectories) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_trajectories_csv(out, trajectories);
}

std::map<std::string, Trajectory> read_trajectories_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(1, "empty trajectory file");

    const std::vector<std::string> header = split_csv_line(trim(line));
    int col_t = -1, col_id = -1, col_x = -1, col_y = -1, col_vx = -1, col_vy = -1,
        col_radius = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = trim(header[i]);
        if (name == "t") col_t = static_cast<int>(i);
        else if (name == "agent_id") col_id = static_cast<int>(i);
        else if (name == "x") col_x = static_cast<int>(i);
        else if (name == "y") col_y = static_cast<int>(i);
        else if (name == "vx") col_vx = static_cast<int>(i);
        else if (name == "vy") col_vy = static_cast<int>(i);
        else if (name == "radius") col_radius = static_cast<int>(i);
        else
            std::cerr << "warning: ignoring unknown trajectory column '" << name << "'\n";
    }
    if (col_t < 0 || col_id < 0 || col_x < 0 || col_y < 0)
        throw ParseError(1, "trajectory header must contain t,agent_id,x,y");
    const bool has_velocity = col_vx >= 0 && col_vy >= 0;

    std::map<std::string, Trajectory> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = trim(line);
        if (trimmed.empty()) continue;
        const std::vector<std::string> fields = split_csv_line(trimmed);
        if (fields.size() < header.size())
            throw ParseError(line_no, "line " + std::to_string(line_no) + ": expected " +
                                          std::to_string(header.size()) + " fields, got " +
                                          std::to_string(fields.size()));
        AgentState s;
        s.t = parse_double_field(trim(fields[col_t]), line_no);
        s.position.x = parse_double_field(trim(fields[col_x]), line_no);
        s.position.y = parse_double_field(trim(fields[col_y]), line_no);
        if (has_velocity) {
            s.velocity.x = parse_double_field(trim(fields[col_vx]), line_no);
            s.velocity.y = parse_double_field(trim(fields[col_vy]), line_no);
        }
        s.radius = col_radius >= 0 ? parse_double_field(trim(fields[col_radius]), line_no) : 0.5;
        const std::string id = trim(fields[col_id]);
        if (id.empty()) throw ParseError(line_no, "line " + std::to_string(line_no) + ": empty agent_id");
        Trajectory& traj = out[id];
        traj.agent_id = id;
        if (!traj.samples.empty() && s.t <= traj.samples.back().t)
            throw ParseError(line_no, "line " + std::to_string(line_no) +
                                          ": timestamps not increasing for agent '" + id + "'");
        traj.samples.push_back(s);
    }

    for (auto& [id, traj] : out) {
        if (traj.samples.size() < 2)
            throw ParseError(0, "agent '" + id + "' needs at least two samples");
        traj.dt = traj.samples[1].t - traj.samples[0].t;
        validate_trajectory(traj);
        if (!has_velocity) derive_velocities(traj);
    }
    return out;
}

std::map<std::string, Trajectory> read_trajectories_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return read_trajectories_csv(in);
}

namespace {

ordered_json shares_json(const InteractionReport& r, bool responsibility) {
    ordered_json j;
    j[r.agent_a] = round_sig9(responsibility ? r.r_a : r.e_a);
    j[r.agent_b] = round_sig9(responsibility ? r.r_b : r.e_b);
    j["time"] = round_sig9(responsibility ? r.r_time : r.e_time);
    return j;
}

ordered_json percent_json(const InteractionReport& r, bool responsibility) {
    ordered_json j;
    j[r.agent_a] = static_cast<int>(std::lround(100.0 * (responsibility ? r.r_a : r.e_a)));
    j[r.agent_b] = static_cast<int>(std::lround(100.0 * (responsibility ? r.r_b : r.e_b)));
    j["time"] = static_cast<int>(std::lround(100.0 * (responsibility ? r.r_time : r.e_time)));
    return j;
}

ordered_json distribution_json(const ShareDistribution& d) {
    ordered_json j;
    j["median"] = round_sig9(d.median);
    j["q1"] = round_sig9(d.q1);
    j["q3"] = round_sig9(d.q3);
    j["n"] = d.n;
    return j;
}

ShareDistribution distribution_from_json(const ordered_json& j, SourceRole role) {
    ShareDistribution d;
    d.source = role;
    d.median = j.at("median").get<double>();
    d.q1 = j.at("q1").get<double>();
    d.q3 = j.at("q3").get<double>();
    d.n = j.at("n").get<std::size_t>();
    return d;
}

const char* event_kind_name(SimEvent::Kind kind) {
    switch (kind) {
        case SimEvent::Kind::collision: return "collision";
        case SimEvent::Kind::goal_reached: return "goal_reached";
        case SimEvent::Kind::goal_resampled: return "goal_resampled";
    }
    return "unknown";
}

SimEvent::Kind event_kind_from_name(const std::string& name) {
    if (name == "collision") return SimEvent::Kind::collision;
    if (name == "goal_reached") return SimEvent::Kind::goal_reached;
    return SimEvent::Kind::goal_resampled;
}

}  // namespace

std::string report_to_json(const ReportFile& report) {
    ordered_json j;
    j["schema_version"] = report.schema_version;
    j["source"]["kind"] = report.source_kind;
    j["source"]["name"] = report.source_name;
    j["source"]["seeds"] = report.seeds;
    j["metrics"]["dt"] = round_sig9(report.dt);
    j["metrics"]["window"] = round_sig9(report.metrics.window);
    if (report.metrics.combined_radius_override)
        j["metrics"]["combined_radius_override"] = round_sig9(*report.metrics.combined_radius_override);
    else
        j["metrics"]["combined_radius_override"] = nullptr;
    j["metrics"]["epsilon_speed"] = round_sig9(report.metrics.epsilon_speed);
    j["metrics"]["weighted_aggregation"] = report.weighted_aggregation;
    j["role_map"] = report.role_map;

    j["interactions"] = ordered_json::array();
    for (const ReportEntry& entry : report.interactions) {
        const InteractionReport& r = entry.report;
        ordered_json ji;
        ji["seed"] = entry.seed;
        ji["agent_a"] = r.agent_a;
        ji["agent_b"] = r.agent_b;
        ji["status"] = r.status == InteractionStatus::resolved ? "resolved"
                                                               : "degenerate_no_conflict";
        ji["segment"]["start_t"] = round_sig9(r.segment.start_t);
        ji["segment"]["end_t"] = round_sig9(r.segment.end_t);
        ji["segment"]["tce_anchor"] = round_sig9(r.segment.tce_anchor);
        ji["segment"]["min_distance"] = round_sig9(r.segment.min_distance);
        ji["tce_anchor"] = round_sig9(r.tce_anchor);
        ji["c_total"] = round_sig9(r.c_total);
        if (r.status == InteractionStatus::resolved) {
            ji["r_shares"] = shares_json(r, true);
            ji["r_percent"] = percent_json(r, true);
            ji["e_shares"] = shares_json(r, false);
            ji["e_percent"] = percent_json(r, false);
            ji["r_residual"] = round_sig9(r.r_residual);
            ji["e_residual"] = round_sig9(r.e_residual);
        }
        j["interactions"].push_back(ji);
    }

    if (report.distributions) {
        const AggregateDistributions& d = *report.distributions;
        j["distributions"]["R"]["robot"] = distribution_json(d.r_robot);
        j["distributions"]["R"]["humans"] = distribution_json(d.r_humans);
        j["distributions"]["R"]["time"] = distribution_json(d.r_time);
        j["distributions"]["E"]["robot"] = distribution_json(d.e_robot);
        j["distributions"]["E"]["humans"] = distribution_json(d.e_humans);
        j["distributions"]["E"]["time"] = distribution_json(d.e_time);
    } else {
        j["distributions"] = nullptr;
    }

    j["events"] = ordered_json::array();
    for (const EventEntry& entry : report.events) {
        ordered_json je;
        je["seed"] = entry.seed;
        je["t"] = round_sig9(entry.event.t);
        je["kind"] = event_kind_name(entry.event.kind);
        je["agents"] = entry.event.agents;
        j["events"].push_back(je);
    }
    return j.dump(2) + "\n";
}

void write_report(const std::string& path, const ReportFile& report) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << report_to_json(report);
}

ReportFile report_from_json(std::istream& in) {
    ordered_json j = ordered_json::parse(in);
    ReportFile report;
    report.schema_version = j.at("schema_version").get<int>();
    report.source_kind = j.at("source").at("kind").get<std::string>();
    report.source_name = j.at("source").at("name").get<std::string>();
    report.seeds = j.at("source").at("seeds").get<std::vector<std::uint64_t>>();
    report.dt = j.at("metrics").at("dt").get<double>();
    report.metrics.window = j.at("metrics").at("window").get<double>();
    if (!j.at("metrics").at("combined_radius_override").is_null())
        report.metrics.combined_radius_override =
            j.at("metrics").at("combined_radius_override").get<double>();
    report.metrics.epsilon_speed = j.at("metrics").at("epsilon_speed").get<double>();
    report.weighted_aggregation = j.at("metrics").at("weighted_aggregation").get<bool>();
    report.role_map = j.at("role_map").get<std::map<std::string, std::string>>();

    for (const ordered_json& ji : j.at("interactions")) {
        ReportEntry entry;
        entry.seed = ji.at("seed").get<std::uint64_t>();
        InteractionReport& r = entry.report;
        r.agent_a = ji.at("agent_a").get<std::string>();
        r.agent_b = ji.at("agent_b").get<std::string>();
        r.status = ji.at("status").get<std::string>() == "resolved"
                       ? InteractionStatus::resolved
                       : InteractionStatus::degenerate_no_conflict;
        r.segment.start_t = ji.at("segment").at("start_t").get<double>();
        r.segment.end_t = ji.at("segment").at("end_t").get<double>();
        r.segment.tce_anchor = ji.at("segment").at("tce_anchor").get<double>();
        r.segment.min_distance = ji.at("segment").at("min_distance").get<double>();
        r.tce_anchor = ji.at("tce_anchor").get<double>();
        r.c_total = ji.at("c_total").get<double>();
        if (r.status == InteractionStatus::resolved) {
            r.r_a = ji.at("r_shares").at(r.agent_a).get<double>();
            r.r_b = ji.at("r_shares").at(r.agent_b).get<double>();
            r.r_time = ji.at("r_shares").at("time").get<double>();
            r.e_a = ji.at("e_shares").at(r.agent_a).get<double>();
            r.e_b = ji.at("e_shares").at(r.agent_b).get<double>();
            r.e_time = ji.at("e_shares").at("time").get<double>();
            r.r_residual = ji.at("r_residual").get<double>();
            r.e_residual = ji.at("e_residual").get<double>();
        }
        report.interactions.push_back(std::move(entry));
    }

    if (!j.at("distributions").is_null()) {
        AggregateDistributions d;
        d.r_robot = distribution_from_json(j["distributions"]["R"]["robot"], SourceRole::robot);
        d.r_humans = distribution_from_json(j["distributions"]["R"]["humans"], SourceRole::humans);
        d.r_time = distribution_from_json(j["distributions"]["R"]["time"], SourceRole::time);
        d.e_robot = distribution_from_json(j["distributions"]["E"]["robot"], SourceRole::robot);
        d.e_humans = distribution_from_json(j["distributions"]["E"]["humans"], SourceRole::humans);
        d.e_time = distribution_from_json(j["distributions"]["E"]["time"], SourceRole::time);
        report.distributions = d;
    }

    for (const ordered_json& je : j.at("events")) {
        EventEntry entry;
        entry.seed = je.at("seed").get<std::uint64_t>();
        entry.event.t = je.at("t").get<double>();
        entry.event.kind = event_kind_from_name(je.at("kind").get<std::string>());
        entry.event.agents = je.at("agents").get<std::vector<std::string>>();
        report.events.push_back(std::move(entry));
    }
    return report;
}

ReportFile read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return report_from_json(in);
}

namespace {

ordered_json vec2_json(const Vec2& v) { return ordered_json::array({v.x, v.y}); }
Vec2 vec2_from_json(const ordered_json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

ordered_json sf_json(const SocialForceParams& p) {
    ordered_json j;
    j["a"] = p.a;
    j["lambda"] = p.lambda;
    j["gamma"] = p.gamma;
    j["n"] = p.n;
    j["n_prime"] = p.n_prime;
    j["fov_half_angle"] = p.fov_half_angle;
    j["fov_rear_factor"] = p.fov_rear_factor;
    j["desired_speed"] = p.desired_speed;
    j["relaxation_time"] = p.relaxation_time;
    j["max_speed"] = p.max_speed;
    return j;
}

SocialForceParams sf_from_json(const ordered_json& j) {
    SocialForceParams p;
    p.a = j.value("a", p.a);
    p.lambda = j.value("lambda", p.lambda);
    p.gamma = j.value("gamma", p.gamma);
    p.n = j.value("n", p.n);
    p.n_prime = j.value("n_prime", p.n_prime);
    p.fov_half_angle = j.value("fov_half_angle", p.fov_half_angle);
    p.fov_rear_factor = j.value("fov_rear_factor", p.fov_rear_factor);
    p.desired_speed = j.value("desired_speed", p.desired_speed);
    p.relaxation_time = j.value("relaxation_time", p.relaxation_time);
    p.max_speed = j.value("max_speed", p.max_speed);
    return p;
}

ordered_json dwa_json(const DwaParams& p) {
    ordered_json j;
    j["sensor_range"] = p.sensor_range;
    j["velocity_samples"] = p.velocity_samples;
    j["heading_samples"] = p.heading_samples;
    j["max_speed"] = p.max_speed;
    j["max_accel"] = p.max_accel;
    j["max_yaw_rate"] = p.max_yaw_rate;
    j["rollout_horizon"] = p.rollout_horizon;
    j["heading_weight"] = p.heading_weight;
    j["clearance_weight"] = p.clearance_weight;
    j["velocity_weight"] = p.velocity_weight;
    return j;
}

DwaParams dwa_from_json(const ordered_json& j) {
    DwaParams p;
    p.sensor_range = j.value("sensor_range", p.sensor_range);
    p.velocity_samples = j.value("velocity_samples", p.velocity_samples);
    p.heading_samples = j.value("heading_samples", p.heading_samples);
    p.max_speed = j.value("max_speed", p.max_speed);
    p.max_accel = j.value("max_accel", p.max_accel);
    p.max_yaw_rate = j.value("max_yaw_rate", p.max_yaw_rate);
    p.rollout_horizon = j.value("rollout_horizon", p.rollout_horizon);
    p.heading_weight = j.value("heading_weight", p.heading_weight);
    p.clearance_weight = j.value("clearance_weight", p.clearance_weight);
    p.velocity_weight = j.value("velocity_weight", p.velocity_weight);
    return p;
}

}  // namespace

std::string scenario_to_json(const ScenarioConfig& cfg) {
    ordered_json j;
    j["name"] = cfg.name;
    j["duration"] = cfg.duration;
    j["dt"] = cfg.dt;
    j["seed"] = cfg.seed;
    if (cfg.arena) {
        j["arena"]["lo"] = vec2_json(cfg.arena->lo);
        j["arena"]["hi"] = vec2_json(cfg.arena->hi);
    } else {
        j["arena"] = nullptr;
    }
    j["metrics"]["window"] = cfg.metrics.window;
    if (cfg.metrics.combined_radius_override)
        j["metrics"]["combined_radius_override"] = *cfg.metrics.combined_radius_override;
    else
        j["metrics"]["combined_radius_override"] = nullptr;
    j["metrics"]["epsilon_speed"] = cfg.metrics.epsilon_speed;

    j["agents"] = ordered_json::array();
    for (const AgentSpec& a : cfg.agents) {
        ordered_json ja;
        ja["id"] = a.id;
        ja["role"] = a.role == Role::robot ? "robot" : "human";
        ja["initial"]["position"] = vec2_json(a.initial.position);
        ja["initial"]["velocity"] = vec2_json(a.initial.velocity);
        ja["initial"]["radius"] = a.initial.radius;
        ja["goal"]["point"] = vec2_json(a.goal.point);
        ja["goal"]["resample_on_arena_edge"] = a.goal.resample_on_arena_edge;
        ja["goal"]["relaunch_at_start"] = a.goal.relaunch_at_start;
        ja["goal"]["arrive_radius"] = a.goal.arrive_radius;
        switch (a.policy.kind) {
            case PolicyKind::ballistic:
                ja["policy"]["kind"] = "ballistic";
                break;
            case PolicyKind::social_force:
                ja["policy"]["kind"] = "social_force";
                ja["policy"]["social_force"] = sf_json(a.policy.sf);
                break;
            case PolicyKind::dwa:
                ja["policy"]["kind"] = "dwa";
                ja["policy"]["dwa"] = dwa_json(a.policy.dwa);
                break;
            case PolicyKind::chaser:
                ja["policy"]["kind"] = "chaser";
                ja["policy"]["chaser"]["dwa"] = dwa_json(a.policy.chaser.dwa);
                ja["policy"]["chaser"]["prediction_speed_divisor"] =
                    a.policy.chaser.prediction_speed_divisor;
                ja["policy"]["chaser"]["target"] = a.policy.chaser_target;
                break;
        }
        j["agents"].push_back(ja);
    }
    return j.dump(2) + "\n";
}

ScenarioConfig scenario_from_json(std::istream& in) {
    ordered_json j = ordered_json::parse(in);
    ScenarioConfig cfg;
    cfg.name = j.at("name").get<std::string>();
    cfg.duration = j.at("duration").get<double>();
    cfg.dt = j.at("dt").get<double>();
    cfg.seed = j.value("seed", std::uint64_t{1});
    if (j.contains("arena") && !j.at("arena").is_null()) {
        Rect arena;
        arena.lo = vec2_from_json(j["arena"]["lo"]);
        arena.hi = vec2_from_json(j["arena"]["hi"]);
        cfg.arena = arena;
    }
    if (j.contains("metrics")) {
        cfg.metrics.window = j["metrics"].value("window", cfg.metrics.window);
        if (j["metrics"].contains("combined_radius_override") &&
            !j["metrics"]["combined_radius_override"].is_null())
            cfg.metrics.combined_radius_override =
                j["metrics"]["combined_radius_override"].get<double>();
        cfg.metrics.epsilon_speed = j["metrics"].value("epsilon_speed", cfg.metrics.epsilon_speed);
    }
    for (const ordered_json& ja : j.at("agents")) {
        AgentSpec a;
        a.id = ja.at("id").get<std::string>();
        a.role = ja.value("role", std::string("human")) == "robot" ? Role::robot : Role::human;
        a.initial.position = vec2_from_json(ja.at("initial").at("position"));
        a.initial.velocity = vec2_from_json(ja.at("initial").at("velocity"));
        a.initial.radius = ja.at("initial").value("radius", 0.5);
        a.goal.point = vec2_from_json(ja.at("goal").at("point"));
        a.goal.resample_on_arena_edge = ja.at("goal").value("resample_on_arena_edge", false);
        a.goal.relaunch_at_start = ja.at("goal").value("relaunch_at_start", false);
        a.goal.arrive_radius = ja.at("goal").value("arrive_radius", 0.3);
        const std::string kind = ja.at("policy").at("kind").get<std::string>();
        if (kind == "ballistic") {
            a.policy.kind = PolicyKind::ballistic;
        } else if (kind == "social_force") {
            a.policy.kind = PolicyKind::social_force;
            if (ja["policy"].contains("social_force"))
                a.policy.sf = sf_from_json(ja["policy"]["social_force"]);
        } else if (kind == "dwa") {
            a.policy.kind = PolicyKind::dwa;
            if (ja["policy"].contains("dwa")) a.policy.dwa = dwa_from_json(ja["policy"]["dwa"]);
        } else if (kind == "chaser") {
            a.policy.kind = PolicyKind::chaser;
            a.policy.chaser.dwa = dwa_from_json(ja["policy"]["chaser"]["dwa"]);
            a.policy.chaser.prediction_speed_divisor =
                ja["policy"]["chaser"].value("prediction_speed_divisor", 1.2);
            a.policy.chaser_target = ja["policy"]["chaser"].value("target", std::string());
        } else {
            throw std::invalid_argument("unknown policy kind '" + kind + "'");
        }
        cfg.agents.push_back(std::move(a));
    }
    return cfg;
}

void write_conflict_series_table(std::ostream& out, const ReportFile& report,
                                 const std::map<std::string, Trajectory>& trajectories) {
    out << "pair,t,pdce,cp,n,c\n";
    if (report.interactions.empty()) return;
    const std::uint64_t seed = report.interactions.front().seed;
    for (const ReportEntry& entry : report.interactions) {
        if (entry.seed != seed) continue;  // the dump holds the first run only
        const InteractionReport& r = entry.report;
        auto ia = trajectories.find(r.agent_a);
        auto ib = trajectories.find(r.agent_b);
        if (ia == trajectories.end() || ib == trajectories.end())
            throw std::runtime_error("trajectory dump is missing agent '" +
                                     (ia == trajectories.end() ? r.agent_a : r.agent_b) + "'");
        const Trajectory ta = ia->second.slice(r.segment.start_t, r.segment.end_t);
        const Trajectory tb = ib->second.slice(r.segment.start_t, r.segment.end_t);
        const std::string pair = r.agent_a + "-" + r.agent_b;
        for (const ConflictSample& s :
             conflict_series(ta, tb, r.tce_anchor, report.metrics)) {
            out << pair << ',' << format_double(round_sig9(s.t)) << ','
                << format_double(round_sig9(s.pdce)) << ',' << format_double(round_sig9(s.cp))
                << ',' << format_double(round_sig9(s.n)) << ','
                << format_double(round_sig9(s.c)) << '\n';
        }
    }
}

void write_shares_table(std::ostream& out, const ReportFile& report) {
    out << "seed,agent_a,agent_b,tce_anchor,c_total,status,"
           "r_agent_a,r_agent_b,r_time,e_agent_a,e_agent_b,e_time\n";
    for (const ReportEntry& entry : report.interactions) {
        const InteractionReport& r = entry.report;
        out << entry.seed << ',' << r.agent_a << ',' << r.agent_b << ','
            << format_double(round_sig9(r.tce_anchor)) << ','
            << format_double(round_sig9(r.c_total)) << ','
            << (r.status == InteractionStatus::resolved ? "resolved" : "degenerate_no_conflict");
        for (double v : {r.r_a, r.r_b, r.r_time, r.e_a, r.e_b, r.e_time})
            out << ',' << format_double(round_sig9(v));
        out << '\n';
    }
}

void write_distributions_table(std::ostream& out, const ReportFile& report) {
    out << "metric,source,median,q1,q3,n\n";
    if (!report.distributions) return;
    const AggregateDistributions& d = *report.distributions;
    auto row = [&out](const char* metric, const char* source, const ShareDistribution& dist) {
        out << metric << ',' << source << ',' << format_double(round_sig9(dist.median)) << ','
            << format_double(round_sig9(dist.q1)) << ',' << format_double(round_sig9(dist.q3))
            << ',' << dist.n << '\n';
    };
    row("R", "robot", d.r_robot);
    row("R", "humans", d.r_humans);
    row("R", "time", d.r_time);
    row("E", "robot", d.e_robot);
    row("E", "humans", d.e_humans);
    row("E", "time", d.e_time);
}

}  // namespace cm
