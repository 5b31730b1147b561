#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cm/attribution.hpp"
#include "cm/io.hpp"
#include "cm/scenarios.hpp"
#include "cm/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

unsigned thread_cap() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("CONFLICT_METRICS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return std::max(1u, hw);
}

struct RunOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> seeds;
    std::optional<double> dt;
    std::optional<double> window;
    std::optional<double> metric_radius;  // per-agent; override = 2 * this
    bool weighted = false;
};

cm::ScenarioConfig configure_run(const std::string& name, std::uint64_t seed,
                                 const RunOverrides& ov) {
    cm::ScenarioConfig cfg;
    if (name.size() > 5 && name.ends_with(".json") && std::filesystem::exists(name)) {
        std::ifstream in(name);
        cfg = cm::scenario_from_json(in);
        cfg.seed = seed;
    } else {
        cfg = cm::build_by_name(name, seed);
    }
    if (ov.dt) cfg.dt = *ov.dt;
    if (ov.window) cfg.metrics.window = *ov.window;
    if (ov.metric_radius) cfg.metrics.combined_radius_override = 2.0 * *ov.metric_radius;
    return cfg;
}

struct SeedResult {
    std::uint64_t seed = 0;
    std::vector<cm::InteractionReport> reports;
    std::vector<cm::SimEvent> events;
    std::map<std::string, cm::Trajectory> trajectories;
};

/// Runs the scenario for every seed, capped by CONFLICT_METRICS_THREADS, and
/// returns results in seed order. Trajectories are kept for the first seed
/// only (the optional dump).
std::vector<SeedResult> run_seeds(const std::string& name, const RunOverrides& ov,
                                  const std::vector<std::uint64_t>& seeds) {
    std::vector<SeedResult> results(seeds.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= seeds.size()) return;
            const cm::ScenarioConfig cfg = configure_run(name, seeds[i], ov);
            cm::SimulationResult sim = cm::run_scenario(cfg);
            SeedResult& out = results[i];
            out.seed = seeds[i];
            out.reports = cm::evaluate_all_pairs(sim.trajectories, cfg.metrics);
            out.events = std::move(sim.events);
            if (i == 0) out.trajectories = std::move(sim.trajectories);
        }
    };
    const unsigned workers = std::min<std::size_t>(thread_cap(), seeds.size());
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return results;
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << content;
}

int cmd_run(const std::string& name, const RunOverrides& ov, const std::string& out_path,
            const std::string& dump_path) {
    std::vector<std::uint64_t> seeds;
    if (ov.seeds) {
        for (int s = 1; s <= *ov.seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
    } else {
        seeds.push_back(ov.seed.value_or(1));
    }

    const cm::ScenarioConfig first_cfg = configure_run(name, seeds.front(), ov);
    std::vector<SeedResult> results = run_seeds(name, ov, seeds);

    cm::ReportFile report;
    report.source_kind = "scenario";
    report.source_name = first_cfg.name;
    report.seeds = seeds;
    report.dt = first_cfg.dt;
    report.metrics = first_cfg.metrics;
    report.weighted_aggregation = ov.weighted;
    report.role_map = first_cfg.role_map();

    std::vector<cm::InteractionReport> all;
    for (const SeedResult& res : results) {
        for (const cm::InteractionReport& r : res.reports) {
            report.interactions.push_back({res.seed, r});
            all.push_back(r);
        }
        for (const cm::SimEvent& e : res.events) report.events.push_back({res.seed, e});
    }
    for (cm::ReportEntry& entry : report.interactions)
        entry.report.contributions.clear();  // per-step series stay out of the document

    try {
        report.distributions = cm::aggregate_distributions(all, report.role_map, ov.weighted);
    } catch (const std::invalid_argument&) {
        // no resolved robot-human interaction; report without distributions
    }

    emit(out_path, cm::report_to_json(report));
    if (!dump_path.empty()) cm::write_trajectories_csv(dump_path, results.front().trajectories);
    return kExitOk;
}

int cmd_eval(const std::string& csv_path, const RunOverrides& ov, const std::string& out_path) {
    std::map<std::string, cm::Trajectory> trajectories = cm::read_trajectories_csv(csv_path);
    if (trajectories.size() < 2)
        throw cm::ParseError(0, "need at least two agents, got " +
                                    std::to_string(trajectories.size()));
    cm::MetricsConfig metrics;
    if (ov.window) metrics.window = *ov.window;
    if (ov.metric_radius) metrics.combined_radius_override = 2.0 * *ov.metric_radius;

    cm::ReportFile report;
    report.source_kind = "file";
    report.source_name = csv_path;
    report.seeds = {0};
    report.dt = trajectories.begin()->second.dt;
    report.metrics = metrics;
    for (cm::InteractionReport& r : cm::evaluate_all_pairs(trajectories, metrics)) {
        r.contributions.clear();
        report.interactions.push_back({0, std::move(r)});
    }
    emit(out_path, cm::report_to_json(report));
    return kExitOk;
}

int cmd_plotdata(const std::string& report_path, const std::string& kind,
                 const std::string& trajectories_path, const std::string& out_path) {
    const cm::ReportFile report = cm::read_report(report_path);
    std::ostringstream out;
    if (kind == "conflict_series") {
        if (trajectories_path.empty())
            throw cm::ParseError(0, "conflict_series needs --trajectories DUMP.csv");
        const auto trajectories = cm::read_trajectories_csv(trajectories_path);
        cm::write_conflict_series_table(out, report, trajectories);
    } else if (kind == "shares") {
        cm::write_shares_table(out, report);
    } else if (kind == "distributions") {
        cm::write_distributions_table(out, report);
    } else {
        throw cm::ParseError(0, "unknown plotdata kind '" + kind + "'");
    }
    emit(out_path, out.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pairwise conflict attribution metrics for agent trajectories"};
    app.require_subcommand(1);

    RunOverrides ov;
    std::string scenario_name, out_path, dump_path, csv_path, report_path, kind;

    CLI::App* run = app.add_subcommand("run", "simulate a catalog scenario and report shares");
    run->add_option("scenario", scenario_name, "catalog name or scenario config .json")->required();
    std::uint64_t seed_value = 1;
    int seeds_value = 0;
    double dt_value = 0, window_value = 0, radius_value = 0;
    CLI::Option* o_seed = run->add_option("--seed", seed_value, "base random seed");
    CLI::Option* o_seeds = run->add_option("--seeds", seeds_value, "run seeds 1..N")
                               ->check(CLI::PositiveNumber);
    CLI::Option* o_dt = run->add_option("--dt", dt_value, "simulation step, seconds")
                            ->check(CLI::PositiveNumber);
    CLI::Option* o_window = run->add_option("--window", window_value,
                                            "normalization window, seconds (default 12)")
                                ->check(CLI::PositiveNumber);
    CLI::Option* o_radius = run->add_option("--metric-radius", radius_value,
                                            "per-agent metric radius, meters")
                                ->check(CLI::PositiveNumber);
    run->add_flag("--weighted-aggregation", ov.weighted,
                  "weight distribution statistics by each interaction's total conflict");
    run->add_option("--out", out_path, "report path ('-' for stdout)");
    run->add_option("--dump-trajectories", dump_path, "also write the first run's trajectories");

    CLI::App* eval = app.add_subcommand("eval", "evaluate trajectories from a CSV file");
    eval->add_option("trajectories", csv_path, "trajectory CSV")->required();
    CLI::Option* e_window = eval->add_option("--window", window_value,
                                             "normalization window, seconds (default 12)")
                                 ->check(CLI::PositiveNumber);
    CLI::Option* e_radius = eval->add_option("--metric-radius", radius_value,
                                             "per-agent metric radius, meters")
                                 ->check(CLI::PositiveNumber);
    eval->add_option("--out", out_path, "report path ('-' for stdout)");

    CLI::App* plot = app.add_subcommand("plotdata", "emit plot-ready tables from a report");
    plot->add_option("report", report_path, "report JSON produced by run/eval")->required();
    plot->add_option("--kind", kind, "conflict_series | shares | distributions")->required();
    plot->add_option("--trajectories", dump_path, "trajectory dump (conflict_series only)");
    plot->add_option("--out", out_path, "output path ('-' for stdout)");

    CLI::App* list = app.add_subcommand("list-scenarios", "print catalog scenario names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*o_seed) ov.seed = seed_value;
        if (*o_seeds) ov.seeds = seeds_value;
        if (*o_dt) ov.dt = dt_value;
        if (*o_window || *e_window) ov.window = window_value;
        if (*o_radius || *e_radius) ov.metric_radius = radius_value;

        if (run->parsed()) return cmd_run(scenario_name, ov, out_path, dump_path);
        if (eval->parsed()) return cmd_eval(csv_path, ov, out_path);
        if (plot->parsed()) return cmd_plotdata(report_path, kind, dump_path, out_path);
        if (list->parsed()) {
            for (const std::string& name : cm::catalog_names()) std::cout << name << "\n";
            return kExitOk;
        }
        return kExitUsage;
    } catch (const cm::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
