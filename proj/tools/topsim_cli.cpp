// Command-line front end: one-shot ranking on snapshot files, scenario
// simulation, planner comparison, and timing sweeps. Human-readable tables
// go to stdout; machine CSVs go to the --out directory.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "topsim/topsim.hpp"

namespace fs = std::filesystem;
using namespace topsim;

namespace {

struct Overrides {
    std::optional<double> threshold;
    std::optional<double> interval;
    std::optional<std::string> planner;
    std::optional<std::uint64_t> seed;
    std::string out_dir{"."};
};

ControllerConfig controller_from(const Overrides& o, ControllerConfig base) {
    if (o.threshold) base.threshold = *o.threshold;
    if (o.interval) base.control_interval_s = *o.interval;
    if (o.planner) base.pipeline = planner_from_string(*o.planner);
    validate(base);
    return base;
}

void apply_overrides(Scenario& s, const Overrides& o) {
    s.controller = controller_from(o, s.controller);
    if (o.seed) s.sim.seed = *o.seed;
    validate(s);
}

void print_node_table(const NodeRanking& ranking) {
    std::printf("  %4s  %-12s %9s\n", "rank", "node", "score");
    int rank = 1;
    for (const ScoredNode& e : ranking.entries) {
        std::printf("  %4d  %-12s %9.2f\n", rank++, e.node_id.c_str(), e.score);
    }
}

int cmd_rank(const std::string& file, const Overrides& overrides) {
    const SnapshotFile snap = load_snapshot(file);
    ControllerConfig config = controller_from(overrides, ControllerConfig{});
    if (config.pipeline == Planner::none) {
        throw ValidationError("planner", "rank requires fuzzy, crisp, or sandpiper");
    }

    const NodeRanking ranking = rank_nodes(snap.nodes, config);
    std::printf("Level-1 node ranking (%s, threshold %.6g):\n",
                std::string(to_string(config.pipeline)).c_str(), config.threshold);
    print_node_table(ranking);

    const std::vector<std::string> hotspots = detect_hotspots(ranking, config);
    if (hotspots.empty()) {
        std::printf("No hotspot: all scores at or below %.6g.\n", config.threshold);
        return 0;
    }
    const std::string& hottest = hotspots.front();
    std::printf("Hotspot: %s\n", hottest.c_str());

    std::vector<VmSnapshot> host_vms;
    for (const VmSnapshot& vm : snap.vms) {
        if (vm.host_id == hottest) host_vms.push_back(vm);
    }
    if (host_vms.empty()) {
        std::printf("No VM data for %s; level-1 ranking only.\n", hottest.c_str());
        return 0;
    }

    std::printf("Level-2 VM ranking on %s:\n", hottest.c_str());
    if (config.pipeline == Planner::sandpiper) {
        std::vector<std::pair<std::string, double>> rows;
        for (const VmSnapshot& vm : host_vms) {
            rows.emplace_back(vm.vm_id, vsr(sandpiper_volume(vm.cpu_util, vm.net_util,
                                                             vm.ram_util),
                                            vm.ram_usage_gb));
        }
        std::stable_sort(rows.begin(), rows.end(),
                         [](const auto& a, const auto& b) { return a.second > b.second; });
        std::printf("  %4s  %-12s %9s\n", "rank", "vm", "vsr");
        int rank = 1;
        for (const auto& [id, key] : rows) {
            std::printf("  %4d  %-12s %9.3f\n", rank++, id.c_str(), key);
        }
    } else {
        const DecisionMatrix matrix = vm_decision_matrix(host_vms);
        const RankingResult result =
            config.pipeline == Planner::crisp ? rank_crisp(matrix) : rank_fuzzy(matrix);
        std::printf("  %4s  %-12s %9s\n", "rank", "vm", "score");
        int rank = 1;
        for (const std::string& id : result.order) {
            double score = 0.0;
            for (std::size_t i = 0; i < host_vms.size(); ++i) {
                if (matrix.alternatives()[i] == id) score = 100.0 * result.scores[i];
            }
            std::printf("  %4d  %-12s %9.2f\n", rank++, id.c_str(), score);
        }
    }

    const std::string victim_id = select_victim(hottest, snap.vms, config);
    const VmSnapshot* victim = nullptr;
    for (const VmSnapshot& vm : snap.vms) {
        if (vm.vm_id == victim_id) victim = &vm;
    }
    std::printf("Victim: %s\n", victim_id.c_str());
    const std::optional<std::string> dest =
        select_destination(ranking, *victim, snap.nodes, config);
    if (dest) {
        std::printf("Destination: %s\n", dest->c_str());
    } else {
        std::printf("Destination: none fits\n");
    }
    return 0;
}

void write_run_outputs(const fs::path& dir, const MetricsTrace& trace) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir.string());
    }
    write_trace_csv(dir / "trace.csv", trace);
    write_events_csv(dir / "events.csv", trace);
    write_cycles_csv(dir / "cycles.csv", trace);
}

void print_summary(const MetricsTrace& trace, const RunSummary& summary) {
    std::printf("Migrations: %zu", summary.migrations);
    for (const MigrationEvent& e : trace.events) {
        std::printf("  [%s: %s -> %s, %.6g GB, %.6g-%.6g s]", e.decision.vm_id.c_str(),
                    e.decision.source_node.c_str(), e.decision.destination_node.c_str(),
                    e.decision.transferred_gb, e.start_s, e.end_s);
    }
    std::printf("\n");
    if (summary.aborted > 0) {
        std::printf("Aborted migrations: %zu\n", summary.aborted);
        for (const AbortedMigration& a : trace.aborted) {
            std::printf("  [%s at t=%.6g: %s]\n", a.decision.vm_id.c_str(), a.at_s,
                        a.reason.c_str());
        }
    }
    std::printf("Total moved: %.6g GB\n", summary.total_gb_moved);
    std::printf("Peak unbalance factor: %.6g\n", summary.peak_unbalance);
    std::printf("Mean response proxy: %.6g ms\n", summary.mean_response_ms);
    std::printf("Hotspot dwell: %.6g s\n", summary.hotspot_dwell_s);
    std::printf("Peak node scores:");
    for (const auto& [id, score] : summary.peak_scores) {
        std::printf(" %s=%.2f", id.c_str(), score);
    }
    std::printf("\n");
    if (summary.residual_cycles > 0) {
        std::printf("Residual hotspot cycles: %zu\n", summary.residual_cycles);
    }
    for (const std::string& w : trace.warnings) {
        std::printf("Warning: %s\n", w.c_str());
    }
}

int cmd_simulate(const std::string& file, const Overrides& overrides) {
    Scenario scenario = load_scenario(file);
    apply_overrides(scenario, overrides);

    Simulation sim(scenario);
    sim.run();
    const MetricsTrace& trace = sim.trace();
    write_run_outputs(overrides.out_dir, trace);

    const RunSummary summary =
        summarize(trace, scenario.controller.threshold, scenario.sim.tick_s);
    std::printf("Planner: %s\n", std::string(to_string(scenario.controller.pipeline)).c_str());
    print_summary(trace, summary);
    return summary.residual_cycles > 0 ? 1 : 0;
}

int cmd_compare(const std::string& file, const Overrides& overrides) {
    Scenario base = load_scenario(file);
    apply_overrides(base, overrides);

    std::vector<Planner> planners;
    if (overrides.planner) {
        planners.push_back(planner_from_string(*overrides.planner));
    } else {
        planners = {Planner::fuzzy, Planner::crisp, Planner::sandpiper, Planner::none};
    }

    std::printf("%-10s %11s %9s %10s %10s %9s %9s\n", "planner", "migrations", "gb_moved",
                "peak_unb", "mean_unb", "dwell_s", "residual");
    for (Planner p : planners) {
        Scenario scenario = base;
        scenario.controller.pipeline = p;
        Simulation sim(scenario);
        sim.run();
        const MetricsTrace& trace = sim.trace();
        const std::string name(to_string(p));
        write_run_outputs(fs::path(overrides.out_dir) / name, trace);
        const RunSummary s = summarize(trace, scenario.controller.threshold,
                                       scenario.sim.tick_s);
        std::printf("%-10s %11zu %9.4g %10.4g %10.4g %9.4g %9zu\n", name.c_str(),
                    s.migrations, s.total_gb_moved, s.peak_unbalance, s.mean_unbalance,
                    s.hotspot_dwell_s, s.residual_cycles);
    }
    return 0;
}

int cmd_bench(const std::vector<std::size_t>& sizes, std::size_t nodes, std::size_t reps,
              const Overrides& overrides) {
    if (reps < 3) {
        throw ValidationError("reps", "must be >= 3");
    }
    if (sizes.empty()) {
        throw ValidationError("sizes", "must not be empty");
    }
    for (std::size_t s : sizes) {
        if (s < 1) throw ValidationError("sizes", "entries must be >= 1");
    }
    if (nodes < 1) {
        throw ValidationError("nodes", "must be >= 1");
    }
    Planner pipeline = Planner::fuzzy;
    if (overrides.planner) pipeline = planner_from_string(*overrides.planner);
    if (pipeline == Planner::none) {
        throw ValidationError("planner", "bench requires fuzzy, crisp, or sandpiper");
    }
    const std::uint64_t seed = overrides.seed.value_or(1);

    std::vector<TimingRow> rows;
    std::printf("%8s %8s %12s %12s %12s\n", "nodes", "vms", "median_ms", "min_ms", "max_ms");
    for (std::size_t total : sizes) {
        const std::size_t per_node = std::max<std::size_t>(1, total / nodes);
        const TimingRow row = planner_timing(nodes, per_node, reps, pipeline, seed);
        std::printf("%8zu %8zu %12.4f %12.4f %12.4f\n", row.node_count, row.vm_count,
                    row.median_ms, row.min_ms, row.max_ms);
        rows.push_back(row);
    }
    std::error_code ec;
    fs::create_directories(overrides.out_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + overrides.out_dir);
    }
    write_timing_csv(fs::path(overrides.out_dir) / "timing.csv", rows);
    return 0;
}

void add_override_flags(CLI::App* cmd, Overrides& o, bool with_seed = true) {
    cmd->add_option("--threshold", o.threshold, "Hotspot threshold on the 0-100 score scale")
        ->check(CLI::Range(0.0, 100.0))
        ->envname("TOPSIM_THRESHOLD");
    cmd->add_option("--interval", o.interval, "Control interval in seconds")
        ->check(CLI::PositiveNumber)
        ->envname("TOPSIM_INTERVAL");
    cmd->add_option("--planner", o.planner, "fuzzy | crisp | sandpiper | none")
        ->check(CLI::IsMember({"fuzzy", "crisp", "sandpiper", "none"}))
        ->envname("TOPSIM_PLANNER");
    if (with_seed) {
        cmd->add_option("--seed", o.seed, "Seed for synthetic inputs")
            ->envname("TOPSIM_SEED");
    }
    cmd->add_option("--out", o.out_dir, "Output directory for CSV files")
        ->envname("TOPSIM_OUT");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-level TOPSIS migration planner and cluster simulator"};
    app.require_subcommand(1);

    Overrides overrides;
    std::string input_file;

    CLI::App* rank = app.add_subcommand("rank", "Rank a frozen cluster snapshot");
    rank->add_option("snapshot", input_file, "Snapshot JSON file")->required();
    add_override_flags(rank, overrides, false);

    CLI::App* simulate = app.add_subcommand("simulate", "Run a scenario and export traces");
    simulate->add_option("scenario", input_file, "Scenario JSON file")->required();
    add_override_flags(simulate, overrides);

    CLI::App* compare = app.add_subcommand("compare", "Run a scenario once per planner");
    compare->add_option("scenario", input_file, "Scenario JSON file")->required();
    add_override_flags(compare, overrides);

    CLI::App* bench = app.add_subcommand("bench", "Time full two-level decisions");
    std::vector<std::size_t> sizes{250, 500, 1000, 2000};
    std::size_t bench_nodes = 50;
    std::size_t bench_reps = 9;
    bench->add_option("--sizes", sizes, "Total VM counts to time")->delimiter(',');
    bench->add_option("--nodes", bench_nodes, "Node count for the synthetic cluster");
    bench->add_option("--reps", bench_reps, "Repetitions per size");
    add_override_flags(bench, overrides);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (rank->parsed()) return cmd_rank(input_file, overrides);
        if (simulate->parsed()) return cmd_simulate(input_file, overrides);
        if (compare->parsed()) return cmd_compare(input_file, overrides);
        if (bench->parsed()) return cmd_bench(sizes, bench_nodes, bench_reps, overrides);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateColumnError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
