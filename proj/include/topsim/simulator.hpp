#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topsim/cluster.hpp"
#include "topsim/controller.hpp"
#include "topsim/error.hpp"
#include "topsim/fuzzy.hpp"

namespace topsim {

/// Per-resource demand. CPU is stored in normalized GHz and becomes a
/// utilization only relative to a host clock; RAM and NET are plain
/// fractions of whatever host the VM runs on.
struct ResourceDemand {
    double cpu{0.0};
    double ram{0.0};
    double net{0.0};
};

/// A VM's load over time: a constant baseline plus at most one triangular
/// bump (linear up, linear down) centered at peak_time_s.
struct WorkloadProfile {
    ResourceDemand baseline;
    std::optional<double> peak_time_s;
    ResourceDemand peak_magnitude;
    double peak_width_s{120.0};  ///< full width of the bump
};

inline void validate(const WorkloadProfile& p) {
    const auto check = [](double base, double mag, const char* what) {
        if (!(base >= 0.0) || !std::isfinite(base)) {
            throw std::invalid_argument(std::string("WorkloadProfile: baseline ") + what +
                                        " must be finite and >= 0");
        }
        if (!(mag >= 0.0) || !std::isfinite(mag)) {
            throw std::invalid_argument(std::string("WorkloadProfile: peak magnitude ") + what +
                                        " must be finite and >= 0");
        }
        if (base + mag > 1.5) {
            throw std::invalid_argument(std::string("WorkloadProfile: baseline + peak ") + what +
                                        " exceeds 1.5");
        }
    };
    check(p.baseline.cpu, p.peak_magnitude.cpu, "cpu");
    check(p.baseline.ram, p.peak_magnitude.ram, "ram");
    check(p.baseline.net, p.peak_magnitude.net, "net");
    if (p.peak_time_s) {
        if (!(*p.peak_time_s >= 0.0)) {
            throw std::invalid_argument("WorkloadProfile: peak_time_s must be >= 0");
        }
        if (!(p.peak_width_s > 0.0)) {
            throw std::invalid_argument("WorkloadProfile: peak_width_s must be > 0");
        }
    }
}

/// Demand at time t: baseline outside the bump, baseline + magnitude at the
/// apex, linear in between.
inline ResourceDemand demand_at(const WorkloadProfile& p, double t) {
    if (!(t >= 0.0)) {
        throw std::invalid_argument("demand_at: t must be >= 0");
    }
    ResourceDemand d = p.baseline;
    if (p.peak_time_s) {
        const double half = p.peak_width_s / 2.0;
        const double dist = std::abs(t - *p.peak_time_s);
        if (dist < half) {
            const double scale = 1.0 - dist / half;
            d.cpu += p.peak_magnitude.cpu * scale;
            d.ram += p.peak_magnitude.ram * scale;
            d.net += p.peak_magnitude.net * scale;
        }
    }
    return d;
}

struct NodeSpec {
    std::string id;
    double cpu_clock_ghz{1.0};
    double ram_gb{1.0};
    double net_bw_mbps{1000.0};
    Tfn temperature{0.0, 0.0, 0.0};
    int vm_slots{8};  ///< nominal capacity used to quantize the VM count
};

struct VmSpec {
    std::string id;
    std::string host;
    double ram_mb{128.0};  ///< memory footprint, the quantity a migration copies
    LinguisticRank qos{LinguisticRank::medium};
    WorkloadProfile profile;
};

struct SimConfig {
    double tick_s{1.0};
    double duration_s{0.0};
    double migration_bandwidth_gbps{1.0};
    std::uint64_t seed{0};
    double response_base_ms{10.0};
    double response_epsilon{0.02};
};

struct Scenario {
    std::vector<NodeSpec> nodes;
    std::vector<VmSpec> vms;
    ControllerConfig controller;
    SimConfig sim;
};

inline void validate(const Scenario& s) {
    if (s.nodes.empty()) {
        throw ValidationError("nodes", "must not be empty");
    }
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
        const NodeSpec& n = s.nodes[i];
        const std::string base = "nodes[" + std::to_string(i) + "]";
        if (n.id.empty()) throw ValidationError(base + ".id", "must not be empty");
        for (std::size_t j = 0; j < i; ++j) {
            if (s.nodes[j].id == n.id) throw ValidationError(base + ".id", "duplicate id '" + n.id + "'");
        }
        if (!(n.cpu_clock_ghz > 0.0)) throw ValidationError(base + ".cpu_clock_ghz", "must be > 0");
        if (!(n.ram_gb > 0.0)) throw ValidationError(base + ".ram_gb", "must be > 0");
        if (!(n.net_bw_mbps > 0.0)) throw ValidationError(base + ".net_bw_mbps", "must be > 0");
        if (!(n.temperature.a >= 0.0)) throw ValidationError(base + ".temperature", "must be nonnegative");
        if (n.vm_slots < 1) throw ValidationError(base + ".vm_slots", "must be >= 1");
    }
    for (std::size_t i = 0; i < s.vms.size(); ++i) {
        const VmSpec& vm = s.vms[i];
        const std::string base = "vms[" + std::to_string(i) + "]";
        if (vm.id.empty()) throw ValidationError(base + ".id", "must not be empty");
        for (std::size_t j = 0; j < i; ++j) {
            if (s.vms[j].id == vm.id) throw ValidationError(base + ".id", "duplicate id '" + vm.id + "'");
        }
        const bool host_known = std::any_of(s.nodes.begin(), s.nodes.end(),
                                            [&](const NodeSpec& n) { return n.id == vm.host; });
        if (!host_known) throw ValidationError(base + ".host", "unknown node '" + vm.host + "'");
        if (!(vm.ram_mb > 0.0)) throw ValidationError(base + ".ram_mb", "must be > 0");
        try {
            validate(vm.profile);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(base + ".profile", e.what());
        }
    }
    for (const NodeSpec& n : s.nodes) {
        double placed_gb = 0.0;
        for (const VmSpec& vm : s.vms) {
            if (vm.host == n.id) placed_gb += vm.ram_mb / 1024.0;
        }
        if (placed_gb > n.ram_gb) {
            throw ValidationError("vms", "initial placement exceeds RAM of node '" + n.id + "'");
        }
    }
    if (!(s.controller.threshold > 0.0 && s.controller.threshold <= 100.0)) {
        throw ValidationError("controller.threshold", "must be in (0, 100]");
    }
    if (!(s.controller.control_interval_s > 0.0)) {
        throw ValidationError("controller.interval_s", "must be > 0");
    }
    if (!(s.sim.tick_s > 0.0)) {
        throw ValidationError("sim.tick_s", "must be > 0");
    }
    if (s.sim.tick_s > s.controller.control_interval_s) {
        throw ValidationError("sim.tick_s", "must not exceed controller.interval_s");
    }
    if (!(s.sim.duration_s >= 0.0)) {
        throw ValidationError("sim.duration_s", "must be >= 0");
    }
    if (!(s.sim.migration_bandwidth_gbps > 0.0)) {
        throw ValidationError("sim.migration_bandwidth_gbps", "must be > 0");
    }
    if (!(s.sim.response_base_ms > 0.0)) {
        throw ValidationError("sim.response_base_ms", "must be > 0");
    }
    if (!(s.sim.response_epsilon > 0.0 && s.sim.response_epsilon < 1.0)) {
        throw ValidationError("sim.response_epsilon", "must be in (0, 1)");
    }
}

/// Coefficient of variation of the node scores; 0 means perfect balance.
inline double unbalance_factor(std::span<const double> node_scores) {
    if (node_scores.empty()) {
        throw std::invalid_argument("unbalance_factor: empty score list");
    }
    const double mean = std::accumulate(node_scores.begin(), node_scores.end(), 0.0) /
                        static_cast<double>(node_scores.size());
    if (mean <= 0.0) {
        return 0.0;
    }
    double var = 0.0;
    for (double x : node_scores) {
        var += (x - mean) * (x - mean);
    }
    var /= static_cast<double>(node_scores.size());
    return std::sqrt(var) / mean;
}

/// Synthetic stand-in for request latency: base_ms / max(eps, 1 - u).
inline double response_time_proxy(double cpu_util, double base_ms = 10.0, double epsilon = 0.02) {
    if (!(cpu_util >= 0.0 && cpu_util <= 1.0)) {
        throw std::invalid_argument("response_time_proxy: cpu_util must be in [0, 1]");
    }
    if (!(base_ms > 0.0) || !(epsilon > 0.0)) {
        throw std::invalid_argument("response_time_proxy: base_ms and epsilon must be > 0");
    }
    return base_ms / std::max(epsilon, 1.0 - cpu_util);
}

struct NodeSample {
    double cpu_util{0.0};
    double ram_util{0.0};
    double net_util{0.0};
    double score{0.0};
    double response_ms{0.0};
};

struct TraceRow {
    double t{0.0};
    std::vector<NodeSample> nodes;  ///< aligned with MetricsTrace::node_ids
    double unbalance{0.0};
    std::size_t in_flight{0};
};

struct MigrationEvent {
    MigrationDecision decision;
    double start_s{0.0};
    double end_s{0.0};
};

struct AbortedMigration {
    MigrationDecision decision;
    double at_s{0.0};
    std::string reason;
};

struct CycleStat {
    double t{0.0};
    std::int64_t planner_ns{0};
    std::size_t decision_count{0};
    std::vector<std::string> residual_hotspots;
};

struct MetricsTrace {
    std::vector<std::string> node_ids;
    std::vector<TraceRow> rows;
    std::vector<MigrationEvent> events;
    std::vector<AbortedMigration> aborted;
    std::vector<CycleStat> cycles;
    std::vector<std::string> warnings;
};

/// Discrete-time engine. Per tick: transfers scheduled for this tick start,
/// transfers past their end complete (the VM's demands switch hosts
/// atomically), demands are recomputed and aggregated, a trace row is
/// recorded, and on control-interval boundaries the planner runs on fresh
/// snapshots. Planner decisions take effect at the next tick.
class Simulation {
  public:
    explicit Simulation(Scenario scenario) : scenario_(std::move(scenario)) {
        validate(scenario_);
        score_pipeline_ = scenario_.controller.pipeline == Planner::none
                              ? Planner::fuzzy
                              : scenario_.controller.pipeline;
        trace_.node_ids.reserve(scenario_.nodes.size());
        for (const NodeSpec& n : scenario_.nodes) {
            trace_.node_ids.push_back(n.id);
        }
        vm_host_.resize(scenario_.vms.size());
        vm_committed_.assign(scenario_.vms.size(), false);
        hosted_gb_.assign(scenario_.nodes.size(), 0.0);
        reserved_gb_.assign(scenario_.nodes.size(), 0.0);
        for (std::size_t i = 0; i < scenario_.vms.size(); ++i) {
            vm_host_[i] = node_index(scenario_.vms[i].host);
            hosted_gb_[vm_host_[i]] += footprint_gb(i);
        }
        demand_.resize(scenario_.vms.size());
        cpu_util_.assign(scenario_.nodes.size(), 0.0);
        ram_util_.assign(scenario_.nodes.size(), 0.0);
        net_util_.assign(scenario_.nodes.size(), 0.0);
    }

    const Scenario& scenario() const { return scenario_; }
    const MetricsTrace& trace() const { return trace_; }

    /// Advances through every tick from 0 to duration inclusive.
    void run() {
        const double tick = scenario_.sim.tick_s;
        for (std::size_t k = 0;; ++k) {
            const double t = static_cast<double>(k) * tick;
            if (t > scenario_.sim.duration_s + tick * 1e-9) {
                break;
            }
            step(t);
        }
    }

    /// One tick; t must advance along the tick grid.
    void step(double t) {
        start_transfers(t);
        complete_transfers(t);
        sample(t);
        maybe_plan(t);
    }

    /// Snapshots of the state as of the last sampled tick.
    std::vector<NodeSnapshot> node_snapshots() const {
        std::vector<NodeSnapshot> out;
        out.reserve(scenario_.nodes.size());
        for (std::size_t i = 0; i < scenario_.nodes.size(); ++i) {
            const NodeSpec& spec = scenario_.nodes[i];
            int count = 0;
            for (std::size_t v = 0; v < vm_host_.size(); ++v) {
                if (vm_host_[v] == i) ++count;
            }
            NodeSnapshot n;
            n.node_id = spec.id;
            n.cpu_util = cpu_util_[i];
            n.ram_util = ram_util_[i];
            n.net_util = net_util_[i];
            n.vm_count = vm_count_rank(count, spec.vm_slots);
            n.cpu_clock_ghz = spec.cpu_clock_ghz;
            n.net_bw_mbps = spec.net_bw_mbps;
            n.temperature = spec.temperature;
            n.ram_capacity_gb = spec.ram_gb;
            n.ram_free_gb = std::max(0.0, spec.ram_gb - hosted_gb_[i] - reserved_gb_[i]);
            out.push_back(std::move(n));
        }
        return out;
    }

    /// Current host of every VM, committed or not. A VM in flight stays on
    /// its source until the transfer completes.
    std::vector<std::pair<std::string, std::string>> placement() const {
        std::vector<std::pair<std::string, std::string>> out;
        out.reserve(scenario_.vms.size());
        for (std::size_t v = 0; v < scenario_.vms.size(); ++v) {
            out.emplace_back(scenario_.vms[v].id, scenario_.nodes[vm_host_[v]].id);
        }
        return out;
    }

    /// VM snapshots for the planner; VMs already committed to a move are
    /// withheld so they cannot be picked twice.
    std::vector<VmSnapshot> vm_snapshots() const {
        std::vector<VmSnapshot> out;
        for (std::size_t v = 0; v < scenario_.vms.size(); ++v) {
            if (vm_committed_[v]) continue;
            const VmSpec& spec = scenario_.vms[v];
            const NodeSpec& host = scenario_.nodes[vm_host_[v]];
            VmSnapshot s;
            s.vm_id = spec.id;
            s.host_id = host.id;
            s.cpu_util = std::clamp(demand_[v].cpu / host.cpu_clock_ghz, 0.0, 1.0);
            s.ram_util = std::clamp(demand_[v].ram, 0.0, 1.0);
            s.net_util = std::clamp(demand_[v].net, 0.0, 1.0);
            s.ram_usage_gb = footprint_gb(v);
            s.qos = spec.qos;
            out.push_back(std::move(s));
        }
        return out;
    }

  private:
    struct Transfer {
        std::size_t vm_index{0};
        std::size_t src{0};
        std::size_t dst{0};
        MigrationDecision decision;
        double start_s{0.0};
        double end_s{0.0};
        bool started{false};
    };

    std::size_t node_index(const std::string& id) const {
        for (std::size_t i = 0; i < scenario_.nodes.size(); ++i) {
            if (scenario_.nodes[i].id == id) return i;
        }
        throw std::invalid_argument("unknown node '" + id + "'");
    }

    double footprint_gb(std::size_t vm_index) const {
        return scenario_.vms[vm_index].ram_mb / 1024.0;
    }

    void start_transfers(double t) {
        for (Transfer& tr : transfers_) {
            if (tr.started || tr.start_s > t + 1e-9) continue;
            const double fp = footprint_gb(tr.vm_index);
            const double free =
                scenario_.nodes[tr.dst].ram_gb - hosted_gb_[tr.dst] - reserved_gb_[tr.dst];
            if (free + 1e-12 < fp) {
                trace_.aborted.push_back(
                    {tr.decision, t, "destination RAM no longer free"});
                vm_committed_[tr.vm_index] = false;
                tr.started = true;
                tr.end_s = t;  // dead entry, swept below
                tr.vm_index = SIZE_MAX;
                continue;
            }
            reserved_gb_[tr.dst] += fp;
            tr.started = true;
            trace_.events.push_back({tr.decision, tr.start_s, tr.end_s});
        }
    }

    void complete_transfers(double t) {
        std::vector<Transfer> keep;
        keep.reserve(transfers_.size());
        for (Transfer& tr : transfers_) {
            if (!tr.started || tr.end_s > t + 1e-9) {
                keep.push_back(tr);
                continue;
            }
            if (tr.vm_index == SIZE_MAX) continue;  // aborted at start
            const double fp = footprint_gb(tr.vm_index);
            hosted_gb_[tr.src] -= fp;
            hosted_gb_[tr.dst] += fp;
            reserved_gb_[tr.dst] -= fp;
            vm_host_[tr.vm_index] = tr.dst;
            vm_committed_[tr.vm_index] = false;
        }
        transfers_ = std::move(keep);
    }

    void sample(double t) {
        std::fill(cpu_util_.begin(), cpu_util_.end(), 0.0);
        std::fill(ram_util_.begin(), ram_util_.end(), 0.0);
        std::fill(net_util_.begin(), net_util_.end(), 0.0);
        for (std::size_t v = 0; v < scenario_.vms.size(); ++v) {
            demand_[v] = demand_at(scenario_.vms[v].profile, t);
            const std::size_t host = vm_host_[v];
            cpu_util_[host] += demand_[v].cpu;
            ram_util_[host] += demand_[v].ram;
            net_util_[host] += demand_[v].net;
        }
        std::size_t in_flight = 0;
        for (const Transfer& tr : transfers_) {
            if (!tr.started || tr.vm_index == SIZE_MAX || tr.end_s <= t + 1e-9) continue;
            ++in_flight;
            const double load_mbps = scenario_.sim.migration_bandwidth_gbps * 1000.0;
            net_util_[tr.src] += load_mbps / scenario_.nodes[tr.src].net_bw_mbps;
            net_util_[tr.dst] += load_mbps / scenario_.nodes[tr.dst].net_bw_mbps;
        }
        for (std::size_t i = 0; i < scenario_.nodes.size(); ++i) {
            cpu_util_[i] = std::clamp(cpu_util_[i] / scenario_.nodes[i].cpu_clock_ghz, 0.0, 1.0);
            ram_util_[i] = std::clamp(ram_util_[i], 0.0, 1.0);
            net_util_[i] = std::clamp(net_util_[i], 0.0, 1.0);
        }

        const std::vector<NodeSnapshot> nodes = node_snapshots();
        std::vector<double> scores;
        try {
            bool degenerate = false;
            scores = detail::node_scores(nodes, score_pipeline_, degenerate);
        } catch (const DegenerateColumnError& e) {
            scores.assign(nodes.size(), 50.0);
            char buf[160];
            std::snprintf(buf, sizeof(buf), "t=%.10g: scoring degenerate on criterion %s",
                          t, e.criterion().c_str());
            trace_.warnings.push_back(buf);
        }

        TraceRow row;
        row.t = t;
        row.unbalance = unbalance_factor(scores);
        row.in_flight = in_flight;
        row.nodes.reserve(nodes.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            row.nodes.push_back({cpu_util_[i], ram_util_[i], net_util_[i], scores[i],
                                 response_time_proxy(cpu_util_[i], scenario_.sim.response_base_ms,
                                                     scenario_.sim.response_epsilon)});
        }
        trace_.rows.push_back(std::move(row));
    }

    void maybe_plan(double t) {
        if (t + 1e-9 < next_cycle_s_) return;
        next_cycle_s_ += scenario_.controller.control_interval_s;
        if (scenario_.controller.pipeline == Planner::none) return;

        const std::vector<NodeSnapshot> nodes = node_snapshots();
        const std::vector<VmSnapshot> vms = vm_snapshots();
        PlanOutcome outcome;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            outcome = plan(nodes, vms, scenario_.controller, t);
        } catch (const DegenerateColumnError& e) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "t=%.10g: planner skipped, degenerate criterion %s",
                          t, e.criterion().c_str());
            trace_.warnings.push_back(buf);
            return;
        }
        const auto t1 = std::chrono::steady_clock::now();
        CycleStat stat;
        stat.t = t;
        stat.planner_ns =
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();
        stat.decision_count = outcome.decisions.size();
        stat.residual_hotspots = outcome.residual_hotspots;
        trace_.cycles.push_back(std::move(stat));

        for (const MigrationDecision& d : outcome.decisions) {
            Transfer tr;
            std::size_t vm_index = SIZE_MAX;
            for (std::size_t v = 0; v < scenario_.vms.size(); ++v) {
                if (scenario_.vms[v].id == d.vm_id) {
                    vm_index = v;
                    break;
                }
            }
            tr.vm_index = vm_index;
            tr.src = node_index(d.source_node);
            tr.dst = node_index(d.destination_node);
            tr.decision = d;
            tr.start_s = t + scenario_.sim.tick_s;
            tr.end_s = tr.start_s +
                       d.transferred_gb * 8.0 / scenario_.sim.migration_bandwidth_gbps;
            vm_committed_[vm_index] = true;
            transfers_.push_back(std::move(tr));
        }
    }

    Scenario scenario_;
    Planner score_pipeline_{Planner::fuzzy};
    MetricsTrace trace_;
    std::vector<std::size_t> vm_host_;
    std::vector<bool> vm_committed_;
    std::vector<double> hosted_gb_;
    std::vector<double> reserved_gb_;
    std::vector<ResourceDemand> demand_;
    std::vector<double> cpu_util_;
    std::vector<double> ram_util_;
    std::vector<double> net_util_;
    std::vector<Transfer> transfers_;
    double next_cycle_s_{0.0};
};

inline MetricsTrace run(const Scenario& scenario) {
    Simulation sim(scenario);
    sim.run();
    return sim.trace();
}

struct RunSummary {
    std::size_t migrations{0};
    std::size_t aborted{0};
    double total_gb_moved{0.0};
    double peak_unbalance{0.0};
    double mean_unbalance{0.0};
    double mean_response_ms{0.0};
    double hotspot_dwell_s{0.0};  ///< total time any node scored above threshold
    std::size_t residual_cycles{0};
    std::vector<std::pair<std::string, double>> peak_scores;  ///< per node
};

inline RunSummary summarize(const MetricsTrace& trace, double threshold, double tick_s) {
    RunSummary s;
    s.migrations = trace.events.size();
    s.aborted = trace.aborted.size();
    for (const MigrationEvent& e : trace.events) {
        s.total_gb_moved += e.decision.transferred_gb;
    }
    for (const CycleStat& c : trace.cycles) {
        if (!c.residual_hotspots.empty()) ++s.residual_cycles;
    }
    s.peak_scores.reserve(trace.node_ids.size());
    for (const std::string& id : trace.node_ids) {
        s.peak_scores.emplace_back(id, 0.0);
    }
    double response_sum = 0.0;
    std::size_t response_count = 0;
    for (const TraceRow& row : trace.rows) {
        s.peak_unbalance = std::max(s.peak_unbalance, row.unbalance);
        s.mean_unbalance += row.unbalance;
        bool any_hot = false;
        for (std::size_t i = 0; i < row.nodes.size(); ++i) {
            s.peak_scores[i].second = std::max(s.peak_scores[i].second, row.nodes[i].score);
            if (row.nodes[i].score > threshold) any_hot = true;
            response_sum += row.nodes[i].response_ms;
            ++response_count;
        }
        if (any_hot) s.hotspot_dwell_s += tick_s;
    }
    if (!trace.rows.empty()) {
        s.mean_unbalance /= static_cast<double>(trace.rows.size());
    }
    if (response_count > 0) {
        s.mean_response_ms = response_sum / static_cast<double>(response_count);
    }
    return s;
}

struct TimingRow {
    std::size_t node_count{0};
    std::size_t vm_count{0};
    double median_ms{0.0};
    double min_ms{0.0};
    double max_ms{0.0};
};

namespace detail {

/// Deterministic synthetic cluster for timing runs: a quarter of the nodes
/// run hot so the full two-level path (victim ranking, destination search)
/// is exercised, the rest sit in the comfortable band.
inline std::pair<std::vector<NodeSnapshot>, std::vector<VmSnapshot>> synthetic_cluster(
    std::size_t n_nodes, std::size_t n_vms_per_node, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> clock(1.6, 3.4);
    std::uniform_real_distribution<double> bw(1000.0, 10000.0);
    std::uniform_real_distribution<double> temp(35.0, 75.0);
    std::uniform_real_distribution<double> hot(0.80, 0.95);
    std::uniform_real_distribution<double> cold(0.05, 0.55);
    std::uniform_real_distribution<double> vm_util(0.02, 0.95);
    std::uniform_real_distribution<double> footprint(0.125, 1.0);

    std::vector<NodeSnapshot> nodes;
    std::vector<VmSnapshot> vms;
    nodes.reserve(n_nodes);
    vms.reserve(n_nodes * n_vms_per_node);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const bool is_hot = i % 4 == 0;
        NodeSnapshot n;
        n.node_id = "node" + std::to_string(i);
        n.cpu_util = is_hot ? hot(rng) : cold(rng);
        n.ram_util = cold(rng);
        n.net_util = cold(rng);
        n.vm_count = vm_count_rank(static_cast<int>(n_vms_per_node),
                                   static_cast<int>(2 * n_vms_per_node));
        n.cpu_clock_ghz = clock(rng);
        n.net_bw_mbps = bw(rng);
        const double tm = temp(rng);
        n.temperature = Tfn{tm - 10.0, tm, tm + 10.0};
        n.ram_capacity_gb = 4.0 + 2.0 * static_cast<double>(n_vms_per_node) * 0.5;
        double hosted = 0.0;
        for (std::size_t v = 0; v < n_vms_per_node; ++v) {
            VmSnapshot s;
            s.vm_id = "vm" + std::to_string(i * n_vms_per_node + v);
            s.host_id = n.node_id;
            s.cpu_util = vm_util(rng) * (is_hot ? 1.0 : 0.5);
            s.ram_util = vm_util(rng) * 0.4;
            s.net_util = vm_util(rng) * 0.4;
            s.ram_usage_gb = footprint(rng);
            s.qos = static_cast<LinguisticRank>(rng() % kLinguisticLevels);
            hosted += s.ram_usage_gb;
            vms.push_back(std::move(s));
        }
        n.ram_capacity_gb = std::max(n.ram_capacity_gb, hosted * 1.5);
        n.ram_free_gb = n.ram_capacity_gb - hosted;
        nodes.push_back(std::move(n));
    }
    return {std::move(nodes), std::move(vms)};
}

}  // namespace detail

/// Times a full two-level decision (rank, victims, destinations) over a
/// synthetic cluster. Snapshots are generated once per (size, seed), so the
/// plan itself is identical across repetitions; only the clock varies.
inline TimingRow planner_timing(std::size_t n_nodes, std::size_t n_vms_per_node,
                                std::size_t repetitions, Planner pipeline = Planner::fuzzy,
                                std::uint64_t seed = 1) {
    if (repetitions < 3) {
        throw std::invalid_argument("planner_timing: repetitions must be >= 3");
    }
    if (n_nodes < 1 || n_vms_per_node < 1) {
        throw std::invalid_argument("planner_timing: sizes must be >= 1");
    }
    auto [nodes, vms] = detail::synthetic_cluster(n_nodes, n_vms_per_node, seed);
    ControllerConfig config;
    config.pipeline = pipeline == Planner::none ? Planner::fuzzy : pipeline;

    std::vector<double> samples;
    samples.reserve(repetitions);
    for (std::size_t r = 0; r < repetitions; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const PlanOutcome outcome = plan(nodes, vms, config, 0.0);
        const auto t1 = std::chrono::steady_clock::now();
        (void)outcome;
        samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(samples.begin(), samples.end());
    TimingRow row;
    row.node_count = n_nodes;
    row.vm_count = n_nodes * n_vms_per_node;
    row.min_ms = samples.front();
    row.max_ms = samples.back();
    const std::size_t mid = samples.size() / 2;
    row.median_ms = samples.size() % 2 == 1
                        ? samples[mid]
                        : 0.5 * (samples[mid - 1] + samples[mid]);
    return row;
}

}  // namespace topsim
