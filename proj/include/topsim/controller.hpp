#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "topsim/cluster.hpp"
#include "topsim/error.hpp"
#include "topsim/topsis.hpp"

namespace topsim {

/// Decision pipeline used by the controller. `none` disables planning and
/// is only meaningful for the simulator's no-balancing runs.
enum class Planner { fuzzy, crisp, sandpiper, none };

inline std::string_view to_string(Planner p) {
    switch (p) {
        case Planner::fuzzy: return "fuzzy";
        case Planner::crisp: return "crisp";
        case Planner::sandpiper: return "sandpiper";
        case Planner::none: return "none";
    }
    return "?";
}

inline Planner planner_from_string(std::string_view text) {
    if (text == "fuzzy") return Planner::fuzzy;
    if (text == "crisp") return Planner::crisp;
    if (text == "sandpiper") return Planner::sandpiper;
    if (text == "none") return Planner::none;
    throw std::invalid_argument("unknown planner: " + std::string(text));
}

struct ControllerConfig {
    double threshold{75.0};          ///< hotspot threshold on the 0-100 score scale
    double control_interval_s{180.0};
    Planner pipeline{Planner::fuzzy};
};

inline void validate(const ControllerConfig& config) {
    if (!(config.threshold > 0.0 && config.threshold <= 100.0)) {
        throw std::invalid_argument("ControllerConfig: threshold must be in (0, 100]");
    }
    if (!(config.control_interval_s > 0.0)) {
        throw std::invalid_argument("ControllerConfig: control_interval_s must be > 0");
    }
}

/// One planned move. transferred_gb equals the VM's memory footprint,
/// which is what live migration actually copies.
struct MigrationDecision {
    std::string vm_id;
    std::string source_node;
    std::string destination_node;
    double source_score_before{0.0};  ///< 0-100
    double trigger_time_s{0.0};
    double transferred_gb{0.0};
};

struct ScoredNode {
    std::string node_id;
    double score{0.0};  ///< 0-100
};

/// Level-1 output: nodes from most to least endangered.
struct NodeRanking {
    std::vector<ScoredNode> entries;  ///< sorted by descending score, stable
    bool degenerate{false};

    std::optional<double> score_of(const std::string& node_id) const {
        for (const auto& e : entries) {
            if (e.node_id == node_id) return e.score;
        }
        return std::nullopt;
    }
};

/// Decisions made this cycle plus any hotspot left standing because no
/// placement existed for it.
struct PlanOutcome {
    std::vector<MigrationDecision> decisions;
    std::vector<std::string> residual_hotspots;  ///< descending final score
};

namespace detail {

inline bool node_saturated(const NodeSnapshot& n) {
    return n.cpu_util >= 1.0 || n.net_util >= 1.0 || n.ram_util >= 1.0;
}

/// Volume mapped onto 0-100: 100 * (1 - 1/vol). Monotone in the volume, so
/// ordering by score equals ordering by volume, and a single resource at
/// utilization u crosses score 100*u exactly. Saturated nodes sit at the
/// supremum 100.
inline double sandpiper_node_score(const NodeSnapshot& n) {
    if (node_saturated(n)) {
        return 100.0;
    }
    return 100.0 * (1.0 - 1.0 / sandpiper_volume(n.cpu_util, n.net_util, n.ram_util));
}

inline std::vector<double> node_scores(std::span<const NodeSnapshot> nodes, Planner pipeline,
                                       bool& degenerate) {
    degenerate = false;
    std::vector<double> scores;
    scores.reserve(nodes.size());
    switch (pipeline) {
        case Planner::fuzzy: {
            const RankingResult r = rank_fuzzy(node_decision_matrix(nodes));
            degenerate = r.degenerate;
            for (double rc : r.scores) scores.push_back(100.0 * rc);
            break;
        }
        case Planner::crisp: {
            const RankingResult r = rank_crisp(node_decision_matrix(nodes));
            degenerate = r.degenerate;
            for (double rc : r.scores) scores.push_back(100.0 * rc);
            break;
        }
        case Planner::sandpiper: {
            for (const auto& n : nodes) {
                validate(n);
                scores.push_back(sandpiper_node_score(n));
            }
            break;
        }
        case Planner::none:
            throw std::invalid_argument("node_scores: planner 'none' cannot rank");
    }
    return scores;
}

}  // namespace detail

/// Ranks the cluster's nodes from most to least endangered on the 0-100
/// scale of the configured pipeline.
inline NodeRanking rank_nodes(std::span<const NodeSnapshot> nodes,
                              const ControllerConfig& config) {
    if (nodes.empty()) {
        throw std::invalid_argument("rank_nodes: empty node list");
    }
    NodeRanking ranking;
    std::vector<double> scores = detail::node_scores(nodes, config.pipeline, ranking.degenerate);
    std::vector<std::size_t> idx(nodes.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
    ranking.entries.reserve(nodes.size());
    for (std::size_t i : idx) {
        ranking.entries.push_back({nodes[i].node_id, scores[i]});
    }
    return ranking;
}

/// Nodes whose score strictly exceeds the threshold, hottest first.
inline std::vector<std::string> detect_hotspots(const NodeRanking& ranking,
                                                const ControllerConfig& config) {
    std::vector<std::string> hot;
    for (const auto& entry : ranking.entries) {
        if (entry.score > config.threshold) {
            hot.push_back(entry.node_id);
        } else {
            break;  // entries are sorted descending
        }
    }
    return hot;
}

namespace detail {

/// Host's VMs in victim-preference order (most migration-worthy first).
inline std::vector<VmSnapshot> order_victims(std::span<const VmSnapshot> host_vms,
                                             Planner pipeline) {
    std::vector<VmSnapshot> ordered(host_vms.begin(), host_vms.end());
    if (pipeline == Planner::sandpiper) {
        std::vector<double> keys;
        keys.reserve(ordered.size());
        for (const auto& vm : ordered) {
            keys.push_back(vsr(sandpiper_volume(vm.cpu_util, vm.net_util, vm.ram_util),
                               vm.ram_usage_gb));
        }
        std::vector<std::size_t> idx(ordered.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(),
                         [&](std::size_t a, std::size_t b) { return keys[a] > keys[b]; });
        std::vector<VmSnapshot> out;
        out.reserve(ordered.size());
        for (std::size_t i : idx) out.push_back(ordered[i]);
        return out;
    }
    const DecisionMatrix matrix = vm_decision_matrix(ordered);
    const RankingResult result =
        pipeline == Planner::crisp ? rank_crisp(matrix) : rank_fuzzy(matrix);
    std::vector<VmSnapshot> out;
    out.reserve(ordered.size());
    for (const std::string& id : result.order) {
        for (const auto& vm : ordered) {
            if (vm.vm_id == id) {
                out.push_back(vm);
                break;
            }
        }
    }
    return out;
}

/// Applies the move to working copies: the VM's absolute demands leave the
/// source and land on the destination, rescaled by the capacity ratios
/// (clock for CPU, RAM size for memory, bandwidth for network).
inline void apply_move(std::vector<NodeSnapshot>& nodes, std::vector<VmSnapshot>& vms,
                       std::size_t vm_idx, std::size_t src_idx, std::size_t dst_idx) {
    NodeSnapshot& src = nodes[src_idx];
    NodeSnapshot& dst = nodes[dst_idx];
    VmSnapshot& vm = vms[vm_idx];

    const double cpu_ratio = src.cpu_clock_ghz / dst.cpu_clock_ghz;
    const double ram_ratio = src.ram_capacity_gb / dst.ram_capacity_gb;
    const double net_ratio = src.net_bw_mbps / dst.net_bw_mbps;

    src.cpu_util = std::max(0.0, src.cpu_util - vm.cpu_util);
    src.ram_util = std::max(0.0, src.ram_util - vm.ram_util);
    src.net_util = std::max(0.0, src.net_util - vm.net_util);
    src.ram_free_gb = std::min(src.ram_capacity_gb, src.ram_free_gb + vm.ram_usage_gb);

    const double dst_cpu = std::min(1.0, vm.cpu_util * cpu_ratio);
    const double dst_ram = std::min(1.0, vm.ram_util * ram_ratio);
    const double dst_net = std::min(1.0, vm.net_util * net_ratio);
    dst.cpu_util = std::min(1.0, dst.cpu_util + dst_cpu);
    dst.ram_util = std::min(1.0, dst.ram_util + dst_ram);
    dst.net_util = std::min(1.0, dst.net_util + dst_net);
    dst.ram_free_gb = std::max(0.0, dst.ram_free_gb - vm.ram_usage_gb);

    vm.host_id = dst.node_id;
    vm.cpu_util = dst_cpu;
    vm.ram_util = dst_ram;
    vm.net_util = dst_net;
}

/// Whether the destination stays at or below the threshold once the move
/// is projected through the full pipeline. An axis the whole cluster went
/// idle on carries no risk; divergent load is an automatic refusal.
inline bool projected_fit(const std::vector<NodeSnapshot>& nodes,
                          const std::vector<VmSnapshot>& vms, std::size_t vm_idx,
                          std::size_t src_idx, std::size_t dst_idx,
                          const ControllerConfig& config) {
    std::vector<NodeSnapshot> trial_nodes = nodes;
    std::vector<VmSnapshot> trial_vms = vms;
    apply_move(trial_nodes, trial_vms, vm_idx, src_idx, dst_idx);
    try {
        bool degenerate = false;
        const std::vector<double> scores =
            node_scores(trial_nodes, config.pipeline, degenerate);
        return scores[dst_idx] <= config.threshold;
    } catch (const DegenerateColumnError&) {
        return true;
    } catch (const SaturationError&) {
        return false;
    }
}

inline std::size_t index_of_node(std::span<const NodeSnapshot> nodes, const std::string& id) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].node_id == id) return i;
    }
    throw std::invalid_argument("unknown node '" + id + "'");
}

inline bool cluster_idle(std::span<const NodeSnapshot> nodes) {
    return std::all_of(nodes.begin(), nodes.end(), [](const NodeSnapshot& n) {
        return n.cpu_util == 0.0 && n.ram_util == 0.0 && n.net_util == 0.0;
    });
}

}  // namespace detail

/// Picks the most migration-worthy VM on `host`: the top of the level-2
/// ranking (or the highest VSR under the volume baseline).
inline std::string select_victim(const std::string& host, std::span<const VmSnapshot> vms,
                                 const ControllerConfig& config) {
    std::vector<VmSnapshot> host_vms;
    for (const auto& vm : vms) {
        if (vm.host_id == host) host_vms.push_back(vm);
    }
    if (host_vms.empty()) {
        throw std::invalid_argument("select_victim: host '" + host + "' has no VMs");
    }
    return detail::order_victims(host_vms, config.pipeline).front().vm_id;
}

/// Walks candidate destinations from the least loaded upward, skipping the
/// source and anything in `excluded`, and returns the first node with
/// enough free RAM whose projected post-move score stays at or below the
/// threshold. Returns nullopt when nothing fits.
inline std::optional<std::string> select_destination(
    const NodeRanking& ranking, const VmSnapshot& vm, std::span<const NodeSnapshot> nodes,
    const ControllerConfig& config, const std::set<std::string>& excluded = {}) {
    const std::vector<NodeSnapshot> node_copy(nodes.begin(), nodes.end());
    std::vector<VmSnapshot> vm_copy{vm};
    const std::size_t src_idx = detail::index_of_node(nodes, vm.host_id);
    for (auto it = ranking.entries.rbegin(); it != ranking.entries.rend(); ++it) {
        if (it->node_id == vm.host_id || excluded.contains(it->node_id)) {
            continue;
        }
        const std::size_t dst_idx = detail::index_of_node(nodes, it->node_id);
        if (nodes[dst_idx].ram_free_gb < vm.ram_usage_gb) {
            continue;
        }
        if (detail::projected_fit(node_copy, vm_copy, 0, src_idx, dst_idx, config)) {
            return it->node_id;
        }
    }
    return std::nullopt;
}

namespace detail {

/// Shared planning loop. Per iteration: re-rank the full node set, take the
/// hottest unhandled hotspot, try its VMs in victim order, place the first
/// that fits anywhere, apply the move to the working copies and repeat.
/// Each node sources at most one move per invocation, receives at most one,
/// and a VM moves at most once, which bounds the loop.
inline PlanOutcome plan_migrations(std::span<const NodeSnapshot> nodes_in,
                                   std::span<const VmSnapshot> vms_in,
                                   const ControllerConfig& config, double now_s) {
    validate(config);
    if (config.pipeline == Planner::none) {
        throw std::invalid_argument("plan_migrations: planner 'none' cannot plan");
    }
    if (nodes_in.empty()) {
        throw std::invalid_argument("plan_migrations: empty node list");
    }
    std::vector<NodeSnapshot> nodes(nodes_in.begin(), nodes_in.end());
    std::vector<VmSnapshot> vms(vms_in.begin(), vms_in.end());
    for (const auto& vm : vms) {
        index_of_node(nodes, vm.host_id);  // every VM's host must exist
    }

    PlanOutcome outcome;
    if (cluster_idle(nodes)) {
        return outcome;  // nothing can be hot on an idle cluster
    }

    std::set<std::string> used_sources;
    std::set<std::string> used_destinations;
    std::set<std::string> moved_vms;
    std::set<std::string> abandoned;  // hotspots given up on this cycle

    const std::size_t max_iterations = vms.size() + 2 * nodes.size() + 2;
    for (std::size_t iter = 0; iter < max_iterations; ++iter) {
        const NodeRanking ranking = rank_nodes(nodes, config);
        const std::vector<std::string> hotspots = detect_hotspots(ranking, config);
        std::string target;
        for (const auto& h : hotspots) {
            if (!abandoned.contains(h)) {
                target = h;
                break;
            }
        }
        if (target.empty()) {
            break;
        }
        if (used_sources.contains(target)) {
            abandoned.insert(target);
            continue;
        }
        const std::size_t src_idx = index_of_node(nodes, target);
        if (config.pipeline == Planner::sandpiper && node_saturated(nodes[src_idx])) {
            // The volume metric diverges here; the baseline cannot order it.
            abandoned.insert(target);
            continue;
        }
        std::vector<VmSnapshot> host_vms;
        for (const auto& vm : vms) {
            if (vm.host_id == target && !moved_vms.contains(vm.vm_id)) {
                host_vms.push_back(vm);
            }
        }
        if (host_vms.empty()) {
            abandoned.insert(target);
            continue;
        }
        std::vector<VmSnapshot> victims;
        try {
            victims = order_victims(host_vms, config.pipeline);
        } catch (const SaturationError&) {
            abandoned.insert(target);
            continue;
        }
        bool placed = false;
        for (const auto& victim : victims) {
            const std::optional<std::string> dest =
                select_destination(ranking, victim, nodes, config, used_destinations);
            if (!dest) {
                continue;  // try the next-ranked VM
            }
            std::size_t vm_idx = 0;
            for (; vm_idx < vms.size(); ++vm_idx) {
                if (vms[vm_idx].vm_id == victim.vm_id) break;
            }
            const std::size_t dst_idx = index_of_node(nodes, *dest);
            outcome.decisions.push_back({victim.vm_id, target, *dest,
                                         ranking.score_of(target).value_or(0.0), now_s,
                                         victim.ram_usage_gb});
            apply_move(nodes, vms, vm_idx, src_idx, dst_idx);
            used_sources.insert(target);
            used_destinations.insert(*dest);
            moved_vms.insert(victim.vm_id);
            placed = true;
            break;
        }
        if (!placed) {
            abandoned.insert(target);
        }
    }

    // Residual report: whatever is still hot in the final working state.
    const NodeRanking final_ranking = rank_nodes(nodes, config);
    outcome.residual_hotspots = detect_hotspots(final_ranking, config);
    return outcome;
}

}  // namespace detail

/// Two-level TOPSIS mitigation: rank nodes, pick victims on hotspots, move
/// them to the least loaded fitting host, repeat until clear or stuck.
inline PlanOutcome mitigation_plan(std::span<const NodeSnapshot> nodes,
                                   std::span<const VmSnapshot> vms,
                                   const ControllerConfig& config, double now_s = 0.0) {
    if (config.pipeline == Planner::sandpiper) {
        throw std::invalid_argument("mitigation_plan: use sandpiper_plan for the volume baseline");
    }
    return detail::plan_migrations(nodes, vms, config, now_s);
}

/// Volume/VSR baseline planner with the same iteration contract as
/// mitigation_plan.
inline PlanOutcome sandpiper_plan(std::span<const NodeSnapshot> nodes,
                                  std::span<const VmSnapshot> vms, const ControllerConfig& config,
                                  double now_s = 0.0) {
    ControllerConfig baseline = config;
    baseline.pipeline = Planner::sandpiper;
    return detail::plan_migrations(nodes, vms, baseline, now_s);
}

/// Dispatch on the configured pipeline.
inline PlanOutcome plan(std::span<const NodeSnapshot> nodes, std::span<const VmSnapshot> vms,
                        const ControllerConfig& config, double now_s = 0.0) {
    if (config.pipeline == Planner::sandpiper) {
        return sandpiper_plan(nodes, vms, config, now_s);
    }
    return mitigation_plan(nodes, vms, config, now_s);
}

}  // namespace topsim
