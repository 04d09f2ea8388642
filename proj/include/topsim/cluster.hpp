#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "topsim/error.hpp"
#include "topsim/fuzzy.hpp"
#include "topsim/topsis.hpp"

namespace topsim {

/// Telemetry record for one physical node at one instant.
struct NodeSnapshot {
    std::string node_id;
    double cpu_util{0.0};  ///< fraction of the node's CPU in use, [0,1]
    double ram_util{0.0};
    double net_util{0.0};
    LinguisticRank vm_count{LinguisticRank::very_low};  ///< hosted-VM pressure class
    double cpu_clock_ghz{1.0};
    double net_bw_mbps{1000.0};
    Tfn temperature{};  ///< on the 0-100 membership axis
    double ram_capacity_gb{1.0};
    double ram_free_gb{0.0};
};

/// Telemetry record for one virtual machine at one instant. Utilizations
/// are the VM's share of its host's resources.
struct VmSnapshot {
    std::string vm_id;
    std::string host_id;
    double cpu_util{0.0};
    double ram_util{0.0};
    double net_util{0.0};
    double ram_usage_gb{0.0};  ///< memory footprint transferred on migration
    LinguisticRank qos{LinguisticRank::medium};
};

namespace detail {

inline void check_fraction(double v, const std::string& what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(what + " must be in [0,1]");
    }
}

}  // namespace detail

inline void validate(const NodeSnapshot& node) {
    detail::check_fraction(node.cpu_util, node.node_id + ".cpu_util");
    detail::check_fraction(node.ram_util, node.node_id + ".ram_util");
    detail::check_fraction(node.net_util, node.node_id + ".net_util");
    if (!(node.cpu_clock_ghz > 0.0)) {
        throw std::invalid_argument(node.node_id + ".cpu_clock_ghz must be > 0");
    }
    if (!(node.net_bw_mbps > 0.0)) {
        throw std::invalid_argument(node.node_id + ".net_bw_mbps must be > 0");
    }
    if (!(node.ram_capacity_gb > 0.0)) {
        throw std::invalid_argument(node.node_id + ".ram_capacity_gb must be > 0");
    }
    if (node.ram_free_gb < 0.0 || node.ram_free_gb > node.ram_capacity_gb) {
        throw std::invalid_argument(node.node_id + ".ram_free_gb must be in [0, ram_capacity_gb]");
    }
    if (node.temperature.a < 0.0) {
        throw std::invalid_argument(node.node_id + ".temperature must be nonnegative");
    }
}

inline void validate(const VmSnapshot& vm) {
    detail::check_fraction(vm.cpu_util, vm.vm_id + ".cpu_util");
    detail::check_fraction(vm.ram_util, vm.vm_id + ".ram_util");
    detail::check_fraction(vm.net_util, vm.vm_id + ".net_util");
    if (vm.ram_usage_gb < 0.0) {
        throw std::invalid_argument(vm.vm_id + ".ram_usage_gb must be >= 0");
    }
}

/// Quantizes a raw hosted-VM count onto the seven-level scale relative to
/// the node's declared capacity class (the count it comfortably handles).
inline LinguisticRank vm_count_rank(int count, int capacity_class) {
    if (count < 0) {
        throw std::invalid_argument("vm_count_rank: count must be >= 0");
    }
    if (capacity_class < 1) {
        throw std::invalid_argument("vm_count_rank: capacity_class must be >= 1");
    }
    const double ratio = static_cast<double>(count) / static_cast<double>(capacity_class);
    const auto level = static_cast<long>(ratio * static_cast<double>(kLinguisticLevels));
    const long clamped = std::clamp(level, 0L, static_cast<long>(kLinguisticLevels) - 1L);
    return static_cast<LinguisticRank>(clamped);
}

/// First-level decision matrix: eight criteria describing how loaded and
/// how fragile each node is. Utilization, VM pressure and temperature are
/// benefit-typed (more means hotter); clock, bandwidth and RAM capacity are
/// cost-typed, so weaker hardware ranks as more endangered at equal load.
inline DecisionMatrix node_decision_matrix(std::span<const NodeSnapshot> nodes) {
    if (nodes.empty()) {
        throw std::invalid_argument("node_decision_matrix: empty node list");
    }
    const std::vector<Criterion> criteria{
        {"CPU%", Direction::benefit, LinguisticRank::very_high, DataKind::crisp},
        {"RAM%", Direction::benefit, LinguisticRank::mol_low, DataKind::crisp},
        {"NET%", Direction::benefit, LinguisticRank::mol_low, DataKind::crisp},
        {"#VM", Direction::benefit, LinguisticRank::low, DataKind::linguistic},
        {"CPU cycle", Direction::cost, LinguisticRank::very_high, DataKind::crisp},
        {"NET BW", Direction::cost, LinguisticRank::mol_low, DataKind::crisp},
        {"TMP", Direction::benefit, LinguisticRank::medium, DataKind::fuzzy},
        {"RAM capacity", Direction::cost, LinguisticRank::mol_low, DataKind::crisp},
    };
    std::vector<std::string> ids;
    std::vector<Cell> cells;
    ids.reserve(nodes.size());
    cells.reserve(nodes.size() * criteria.size());
    for (const NodeSnapshot& node : nodes) {
        validate(node);
        ids.push_back(node.node_id);
        cells.emplace_back(node.cpu_util);
        cells.emplace_back(node.ram_util);
        cells.emplace_back(node.net_util);
        cells.emplace_back(node.vm_count);
        cells.emplace_back(node.cpu_clock_ghz);
        cells.emplace_back(node.net_bw_mbps);
        cells.emplace_back(node.temperature);
        cells.emplace_back(node.ram_capacity_gb);
    }
    return DecisionMatrix{std::move(ids), criteria, std::move(cells)};
}

/// Second-level decision matrix over the VMs of a single host: busy,
/// high-QoS VMs with a small memory footprint rank first.
inline DecisionMatrix vm_decision_matrix(std::span<const VmSnapshot> vms) {
    if (vms.empty()) {
        throw std::invalid_argument("vm_decision_matrix: empty VM list");
    }
    const std::string& host = vms.front().host_id;
    const std::vector<Criterion> criteria{
        {"CPU%", Direction::benefit, LinguisticRank::very_high, DataKind::crisp},
        {"RAM%", Direction::benefit, LinguisticRank::mol_low, DataKind::crisp},
        {"NET%", Direction::benefit, LinguisticRank::mol_low, DataKind::crisp},
        {"RAM usage", Direction::cost, LinguisticRank::high, DataKind::crisp},
        {"QoS", Direction::benefit, LinguisticRank::high, DataKind::linguistic},
    };
    std::vector<std::string> ids;
    std::vector<Cell> cells;
    ids.reserve(vms.size());
    cells.reserve(vms.size() * criteria.size());
    for (const VmSnapshot& vm : vms) {
        validate(vm);
        if (vm.host_id != host) {
            throw std::invalid_argument("vm_decision_matrix: VMs span hosts '" + host + "' and '" +
                                        vm.host_id + "'");
        }
        ids.push_back(vm.vm_id);
        cells.emplace_back(vm.cpu_util);
        cells.emplace_back(vm.ram_util);
        cells.emplace_back(vm.net_util);
        cells.emplace_back(vm.ram_usage_gb);
        cells.emplace_back(vm.qos);
    }
    return DecisionMatrix{std::move(ids), criteria, std::move(cells)};
}

/// Combined CPU-network-memory load: vol = 1/(1-cpu) * 1/(1-net) * 1/(1-mem).
/// Diverges as any utilization approaches 1, so saturated inputs are
/// rejected rather than returning infinity.
inline double sandpiper_volume(double cpu, double net, double mem) {
    for (double v : {cpu, net, mem}) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("sandpiper_volume: utilizations must be >= 0");
        }
        if (v >= 1.0) {
            throw SaturationError("sandpiper_volume: utilization at or above 1.0");
        }
    }
    return 1.0 / ((1.0 - cpu) * (1.0 - net) * (1.0 - mem));
}

/// Volume-to-size ratio; the baseline's victim-ordering key. Migrating the
/// highest-VSR VM moves the most load per byte copied.
inline double vsr(double volume, double size_gb) {
    if (!(size_gb > 0.0)) {
        throw std::invalid_argument("vsr: size_gb must be > 0");
    }
    return volume / size_gb;
}

}  // namespace topsim
