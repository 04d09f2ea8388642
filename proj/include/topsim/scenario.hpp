#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "topsim/cluster.hpp"
#include "topsim/error.hpp"
#include "topsim/simulator.hpp"

namespace topsim {

/// One-shot input for the `rank` command: the cluster frozen at an instant.
struct SnapshotFile {
    std::vector<NodeSnapshot> nodes;
    std::vector<VmSnapshot> vms;
};

namespace detail {

using nlohmann::json;

inline void require_keys(const json& j, const std::string& path,
                         std::initializer_list<const char*> allowed) {
    if (!j.is_object()) {
        throw ValidationError(path, "must be an object");
    }
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed) {
            if (item.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ValidationError(path + "." + item.key(), "unknown key");
        }
    }
}

inline const json* find(const json& j, const char* key) {
    const auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

inline double get_number(const json& j, const std::string& path, const char* key) {
    const json* v = find(j, key);
    if (!v) throw ValidationError(path + "." + key, "missing");
    if (!v->is_number()) throw ValidationError(path + "." + key, "must be a number");
    return v->get<double>();
}

inline double get_number_or(const json& j, const std::string& path, const char* key,
                            double fallback) {
    const json* v = find(j, key);
    if (!v) return fallback;
    if (!v->is_number()) throw ValidationError(path + "." + key, "must be a number");
    return v->get<double>();
}

inline std::string get_string(const json& j, const std::string& path, const char* key) {
    const json* v = find(j, key);
    if (!v) throw ValidationError(path + "." + key, "missing");
    if (!v->is_string()) throw ValidationError(path + "." + key, "must be a string");
    return v->get<std::string>();
}

inline Tfn get_tfn(const json& j, const std::string& path, const char* key) {
    const json* v = find(j, key);
    if (!v) throw ValidationError(path + "." + key, "missing");
    if (!v->is_array() || v->size() != 3 || !(*v)[0].is_number() || !(*v)[1].is_number() ||
        !(*v)[2].is_number()) {
        throw ValidationError(path + "." + key, "must be an array of three numbers [a, b, c]");
    }
    try {
        return Tfn{(*v)[0].get<double>(), (*v)[1].get<double>(), (*v)[2].get<double>()};
    } catch (const std::invalid_argument& e) {
        throw ValidationError(path + "." + key, e.what());
    }
}

inline LinguisticRank get_rank(const json& j, const std::string& path, const char* key) {
    const std::string text = get_string(j, path, key);
    try {
        return linguistic_rank_from_string(text);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(path + "." + key, e.what());
    }
}

inline ResourceDemand parse_demand(const json& j, const std::string& path) {
    require_keys(j, path, {"cpu_ghz", "ram", "net"});
    ResourceDemand d;
    d.cpu = get_number_or(j, path, "cpu_ghz", 0.0);
    d.ram = get_number_or(j, path, "ram", 0.0);
    d.net = get_number_or(j, path, "net", 0.0);
    return d;
}

inline json parse_json_text(const std::string& text, const std::string& origin) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        throw ValidationError(origin, "not valid JSON");
    }
    return j;
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("cannot read " + path.string());
    }
    return buf.str();
}

}  // namespace detail

/// Builds a Scenario from its JSON form. Field errors carry the offending
/// path; structural invariants are re-checked by validate(Scenario).
inline Scenario parse_scenario(const nlohmann::json& root) {
    using detail::find;
    using detail::json;
    detail::require_keys(root, "scenario", {"controller", "sim", "nodes", "vms"});

    Scenario s;
    if (const json* c = find(root, "controller")) {
        detail::require_keys(*c, "controller", {"threshold", "interval_s", "planner"});
        s.controller.threshold = detail::get_number_or(*c, "controller", "threshold", 75.0);
        s.controller.control_interval_s =
            detail::get_number_or(*c, "controller", "interval_s", 180.0);
        if (find(*c, "planner")) {
            const std::string name = detail::get_string(*c, "controller", "planner");
            try {
                s.controller.pipeline = planner_from_string(name);
            } catch (const std::invalid_argument& e) {
                throw ValidationError("controller.planner", e.what());
            }
        }
    }
    if (const json* c = find(root, "sim")) {
        detail::require_keys(*c, "sim",
                             {"tick_s", "duration_s", "migration_bandwidth_gbps", "seed",
                              "response_base_ms", "response_epsilon"});
        s.sim.tick_s = detail::get_number_or(*c, "sim", "tick_s", 1.0);
        s.sim.duration_s = detail::get_number_or(*c, "sim", "duration_s", 0.0);
        s.sim.migration_bandwidth_gbps =
            detail::get_number_or(*c, "sim", "migration_bandwidth_gbps", 1.0);
        s.sim.seed = static_cast<std::uint64_t>(
            detail::get_number_or(*c, "sim", "seed", 0.0));
        s.sim.response_base_ms = detail::get_number_or(*c, "sim", "response_base_ms", 10.0);
        s.sim.response_epsilon = detail::get_number_or(*c, "sim", "response_epsilon", 0.02);
    }

    const json* nodes = find(root, "nodes");
    if (!nodes || !nodes->is_array()) {
        throw ValidationError("nodes", "must be an array");
    }
    for (std::size_t i = 0; i < nodes->size(); ++i) {
        const json& jn = (*nodes)[i];
        const std::string path = "nodes[" + std::to_string(i) + "]";
        detail::require_keys(jn, path,
                             {"id", "cpu_clock_ghz", "ram_gb", "net_bw_mbps", "temperature",
                              "vm_slots"});
        NodeSpec n;
        n.id = detail::get_string(jn, path, "id");
        n.cpu_clock_ghz = detail::get_number(jn, path, "cpu_clock_ghz");
        n.ram_gb = detail::get_number(jn, path, "ram_gb");
        n.net_bw_mbps = detail::get_number(jn, path, "net_bw_mbps");
        n.temperature = detail::get_tfn(jn, path, "temperature");
        n.vm_slots = static_cast<int>(detail::get_number_or(jn, path, "vm_slots", 8.0));
        s.nodes.push_back(std::move(n));
    }

    const json* vms = find(root, "vms");
    if (!vms || !vms->is_array()) {
        throw ValidationError("vms", "must be an array");
    }
    for (std::size_t i = 0; i < vms->size(); ++i) {
        const json& jv = (*vms)[i];
        const std::string path = "vms[" + std::to_string(i) + "]";
        detail::require_keys(jv, path, {"id", "host", "ram_mb", "qos", "baseline", "peak"});
        VmSpec vm;
        vm.id = detail::get_string(jv, path, "id");
        vm.host = detail::get_string(jv, path, "host");
        vm.ram_mb = detail::get_number(jv, path, "ram_mb");
        vm.qos = detail::get_rank(jv, path, "qos");
        const json* baseline = find(jv, "baseline");
        if (!baseline) throw ValidationError(path + ".baseline", "missing");
        vm.profile.baseline = detail::parse_demand(*baseline, path + ".baseline");
        if (const json* peak = find(jv, "peak"); peak && !peak->is_null()) {
            const std::string ppath = path + ".peak";
            detail::require_keys(*peak, ppath, {"time_s", "width_s", "cpu_ghz", "ram", "net"});
            vm.profile.peak_time_s = detail::get_number(*peak, ppath, "time_s");
            vm.profile.peak_width_s = detail::get_number_or(*peak, ppath, "width_s", 120.0);
            vm.profile.peak_magnitude.cpu = detail::get_number_or(*peak, ppath, "cpu_ghz", 0.0);
            vm.profile.peak_magnitude.ram = detail::get_number_or(*peak, ppath, "ram", 0.0);
            vm.profile.peak_magnitude.net = detail::get_number_or(*peak, ppath, "net", 0.0);
        }
        s.vms.push_back(std::move(vm));
    }

    validate(s);
    return s;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    return parse_scenario(detail::parse_json_text(text, path.string()));
}

/// Parses a frozen-cluster snapshot. `vms` may be absent for level-1-only
/// ranking. Node `vm_count` is an integer quantized against `vm_slots`.
inline SnapshotFile parse_snapshot(const nlohmann::json& root) {
    using detail::find;
    using detail::json;
    detail::require_keys(root, "snapshot", {"nodes", "vms"});

    SnapshotFile snap;
    const json* nodes = find(root, "nodes");
    if (!nodes || !nodes->is_array()) {
        throw ValidationError("nodes", "must be an array");
    }
    for (std::size_t i = 0; i < nodes->size(); ++i) {
        const json& jn = (*nodes)[i];
        const std::string path = "nodes[" + std::to_string(i) + "]";
        detail::require_keys(jn, path,
                             {"id", "cpu_util", "ram_util", "net_util", "vm_count", "vm_slots",
                              "cpu_clock_ghz", "net_bw_mbps", "temperature", "ram_capacity_gb",
                              "ram_free_gb"});
        NodeSnapshot n;
        n.node_id = detail::get_string(jn, path, "id");
        n.cpu_util = detail::get_number(jn, path, "cpu_util");
        n.ram_util = detail::get_number(jn, path, "ram_util");
        n.net_util = detail::get_number(jn, path, "net_util");
        const int count = static_cast<int>(detail::get_number(jn, path, "vm_count"));
        const int slots = static_cast<int>(detail::get_number_or(jn, path, "vm_slots", 8.0));
        if (slots < 1) throw ValidationError(path + ".vm_slots", "must be >= 1");
        if (count < 0) throw ValidationError(path + ".vm_count", "must be >= 0");
        n.vm_count = vm_count_rank(count, slots);
        n.cpu_clock_ghz = detail::get_number(jn, path, "cpu_clock_ghz");
        n.net_bw_mbps = detail::get_number(jn, path, "net_bw_mbps");
        n.temperature = detail::get_tfn(jn, path, "temperature");
        n.ram_capacity_gb = detail::get_number(jn, path, "ram_capacity_gb");
        n.ram_free_gb = detail::get_number(jn, path, "ram_free_gb");
        try {
            validate(n);
        } catch (const std::invalid_argument& e) {
            throw ValidationError(path, e.what());
        }
        snap.nodes.push_back(std::move(n));
    }

    if (const json* vms = find(root, "vms"); vms && !vms->is_null()) {
        if (!vms->is_array()) {
            throw ValidationError("vms", "must be an array");
        }
        for (std::size_t i = 0; i < vms->size(); ++i) {
            const json& jv = (*vms)[i];
            const std::string path = "vms[" + std::to_string(i) + "]";
            detail::require_keys(jv, path,
                                 {"id", "host", "cpu_util", "ram_util", "net_util",
                                  "ram_usage_gb", "qos"});
            VmSnapshot v;
            v.vm_id = detail::get_string(jv, path, "id");
            v.host_id = detail::get_string(jv, path, "host");
            v.cpu_util = detail::get_number(jv, path, "cpu_util");
            v.ram_util = detail::get_number(jv, path, "ram_util");
            v.net_util = detail::get_number(jv, path, "net_util");
            v.ram_usage_gb = detail::get_number(jv, path, "ram_usage_gb");
            v.qos = detail::get_rank(jv, path, "qos");
            try {
                validate(v);
            } catch (const std::invalid_argument& e) {
                throw ValidationError(path, e.what());
            }
            const bool host_known =
                std::any_of(snap.nodes.begin(), snap.nodes.end(),
                            [&](const NodeSnapshot& n) { return n.node_id == v.host_id; });
            if (!host_known) {
                throw ValidationError(path + ".host", "unknown node '" + v.host_id + "'");
            }
            snap.vms.push_back(std::move(v));
        }
    }
    if (snap.nodes.empty()) {
        throw ValidationError("nodes", "must not be empty");
    }
    return snap;
}

inline SnapshotFile load_snapshot(const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    return parse_snapshot(detail::parse_json_text(text, path.string()));
}

}  // namespace topsim
