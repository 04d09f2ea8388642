#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>

#include "topsim/error.hpp"
#include "topsim/simulator.hpp"

namespace topsim {

namespace detail {

inline std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

}  // namespace detail

/// trace.csv: one row per tick. Columns: t, then per node cpu/ram/net
/// utilization, score, response proxy, then the cluster unbalance factor
/// and the number of in-flight migrations. LF line endings.
inline void write_trace_csv(std::ostream& out, const MetricsTrace& trace) {
    out << "t";
    for (const std::string& id : trace.node_ids) {
        out << ',' << id << "_cpu" << ',' << id << "_ram" << ',' << id << "_net" << ','
            << id << "_score" << ',' << id << "_resp_ms";
    }
    out << ",unbalance,in_flight\n";
    for (const TraceRow& row : trace.rows) {
        out << detail::csv_number(row.t);
        for (const NodeSample& n : row.nodes) {
            out << ',' << detail::csv_number(n.cpu_util) << ',' << detail::csv_number(n.ram_util)
                << ',' << detail::csv_number(n.net_util) << ',' << detail::csv_number(n.score)
                << ',' << detail::csv_number(n.response_ms);
        }
        out << ',' << detail::csv_number(row.unbalance) << ',' << row.in_flight << '\n';
    }
}

/// events.csv: executed migrations only; aborted decisions are reported in
/// the run summary instead (they have no transfer window).
inline void write_events_csv(std::ostream& out, const MetricsTrace& trace) {
    out << "trigger_time_s,vm,source,destination,transferred_gb,start_s,end_s\n";
    for (const MigrationEvent& e : trace.events) {
        out << detail::csv_number(e.decision.trigger_time_s) << ',' << e.decision.vm_id << ','
            << e.decision.source_node << ',' << e.decision.destination_node << ','
            << detail::csv_number(e.decision.transferred_gb) << ','
            << detail::csv_number(e.start_s) << ',' << detail::csv_number(e.end_s) << '\n';
    }
}

/// cycles.csv: per planner invocation. planner_ns is wall clock and is the
/// one column exempt from byte-identical rerun guarantees.
inline void write_cycles_csv(std::ostream& out, const MetricsTrace& trace) {
    out << "t,planner_ns,decisions,residual_hotspots\n";
    for (const CycleStat& c : trace.cycles) {
        out << detail::csv_number(c.t) << ',' << c.planner_ns << ',' << c.decision_count << ',';
        for (std::size_t i = 0; i < c.residual_hotspots.size(); ++i) {
            if (i > 0) out << ';';
            out << c.residual_hotspots[i];
        }
        out << '\n';
    }
}

/// timing.csv for the bench command: one row per cluster size.
inline void write_timing_csv(std::ostream& out, std::span<const TimingRow> rows) {
    out << "nodes,vms,median_ms,min_ms,max_ms\n";
    for (const TimingRow& r : rows) {
        out << r.node_count << ',' << r.vm_count << ',' << detail::csv_number(r.median_ms) << ','
            << detail::csv_number(r.min_ms) << ',' << detail::csv_number(r.max_ms) << '\n';
    }
}

namespace detail {

template <typename WriteFn>
inline void write_file(const std::filesystem::path& path, WriteFn&& fn) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    fn(out);
    out.flush();
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

}  // namespace detail

inline void write_trace_csv(const std::filesystem::path& path, const MetricsTrace& trace) {
    detail::write_file(path, [&](std::ostream& out) { write_trace_csv(out, trace); });
}

inline void write_events_csv(const std::filesystem::path& path, const MetricsTrace& trace) {
    detail::write_file(path, [&](std::ostream& out) { write_events_csv(out, trace); });
}

inline void write_cycles_csv(const std::filesystem::path& path, const MetricsTrace& trace) {
    detail::write_file(path, [&](std::ostream& out) { write_cycles_csv(out, trace); });
}

inline void write_timing_csv(const std::filesystem::path& path, std::span<const TimingRow> rows) {
    detail::write_file(path, [&](std::ostream& out) { write_timing_csv(out, rows); });
}

}  // namespace topsim
