#!/usr/bin/env python3
"""Calibration helper for the reference scenario.

The reference scenario has to thread a needle: PM3 must break the score
threshold at the control cycle right after its 400 s spike, stay below it
everywhere else, and the spike VM must still fit on the coolest node. This
script drives the built CLI over a candidate scenario and reports every one
of those checks, so workload edits can be validated in seconds.

It can also bisect the spike magnitude: given the scenario as a template, it
searches for the smallest VM3 CPU peak that still trips the hotspot logic,
which is a useful starting point when retuning the other workloads.

Usage:
  scripts/calibrate_table5.py --cli build/tools/topsim [--scenario scenarios/table5.scenario]
  scripts/calibrate_table5.py --cli build/tools/topsim --bisect
"""

import argparse
import csv
import json
import subprocess
import sys
import tempfile
from pathlib import Path

THRESHOLD = 75.0
HOT_NODE = "PM3"
VICTIM = "VM3"
DESTINATION = "PM2"
PROBE_TIME = 450.0


def run_simulation(cli, scenario_path, planner, out_dir):
    cmd = [cli, "simulate", str(scenario_path), "--planner", planner, "--out", str(out_dir)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode not in (0, 1):
        raise RuntimeError(f"{' '.join(cmd)} failed:\n{proc.stdout}{proc.stderr}")
    return proc.returncode


def read_trace(out_dir):
    """Returns (times, {node: [score per tick]})."""
    times = []
    scores = {}
    with open(Path(out_dir) / "trace.csv", newline="") as fh:
        reader = csv.DictReader(fh)
        score_cols = [c for c in reader.fieldnames if c.endswith("_score")]
        for col in score_cols:
            scores[col[: -len("_score")]] = []
        for row in reader:
            times.append(float(row["t"]))
            for col in score_cols:
                scores[col[: -len("_score")]].append(float(row[col]))
    return times, scores


def read_events(out_dir):
    with open(Path(out_dir) / "events.csv", newline="") as fh:
        return list(csv.DictReader(fh))


def cycle_times(scenario):
    interval = scenario["controller"]["interval_s"]
    duration = scenario["sim"]["duration_s"]
    t, out = 0.0, []
    while t <= duration:
        out.append(t)
        t += interval
    return out


def at(times, series, t):
    for i, ti in enumerate(times):
        if abs(ti - t) < 1e-9:
            return series[i]
    raise KeyError(f"no trace row at t={t}")


def hot_window(times, series, around):
    """Maximal contiguous window with score > THRESHOLD containing `around`."""
    idx = next(i for i, t in enumerate(times) if abs(t - around) < 1e-9)
    if series[idx] <= THRESHOLD:
        return None
    lo = idx
    while lo > 0 and series[lo - 1] > THRESHOLD:
        lo -= 1
    hi = idx
    while hi + 1 < len(series) and series[hi + 1] > THRESHOLD:
        hi += 1
    return times[lo], times[hi]


def evaluate(cli, scenario_path, verbose=True):
    """Runs the none and fuzzy planners; returns a list of (check, ok, detail)."""
    scenario = json.loads(Path(scenario_path).read_text())
    cycles = cycle_times(scenario)
    first_hot_cycle = next(c for c in cycles if c >= 400.0)
    checks = []

    with tempfile.TemporaryDirectory(prefix="table5_cal_") as tmp:
        none_dir = Path(tmp) / "none"
        run_simulation(cli, scenario_path, "none", none_dir)
        times, scores = read_trace(none_dir)

        if verbose:
            print(f"cycle scores (planner none, threshold {THRESHOLD:g}):")
            nodes = sorted(scores)
            print("  t      " + "".join(f"{n:>8}" for n in nodes))
            for c in cycles:
                row = "".join(f"{at(times, scores[n], c):8.2f}" for n in nodes)
                print(f"  {c:6.0f} {row}")

        for c in cycles:
            if c == first_hot_cycle:
                continue
            worst = max((at(times, scores[n], c), n) for n in scores)
            checks.append((f"all nodes cool at cycle {c:g}", worst[0] <= THRESHOLD,
                           f"hottest {worst[1]} = {worst[0]:.2f}"))
        hot = at(times, scores[HOT_NODE], first_hot_cycle)
        top = max((at(times, scores[n], first_hot_cycle), n) for n in scores)
        checks.append((f"{HOT_NODE} hot and on top at cycle {first_hot_cycle:g}",
                       hot > THRESHOLD and top[1] == HOT_NODE,
                       f"{HOT_NODE} = {hot:.2f}, top = {top[1]}"))
        window = hot_window(times, scores[HOT_NODE], PROBE_TIME)
        checks.append((f"{HOT_NODE} above threshold around t={PROBE_TIME:g} (none)",
                       window is not None,
                       f"window {window[0]:g}..{window[1]:g} s" if window else "not hot"))

        fuzzy_dir = Path(tmp) / "fuzzy"
        run_simulation(cli, scenario_path, "fuzzy", fuzzy_dir)
        times_f, scores_f = read_trace(fuzzy_dir)
        events = read_events(fuzzy_dir)

        ok_event = (len(events) == 1 and events[0]["vm"] == VICTIM and
                    events[0]["source"] == HOT_NODE and
                    events[0]["destination"] == DESTINATION)
        detail = (f"{events[0]['vm']} {events[0]['source']}->{events[0]['destination']} "
                  f"@ {events[0]['trigger_time_s']}" if len(events) == 1
                  else f"{len(events)} events")
        checks.append(("fuzzy run: exactly the documented migration", ok_event, detail))

        if events:
            done = float(events[0]["end_s"])
            late = [(t, s) for t, s in zip(times_f, scores_f[HOT_NODE])
                    if t >= done - 1e-9 and s > THRESHOLD]
            checks.append((f"{HOT_NODE} cool from transfer end ({done:g} s) onwards",
                           not late,
                           f"first violation at t={late[0][0]:g} ({late[0][1]:.2f})"
                           if late else "clean"))
    return checks


def bisect_spike(cli, scenario_path):
    """Smallest fraction of VM3's peak (all three axes scaled together) that
    still passes every check. A fraction well below 1 means the shipped spike
    has comfortable headroom; a fraction near 1 means the scenario is tuned
    too tightly to survive further workload edits."""
    base = json.loads(Path(scenario_path).read_text())
    vm3 = next(v for v in base["vms"] if v["id"] == VICTIM)
    shipped = dict(vm3["peak"])

    def passes(fraction):
        candidate = json.loads(json.dumps(base))
        vm = next(v for v in candidate["vms"] if v["id"] == VICTIM)
        for axis in ("cpu_ghz", "ram", "net"):
            vm["peak"][axis] = shipped[axis] * fraction
        with tempfile.NamedTemporaryFile("w", suffix=".scenario", delete=False) as fh:
            json.dump(candidate, fh)
            path = fh.name
        try:
            return all(ok for _, ok, _ in evaluate(cli, path, verbose=False))
        finally:
            Path(path).unlink()

    if not passes(1.0):
        print("shipped peak does not pass; nothing to bisect")
        return 1
    lo, hi = 0.0, 1.0
    for _ in range(12):
        mid = (lo + hi) / 2.0
        if passes(mid):
            hi = mid
        else:
            lo = mid
    print(f"shipped VM3 peak: cpu {shipped['cpu_ghz']:g} GHz, "
          f"ram {shipped['ram']:g}, net {shipped['net']:g}")
    print(f"smallest passing fraction of that peak: {hi:.4f}")
    return 0


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--cli", required=True, help="path to the built CLI binary")
    parser.add_argument("--scenario", default="scenarios/table5.scenario")
    parser.add_argument("--bisect", action="store_true",
                        help="bisect the smallest passing VM3 CPU peak magnitude")
    args = parser.parse_args()

    if args.bisect:
        return bisect_spike(args.cli, args.scenario)

    checks = evaluate(args.cli, args.scenario)
    width = max(len(name) for name, _, _ in checks)
    failed = 0
    for name, ok, detail in checks:
        print(f"{'ok  ' if ok else 'FAIL'} {name:<{width}}  {detail}")
        failed += 0 if ok else 1
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
