"""Command-line front end.

Subcommands: validate, lpf, capacity, simulate, sweep, compare.  Scenario
files are YAML with four sections (network, links, arrivals, experiment);
unknown keys anywhere are rejected so typos fail fast instead of silently
running a different experiment.

Exit codes: 0 success, 1 validation failure, 2 enumeration cap exceeded,
3 I/O trouble.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import multiprocessing
import sys
from dataclasses import dataclass

import numpy as np
import yaml

from .capacity import boundary_scale, membership
from .lpf import lpf
from .netmodel import ConflictNetwork, EnumerationCapError, build_conflict_sets
from .ratepower import LinkRadio, RatePowerCurve, validate_convexity
from .schedulers import POLICIES
from .sim import (
    ArrivalProcess,
    Scenario,
    power_compliance,
    run,
    stability_verdict,
)


@dataclass(frozen=True)
class ScenarioSpec:
    """Everything a scenario file can describe, in constructed form."""

    name: str
    net: ConflictNetwork
    radios: tuple[LinkRadio, ...]
    arrival_kind: str | None
    direction: tuple[float, ...] | None
    means: tuple[float, ...] | None
    batch: float | None
    period: int | None
    policies: tuple[str, ...]
    rho_grid: tuple[float, ...]
    horizon: int
    seeds: tuple[int, ...]
    u_departures: str

    def base_rates(self) -> tuple[float, ...]:
        """Per-link rate vector that rho = 1 corresponds to."""
        if self.direction is not None:
            rho_star = boundary_scale(self.direction, self.net, self.radios)
            return tuple(rho_star * d for d in self.direction)
        return self.means

    def arrivals_at(self, rho: float) -> ArrivalProcess:
        lam = tuple(rho * r for r in self.base_rates())
        return ArrivalProcess(
            kind=self.arrival_kind, means=lam, batch=self.batch, period=self.period
        )


def _check_keys(section, mapping, allowed, required=()):
    if not isinstance(mapping, dict):
        raise ValueError(f"{section}: expected a mapping, got {type(mapping).__name__}")
    unknown = sorted(set(mapping) - set(allowed))
    if unknown:
        raise ValueError(f"{section}: unknown key {unknown[0]!r}")
    for key in required:
        if key not in mapping:
            raise ValueError(f"{section}: missing required key {key!r}")


def _build_network(section) -> ConflictNetwork:
    _check_keys("network", section, ("model", "edges", "k", "conflicts", "vertices"), ("model",))
    model = section["model"]
    if model == "explicit":
        if "conflicts" not in section:
            raise ValueError("network: explicit model needs a 'conflicts' list")
        return build_conflict_sets(model="explicit", conflicts=section["conflicts"])
    edges = section.get("edges")
    if edges is None:
        raise ValueError(f"network: model {model!r} needs an 'edges' list")
    edges = [tuple(e) for e in edges]
    kwargs = {}
    if "k" in section:
        kwargs["k"] = int(section["k"])
    if "vertices" in section:
        kwargs["vertices"] = section["vertices"]
    return build_conflict_sets(edges=edges, model=model, **kwargs)


def _build_curve(section, link: int) -> RatePowerCurve:
    _check_keys(f"links[{link}].curve", section, ("kind", "gain", "noise", "bandwidth", "points"), ("kind",))
    kind = section["kind"]
    if kind == "awgn":
        gain = section.get("gain")
        if gain is None:
            raise ValueError(f"links[{link}].curve: awgn needs a 'gain'")
        if isinstance(gain, (list, tuple)):
            gain = gain[link]
        return RatePowerCurve.awgn(
            float(gain),
            n0w=float(section.get("noise", 1.0)),
            w=float(section.get("bandwidth", 1.0)),
        )
    if kind == "table":
        points = section.get("points")
        if points is None:
            raise ValueError(f"links[{link}].curve: table needs 'points'")
        return RatePowerCurve.table([tuple(p) for p in points])
    raise ValueError(f"links[{link}].curve: unknown kind {kind!r}")


def _build_one_radio(section, link: int) -> LinkRadio:
    _check_keys(f"links[{link}]", section, ("levels", "curve", "p_avg"), ("levels", "curve", "p_avg"))
    curve = _build_curve(section["curve"], link)
    levels = tuple(float(v) for v in section["levels"])
    radio = LinkRadio.from_curve(curve, levels, float(section["p_avg"]))
    problems = validate_convexity(curve, levels)
    if problems:
        raise ValueError(f"links[{link}]: {problems[0]}")
    return radio


def _build_radios(section, n: int) -> tuple[LinkRadio, ...]:
    if isinstance(section, list):
        if len(section) != n:
            raise ValueError(f"links: got {len(section)} entries for {n} links")
        return tuple(_build_one_radio(entry, l) for l, entry in enumerate(section))
    return tuple(_build_one_radio(section, l) for l in range(n))


def _float_tuple(values, section, n):
    out = tuple(float(v) for v in values)
    if len(out) != n:
        raise ValueError(f"{section}: expected {n} entries, got {len(out)}")
    return out


def load_scenario(path: str) -> ScenarioSpec:
    """Parse and validate a scenario file into constructed objects."""
    with open(path) as fh:
        raw = yaml.safe_load(fh)
    if not isinstance(raw, dict):
        raise ValueError("scenario file must be a mapping at the top level")
    _check_keys("scenario", raw, ("name", "network", "links", "arrivals", "experiment"), ("network", "links"))

    net = _build_network(raw["network"])
    radios = _build_radios(raw["links"], net.num_links)

    arrival_kind = direction = means = batch = period = None
    if "arrivals" in raw:
        arr = raw["arrivals"]
        _check_keys("arrivals", arr, ("kind", "direction", "means", "batch", "period"), ("kind",))
        arrival_kind = arr["kind"]
        if ("direction" in arr) == ("means" in arr):
            raise ValueError("arrivals: provide exactly one of 'direction' or 'means'")
        if "direction" in arr:
            direction = _float_tuple(arr["direction"], "arrivals.direction", net.num_links)
            if max(direction) <= 0:
                raise ValueError("arrivals.direction: needs at least one positive entry")
        else:
            means = _float_tuple(arr["means"], "arrivals.means", net.num_links)
        batch = float(arr["batch"]) if "batch" in arr else None
        period = int(arr["period"]) if "period" in arr else None
        # constructability check at rho = 1 (direction mode is checked per run)
        if means is not None:
            ArrivalProcess(kind=arrival_kind, means=means, batch=batch, period=period)
        elif arrival_kind not in ("poisson", "bernoulli_batch", "periodic", "constant"):
            raise ValueError(f"arrivals: unknown kind {arrival_kind!r}")

    policies: tuple[str, ...] = ()
    rho_grid: tuple[float, ...] = ()
    seeds: tuple[int, ...] = ()
    horizon = 0
    u_departures = "constant"
    if "experiment" in raw:
        exp = raw["experiment"]
        _check_keys(
            "experiment", exp,
            ("policies", "rho_grid", "horizon", "seeds", "u_departures"),
            ("policies", "rho_grid", "horizon", "seeds"),
        )
        policies = tuple(exp["policies"])
        for p in policies:
            if p not in POLICIES:
                raise ValueError(f"experiment.policies: unknown policy {p!r}")
        rho_grid = tuple(float(r) for r in exp["rho_grid"])
        if any(r < 0 for r in rho_grid):
            raise ValueError("experiment.rho_grid: loads must be nonnegative")
        horizon = int(exp["horizon"])
        if horizon < 1:
            raise ValueError("experiment.horizon: must be positive")
        seeds = tuple(int(s) for s in exp["seeds"])
        u_departures = exp.get("u_departures", "constant")
        if u_departures not in ("constant", "iid"):
            raise ValueError("experiment.u_departures: must be 'constant' or 'iid'")

    return ScenarioSpec(
        name=str(raw.get("name", "scenario")),
        net=net,
        radios=radios,
        arrival_kind=arrival_kind,
        direction=direction,
        means=means,
        batch=batch,
        period=period,
        policies=policies,
        rho_grid=rho_grid,
        horizon=horizon,
        seeds=seeds,
        u_departures=u_departures,
    )


def _need(spec: ScenarioSpec, what: str):
    if what == "arrivals" and spec.arrival_kind is None:
        raise ValueError("this command needs an 'arrivals' section in the scenario file")
    if what == "experiment" and not spec.policies:
        raise ValueError("this command needs an 'experiment' section in the scenario file")


def _write_text(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


# ------------------------------------------------------------- subcommands


def cmd_validate(args) -> int:
    spec = load_scenario(args.scenario)
    lines = [
        f"scenario {spec.name!r}: ok",
        f"  links: {spec.net.num_links}, conflict pairs: "
        f"{sum(len(s) for s in spec.net.conflict_sets) // 2}",
        f"  levels per link: {[len(r.levels) for r in spec.radios]}",
    ]
    if spec.arrival_kind is not None:
        mode = "direction" if spec.direction is not None else "means"
        lines.append(f"  arrivals: {spec.arrival_kind} ({mode} mode)")
    if spec.policies:
        lines.append(
            f"  experiment: policies={list(spec.policies)} grid={list(spec.rho_grid)} "
            f"horizon={spec.horizon} seeds={list(spec.seeds)}"
        )
    print("\n".join(lines))
    return 0


def cmd_lpf(args) -> int:
    spec = load_scenario(args.scenario)
    result = lpf(spec.net, cap=args.cap)
    witness = result.witness
    record = {
        "sigma_star": result.sigma_star,
        "argmin_links": list(result.argmin_links),
        "witness": {
            "links": list(witness.links),
            "activations": [list(a) for a in witness.activations],
            "dominating_weights": list(witness.dominating_weights),
            "dominated_weights": list(witness.dominated_weights),
        },
    }
    _write_text(args.out, json.dumps(record, indent=2) + "\n")
    return 0


def cmd_capacity(args) -> int:
    spec = load_scenario(args.scenario)
    if (args.lam is None) == (args.direction is None):
        raise ValueError("capacity: provide exactly one of --lambda or --direction")
    if args.lam is not None:
        lam = _float_tuple(args.lam.split(","), "--lambda", spec.net.num_links)
        result = membership(lam, spec.net, spec.radios, margin=args.margin)
        record = {"lambda": list(lam), "verdict": result.verdict}
        if result.weights is not None:
            record["certificate"] = [
                {"weight": w, "power": list(a.power), "rate": list(a.rate)}
                for w, a in zip(result.weights, result.allocations)
                if w > 1e-12
            ]
    else:
        direction = _float_tuple(args.direction.split(","), "--direction", spec.net.num_links)
        rho_star = boundary_scale(direction, spec.net, spec.radios)
        record = {"direction": list(direction), "rho_star": rho_star}
    _write_text(args.out, json.dumps(record, indent=2) + "\n")
    return 0


def _metrics_row(policy, rho, seed, metrics):
    try:
        verdict = stability_verdict(metrics)
    except ValueError:
        verdict = "unclassified"  # horizon below the classifier's minimum
    return (
        [policy, rho, seed, metrics.horizon, metrics.avg_sum_q, max(metrics.max_u), verdict]
        + list(metrics.avg_power)
    )


def _csv_header(n_links):
    return ["policy", "rho", "seed", "T", "avg_sum_q", "max_u", "verdict"] + [
        f"avg_p_{l}" for l in range(n_links)
    ]


def _run_task(task):
    spec, policy, rho, seed, horizon = task
    scenario = Scenario(
        net=spec.net,
        radios=spec.radios,
        arrivals=spec.arrivals_at(rho),
        policy=policy,
        horizon=horizon,
        seed=seed,
        u_departures=spec.u_departures,
    )
    return _metrics_row(policy, rho, seed, run(scenario))


def _emit_csv(path, header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    _write_text(path, buf.getvalue())


def cmd_simulate(args) -> int:
    spec = load_scenario(args.scenario)
    _need(spec, "arrivals")
    policy = args.policy or (spec.policies[0] if spec.policies else None)
    if policy is None:
        raise ValueError("simulate: no --policy given and no experiment section to default from")
    if policy not in POLICIES:
        raise ValueError(f"simulate: unknown policy {policy!r}")
    horizon = args.horizon or spec.horizon
    if horizon < 1:
        raise ValueError("simulate: need --horizon or an experiment section")
    seed = args.seed if args.seed is not None else (spec.seeds[0] if spec.seeds else 0)
    scenario = Scenario(
        net=spec.net,
        radios=spec.radios,
        arrivals=spec.arrivals_at(args.rho),
        policy=policy,
        horizon=horizon,
        seed=seed,
        u_departures=spec.u_departures,
        log_slots=args.trace is not None,
    )
    metrics = run(scenario)
    _emit_csv(args.out, _csv_header(spec.net.num_links), [_metrics_row(policy, args.rho, seed, metrics)])
    if args.trace is not None:
        n = spec.net.num_links
        header = (
            ["slot"]
            + [f"q_{l}" for l in range(n)]
            + [f"u_{l}" for l in range(n)]
            + [f"p_{l}" for l in range(n)]
        )
        rows = [[t, *q, *u, *p] for t, q, u, p, r, a, s in metrics.slot_log]
        _emit_csv(args.trace, header, rows)
    return 0


def _sweep_rows(spec: ScenarioSpec, horizon: int, jobs: int):
    tasks = [
        (spec, policy, rho, seed, horizon)
        for rho in spec.rho_grid
        for policy in spec.policies
        for seed in spec.seeds
    ]
    if jobs > 1:
        with multiprocessing.get_context("spawn").Pool(jobs) as pool:
            return pool.map(_run_task, tasks)
    return [_run_task(t) for t in tasks]


def cmd_sweep(args) -> int:
    spec = load_scenario(args.scenario)
    _need(spec, "arrivals")
    _need(spec, "experiment")
    horizon = args.horizon or spec.horizon
    rows = _sweep_rows(spec, horizon, args.jobs)
    _emit_csv(args.out, _csv_header(spec.net.num_links), rows)
    return 0


def cmd_compare(args) -> int:
    spec = load_scenario(args.scenario)
    _need(spec, "arrivals")
    _need(spec, "experiment")
    for policy in ("gecs", "gmw"):
        if policy not in spec.policies:
            raise ValueError(f"compare: experiment.policies must include {policy!r}")
    horizon = args.horizon or spec.horizon
    rows = _sweep_rows(spec, horizon, args.jobs)
    by_key: dict = {}
    for row in rows:
        by_key.setdefault((row[1], row[0]), []).append(row[4])
    out_rows = []
    for rho in spec.rho_grid:
        g = float(np.mean(by_key[(rho, "gecs")]))
        w = float(np.mean(by_key[(rho, "gmw")]))
        out_rows.append([rho, g, w, g / w if w else float("nan")])
    _emit_csv(args.out, ["rho", "avg_sum_q_gecs", "avg_sum_q_gmw", "ratio"], out_rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ecsched",
        description="Energy-constrained link scheduling: analyses and simulations.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file against every invariant")
    p.add_argument("scenario")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("lpf", help="local pooling factor of the scenario's network")
    p.add_argument("scenario")
    p.add_argument("--cap", type=int, default=20, help="max links per activation enumeration")
    p.add_argument("--out", default=None, help="write the JSON record here instead of stdout")
    p.set_defaults(func=cmd_lpf)

    p = sub.add_parser("capacity", help="region membership or per-direction boundary")
    p.add_argument("scenario")
    p.add_argument("--lambda", dest="lam", default=None, help="comma-separated rate vector")
    p.add_argument("--direction", default=None, help="comma-separated direction vector")
    p.add_argument("--margin", type=float, default=0.0, help="strict-interior margin for membership")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("simulate", help="one run, one CSV row")
    p.add_argument("scenario")
    p.add_argument("--policy", default=None, choices=sorted(POLICIES))
    p.add_argument("--rho", type=float, default=1.0, help="load factor applied to the base rates")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--horizon", type=int, default=0, help="override the experiment horizon")
    p.add_argument("--trace", default=None, help="also write a per-slot trace CSV here")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="full load x policy x seed grid as CSV")
    p.add_argument("scenario")
    p.add_argument("--horizon", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for independent runs")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="paired gecs-vs-gmw summary per load point")
    p.add_argument("scenario")
    p.add_argument("--horizon", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EnumerationCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, yaml.YAMLError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
