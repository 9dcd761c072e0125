"""Slotted simulation of queue dynamics under a scheduling policy.

Per slot: arrivals are credited first and are servable in the same slot;
the policy decides powers from the post-arrival state; the real queue
drains by the granted rate and the virtual power queue pays its budget and
absorbs the spent power.  Queues are real-valued and never negative.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .netmodel import ConflictNetwork
from .ratepower import LinkRadio
from .schedulers import POLICIES, PowerDecision, SchedulerInput

ARRIVAL_KINDS = ("bernoulli_batch", "poisson", "periodic", "constant")


@dataclass(frozen=True)
class QueueState:
    q: tuple[float, ...]
    u: tuple[float, ...]


def step(state: QueueState, decision: PowerDecision, arrivals, p_avg) -> QueueState:
    """One-slot update.

    q' = [q - rate]+ + arrivals      (arrivals belong to the next slot)
    u' = [u - p_avg]+ + power        (p_avg may be per-slot draws in the
                                      i.i.d.-departure mode)
    """
    n = len(state.q)
    if not (len(decision.power) == len(arrivals) == len(p_avg) == n):
        raise ValueError("per-link vectors must all match the state length")
    q = tuple(
        max(qi - ri, 0.0) + ai
        for qi, ri, ai in zip(state.q, decision.rate, arrivals)
    )
    u = tuple(
        max(ui - di, 0.0) + pi
        for ui, di, pi in zip(state.u, p_avg, decision.power)
    )
    return QueueState(q=q, u=u)


@dataclass(frozen=True)
class ArrivalProcess:
    """Per-link arrival generator with configured means.

    bernoulli_batch: `batch` units w.p. mean/batch each slot
    poisson:         Poisson(mean) units each slot
    periodic:        mean*period units every `period` slots (slot 0 first)
    constant:        exactly `mean` units each slot
    """

    kind: str
    means: tuple[float, ...]
    batch: float | None = None
    period: int | None = None

    def __post_init__(self):
        if self.kind not in ARRIVAL_KINDS:
            raise ValueError(f"unknown arrival kind {self.kind!r}")
        if not self.means:
            raise ValueError("means must be nonempty")
        if min(self.means) < 0:
            raise ValueError("arrival means must be nonnegative")
        if self.kind == "bernoulli_batch":
            if self.batch is None or self.batch <= 0:
                raise ValueError("bernoulli_batch requires a positive batch size")
            worst = max(self.means)
            if worst > self.batch * (1 + 1e-12):
                raise ValueError(
                    f"mean {worst} unreachable with batch {self.batch} (probability > 1)"
                )
        if self.kind == "periodic":
            if self.period is None or int(self.period) < 1:
                raise ValueError("periodic requires period >= 1")

    def scaled(self, factor: float) -> "ArrivalProcess":
        return ArrivalProcess(
            kind=self.kind,
            means=tuple(m * factor for m in self.means),
            batch=self.batch,
            period=self.period,
        )

    def draw(self, rng: np.random.Generator, t0: int, n_slots: int) -> np.ndarray:
        """Arrivals for slots t0 .. t0+n_slots-1, shaped (n_slots, links)."""
        means = np.array(self.means)
        n = len(self.means)
        if self.kind == "poisson":
            return rng.poisson(lam=means, size=(n_slots, n)).astype(float)
        if self.kind == "bernoulli_batch":
            probs = means / self.batch
            hits = rng.random((n_slots, n)) < probs
            return hits * float(self.batch)
        if self.kind == "periodic":
            period = int(self.period)
            out = np.zeros((n_slots, n))
            batches = means * period
            offsets = (-t0) % period
            out[offsets::period, :] = batches
            return out
        return np.tile(means, (n_slots, 1))


@dataclass(frozen=True)
class Scenario:
    net: ConflictNetwork
    radios: tuple[LinkRadio, ...]
    arrivals: ArrivalProcess
    policy: str
    horizon: int
    seed: int
    q0: tuple[float, ...] | None = None
    u0: tuple[float, ...] | None = None
    u_departures: str = "constant"  # or "iid"
    trace_stride: int | None = None
    log_slots: bool = False

    def __post_init__(self):
        n = self.net.num_links
        if len(self.radios) != n:
            raise ValueError("radios must match the link count")
        if len(self.arrivals.means) != n:
            raise ValueError("arrival means must match the link count")
        if self.policy not in POLICIES:
            raise ValueError(f"unknown policy {self.policy!r}")
        if self.horizon < 1:
            raise ValueError("horizon must be positive")
        if self.u_departures not in ("constant", "iid"):
            raise ValueError("u_departures must be 'constant' or 'iid'")
        for name, vec in (("q0", self.q0), ("u0", self.u0)):
            if vec is not None and (len(vec) != n or min(vec) < 0):
                raise ValueError(f"{name} must be {n} nonnegative entries")


@dataclass(frozen=True)
class RunMetrics:
    horizon: int
    avg_sum_q: float
    avg_power: tuple[float, ...]
    avg_arrivals: tuple[float, ...]
    max_u: tuple[float, ...]
    final_q: tuple[float, ...]
    final_u: tuple[float, ...]
    total_served: tuple[float, ...]
    total_arrivals: tuple[float, ...]
    trace_slots: tuple[int, ...]
    trace_sum_q: tuple[float, ...]
    trace_v: tuple[float, ...]
    slot_log: tuple | None = None


def run(scenario: Scenario) -> RunMetrics:
    """Simulate the scenario; deterministic given (scenario, seed)."""
    net = scenario.net
    radios = scenario.radios
    n = net.num_links
    horizon = scenario.horizon
    policy = POLICIES[scenario.policy]

    root = np.random.SeedSequence(scenario.seed)
    arr_ss, tie_ss, dep_ss = root.spawn(3)
    arr_rng = np.random.default_rng(arr_ss)
    tie_rng = random.Random(int(tie_ss.generate_state(1)[0]))
    dep_rng = np.random.default_rng(dep_ss) if scenario.u_departures == "iid" else None

    q = list(scenario.q0) if scenario.q0 is not None else [0.0] * n
    u = list(scenario.u0) if scenario.u0 is not None else [0.0] * n
    budgets = [rd.p_avg for rd in radios]

    stride = scenario.trace_stride or max(1, horizon // 4096)
    sum_q_acc = 0.0
    power_acc = [0.0] * n
    arr_acc = [0.0] * n
    served_acc = [0.0] * n
    max_u = list(u)
    trace_slots: list[int] = []
    trace_sum_q: list[float] = []
    trace_v: list[float] = []
    log: list | None = [] if scenario.log_slots else None

    links = range(n)
    chunk = 16384
    t = 0
    while t < horizon:
        n_slots = min(chunk, horizon - t)
        arr_block = scenario.arrivals.draw(arr_rng, t, n_slots)
        if dep_rng is not None:
            dep_block = dep_rng.exponential(scale=budgets, size=(n_slots, n))
        for i in range(n_slots):
            ai = arr_block[i].tolist()
            for l in links:
                q[l] += ai[l]
                arr_acc[l] += ai[l]
            decision = policy(SchedulerInput(tuple(q), tuple(u), net, radios), tie_rng)
            qsum = sum(q)
            sum_q_acc += qsum
            if t % stride == 0:
                trace_slots.append(t)
                trace_sum_q.append(qsum)
                trace_v.append(max(qi * qi + ui * ui for qi, ui in zip(q, u)))
            deps = dep_block[i].tolist() if dep_rng is not None else budgets
            power = decision.power
            rate = decision.rate
            if log is not None:
                log.append(
                    (
                        t,
                        tuple(q),
                        tuple(u),
                        power,
                        rate,
                        tuple(ai),
                        tuple(min(q[l], rate[l]) for l in links),
                    )
                )
            for l in links:
                served = rate[l] if rate[l] < q[l] else q[l]
                served_acc[l] += served
                q[l] -= served
                p = power[l]
                power_acc[l] += p
                nu = u[l] - deps[l]
                nu = (nu if nu > 0.0 else 0.0) + p
                u[l] = nu
                if nu > max_u[l]:
                    max_u[l] = nu
            t += 1

    return RunMetrics(
        horizon=horizon,
        avg_sum_q=sum_q_acc / horizon,
        avg_power=tuple(v / horizon for v in power_acc),
        avg_arrivals=tuple(v / horizon for v in arr_acc),
        max_u=tuple(max_u),
        final_q=tuple(q),
        final_u=tuple(u),
        total_served=tuple(served_acc),
        total_arrivals=tuple(arr_acc),
        trace_slots=tuple(trace_slots),
        trace_sum_q=tuple(trace_sum_q),
        trace_v=tuple(trace_v),
        slot_log=tuple(log) if log is not None else None,
    )


def stability_verdict(
    metrics: RunMetrics,
    window: float = 0.5,
    stable_threshold: float = 0.01,
    unstable_threshold: float = 0.1,
) -> str:
    """Classify a run as stable / unstable / inconclusive.

    Least-squares slope of the total-backlog trace over the trailing
    `window` fraction of the horizon, normalized by the mean per-link
    arrival rate.  Short horizons (< 1000 slots) are not classifiable.
    """
    if metrics.horizon < 1000:
        raise ValueError("horizon too short to classify (need >= 1000 slots)")
    if not 0 < window < 1:
        raise ValueError("window must be a fraction in (0, 1)")
    if stable_threshold >= unstable_threshold:
        raise ValueError("stable threshold must sit below the unstable one")
    cut = (1.0 - window) * metrics.horizon
    xs = np.array(metrics.trace_slots, dtype=float)
    ys = np.array(metrics.trace_sum_q, dtype=float)
    keep = xs >= cut
    if keep.sum() < 8:
        raise ValueError("trace too sparse in the trailing window")
    slope = float(np.polyfit(xs[keep], ys[keep], 1)[0])
    scale = float(np.mean(metrics.avg_arrivals))
    if scale <= 0:
        scale = 1.0
    normalized = slope / scale
    if normalized < stable_threshold:
        return "stable"
    if normalized > unstable_threshold:
        return "unstable"
    return "inconclusive"


@dataclass(frozen=True)
class ComplianceReport:
    ok: tuple[bool, ...]
    avg_power: tuple[float, ...]
    budget: tuple[float, ...]
    max_u: tuple[float, ...]

    @property
    def all_ok(self) -> bool:
        return all(self.ok)


def power_compliance(metrics: RunMetrics, p_avg, tol: float = 0.01) -> ComplianceReport:
    """Flag links whose time-average power exceeds budget + tol."""
    p_avg = tuple(float(v) for v in p_avg)
    if len(p_avg) != len(metrics.avg_power):
        raise ValueError("budget vector must match the link count")
    ok = tuple(ap <= b + tol for ap, b in zip(metrics.avg_power, p_avg))
    return ComplianceReport(
        ok=ok, avg_power=metrics.avg_power, budget=p_avg, max_u=metrics.max_u
    )
