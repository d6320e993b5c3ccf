"""Primal-dual construction of the coflow processing order.

The permutation is built from the last position to the first. Each iteration
looks at the most loaded input and output ports over the still-unscheduled
coflows, picks the bottleneck side, and either places the latest-released
coflow there (alpha branch, when its release dominates the bottleneck load)
or raises dual variables until one coflow's budget is exhausted and places
that coflow (beta branch). The accumulated dual objective is a feasible dual
value and therefore a lower bound on the optimal total weighted completion
time of any schedule; no exponential set family is ever materialized.

Two granularities share the skeleton and produce the same permutation. They
differ only in the dual increments: the flow-level form prices individual
flow sizes at the bottleneck port, the coflow-level form prices aggregated
per-coflow port loads.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .model import Instance, require_valid


def set_function_flow(sizes, cores: int) -> float:
    """(d(S)^2 + d2(S))/(2m) over a collection of flow sizes.

    d(S) is the total size and d2(S) the sum of squared sizes. This is the
    price of processing the set S serially at one port, averaged over m
    cores: always at least d(S)^2/(2m).
    """
    total = 0.0
    sq = 0.0
    for d in sizes:
        total += d
        sq += d * d
    return (total * total + sq) / (2.0 * cores)


def set_function_coflow(loads, cores: int) -> float:
    """Same shape as set_function_flow but over per-coflow port loads."""
    return set_function_flow(loads, cores)


@dataclass
class IterationRecord:
    """One iteration of the right-to-left construction.

    value is alpha or beta; increment is the dual objective contribution.
    bottleneck_load is the selected coflow's load at the bottleneck port and
    port_load the total remaining load there; set_cost is the set-function
    value priced by a beta step (0.0 on alpha steps). slack is w - delta of
    the selected coflow at selection time and min_slack the minimum slack
    over all still-unscheduled coflows after the dual update.
    """

    r: int
    coflow: int
    branch: str
    side: str
    port: int
    value: float
    increment: float
    bottleneck_load: int
    port_load: int
    set_cost: float
    slack: float
    min_slack: float


@dataclass
class DualTrace:
    kappa: float
    records: list[IterationRecord] = field(default_factory=list)
    delta: dict[int, float] = field(default_factory=dict)
    dual_cost: float = 0.0

    def record_dicts(self) -> list[dict]:
        return [asdict(rec) for rec in self.records]


@dataclass
class Permutation:
    """Processing order (order[0] is handled first) plus its dual certificate."""

    order: list[int]
    dual_cost: float
    trace: DualTrace

    def position(self) -> dict[int, int]:
        """coflow id -> 0-based position in the processing order."""
        return {k: pos for pos, k in enumerate(self.order)}


def order_flow_level(instance: Instance, kappa: float = 0.5) -> Permutation:
    """Order coflows with dual increments priced on individual flow sizes."""
    return _permute(instance, kappa, coflow_level=False)


def order_coflow_level(instance: Instance, kappa: float = 0.5) -> Permutation:
    """Order coflows with dual increments priced on per-coflow port loads."""
    return _permute(instance, kappa, coflow_level=True)


def _demand_arrays(instance: Instance):
    """Per-coflow port aggregates, padded so 1-based ids index directly."""
    n, ports = instance.n, instance.ports
    load_in = np.zeros((n + 1, ports + 1), dtype=np.int64)
    load_out = np.zeros((n + 1, ports + 1), dtype=np.int64)
    sq_in = np.zeros((n + 1, ports + 1), dtype=np.int64)
    sq_out = np.zeros((n + 1, ports + 1), dtype=np.int64)
    max_in = np.zeros((n + 1, ports + 1), dtype=np.int64)
    max_out = np.zeros((n + 1, ports + 1), dtype=np.int64)
    for c in instance.coflows:
        k = c.id
        for (i, j), d in c.demands.items():
            load_in[k, i] += d
            load_out[k, j] += d
            sq_in[k, i] += d * d
            sq_out[k, j] += d * d
            if d > max_in[k, i]:
                max_in[k, i] = d
            if d > max_out[k, j]:
                max_out[k, j] = d
    return load_in, load_out, sq_in, sq_out, max_in, max_out


def _permute(instance: Instance, kappa: float, coflow_level: bool) -> Permutation:
    if kappa <= 0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    require_valid(instance)
    n, m = instance.n, instance.cores
    trace = DualTrace(kappa=kappa)
    if n == 0:
        return Permutation(order=[], dual_cost=0.0, trace=trace)

    load_in, load_out, sq_in, sq_out, max_in, max_out = _demand_arrays(instance)
    weights = np.zeros(n + 1)
    releases = np.full(n + 1, -1, dtype=np.int64)
    for c in instance.coflows:
        weights[c.id] = c.weight
        releases[c.id] = c.release

    # Aggregates over the unscheduled set, updated in O(ports) per removal.
    tot_in = load_in.sum(axis=0)
    tot_out = load_out.sum(axis=0)
    flowsq_in = sq_in.sum(axis=0)
    flowsq_out = sq_out.sum(axis=0)
    loadsq_in = (load_in * load_in).sum(axis=0)
    loadsq_out = (load_out * load_out).sum(axis=0)

    delta = np.zeros(n + 1)
    unsched = np.ones(n + 1, dtype=bool)
    unsched[0] = False
    order = [0] * n
    dual = 0.0

    for r in range(n, 0, -1):
        mu1 = int(np.argmax(tot_in[1:])) + 1
        mu2 = int(np.argmax(tot_out[1:])) + 1
        latest = int(np.argmax(np.where(unsched, releases, -1)))
        if tot_in[mu1] > tot_out[mu2]:
            side, port = "input", mu1
            port_total = int(tot_in[mu1])
            loads = load_in[:, mu1]
            flow_sq = int(flowsq_in[mu1])
            load_sq = int(loadsq_in[mu1])
            latest_peak = int(max_in[latest, mu1])
        else:
            side, port = "output", mu2
            port_total = int(tot_out[mu2])
            loads = load_out[:, mu2]
            flow_sq = int(flowsq_out[mu2])
            load_sq = int(loadsq_out[mu2])
            latest_peak = int(max_out[latest, mu2])

        if releases[latest] > kappa * port_total / m:
            chosen = latest
            branch = "alpha"
            value = float(weights[chosen] - delta[chosen])
            head = int(loads[chosen]) if coflow_level else latest_peak
            increment = value * (float(releases[chosen]) + head)
            set_cost = 0.0
        else:
            branch = "beta"
            candidates = unsched & (loads > 0)
            if candidates.any():
                ratios = np.full(n + 1, np.inf)
                ratios[candidates] = (weights[candidates] - delta[candidates]) / loads[
                    candidates
                ]
                chosen = int(np.argmin(ratios))
                value = float(ratios[chosen])
                if coflow_level:
                    set_cost = (load_sq + float(port_total) ** 2) / (2.0 * m)
                else:
                    set_cost = (flow_sq + float(port_total) ** 2) / (2.0 * m)
                increment = value * set_cost
                grow = unsched.copy()
                grow[chosen] = False
                delta[grow] += value * loads[grow]
            else:
                # Every remaining coflow is empty at the bottleneck port,
                # which only happens when they are all flowless: take the
                # smallest slack, raise nothing.
                chosen = int(np.argmin(np.where(unsched, weights - delta, np.inf)))
                value = 0.0
                increment = 0.0
                set_cost = 0.0

        dual += increment
        order[r - 1] = chosen
        trace.records.append(
            IterationRecord(
                r=r,
                coflow=chosen,
                branch=branch,
                side=side,
                port=port,
                value=value,
                increment=increment,
                bottleneck_load=int(loads[chosen]),
                port_load=port_total,
                set_cost=set_cost,
                slack=float(weights[chosen] - delta[chosen]),
                min_slack=float((weights - delta)[unsched].min()),
            )
        )
        trace.delta[chosen] = float(delta[chosen])

        unsched[chosen] = False
        tot_in -= load_in[chosen]
        tot_out -= load_out[chosen]
        flowsq_in -= sq_in[chosen]
        flowsq_out -= sq_out[chosen]
        loadsq_in -= load_in[chosen] * load_in[chosen]
        loadsq_out -= load_out[chosen] * load_out[chosen]

    trace.dual_cost = dual
    trace.delta = {k: trace.delta[k] for k in sorted(trace.delta)}
    return Permutation(order=order, dual_cost=dual, trace=trace)
