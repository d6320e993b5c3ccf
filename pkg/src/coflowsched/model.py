"""Domain model: coflows, instances, port load tables, JSON round-trip.

Ports, coflow ids, and core ids are 1-based everywhere they cross a module
boundary or a file format. Internal arrays pad index 0 so that external ids
index them directly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Any, NamedTuple

import numpy as np


class FlowKey(NamedTuple):
    """One flow: input port i, output port j, owning coflow k."""

    i: int
    j: int
    k: int


@dataclass(frozen=True)
class Coflow:
    """A weighted group of flows released together.

    ``demands`` maps (input port, output port) to a positive integer size in
    data units. A pair that carries no traffic is absent, never stored as 0.
    Instances are treated as immutable after construction.
    """

    id: int
    release: int
    weight: float
    demands: dict[tuple[int, int], int] = field(default_factory=dict)

    def flows(self) -> list[tuple[int, int, int]]:
        """Flows as (i, j, size), sorted by (i, j)."""
        return sorted((i, j, d) for (i, j), d in self.demands.items())

    @property
    def flow_count(self) -> int:
        return len(self.demands)

    @property
    def max_demand(self) -> int:
        return max(self.demands.values(), default=0)

    @property
    def total_demand(self) -> int:
        return sum(self.demands.values())


@dataclass(frozen=True)
class Instance:
    """A scheduling instance: m identical cores, N ports per side, n coflows.

    Coflow ids must be exactly 1..n in list order; ``validate`` enforces this
    along with positivity of sizes and weights.
    """

    cores: int
    ports: int
    coflows: tuple[Coflow, ...]

    @property
    def n(self) -> int:
        return len(self.coflows)

    @property
    def flow_count(self) -> int:
        return sum(c.flow_count for c in self.coflows)

    def coflow(self, k: int) -> Coflow:
        c = self.coflows[k - 1]
        if c.id != k:
            raise ValueError(f"coflow ids out of order: expected {k}, found {c.id}")
        return c

    def flow_keys(self) -> list[FlowKey]:
        return [FlowKey(i, j, c.id) for c in self.coflows for (i, j) in sorted(c.demands)]


@dataclass(frozen=True)
class PortLoadTable:
    """Per-coflow and aggregate port loads.

    Arrays are indexed [k, i] / [k, j] with row 0 and column 0 unused, so
    1-based ids index directly. Totals are summed over all coflows.
    """

    input_by_coflow: np.ndarray
    output_by_coflow: np.ndarray
    input_total: np.ndarray
    output_total: np.ndarray

    def input_load(self, i: int, k: int) -> int:
        return int(self.input_by_coflow[k, i])

    def output_load(self, j: int, k: int) -> int:
        return int(self.output_by_coflow[k, j])


def compute_loads(instance: Instance) -> PortLoadTable:
    """Aggregate demands into port load vectors (referentially transparent)."""
    n, ports = instance.n, instance.ports
    inp = np.zeros((n + 1, ports + 1), dtype=np.int64)
    out = np.zeros((n + 1, ports + 1), dtype=np.int64)
    for c in instance.coflows:
        for (i, j), d in c.demands.items():
            inp[c.id, i] += d
            out[c.id, j] += d
    return PortLoadTable(
        input_by_coflow=inp,
        output_by_coflow=out,
        input_total=inp.sum(axis=0),
        output_total=out.sum(axis=0),
    )


def _is_int(x: Any) -> bool:
    return isinstance(x, (int, np.integer)) and not isinstance(x, bool)


def validate(instance: Instance) -> list[str]:
    """Return a list of violations, empty when the instance is well formed."""
    bad: list[str] = []
    if not _is_int(instance.cores) or instance.cores < 1:
        bad.append(f"cores must be a positive integer, got {instance.cores!r}")
    if not _is_int(instance.ports) or instance.ports < 1:
        bad.append(f"ports must be a positive integer, got {instance.ports!r}")
    for pos, c in enumerate(instance.coflows, start=1):
        where = f"coflow {c.id}"
        if c.id != pos:
            bad.append(f"coflow ids must be 1..n in order: position {pos} holds id {c.id}")
        if not _is_int(c.release) or c.release < 0:
            bad.append(f"{where}: release must be a nonnegative integer, got {c.release!r}")
        if not (c.weight > 0):
            bad.append(f"{where}: weight must be positive, got {c.weight!r}")
        for (i, j), d in c.demands.items():
            spot = f"{where} flow ({i},{j})"
            if not (_is_int(i) and _is_int(j)):
                bad.append(f"{spot}: ports must be integers")
                continue
            if not (1 <= i <= instance.ports and 1 <= j <= instance.ports):
                bad.append(f"{spot}: port out of range 1..{instance.ports}")
            if not _is_int(d):
                bad.append(f"{spot}: size must be an integer, got {d!r}")
            elif d == 0:
                bad.append(f"{spot}: zero demand must be absent")
            elif d < 0:
                bad.append(f"{spot}: size must be positive, got {d}")
    return bad


def require_valid(instance: Instance) -> None:
    bad = validate(instance)
    if bad:
        raise ValueError("invalid instance: " + "; ".join(bad))


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    """Canonical JSON form: coflows by id, flows sorted by (i, j)."""
    return {
        "cores": instance.cores,
        "ports": instance.ports,
        "coflows": [
            {
                "id": c.id,
                "release": c.release,
                "weight": c.weight,
                "flows": [{"i": i, "j": j, "size": d} for i, j, d in c.flows()],
            }
            for c in instance.coflows
        ],
    }


def instance_from_dict(data: dict[str, Any]) -> Instance:
    try:
        coflows = []
        for entry in data["coflows"]:
            demands: dict[tuple[int, int], int] = {}
            for f in entry["flows"]:
                key = (f["i"], f["j"])
                if key in demands:
                    raise ValueError(
                        f"coflow {entry['id']}: duplicate flow on port pair {key}"
                    )
                demands[key] = f["size"]
            coflows.append(
                Coflow(
                    id=entry["id"],
                    release=entry["release"],
                    weight=entry["weight"],
                    demands=demands,
                )
            )
        instance = Instance(cores=data["cores"], ports=data["ports"], coflows=tuple(coflows))
    except KeyError as exc:
        raise ValueError(f"instance JSON missing field {exc}") from exc
    require_valid(instance)
    return instance


def dump_instance(instance: Instance, fp: IO[str]) -> None:
    json.dump(instance_to_dict(instance), fp, indent=2)
    fp.write("\n")


def dumps_instance(instance: Instance) -> str:
    return json.dumps(instance_to_dict(instance), indent=2) + "\n"


def load_instance(fp: IO[str]) -> Instance:
    return instance_from_dict(json.load(fp))


def loads_instance(text: str) -> Instance:
    return instance_from_dict(json.loads(text))
