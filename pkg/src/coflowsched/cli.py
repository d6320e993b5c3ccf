"""Command line front end.

Every command reads and writes the JSON instance format, exits 0 on
success, and on failure writes one JSON error line to stderr and exits
nonzero. Outputs carry no timestamps, so a rerun with the same arguments
produces byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

from . import experiments, metrics, model, workload
from .oracle import enumerate_best, trivial_lower_bound
from .ordering import Permutation, order_coflow_level, order_flow_level
from .scheduling import ScheduleResult, assign_cdls, assign_fdls, simulate


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, RuntimeError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coflowsched",
        description="Order, place, and simulate coflows on parallel network cores.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a synthetic instance as JSON")
    p.add_argument("--coflows", type=int, default=25)
    p.add_argument("--ports", type=int, default=10)
    p.add_argument("--cores", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--density",
        choices=workload.DENSITY_MODES,
        help="use the density generator instead of the default template mix",
    )
    p.add_argument("--release-max", type=int, default=0)
    p.add_argument("--out", type=Path, help="directory for instance.json (default: stdout)")
    p.set_defaults(handler=cmd_generate)

    p = sub.add_parser("order", help="compute the processing order and its dual bound")
    p.add_argument("instance", type=Path)
    _common_flags(p)
    p.add_argument("--emit-trace", action="store_true", help="also write the dual trace JSONL")
    p.set_defaults(handler=cmd_order)

    p = sub.add_parser("schedule", help="order, place, and simulate one instance")
    p.add_argument("instance", type=Path)
    _common_flags(p)
    p.add_argument("--emit-timeline", action="store_true", help="also write the timeline CSV")
    p.set_defaults(handler=cmd_schedule)

    p = sub.add_parser("trace-import", help="convert a shuffle trace to instance JSON")
    p.add_argument("trace", type=Path)
    p.add_argument("--ports", type=int, default=150)
    p.add_argument("--cores", type=int, default=5)
    p.add_argument("--seed", type=int, default=0, help="seed for the drawn coflow weights")
    p.add_argument("--threshold", type=int, help="drop coflows with fewer flows")
    p.add_argument("--out", type=Path)
    p.set_defaults(handler=cmd_trace_import)

    p = sub.add_parser("experiment", help="run a batch experiment into CSV/JSON files")
    p.add_argument("kind", choices=experiments.KINDS)
    p.add_argument("--granularity", choices=experiments.GRANULARITIES, default="flow")
    p.add_argument("--kappa", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cores", type=int, nargs="+")
    p.add_argument("--ports", type=int)
    p.add_argument("--coflows", type=int, nargs="+")
    p.add_argument("--instances", type=int)
    p.add_argument("--density", choices=workload.DENSITY_MODES)
    p.add_argument("--threshold", type=int, nargs="+")
    p.add_argument("--trace", type=Path, help="trace file for trace-threshold runs")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(handler=cmd_experiment)

    p = sub.add_parser("oracle-check", help="compare bounds on an enumerable instance")
    p.add_argument("instance", type=Path)
    p.add_argument("--kappa", type=float, default=0.5)
    p.set_defaults(handler=cmd_oracle_check)
    return parser


def _common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--granularity", choices=experiments.GRANULARITIES, default="flow")
    p.add_argument("--kappa", type=float, default=0.5)
    p.add_argument("--out", type=Path, help="output directory (default: stdout)")


def _emit(args, name: str, text: str) -> None:
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / name).write_text(text)


def _load(path: Path) -> model.Instance:
    with open(path) as fp:
        return model.load_instance(fp)


def _order(instance: model.Instance, granularity: str, kappa: float) -> Permutation:
    fn = order_flow_level if granularity == "flow" else order_coflow_level
    return fn(instance, kappa)


def cmd_generate(args) -> int:
    if args.density is None:
        instance = workload.gen_mix(
            args.coflows, args.ports, args.seed,
            cores=args.cores, release_max=args.release_max,
        )
    else:
        instance = workload.gen_density(
            args.coflows, args.ports, args.density, args.seed,
            cores=args.cores, release_max=args.release_max,
        )
    _emit(args, "instance.json", model.dumps_instance(instance))
    return 0


def cmd_order(args) -> int:
    instance = _load(args.instance)
    perm = _order(instance, args.granularity, args.kappa)
    doc = {
        "granularity": args.granularity,
        "kappa": args.kappa,
        "order": perm.order,
        "dual_cost": perm.dual_cost,
    }
    if args.emit_trace:
        if args.out is None:
            raise ValueError("--emit-trace needs --out")
        args.out.mkdir(parents=True, exist_ok=True)
        trace_path = args.out / f"dual_trace_{args.granularity}.jsonl"
        with open(trace_path, "w") as fp:
            for rec in perm.trace.record_dicts():
                fp.write(json.dumps(rec) + "\n")
    _emit(args, f"order_{args.granularity}.json", json.dumps(doc, indent=2) + "\n")
    return 0


def _result_dict(result: ScheduleResult) -> dict:
    return {
        "objective": result.objective,
        "coflow_completion": {str(k): t for k, t in sorted(result.coflow_completion.items())},
        "flow_completion": [
            {"i": key.i, "j": key.j, "k": key.k, "t": t}
            for key, t in sorted(result.flow_completion.items())
        ],
    }


def cmd_schedule(args) -> int:
    instance = _load(args.instance)
    perm = _order(instance, args.granularity, args.kappa)
    assignment = (
        assign_fdls(instance, perm) if args.granularity == "flow" else assign_cdls(instance, perm)
    )
    result = simulate(instance, perm, assignment, emit_timeline=args.emit_timeline)
    doc = {
        "granularity": args.granularity,
        "kappa": args.kappa,
        "order": perm.order,
        "dual_cost": perm.dual_cost,
        "ratio": metrics.ratio(result.objective, perm.dual_cost),
        **_result_dict(result),
    }
    if args.emit_timeline:
        if args.out is None:
            raise ValueError("--emit-timeline needs --out")
        args.out.mkdir(parents=True, exist_ok=True)
        with open(args.out / f"timeline_{args.granularity}.csv", "w", newline="") as fp:
            writer = csv.writer(fp)
            writer.writerow(["start", "end", "i", "j", "k", "core"])
            for seg in result.timeline:
                writer.writerow(
                    [repr(seg.start), repr(seg.end), seg.flow.i, seg.flow.j, seg.flow.k, seg.core]
                )
    _emit(args, f"schedule_{args.granularity}.json", json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_trace_import(args) -> int:
    with open(args.trace) as fp:
        instance = workload.parse_trace(fp, args.ports, weight_seed=args.seed, cores=args.cores)
    if args.threshold is not None:
        instance = workload.filter_min_flows(instance, args.threshold)
    _emit(args, "instance.json", model.dumps_instance(instance))
    return 0


def cmd_experiment(args) -> int:
    overrides = {}
    if args.coflows:
        overrides["coflows"] = tuple(args.coflows)
    if args.cores:
        overrides["cores"] = tuple(args.cores)
    if args.ports is not None:
        overrides["ports"] = args.ports
    if args.instances is not None:
        overrides["instances"] = args.instances
    if args.density is not None:
        overrides["density"] = args.density
    if args.threshold:
        overrides["thresholds"] = tuple(args.threshold)
    if args.trace is not None:
        overrides["trace_path"] = str(args.trace)
    config = experiments.default_config(
        args.kind, granularity=args.granularity,
        seed=args.seed, kappa=args.kappa, **overrides,
    )
    report = experiments.run_experiment(config, out_dir=args.out)
    json.dump(metrics.aggregates_dict(report), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def cmd_oracle_check(args) -> int:
    instance = _load(args.instance)
    flow_perm = order_flow_level(instance, args.kappa)
    coflow_perm = order_coflow_level(instance, args.kappa)
    fdls = simulate(instance, flow_perm, assign_fdls(instance, flow_perm))
    cdls = simulate(instance, coflow_perm, assign_cdls(instance, coflow_perm))
    best_flow = enumerate_best(instance, "flow")
    best_coflow = enumerate_best(instance, "coflow")
    tol = 1e-9
    checks = {
        "dual_flow_below_best_flow": flow_perm.dual_cost <= best_flow.best_cost + tol,
        "dual_coflow_below_best_coflow": coflow_perm.dual_cost
        <= best_coflow.best_cost + tol,
        "trivial_bound_below_best_flow": best_flow.lower_bound
        <= best_flow.best_cost + tol,
        "best_flow_below_fdls": best_flow.best_cost <= fdls.objective + tol,
        "best_coflow_below_cdls": best_coflow.best_cost <= cdls.objective + tol,
    }
    doc = {
        "kappa": args.kappa,
        "dual_cost_flow": flow_perm.dual_cost,
        "dual_cost_coflow": coflow_perm.dual_cost,
        "trivial_lower_bound": trivial_lower_bound(instance),
        "best_cost_flow": best_flow.best_cost,
        "best_cost_coflow": best_coflow.best_cost,
        "best_order_flow": best_flow.best_order,
        "best_order_coflow": best_coflow.best_order,
        "schedules_examined": best_flow.schedules_examined
        + best_coflow.schedules_examined,
        "fdls_objective": fdls.objective,
        "cdls_objective": cdls.objective,
        "checks": checks,
        "ok": all(checks.values()),
    }
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if doc["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
