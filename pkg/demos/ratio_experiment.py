"""Empirical approximation ratios against the self-computed dual bound.

Every experiment row divides a schedule's total weighted completion time by
the dual lower bound certified during ordering, so the reported ratios are
sound without knowing the true optimum. This script runs two small sweeps
and prints the aggregate statistics. Run: python3 demos/ratio_experiment.py
(takes a few seconds).
"""

from coflowsched.experiments import default_config, run_experiment


def show(title, report):
    print(title)
    print(f"  {'point':>8s} {'mean':>7s} {'min':>7s} {'Q1':>7s} "
          f"{'median':>7s} {'Q3':>7s} {'max':>7s}")
    for e in report.aggregates:
        print(
            f"  {str(e['point']):>8s} {e['mean']:7.3f} {e['min']:7.3f} "
            f"{e['q1']:7.3f} {e['median']:7.3f} {e['q3']:7.3f} {e['max']:7.3f}"
        )
    print()


# Ratio vs coflow count: more coflows amortize the dual's slack, so the
# mean ratio falls as n grows.
cfg = default_config("ratio-vs-coflows", granularity="flow", instances=30, seed=0)
show("flow-level ratio vs coflow count (30 instances per point, m=5, N=10):",
     run_experiment(cfg))

# Ratio vs core count, both granularities. Splitting flows keeps the ratio
# flat-ish; whole-coflow placement degrades roughly linearly in m, matching
# its weaker guarantee.
for granularity in ("flow", "coflow"):
    cfg = default_config(
        "ratio-vs-cores", granularity=granularity,
        cores=(1, 2, 5, 10), instances=30, seed=0,
    )
    show(f"{granularity}-level ratio vs core count (n=25):", run_experiment(cfg))

# Density modes: dense coflows (many flows) are the friendliest case for
# the flow-level policy.
cfg = default_config("density", granularity="flow", instances=30, seed=0)
show("flow-level ratio by density mode (n=25, m=5):", run_experiment(cfg))

print("run_experiment(cfg, out_dir=...) drops the same numbers as")
print("<kind>_<granularity>_rows.csv and _aggregates.json for plotting.")
