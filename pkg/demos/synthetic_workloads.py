"""Tour of the synthetic instance generators.

gen_mix draws each coflow from four templates crossing port width
(narrow/wide) with flow size (short/long); gen_density instead controls the
number of flows per coflow. Both are deterministic in their seed. Run:
python3 demos/synthetic_workloads.py
"""

from collections import Counter

from coflowsched.model import dumps_instance
from coflowsched.workload import gen_density, gen_mix, mix_templates

print("template mix (width range x size range -> probability):")
for t in mix_templates(ports=10):
    print(
        f"  width {t.width_min}..{t.width_max}, size {t.size_min}..{t.size_max}"
        f" -> {t.probability:.0%}"
    )
print()

inst = gen_mix(8, 10, seed=7, cores=5)
print("gen_mix(8 coflows, 10 ports, seed 7):")
for c in inst.coflows:
    ins = {i for i, _ in c.demands}
    outs = {j for _, j in c.demands}
    print(
        f"  coflow {c.id}: {len(ins)}x{len(outs)} port grid, {c.flow_count} flows, "
        f"sizes {min(c.demands.values())}..{max(c.demands.values())}, weight {c.weight}"
    )
print()

# Determinism contract: same arguments, same instance, byte for byte.
again = gen_mix(8, 10, seed=7, cores=5)
print(f"same seed reproduces the instance byte-identically: "
      f"{dumps_instance(inst) == dumps_instance(again)}")
print()

for mode in ("sparse", "dense", "combined"):
    sample = gen_density(200, 10, mode, seed=1)
    counts = [c.flow_count for c in sample.coflows]
    buckets = Counter("1..10" if c <= 10 else "11..100" for c in counts)
    print(
        f"gen_density {mode:8s}: flow counts {min(counts):3d}..{max(counts):3d}, "
        f"split {dict(sorted(buckets.items()))}"
    )
print()

spread = gen_mix(6, 10, seed=3, release_max=40)
print("release_max=40 spreads arrivals:",
      [c.release for c in spread.coflows])
