"""Compare the compiled and pure-Python kernels on the same workloads.

Each implementation runs in a fresh interpreter so memo tables start empty.

    python benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, time
from lattice_commutant import kernels, identities, subspaces, zhu

def timed(fn):
    kernels.clear_caches()
    t = time.perf_counter()
    fn()
    return time.perf_counter() - t

out = {"implementation": kernels.IMPLEMENTATION}
out["borcherds_exhaustive_w3"] = timed(lambda: identities.borcherds_suite_exhaustive(3))
out["borcherds_sampled_w7"] = timed(lambda: identities.borcherds_suite_sampled(7, 200, 0))
out["duality_w6"] = timed(lambda: subspaces.commutant_dimension_table("C", "VA1", 6, 12, K=3))
out["zhu_phi3_phi3"] = timed(lambda: zhu.zhu_product(subspaces.phi(3), subspaces.phi(3), "C"))
print(json.dumps(out))
"""


def run(pure: bool) -> dict:
    env = dict(os.environ)
    env.pop("LATTICE_COMMUTANT_PURE", None)
    if pure:
        env["LATTICE_COMMUTANT_PURE"] = "1"
    res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    best: dict = {}
    for pure in (False, True):
        for _ in range(args.repeat):
            r = run(pure)
            impl = r.pop("implementation")
            for k, v in r.items():
                best[(impl, k)] = min(v, best.get((impl, k), float("inf")))
    names = sorted({k for _, k in best})
    print(f"{'workload':<26}{'compiled':>10}{'python':>10}{'speedup':>9}")
    for k in names:
        c, p = best.get(("compiled", k)), best.get(("python", k))
        if c is None:
            print(f"{k:<26}{'n/a':>10}{p:>10.3f}")
            continue
        print(f"{k:<26}{c:>10.3f}{p:>10.3f}{p / c:>8.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
