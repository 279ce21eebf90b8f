"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--repeat N] [--quick]

Each workload runs in a fresh interpreter per backend (the backend is fixed at
import) with a single worker thread, and reports the best of N wall times.
"""
import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "eig_sym n=128 (hamming k=7)": (
        "from specmono.graphs import hamming_halfcube; g = hamming_halfcube(7)",
        "from specmono.numerics import eig_sym; eig_sym(g.adjacency())",
    ),
    "eig_sym n=512 (hamming k=9)": (
        "from specmono.graphs import hamming_halfcube; g = hamming_halfcube(9)",
        "from specmono.numerics import eig_sym; eig_sym(g.adjacency())",
    ),
    "verify_monotone n=40": (
        "import numpy as np; from specmono.orders import PairOrder;"
        "from specmono.embeddings import monotone_embed_l2;"
        "o = PairOrder.random(40, np.random.default_rng(0)); e = monotone_embed_l2(o)",
        "from specmono.embeddings import verify_monotone; verify_monotone(e, o)",
    ),
    "mixing_scan n=20": (
        "from specmono.graphs import complete_bipartite; g = complete_bipartite(10, 10); g.eigenvalues()",
        "from specmono.graphs import mixing_scan; mixing_scan(g)",
    ),
    "brute_force_min_edits n=12": (
        "from specmono.graphs import double, cycle; g = double(cycle(6))",
        "from specmono.recovery import brute_force_min_edits; brute_force_min_edits(g)",
    ),
}
QUICK = ("eig_sym n=128 (hamming k=7)", "verify_monotone n=40", "brute_force_min_edits n=12")

RUNNER = """
import json, sys, time
{setup}
times = []
for _ in range({repeat}):
    t = time.perf_counter()
    {stmt}
    times.append(time.perf_counter() - t)
import specmono
print(json.dumps([specmono.BACKEND, min(times)]))
"""


def measure(backend, setup, stmt, repeat):
    env = dict(os.environ, SPECMONO_BACKEND=backend, SPECMONO_THREADS="1")
    code = RUNNER.format(setup=setup, stmt=stmt, repeat=repeat)
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    name, best = json.loads(out.stdout)
    return name, best


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--quick", action="store_true", help="skip the slow workloads")
    args = p.parse_args()
    names = QUICK if args.quick else tuple(WORKLOADS)
    print(f"{'workload':32} {'compiled':>12} {'python':>12} {'speedup':>9}")
    for name in names:
        setup, stmt = WORKLOADS[name]
        got, fast = measure("compiled", setup, stmt, args.repeat)
        _, slow = measure("python", setup, stmt, 1 if "512" in name else args.repeat)
        label = f"{fast * 1e3:10.1f}ms" if got == "compiled" else "   (no ext)"
        print(f"{name:32} {label:>12} {slow * 1e3:10.1f}ms {slow / fast:8.1f}x", flush=True)


if __name__ == "__main__":
    main()
