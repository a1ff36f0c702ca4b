"""Timing comparison of the numba kernels against the numpy fallback.

Runs itself twice in subprocesses, once per backend, on the same
workload: GF(2) rref plus nullspace and GF(3) rref on random matrices
shaped like the coboundary matrices the cohomology layer produces.

    python3 benchmarks/bench_linalg.py
"""

import json
import os
import subprocess
import sys
import time

SIZES = [(200, 300), (500, 800), (1000, 1500), (2000, 3000)]
REPEAT = 3


def workload():
    import numpy as np

    from lsgenus import linalg as L

    rng = np.random.default_rng(42)
    warm = (rng.random((32, 40)) < 0.2).astype(np.uint8)
    L.gf2_rref(L.pack_bool(warm), 40)
    L.gf2_nullspace(L.pack_bool(warm), 40)
    L.modp_rref(warm.astype(np.int64), 3)
    rows = []
    for nr, nc in SIZES:
        dense = (rng.random((nr, nc)) < 0.05).astype(np.uint8)
        t0 = time.perf_counter()
        for _ in range(REPEAT):
            m = L.pack_bool(dense)
            L.gf2_rref(m, nc)
            L.gf2_nullspace(L.pack_bool(dense), nc)
        gf2 = (time.perf_counter() - t0) / REPEAT

        small = (rng.integers(0, 3, (nr // 2, nc // 2))).astype(np.int64)
        t0 = time.perf_counter()
        for _ in range(REPEAT):
            L.modp_rref(small.copy(), 3)
        gf3 = (time.perf_counter() - t0) / REPEAT
        rows.append({"shape": f"{nr}x{nc}", "gf2_s": gf2, "gf3_s": gf3})
    print(json.dumps({"backend": L.backend(), "rows": rows}))


def compare():
    results = {}
    for flag in ("1", "0"):
        env = dict(os.environ, LSGENUS_NUMBA=flag)
        r = subprocess.run(
            [sys.executable, __file__, "--workload"],
            capture_output=True, text=True, env=env, check=True,
        )
        data = json.loads(r.stdout.splitlines()[-1])
        results[data["backend"]] = data["rows"]

    names = list(results)
    print(f"{'shape':>12} | " + " | ".join(f"{n:>14}" for n in names)
          + " | speedup")
    print("-" * (12 + 17 * len(names) + 13))
    for i, row in enumerate(results[names[0]]):
        cells = [results[n][i]["gf2_s"] for n in names]
        ratio = cells[1] / cells[0] if cells[0] else float("inf")
        print(
            f"{row['shape']:>12} | "
            + " | ".join(f"{c * 1e3:>11.2f} ms" for c in cells)
            + f" | {ratio:>6.1f}x  (gf2)"
        )
        cells3 = [results[n][i]["gf3_s"] for n in names]
        ratio3 = cells3[1] / cells3[0] if cells3[0] else float("inf")
        print(
            f"{'':>12} | "
            + " | ".join(f"{c * 1e3:>11.2f} ms" for c in cells3)
            + f" | {ratio3:>6.1f}x  (gf3)"
        )


if __name__ == "__main__":
    if "--workload" in sys.argv:
        workload()
    else:
        compare()
