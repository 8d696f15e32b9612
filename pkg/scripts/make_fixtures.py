"""Regenerate tests/fixtures/*.json from the brute-force evaluator in tests/oracle.py.

The package is not imported for any expected value; it only provides the
17-digit JSON writer.
"""
import math
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))
sys.path.insert(0, str(ROOT / "src"))

import oracle  # noqa: E402
from geoshape.io import dumps  # noqa: E402

OUT = ROOT / "tests" / "fixtures"
FULL = (1, 2, 4, 4, 2, 16, 4)


def polygon(N, rng, radius=1.0, jitter=0.15, center=(0.0, 0.0)):
    pts = []
    for v in range(N):
        th = 2 * math.pi * v / N + rng.uniform(-jitter, jitter) / N
        r = radius * (1 + rng.uniform(-jitter, jitter))
        pts.append([center[0] + r * math.cos(th), center[1] + r * math.sin(th)])
    return pts


def random_path(N, T, rng):
    a = polygon(N, rng)
    b = polygon(N, rng, radius=1.3, center=(rng.uniform(-1, 1), rng.uniform(-1, 1)))
    path = []
    for t in range(T + 1):
        s = t / T
        path.append([[(1 - s) * p[i] + s * q[i] + (0.05 * rng.uniform(-1, 1) if 0 < t < T else 0.0)
                      for i in range(2)] for p, q in zip(a, b)])
    return path


def expected(path, coeff):
    r = oracle.evaluate(path, coeff)
    T, N = r["T"], r["N"]
    fields = {}
    for name in ("a", "a_s", "a_ss"):
        arr = [[[[0.0, 0.0] for _ in range(N)] for _ in range(2)] for _ in range(T)]
        for (t, s, v, w), val in r[name].items():
            i, j, k, col = oracle.to_array_index(t, s, v, w, N)
            arr[i][j][k][col] = val
        fields[name] = arr
    return {
        "total_energy": r["total_energy"],
        "penalty": r["penalty"],
        "objective": r["objective"],
        "per_step": [r["energy"][t] for t in range(1, T + 1)],
        "vol_edge": [[r["vol_edge"][t, v] for v in range(1, N + 1)] for t in range(1, T + 2)],
        "kappa": [[r["kappa"][t, v] for v in range(1, N + 1)] for t in range(1, T + 2)],
        "kappa_s": [[r["kappa_s"][t, v] for v in range(1, N + 1)] for t in range(1, T + 2)],
        **fields,
    }


def main():
    rng = random.Random(20240611)
    OUT.mkdir(parents=True, exist_ok=True)
    cases = {
        # hand-built: unit square moving right and growing
        "square_n4_t1": [[[0, 0], [1, 0], [1, 1], [0, 1]],
                         [[0.5, 0], [2, 0.25], [2.25, 1.5], [0.25, 1.75]]],
        "random_n5_t2": random_path(5, 2, rng),
        "random_n6_t3": random_path(6, 3, rng),
        "random_n7_t1": random_path(7, 1, rng),
        "random_n8_t3": random_path(8, 3, rng),
    }
    for name, path in cases.items():
        for label, coeff in (("metric4", FULL), ("mixed", (1.5, 0.5, 2, 3, 0.75, 5, 2.5))):
            data = {"slices": path, "coeffs": list(coeff), "expected": expected(path, coeff)}
            (OUT / f"{name}_{label}.json").write_text(dumps(data), encoding="utf-8")
            print("wrote", f"{name}_{label}.json")


if __name__ == "__main__":
    main()
