"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Each row reports the best of N runs per backend and checks that both
backends return identical results.
"""
from __future__ import annotations

import argparse
import time

from jmobius import kernels
from jmobius.matroids import dual, flats_lattice, graphic, k33_edges, subspace_lattice
from jmobius.poset import boolean_lattice
from jmobius.trincidence import j_fast, zeta3


def _best(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def _cases():
    yield "B5", boolean_lattice(5)
    yield "L_2^4", subspace_lattice(2, 4).poset
    yield "M*(K33)", flats_lattice(dual(graphic(k33_edges()))).poset


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not kernels.compiled_available():
        print("compiled extension not built; only the Python backend is available")
        return 1

    print(f"{'object':<10} {'kernel':<10} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for name, p in _cases():
        mu = kernels.mobius_matrix(p)
        z3, J = zeta3(p).values, j_fast(p).values
        jobs = {
            "mobius": lambda: kernels.mobius_matrix(p),
            "tri_mul": lambda: kernels.tri_mul(p, z3, J),
            "jmobius": lambda: kernels.jmobius_coeffs(p, mu),
        }
        for kname, job in jobs.items():
            with kernels.use_backend("python"):
                tp, rp = _best(job, args.repeat)
            with kernels.use_backend("compiled"):
                tc, rc = _best(job, args.repeat)
            assert rp == rc, f"backends disagree on {kname} for {name}"
            print(f"{name:<10} {kname:<10} {tp:>10.4f} {tc:>11.4f} {tp / max(tc, 1e-9):>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
