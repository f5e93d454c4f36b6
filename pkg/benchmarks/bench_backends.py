"""Timing comparison: pure-Python kernels vs the compiled extension.

Run as `python benchmarks/bench_backends.py`. Both implementations are
imported directly, so the CONELAB_BACKEND selector is bypassed and the
compiled module must be built (pip install compiles it by default).
"""

import random
import time
from fractions import Fraction

from conelab import _kernels

try:
    from conelab import _speedups
except ImportError:
    _speedups = None


def _rand_int_matrix(rng, n, bound=50):
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def _rand_frac_matrix(rng, n):
    return [
        [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(n)]
        for _ in range(n)
    ]


def _time(fn, repeats=3):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best


def _bench_pair(name, make_work):
    row = {"python": _time(make_work(_kernels))}
    if _speedups is not None:
        row["c"] = _time(make_work(_speedups))
    speed = (
        "%.1fx" % (row["python"] / row["c"])
        if "c" in row and row["c"] > 0
        else "n/a"
    )
    compiled = "%8.4fs" % row["c"] if "c" in row else "   (not built)"
    print("%-28s %8.4fs %s %s" % (name, row["python"], compiled, speed))


def main():
    rng = random.Random(20240822)
    A = _rand_int_matrix(rng, 60)
    B = _rand_int_matrix(rng, 60)
    F = _rand_frac_matrix(rng, 25)
    G = _rand_frac_matrix(rng, 25)
    D = _rand_int_matrix(rng, 40, bound=20)

    print("%-28s %9s %9s %s" % ("kernel", "python", "c", "speedup"))
    _bench_pair("mat_mul 60x60 int", lambda k: lambda: k.mat_mul(A, B))
    _bench_pair("mat_mul 25x25 Fraction", lambda k: lambda: k.mat_mul(F, G))
    _bench_pair("mat_mul_t 60x60 int", lambda k: lambda: k.mat_mul_t(A, B))
    _bench_pair("bareiss_det 40x40", lambda k: lambda: k.bareiss_det(D))
    _bench_pair("bareiss_minors 40x40", lambda k: lambda: k.bareiss_minors(D))

    # end-to-end: full closure verification of the rank-6 construction
    import importlib
    import os

    def verify_with(backend):
        def run():
            os.environ["CONELAB_BACKEND"] = backend
            import conelab.backend
            import conelab.core
            import conelab.doubling

            importlib.reload(conelab.backend)
            importlib.reload(conelab.core)
            importlib.reload(conelab.doubling)
            V = conelab.doubling.iterate_construction(6)
            assert conelab.core.verify_v_conditions(V).passed

        return run

    t_py = _time(verify_with("python"), repeats=1)
    if _speedups is not None:
        t_c = _time(verify_with("c"), repeats=1)
        print(
            "%-28s %8.4fs %8.4fs %.1fx"
            % ("verify rank-6 end-to-end", t_py, t_c, t_py / t_c)
        )
    else:
        print("%-28s %8.4fs    (not built)" % ("verify rank-6 end-to-end", t_py))
    os.environ.pop("CONELAB_BACKEND", None)


if __name__ == "__main__":
    main()
