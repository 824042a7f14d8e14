"""Compare the compiled and numpy kernel backends on representative workloads.

    python benchmarks/bench_kernels.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from ecshare import kernels
from ecshare.catalog import example_curves
from ecshare.curve import CurveSpec, enumerate_points
from ecshare.field import GF
from ecshare.lsss import SchemeConfig, build_scheme


def _scheme(c: CurveSpec, m: int, n_points: int | None = None):
    pts = [p for p in enumerate_points(c) if not p.is_infinity][:n_points]
    return build_scheme(SchemeConfig(c, m, tuple(pts)))


def workloads():
    ex3 = _scheme(example_curves()[2], 3)  # GF(8), 8^5 codewords
    gf11 = _scheme(CurveSpec(GF(11), a4=1, a6=3), 8, 12)  # GF(11), 11^4 codewords, 11 players
    gf9 = _scheme(CurveSpec(GF(3, 2), a2=1, a6=1), 2, 15)  # 14 players, dimension 13
    for name, s in (("gf8-m3", ex3), ("gf11-m8", gf11)):
        F, G = s.field, s.sharing_code.generator
        yield f"codewords {name}", lambda b, F=F, G=G: b.codewords(G, F.add_table, F.mul_table)
        yield f"min_weight {name}", lambda b, F=F, G=G: b.min_weight(G, F.add_table, F.mul_table, 1, True)
        target = s.words[1, 1:].copy()
        target[0] ^= 1
        yield f"nearest {name}", lambda b, F=F, G=G, t=target: b.nearest(G, F.add_table, F.mul_table, t, 1)
    for name, s in (("gf8-m3", ex3), ("gf9-n14", gf9)):
        F, G = s.field, s.sharing_code.generator
        yield (
            f"qualified_flags {name}",
            lambda b, F=F, G=G: b.qualified_flags(G, F.add_table, F.mul_table, F.neg_table, F.inv_table),
        )


def best_of(fn, backend, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(backend)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if kernels.compiled_backend is None:
        raise SystemExit("compiled extension not built; reinstall with a C compiler available")
    print(f"{'workload':28s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in workloads():
        tp = best_of(fn, kernels.python_backend, args.repeat)
        tc = best_of(fn, kernels.compiled_backend, args.repeat)
        print(f"{name:28s} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
