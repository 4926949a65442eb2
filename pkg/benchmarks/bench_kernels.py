"""Benchmark the hot defect-scan kernels: jitted vs pure-numpy backend.

The three structure-tensor scans (associativity, comultiplication
multiplicativity, antipode convolution laws) dominate axiom validation
on large inputs.  This script times both interchangeable backends on
real tensors of increasing dimension and prints one line per case.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeats N] [--large]

HOPFUSION_BACKEND is not consulted here; both implementations are
loaded explicitly so the comparison always covers the pair.
"""

import argparse
import importlib
import time

from hopfusion.builtins import make_builtin
from hopfusion.field import gf_construct
from hopfusion.smash import build_smash


def load_backends():
    loaded = {}
    for name in ("numpy", "numba"):
        try:
            loaded[name] = importlib.import_module(f"hopfusion.backends.{name}_backend")
        except ImportError:
            print(f"note: {name} backend unavailable, skipping")
    return loaded


def table_args(t):
    return t.p, t.pows, t.exp, t.log, t.zech, t.zneg, t.neg


def cases(large):
    out = []
    for name, p in (("kC4", 5), ("kD4", 7)):
        H = make_builtin(name, gf_construct(p))
        out.append((name, H))
        out.append((f"{name}#kC{2 * H.dim}", build_smash(H)))
    if large:
        H = make_builtin("kS3", gf_construct(7))
        out.append(("kS3#kC12", build_smash(H)))
    return out


def best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3, help="best-of repeats")
    ap.add_argument("--large", action="store_true",
                    help="include the dim-72 twisted product (slow on numpy)")
    args = ap.parse_args()

    backends = load_backends()
    kernels = {
        "assoc": lambda be, t, H: be.assoc_defect(*table_args(t), H.mult),
        "bialg": lambda be, t, H: be.bialgebra_defect(*table_args(t), H.mult, H.comult),
        "antip": lambda be, t, H: be.antipode_defect(
            *table_args(t), H.mult, H.comult, H.antipode, H.unit, H.counit),
    }

    print(f"{'case':14s} {'dim':>4s} {'kernel':7s} "
          + " ".join(f"{b + ' (ms)':>12s}" for b in backends)
          + ("      speedup" if len(backends) == 2 else ""))
    for label, H in cases(args.large):
        t = H.field.tables
        for kname, call in kernels.items():
            times = {}
            for bname, mod in backends.items():
                call(mod, t, H)  # warm (JIT compile on first use)
                times[bname] = best_of(lambda: call(mod, t, H), args.repeats)
            row = f"{label:14s} {H.dim:4d} {kname:7s} "
            row += " ".join(f"{times[b] * 1e3:12.3f}" for b in backends)
            if len(times) == 2:
                row += f"  {times['numpy'] / times['numba']:9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
