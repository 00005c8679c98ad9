"""Compare the compiled and pure-Python double-description kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Times the adjacency kernel on its own (replaying recorded calls) and the
full H -> V conversion, and checks both backends return the same result.
"""
import argparse
import random
import time
from fractions import Fraction

from momentcut import _ddcore_py
from momentcut.polyhedra import dd

try:
    from momentcut import _ddcore
except ImportError:
    _ddcore = None


def random_polytope(rng, dim, m):
    """Homogenized rows ``(-b, a)`` of a random polytope ``a.x >= b`` around 0."""
    rows = []
    for i in range(dim):
        e = [0] * dim
        e[i] = 1
        rows.append((tuple(e), -10))
        rows.append((tuple(-x for x in e), -10))
    while len(rows) < m:
        a = tuple(rng.randint(-9, 9) for _ in range(dim))
        if any(a):
            rows.append((a, Fraction(-rng.randint(20, 40), 4)))
    cone = [(-b,) + a for a, b in rows]
    cone.append((1,) + (0,) * dim)
    return cone


def record_calls(cases):
    calls = []

    def spy(zs, pos, neg, k):
        calls.append((zs.copy(), list(pos), list(neg), k))
        return _ddcore_py.adjacent_pairs(zs, pos, neg, k)

    for rows, dim in cases:
        dd.cone_generators(rows, [], dim, adjacent_pairs=spy)
    return calls


def best_of(fn, repeat):
    t = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        t.append(time.perf_counter() - t0)
    return min(t)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    cases = [(random_polytope(rng, d, m), d + 1) for d, m in [(3, 80), (4, 60), (5, 40), (6, 30)] for _ in range(2)]
    backends = {"python": _ddcore_py.adjacent_pairs}
    if _ddcore is not None:
        backends["cython"] = _ddcore.adjacent_pairs
    else:
        print("compiled kernel not built; timing the Python fallback only")

    calls = record_calls(cases)
    ref = [_ddcore_py.adjacent_pairs(*c) for c in calls]
    print(f"{len(cases)} polytopes, {len(calls)} kernel calls")
    print(f"{'backend':<8} {'kernel s':>10} {'h_to_v s':>10}")
    times = {}
    for name, fn in backends.items():
        got = [fn(*c) for c in calls]
        assert got == ref, f"{name} kernel disagrees with the reference"
        outs = [dd.cone_generators(r, [], d, adjacent_pairs=fn) for r, d in cases]
        assert outs == [dd.cone_generators(r, [], d, adjacent_pairs=_ddcore_py.adjacent_pairs) for r, d in cases]
        tk = best_of(lambda: [fn(*c) for c in calls], args.repeat)
        te = best_of(lambda: [dd.cone_generators(r, [], d, adjacent_pairs=fn) for r, d in cases], args.repeat)
        times[name] = (tk, te)
        print(f"{name:<8} {tk:>10.4f} {te:>10.4f}")
    if "cython" in times:
        (pk, pe), (ck, ce) = times["python"], times["cython"]
        print(f"speedup: kernel x{pk / ck:.1f}, end to end x{pe / ce:.2f}")


if __name__ == "__main__":
    main()
