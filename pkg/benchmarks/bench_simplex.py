"""Compare the compiled simplex kernel with the pure-Python one.

Tableaus are recorded from real Steiner-tree LPs, then replayed through each
kernel in isolation.  A second timing runs a whole exact SMT with each
backend selected.

    python3 benchmarks/bench_simplex.py [--repeat 3] [--terminals 6]
"""

import argparse
import time

from polysteiner import _kernel, _simplex
from polysteiner.exactgeom import zero_vec
from polysteiner.norm import PolytopalNorm
from polysteiner.steiner import Instance, exact_smt

HEXAGON = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)]


def record_calls(inst):
    calls = []
    original = _kernel.simplex_iterate

    def spy(T, basis, det, obj_row, n_rows, n_allowed):
        calls.append(([row[:] for row in T], basis[:], det, obj_row, n_rows, n_allowed))
        return original(T, basis, det, obj_row, n_rows, n_allowed)

    _kernel.simplex_iterate = spy
    try:
        exact_smt(inst)
    finally:
        _kernel.simplex_iterate = original
    return calls


def replay(fn, calls):
    start = time.perf_counter()
    for T, basis, det, obj_row, n_rows, n_allowed in calls:
        try:
            fn([row[:] for row in T], basis[:], det, obj_row, n_rows, n_allowed)
        except OverflowError:
            _simplex.simplex_iterate([row[:] for row in T], basis[:], det, obj_row, n_rows, n_allowed)
    return time.perf_counter() - start


def end_to_end(inst, native):
    saved = _kernel._native
    _kernel._native = native
    try:
        start = time.perf_counter()
        length = exact_smt(inst).length
        return time.perf_counter() - start, length
    finally:
        _kernel._native = saved


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--terminals", type=int, default=6, choices=range(3, 8))
    args = ap.parse_args()

    N = PolytopalNorm.from_vertices(HEXAGON)
    terms = ([zero_vec(2)] + [tuple(map(int, v)) for v in HEXAGON])[: args.terminals]
    inst = Instance.of(N, terms)
    calls = record_calls(inst)
    print(f"instance: hexagon norm, {len(terms)} terminals, {len(calls)} kernel calls recorded")

    python_t = min(replay(_simplex.simplex_iterate, calls) for _ in range(args.repeat))
    print(f"kernel only   python: {python_t:8.3f}s")
    if _kernel._native is None:
        print("compiled kernel not available; build with `pip install -e . --no-build-isolation`")
        return
    native_t = min(replay(_kernel._native, calls) for _ in range(args.repeat))
    print(f"kernel only   cython: {native_t:8.3f}s   speedup x{python_t / native_t:.1f}")

    py_e2e, py_len = min(end_to_end(inst, None) for _ in range(args.repeat))
    cy_e2e, cy_len = min(end_to_end(inst, _kernel._native) for _ in range(args.repeat))
    assert py_len == cy_len
    print(f"end to end    python: {py_e2e:8.3f}s")
    print(f"end to end    cython: {cy_e2e:8.3f}s   speedup x{py_e2e / cy_e2e:.1f}   (length {cy_len})")


if __name__ == "__main__":
    main()
