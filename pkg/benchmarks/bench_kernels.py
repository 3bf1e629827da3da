#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twin.

Run from the repository root after an editable install:

    python3 benchmarks/bench_kernels.py [--sets 20000] [--ground 100]

Loads both backends directly (ignoring SFKIT_PURE_PYTHON) and times the
hot primitives on the same inputs, asserting equal outputs as it goes.
"""

from __future__ import annotations

import argparse
import time

from sfkit import _kernels_py
from sfkit.rng import SplitMix64

try:
    from sfkit import _kernels
except ImportError:
    _kernels = None


def make_masks(count: int, ground: int, card: int, seed: int) -> list[int]:
    rng = SplitMix64(seed)
    masks = []
    for _ in range(count):
        m = 0
        while m.bit_count() < card:
            m |= 1 << rng.randrange(ground)
        masks.append(m)
    return masks


def timed(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return result, best


def bench(name, py_fn, c_fn, *args_builder):
    rows = []
    for backend, fn in (("python", py_fn), ("compiled", c_fn)):
        if fn is None:
            continue
        args = args_builder[0](backend)
        result, secs = timed(fn, *args)
        rows.append((backend, secs, result))
    if len(rows) == 2:
        assert _normalize(rows[0][2]) == _normalize(rows[1][2]), f"{name}: backend outputs differ"
        speedup = rows[0][1] / rows[1][1]
    else:
        speedup = float("nan")
    for backend, secs, _ in rows:
        print(f"{name:24s} {backend:9s} {secs * 1e3:10.2f} ms")
    if len(rows) == 2:
        print(f"{name:24s} {'speedup':9s} {speedup:10.1f} x")
    print()


def _normalize(x):
    if x is None:
        return None
    return list(x)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sets", type=int, default=20000)
    ap.add_argument("--ground", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    if _kernels is None:
        print("compiled backend unavailable; showing pure-python timings only\n")

    masks = make_masks(args.sets, args.ground, 6, args.seed)
    packed_py = _kernels_py.pack(masks)
    packed_c = _kernels.pack(masks) if _kernels else None
    smask = masks[0] | masks[1] | masks[2]

    def packs(backend):
        return (packed_py,) if backend == "python" else (packed_c,)

    bench(
        "greedy_disjoint",
        _kernels_py.greedy_disjoint,
        _kernels.greedy_disjoint if _kernels else None,
        packs,
    )
    bench(
        "intersection_sizes",
        lambda p: _kernels_py.intersection_sizes(p, smask),
        (lambda p: _kernels.intersection_sizes(p, smask)) if _kernels else None,
        packs,
    )
    bench(
        "element_counts",
        lambda p: _kernels_py.element_counts(p, args.ground),
        (lambda p: _kernels.element_counts(p, args.ground)) if _kernels else None,
        packs,
    )

    # a 3-sunflower-free product family forces the search to exhaust
    from sfkit.harness import FamilyDistribution, generate_family

    free = generate_family(FamilyDistribution("sunflower-free-construction", 24, 8, 162, 0))
    free_masks = list(free.masks)
    small_py = _kernels_py.pack(free_masks)
    small_c = _kernels.pack(free_masks) if _kernels else None

    def small_packs(backend):
        return (small_py,) if backend == "python" else (small_c,)

    bench(
        "find_k_sunflower (none)",
        lambda p: _kernels_py.find_k_sunflower(p, 3),
        (lambda p: _kernels.find_k_sunflower(p, 3)) if _kernels else None,
        small_packs,
    )


if __name__ == "__main__":
    main()
