"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]

Kernel timings run in-process on both modules.  ``--end-to-end`` also times a
short verification run in two subprocesses, one with ``HAARLAB_PURE_PYTHON=1``.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from haarlab.kernels import _pure

try:
    from haarlab.kernels import _ckernels
except ImportError:
    _ckernels = None


def _cases(rng):
    for n in (8, 12, 16):
        yield f"N={n} small ints", n, [rng.randint(-1000, 1000) for _ in range(1 << n)]
    n = 12
    yield f"N={n} 100-bit ints", n, [rng.getrandbits(100) - (1 << 99) for _ in range(1 << n)]


def _time(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def kernel_table(repeat):
    rng = random.Random(0)
    rows = []
    for label, n, nums in _cases(rng):
        heap = _pure.analyze(nums, n)
        for op, call in (
            ("analyze", lambda m: m.analyze(nums, n)),
            ("synthesize", lambda m: m.synthesize(heap, n)),
            ("abs_sum", lambda m: m.abs_sum(nums, 0, len(nums))),
        ):
            pure = _time(lambda: call(_pure), repeat)
            fast = _time(lambda: call(_ckernels), repeat) if _ckernels else float("nan")
            rows.append((label, op, pure, fast))
    print(f"{'case':<20} {'kernel':<11} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for label, op, pure, fast in rows:
        print(f"{label:<20} {op:<11} {pure * 1e3:>10.3f} {fast * 1e3:>10.3f} {pure / fast:>7.1f}x")


def end_to_end():
    cmd = [sys.executable, "-m", "haarlab", "verify", "all", "--trials", "200", "--seed", "1", "--resolution", "8"]
    for name, extra in (("cython", {}), ("python", {"HAARLAB_PURE_PYTHON": "1"})):
        start = timeit.default_timer()
        subprocess.run(cmd, env={**os.environ, **extra}, check=False, capture_output=True)
        print(f"verify all, 200 trials, backend={name}: {timeit.default_timer() - start:.2f}s")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--end-to-end", action="store_true")
    args = parser.parse_args()
    if _ckernels is None:
        print("compiled kernels are not built; only the pure-Python column is meaningful")
    kernel_table(args.repeat)
    if args.end_to_end:
        end_to_end()


if __name__ == "__main__":
    main()
