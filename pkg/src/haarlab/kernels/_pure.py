"""Reference kernels on plain Python integers.

Values are integer numerators over a shared denominator; the Haar details are
returned in heap layout (slot 0 is the total sum, slot ``2**level + index`` the
difference between the left-half and right-half sums of that interval).
"""

from __future__ import annotations


def analyze(nums: list[int], resolution: int) -> list[int]:
    sums = list(nums)
    heap = [0] * (1 << resolution)
    for level in range(resolution - 1, -1, -1):
        half = 1 << level
        nxt = [0] * half
        for k in range(half):
            a = sums[2 * k]
            b = sums[2 * k + 1]
            nxt[k] = a + b
            heap[half + k] = a - b
        sums = nxt
    heap[0] = sums[0]
    return heap


def synthesize(heap: list[int], resolution: int) -> list[int]:
    vals = [heap[0]]
    for level in range(resolution):
        half = 1 << level
        scale = 1 << level
        new = [0] * (2 * half)
        for k in range(half):
            v = vals[k]
            d = heap[half + k] * scale
            new[2 * k] = v + d
            new[2 * k + 1] = v - d
        vals = new
    return vals


def abs_sum(nums: list[int], lo: int, hi: int) -> int:
    total = 0
    for i in range(lo, hi):
        v = nums[i]
        total += v if v >= 0 else -v
    return total


def abs_sum_pair(first: list[int], second: list[int], lo: int, hi: int) -> int:
    """Sum of ``|first[i] + second[i]|`` over ``[lo, hi)``."""
    total = 0
    for i in range(lo, hi):
        v = first[i] + second[i]
        total += v if v >= 0 else -v
    return total
