"""Slow reference computations that share no code path with the library operations.

Coefficients come from direct range sums over the cells of each half interval,
and enlargements from enumerating every candidate interval and every chain
between an anchor and it.
"""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction

from ..dyadic import ROOT, DyadicInterval, IntervalSet
from ..haar import StepFunction


def direct_coefficient(f: StepFunction, interval: DyadicInterval) -> Fraction:
    """``∫_{I+} f - ∫_{I-} f`` (``∫_0^1 f`` for the root) summed cell by cell."""
    n = f.resolution
    cell = Fraction(1, f.denominator << n)
    vals = f.numerators
    if interval.is_root:
        return sum(vals) * cell
    if interval.level >= n:
        return Fraction(0)
    width = 1 << (n - interval.level)
    lo = interval.index * width
    mid = lo + width // 2
    return (sum(vals[lo:mid]) - sum(vals[mid : lo + width])) * cell


def direct_norm(f: StepFunction, lo: Fraction = Fraction(0), hi: Fraction = Fraction(1)) -> Fraction:
    """``∫_lo^hi |f|`` for dyadic-aligned endpoints."""
    n = f.resolution
    total = Fraction(0)
    for k, v in enumerate(f.values):
        a = max(lo, Fraction(k, 1 << n))
        b = min(hi, Fraction(k + 1, 1 << n))
        if b > a:
            total += abs(v) * (b - a)
    return total


def brute_force_enlargement(f: StepFunction, anchors: Iterable[DyadicInterval], epsilon) -> IntervalSet:
    """Every ``J`` admitting an anchor ``I ⊆ J`` with all of ``[I, J]`` within relative ``epsilon``."""
    eps = Fraction(epsilon)
    anchors = list(anchors)
    depth = max([f.resolution] + [i.level + 1 for i in anchors])
    candidates = [ROOT] + [DyadicInterval(n, k) for n in range(depth) for k in range(1 << n)]
    memo: dict[DyadicInterval, Fraction] = {}

    def coeff(interval):
        if interval not in memo:
            memo[interval] = direct_coefficient(f, interval)
        return memo[interval]

    out = []
    for j in candidates:
        for i in anchors:
            if not j.contains(i):
                continue
            ci = coeff(i)
            chain = [k for k in candidates if k.contains(i) and j.contains(k)]
            if all(abs(coeff(k) - ci) < eps * abs(ci) for k in chain):
                out.append(j)
                break
    return IntervalSet(out)
