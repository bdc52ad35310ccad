"""Pointwise reference model, deliberately free of any haarlab import.

Functions are lists of Fractions (cell values on a grid of 2**n cells).
Intervals are ``None`` for the root or ``(level, index)``.
"""

from fractions import Fraction


def haar_at(interval, x):
    """Value of the L1-normalized Haar function at the point ``x`` in [0, 1)."""
    if interval is None:
        return Fraction(1)
    level, index = interval
    width = Fraction(1, 2**level)
    start = index * width
    if start <= x < start + width / 2:
        return Fraction(2**level)
    if start + width / 2 <= x < start + width:
        return Fraction(-(2**level))
    return Fraction(0)


def evaluate(coeffs, n):
    """Sample ``sum c_I h_I`` at the midpoint of every cell of the level-n grid."""
    cells = 2**n
    return [sum((c * haar_at(i, Fraction(2 * k + 1, 2 * cells)) for i, c in coeffs.items()), Fraction(0)) for k in range(cells)]


def integrate(values, lo, hi):
    """``∫_lo^hi f`` for a grid function and dyadic-aligned endpoints."""
    cells = len(values)
    total = Fraction(0)
    for k, v in enumerate(values):
        a, b = max(lo, Fraction(k, cells)), min(hi, Fraction(k + 1, cells))
        if b > a:
            total += v * (b - a)
    return total


def coefficient(values, interval):
    if interval is None:
        return integrate(values, Fraction(0), Fraction(1))
    level, index = interval
    width = Fraction(1, 2**level)
    start = index * width
    mid = start + width / 2
    return integrate(values, start, mid) - integrate(values, mid, start + width)


def l1(values):
    return sum((abs(v) for v in values), Fraction(0)) / len(values)


def all_intervals(n):
    return [None] + [(m, k) for m in range(n) for k in range(2**m)]


def project(values, n, keep):
    coeffs = {i: coefficient(values, i) for i in keep}
    return evaluate(coeffs, n)


def branch_function(n):
    """``1 + sum_{k=1}^{2n} 2^{k-1}(1_[0,2^-k) - 1_[2^-k,2^{1-k}))`` sampled directly on 2^{2n} cells."""
    cells = 2 ** (2 * n)
    values = []
    for j in range(cells):
        x = Fraction(2 * j + 1, 2 * cells)
        v = Fraction(1)
        for k in range(1, 2 * n + 1):
            if x < Fraction(1, 2**k):
                v += 2 ** (k - 1)
            elif x < Fraction(2, 2**k):
                v -= 2 ** (k - 1)
        values.append(v)
    return values


def branch_anchors(n):
    return [None] + [(2 * j - 1, 0) for j in range(1, n + 1)]


def enlargement(values, n, anchors, eps):
    """``{J : some anchor I ⊆ J with |c_K - c_I| < eps |c_I| for every K between}``."""
    def contains(outer, inner):
        if outer is None:
            return True
        if inner is None:
            return False
        return inner[0] >= outer[0] and inner[1] >> (inner[0] - outer[0]) == outer[1]

    coeff = {i: coefficient(values, i) for i in all_intervals(n)}
    out = set()
    for j in all_intervals(n):
        for i in anchors:
            if not contains(j, i):
                continue
            ci = coeff.get(i, Fraction(0))
            between = [k for k in all_intervals(n) if contains(k, i) and contains(j, k)]
            if all(abs(coeff[k] - ci) < eps * abs(ci) for k in between):
                out.add(j)
                break
    return out
