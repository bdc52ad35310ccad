"""The two explicit families showing that Haar projections onto large
coefficients are not uniformly bounded in L1.

* :func:`branch_family` puts coefficient 1 on every interval of the left branch
  ``[0, 2**-k)``.  The function has norm one, but keeping every other level
  gives a norm that grows linearly with ``n``.
* :func:`spread_family` redistributes the same pattern over many intervals with
  coefficients ``2**-k`` so that the anchor set cannot be enlarged at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..dyadic import ROOT, DyadicInterval, IntervalSet, check_level
from ..enlargement import epsilon_enlargement
from ..haar import StepFunction, l1_norm, project, synthesize


@dataclass(frozen=True)
class ExampleFamily:
    n: int
    f: StepFunction
    anchors: IntervalSet
    norm: Fraction
    projection_norm: Fraction

    @property
    def ratio(self) -> Fraction:
        return self.projection_norm / self.norm

    def enlargement_is_trivial(self, epsilon) -> bool:
        return epsilon_enlargement(self.f, self.anchors, epsilon) == self.anchors


def _check_n(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")


def branch_family(n: int) -> ExampleFamily:
    """``f_n = 1 + sum_{k=1}^{2n} h_{[0, 2^{1-k})}`` with anchors at the root and every other level."""
    _check_n(n)
    resolution = 2 * n
    check_level(resolution)
    coeffs = {ROOT: 1}
    coeffs.update({DyadicInterval(level, 0): 1 for level in range(resolution)})
    f = synthesize(coeffs, resolution)
    anchors = IntervalSet([ROOT] + [DyadicInterval(2 * j - 1, 0) for j in range(1, n + 1)])
    return ExampleFamily(n, f, anchors, l1_norm(f), l1_norm(project(f, anchors)))


def spread_levels(terms: int) -> list[list[DyadicInterval]]:
    """Interval groups for the spread family.

    Group ``k`` (1-based) lives on level ``2k - 1``.  The first group is both
    level-1 intervals; each later group takes the two grandchildren of the
    positive (left) half of every interval in the previous group, so each group
    is supported exactly where the previous one is positive.
    """
    groups = [[DyadicInterval(1, 0), DyadicInterval(1, 1)]]
    for k in range(1, terms):
        level = 2 * k + 1
        groups.append([DyadicInterval(level, j) for i in groups[-1] for j in (4 * i.index, 4 * i.index + 1)])
    return groups


def spread_family(n: int) -> ExampleFamily:
    """``1 + sum_{k=1}^{2n} 2^{-k} sum_j h_{I}`` over the groups of :func:`spread_levels`.

    Anchors are the root and the groups with even ``k``.
    """
    _check_n(n)
    resolution = 4 * n
    check_level(resolution)
    groups = spread_levels(2 * n)
    coeffs = {ROOT: Fraction(1)}
    for k, group in enumerate(groups, start=1):
        for interval in group:
            coeffs[interval] = Fraction(1, 1 << k)
    f = synthesize(coeffs, resolution)
    anchors = IntervalSet([ROOT] + [i for k, group in enumerate(groups, start=1) if k % 2 == 0 for i in group])
    return ExampleFamily(n, f, anchors, l1_norm(f), l1_norm(project(f, anchors)))
