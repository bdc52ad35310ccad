"""Half-interval symmetrization of pairs of step functions.

``symmetrize_left(f, I)`` overwrites the right half of ``I`` with a shifted copy of
the left half; ``symmetrize_right`` does the opposite.  When ``c_I(f) = 0`` this
changes ``‖f‖`` by exactly ``±delta(f, I)`` where ``delta = ‖f‖_{I+} - ‖f‖_{I-}``.

:func:`full_symmetrize` walks the zero frontier of ``f`` from the smallest
intervals up, symmetrizing ``(f, g)`` together so that ``‖f‖ / ‖f + g‖`` never
decreases.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .dyadic import DyadicInterval, IntervalSet
from .errors import HaarlabError, PreconditionError, RootIntervalError
from .haar import StepFunction, coefficient, coefficient_heap, l1_norm, norm_of_sum, norm_on, support

Branch = Literal["left", "right"]

_TOP_CHILD = DyadicInterval(0, 0)


def _require_proper(interval: DyadicInterval) -> None:
    if interval.is_root:
        raise RootIntervalError("symmetrization is defined for intervals inside [0, 1] only")


def delta(f: StepFunction, interval: DyadicInterval) -> Fraction:
    """``‖f‖`` on the left half minus ``‖f‖`` on the right half."""
    _require_proper(interval)
    return norm_on(f, interval.left) - norm_on(f, interval.right)


def _check_vanishing(f: StepFunction, interval: DyadicInterval, strict: bool) -> None:
    if coefficient(f, interval) != 0:
        msg = f"c_I(f) != 0 on {interval}; the coefficient rewrite rules do not apply"
        if strict:
            raise PreconditionError(msg, {"interval": str(interval)})
        warnings.warn(msg, stacklevel=3)


def _copy_half(f: StepFunction, interval: DyadicInterval, from_left: bool) -> StepFunction:
    if interval.level >= f.resolution:
        # f is constant on the interval, both halves already agree
        return f
    lo, hi = interval.cell_range(f.resolution)
    mid = (lo + hi) // 2
    nums = list(f.numerators)
    if from_left:
        nums[mid:hi] = nums[lo:mid]
    else:
        nums[lo:mid] = nums[mid:hi]
    return StepFunction(f.resolution, nums, f.denominator)


def symmetrize_left(f: StepFunction, interval: DyadicInterval, strict: bool = True) -> StepFunction:
    """Copy the left half of ``interval`` onto its right half."""
    _require_proper(interval)
    _check_vanishing(f, interval, strict)
    return _copy_half(f, interval, from_left=True)


def symmetrize_right(f: StepFunction, interval: DyadicInterval, strict: bool = True) -> StepFunction:
    """Copy the right half of ``interval`` onto its left half."""
    _require_proper(interval)
    _check_vanishing(f, interval, strict)
    return _copy_half(f, interval, from_left=False)


def is_symmetric_on(f: StepFunction, interval: DyadicInterval) -> bool:
    """Whether ``f`` on the right half of ``interval`` is the shifted left half."""
    if interval.level >= f.resolution:
        return True
    lo, hi = interval.cell_range(f.resolution)
    mid = (lo + hi) // 2
    return f.numerators[lo:mid] == f.numerators[mid:hi]


def zero_frontier(f: StepFunction) -> IntervalSet:
    """Intervals of [0, 1] with vanishing coefficient and at least one child with nonzero coefficient."""
    heap, _ = coefficient_heap(f)
    half = len(heap) // 2
    return IntervalSet(
        DyadicInterval.from_heap_index(i) for i in range(1, half) if heap[i] == 0 and (heap[2 * i] or heap[2 * i + 1])
    )


def _align(f: StepFunction, g: StepFunction) -> tuple[StepFunction, StepFunction]:
    n = max(f.resolution, g.resolution)
    return f.lift(n), g.lift(n)


def _pair_preconditions(f: StepFunction, g: StepFunction) -> None:
    if l1_norm(f) == 0:
        raise PreconditionError("‖f‖ must be positive")
    sf, sg = support(f), support(g)
    common = sf & sg
    if common:
        raise PreconditionError("f and g share Haar support", {"intervals": [str(i) for i in common]})
    for name, s in (("f", sf), ("g", sg)):
        if any(i.is_root for i in s):
            raise PreconditionError(f"{name} has a component on the root")


def symmetrize_step(
    f: StepFunction, g: StepFunction, interval: DyadicInterval
) -> tuple[StepFunction, StepFunction, Branch]:
    """Symmetrize ``f`` and ``g`` on ``interval`` with the same branch, never lowering ``‖f‖ / ‖f + g‖``.

    Requires ``c_I(f) = c_I(g) = 0``, disjoint Haar supports inside [0, 1] and ``‖f‖ > 0``.
    """
    _require_proper(interval)
    f, g = _align(f, g)
    _pair_preconditions(f, g)
    bad = [name for name, h in (("f", f), ("g", g)) if coefficient(h, interval) != 0]
    if bad:
        raise PreconditionError(f"coefficient of {', '.join(bad)} on {interval} is nonzero", {"interval": str(interval)})

    total = f + g
    total_norm = l1_norm(total)
    left_norm = norm_on(total, interval.left)
    right_norm = norm_on(total, interval.right)
    if total_norm == left_norm:
        branch: Branch = "left"
    elif total_norm == right_norm:
        branch = "right"
    else:
        f_norm = l1_norm(f)
        if delta(f, interval) * total_norm >= (left_norm - right_norm) * f_norm:
            branch = "left"
        else:
            branch = "right"
    from_left = branch == "left"
    return _copy_half(f, interval, from_left), _copy_half(g, interval, from_left), branch


@dataclass(frozen=True)
class SymmetrizedPair:
    f_tilde: StepFunction
    g_tilde: StepFunction
    trace: tuple[tuple[DyadicInterval, Branch], ...]

    @property
    def ratio(self) -> Fraction:
        return l1_norm(self.f_tilde) / norm_of_sum(self.f_tilde, self.g_tilde)


def full_symmetrize(f: StepFunction, g: StepFunction) -> SymmetrizedPair:
    """Symmetrize ``(f, g)`` on every zero-frontier interval of ``f``, smallest first.

    Requires ``‖f‖ > 0``, disjoint Haar supports with no root or ``[0, 1)``
    component, and ``g`` vanishing on the zero frontier of ``f``.
    """
    f, g = _align(f, g)
    _pair_preconditions(f, g)
    for name, h in (("f", f), ("g", g)):
        if coefficient(h, _TOP_CHILD) != 0:
            raise PreconditionError(f"{name} has a component on [0, 1)")
    frontier = zero_frontier(f)
    clash = support(g) & frontier
    if clash:
        raise PreconditionError(
            "g has components on the zero frontier of f", {"intervals": [str(i) for i in clash]}
        )

    trace = []
    for interval in sorted(frontier, key=lambda i: (-i.level, i.index)):
        f, g, branch = symmetrize_step(f, g, interval)
        trace.append((interval, branch))

    for interval in zero_frontier(f):
        if coefficient(g, interval) != 0 or not (is_symmetric_on(f, interval) and is_symmetric_on(g, interval)):
            raise HaarlabError(f"symmetrization left {interval} unsymmetric", {"interval": str(interval)})
    return SymmetrizedPair(f, g, tuple(trace))
