"""Dyadic step functions and their expansion in the L1-normalized Haar system.

``h_root = 1_[0,1]`` and ``h_I = 2**n (1_{I+} - 1_{I-})`` for ``|I| = 2**-n``, so
``c_I(f) = ∫_{I+} f - ∫_{I-} f`` and every ``h_I`` has L1 norm one.

A :class:`StepFunction` of resolution ``N`` keeps integer numerators over one
shared positive denominator.  All transforms run on those integers through
:mod:`haarlab.kernels`; no floating point is involved anywhere.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from fractions import Fraction
from numbers import Rational

from . import kernels
from .dyadic import ROOT, DyadicInterval, IntervalSet, check_level
from .errors import NonPositiveThreshold, ResolutionTooSmall


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class StepFunction:
    """Piecewise constant function on the ``2**resolution`` cells of [0, 1)."""

    __slots__ = ("resolution", "numerators", "denominator", "_heap")

    def __init__(self, resolution: int, numerators: Sequence[int], denominator: int = 1):
        if resolution < 0:
            raise ValueError("resolution must be nonnegative")
        check_level(resolution)
        nums = [int(v) for v in numerators]
        if len(nums) != 1 << resolution:
            raise ValueError(f"expected {1 << resolution} values for resolution {resolution}, got {len(nums)}")
        if denominator == 0:
            raise ZeroDivisionError("zero denominator")
        if denominator < 0:
            nums = [-v for v in nums]
            denominator = -denominator
        g = math.gcd(denominator, *nums)
        if g > 1:
            nums = [v // g for v in nums]
            denominator //= g
        self.resolution = resolution
        self.numerators = tuple(nums)
        self.denominator = denominator
        self._heap: list[int] | None = None

    @classmethod
    def from_values(cls, values: Iterable, resolution: int | None = None) -> StepFunction:
        vals = [_as_fraction(v) for v in values]
        if resolution is None:
            resolution = len(vals).bit_length() - 1
            if len(vals) != 1 << resolution:
                raise ValueError(f"number of values ({len(vals)}) is not a power of two")
        den = math.lcm(*(v.denominator for v in vals)) if vals else 1
        return cls(resolution, [v.numerator * (den // v.denominator) for v in vals], den)

    @classmethod
    def zero(cls, resolution: int = 0) -> StepFunction:
        return cls(resolution, [0] * (1 << resolution))

    @classmethod
    def constant(cls, value, resolution: int = 0) -> StepFunction:
        return cls.from_values([value] * (1 << resolution), resolution)

    @property
    def values(self) -> tuple[Fraction, ...]:
        d = self.denominator
        return tuple(Fraction(v, d) for v in self.numerators)

    def value_at_cell(self, k: int) -> Fraction:
        return Fraction(self.numerators[k], self.denominator)

    def is_zero(self) -> bool:
        return not any(self.numerators)

    def lift(self, resolution: int) -> StepFunction:
        """Same function sampled on a finer grid."""
        if resolution < self.resolution:
            raise ValueError("cannot lift to a coarser resolution")
        if resolution == self.resolution:
            return self
        rep = 1 << (resolution - self.resolution)
        nums = [v for v in self.numerators for _ in range(rep)]
        return StepFunction(resolution, nums, self.denominator)

    def coarsest(self) -> StepFunction:
        """Equal function at the smallest resolution that still represents it."""
        f = self
        while f.resolution > 0:
            nums = f.numerators
            if any(nums[2 * k] != nums[2 * k + 1] for k in range(len(nums) // 2)):
                break
            f = StepFunction(f.resolution - 1, nums[::2], f.denominator)
        return f

    def _aligned(self, other: StepFunction) -> tuple[StepFunction, StepFunction]:
        n = max(self.resolution, other.resolution)
        return self.lift(n), other.lift(n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StepFunction):
            return NotImplemented
        a, b = self._aligned(other)
        return a.denominator == b.denominator and a.numerators == b.numerators

    def __hash__(self) -> int:
        c = self.coarsest()
        return hash((c.resolution, c.numerators, c.denominator))

    def __add__(self, other: StepFunction) -> StepFunction:
        if not isinstance(other, StepFunction):
            return NotImplemented
        a, b = self._aligned(other)
        da, db = a.denominator, b.denominator
        den = da * db // math.gcd(da, db)
        ma, mb = den // da, den // db
        return StepFunction(a.resolution, [x * ma + y * mb for x, y in zip(a.numerators, b.numerators)], den)

    def __neg__(self) -> StepFunction:
        return StepFunction(self.resolution, [-v for v in self.numerators], self.denominator)

    def __sub__(self, other: StepFunction) -> StepFunction:
        if not isinstance(other, StepFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar) -> StepFunction:
        if isinstance(scalar, StepFunction):
            return NotImplemented
        q = _as_fraction(scalar)
        return StepFunction(self.resolution, [v * q.numerator for v in self.numerators], self.denominator * q.denominator)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> StepFunction:
        q = _as_fraction(scalar)
        if q == 0:
            raise ZeroDivisionError("division of a step function by zero")
        return self * (1 / q)

    def __repr__(self) -> str:
        vals = ", ".join(str(v) for v in self.values[:8])
        more = ", ..." if len(self.numerators) > 8 else ""
        return f"StepFunction(N={self.resolution}, [{vals}{more}])"


class HaarExpansion(Mapping):
    """Sparse Haar coefficients; only nonzero entries are stored."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[DyadicInterval, object] | Iterable[tuple[DyadicInterval, object]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        self._coeffs: dict[DyadicInterval, Fraction] = {}
        for interval, value in items:
            q = _as_fraction(value)
            if q != 0:
                self._coeffs[interval] = q

    def __getitem__(self, interval: DyadicInterval) -> Fraction:
        return self._coeffs[interval]

    def __iter__(self) -> Iterator[DyadicInterval]:
        return iter(sorted(self._coeffs))

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, HaarExpansion):
            return self._coeffs == other._coeffs
        if isinstance(other, Mapping):
            return self == HaarExpansion(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._coeffs.items()))

    def coefficient(self, interval: DyadicInterval) -> Fraction:
        return self._coeffs.get(interval, Fraction(0))

    @property
    def support(self) -> IntervalSet:
        return IntervalSet(self._coeffs)

    def max_level(self) -> int:
        return max((i.level for i in self._coeffs), default=-1)

    def __repr__(self) -> str:
        body = ", ".join(f"{i}: {self._coeffs[i]}" for i in self)
        return f"HaarExpansion({{{body}}})"


# -- coefficient access on the integer heap -------------------------------------


def _heap(f: StepFunction) -> list[int]:
    if f._heap is None:
        f._heap = kernels.analyze(list(f.numerators), f.resolution)
    return f._heap


def coefficient_scale(f: StepFunction) -> int:
    """Common denominator of the heap entries: ``c_I = heap[i] / scale``."""
    return f.denominator << f.resolution


def coefficient_heap(f: StepFunction) -> tuple[list[int], int]:
    """Integer Haar details in heap layout together with their common scale."""
    return _heap(f), coefficient_scale(f)


def coefficient(f: StepFunction, interval: DyadicInterval) -> Fraction:
    if not interval.is_root and interval.level >= f.resolution:
        return Fraction(0)
    return Fraction(_heap(f)[interval.heap_index], coefficient_scale(f))


def support(f: StepFunction) -> IntervalSet:
    """Intervals carrying a nonzero Haar coefficient."""
    heap = _heap(f)
    return IntervalSet(DyadicInterval.from_heap_index(i) for i, a in enumerate(heap) if a)


def analyze(f: StepFunction) -> HaarExpansion:
    heap = _heap(f)
    scale = coefficient_scale(f)
    return HaarExpansion((DyadicInterval.from_heap_index(i), Fraction(a, scale)) for i, a in enumerate(heap) if a)


def _from_heap(heap: list[int], resolution: int, scale: int) -> StepFunction:
    return StepFunction(resolution, kernels.synthesize(heap, resolution), scale)


def synthesize(expansion: Mapping[DyadicInterval, object], resolution: int) -> StepFunction:
    coeffs = expansion if isinstance(expansion, HaarExpansion) else HaarExpansion(expansion)
    deep = [str(i) for i in coeffs if not i.is_root and i.level >= resolution]
    if deep:
        raise ResolutionTooSmall(
            f"resolution {resolution} cannot carry coefficients at level >= {resolution}",
            {"intervals": deep},
        )
    check_level(resolution)
    den = math.lcm(*(q.denominator for q in coeffs.values())) if len(coeffs) else 1
    heap = [0] * (1 << resolution)
    for interval in coeffs:
        q = coeffs[interval]
        heap[interval.heap_index] = q.numerator * (den // q.denominator)
    return _from_heap(heap, resolution, den)


def haar_function(interval: DyadicInterval, resolution: int | None = None) -> StepFunction:
    """``h_I`` sampled at ``resolution`` (default: the coarsest that resolves it)."""
    if resolution is None:
        resolution = 0 if interval.is_root else interval.level + 1
    return synthesize({interval: 1}, resolution)


# -- norms ------------------------------------------------------------------------


def l1_norm(f: StepFunction) -> Fraction:
    return Fraction(kernels.abs_sum(list(f.numerators), 0, len(f.numerators)), coefficient_scale(f))


def norm_on(f: StepFunction, interval: DyadicInterval) -> Fraction:
    """``∫_I |f|``; the root integrates over [0, 1] since f vanishes on [1, 2]."""
    if interval.is_root:
        return l1_norm(f)
    if interval.level > f.resolution:
        cell = interval.index >> (interval.level - f.resolution)
        return abs(f.value_at_cell(cell)) * interval.measure
    lo, hi = interval.cell_range(f.resolution)
    return Fraction(kernels.abs_sum(list(f.numerators), lo, hi), coefficient_scale(f))


def norm_of_sum(f: StepFunction, g: StepFunction) -> Fraction:
    """``‖f + g‖`` without materializing the sum."""
    a, b = f._aligned(g)
    if a.denominator == b.denominator:
        total = kernels.abs_sum_pair(list(a.numerators), list(b.numerators), 0, len(a.numerators))
        return Fraction(total, coefficient_scale(a))
    return l1_norm(a + b)


# -- projections ------------------------------------------------------------------


def project(f: StepFunction, intervals: Iterable[DyadicInterval]) -> StepFunction:
    """Keep only the Haar components indexed by ``intervals``."""
    heap = _heap(f)
    kept = [0] * len(heap)
    for interval in intervals:
        if interval.is_root or interval.level < f.resolution:
            i = interval.heap_index
            kept[i] = heap[i]
    return _from_heap(kept, f.resolution, coefficient_scale(f))


def project_out(f: StepFunction, intervals: Iterable[DyadicInterval]) -> StepFunction:
    """``f`` minus its components on ``intervals``."""
    heap = list(_heap(f))
    for interval in intervals:
        if interval.is_root or interval.level < f.resolution:
            heap[interval.heap_index] = 0
    return _from_heap(heap, f.resolution, coefficient_scale(f))


def tail_projection(f: StepFunction, interval: DyadicInterval) -> StepFunction:
    """Remove every component ``h_J`` with ``J ⊆ interval``.

    The result equals ``f`` off the interval and the mean of ``f`` on it; for the
    root nothing survives.
    """
    if interval.is_root:
        return StepFunction.zero(f.resolution)
    if interval.level >= f.resolution:
        return f
    lo, hi = interval.cell_range(f.resolution)
    nums = list(f.numerators)
    width = hi - lo
    total = sum(nums[lo:hi])
    # mean = total / width; rescale everything by width to stay integral
    out = [v * width for v in nums]
    out[lo:hi] = [total] * width
    return StepFunction(f.resolution, out, f.denominator * width)


def threshold(f: StepFunction, delta) -> tuple[StepFunction, IntervalSet]:
    """Keep the coefficients with ``|c_I| >= delta``; returns the result and the kept set."""
    d = _as_fraction(delta)
    if d <= 0:
        raise NonPositiveThreshold(f"threshold must be positive, got {d}", {"delta": str(d)})
    heap = _heap(f)
    scale = coefficient_scale(f)
    # |a| / scale >= p / q  <=>  |a| * q >= p * scale
    bound = d.numerator * scale
    keep = [i for i, a in enumerate(heap) if a and abs(a) * d.denominator >= bound]
    selected = IntervalSet(DyadicInterval.from_heap_index(i) for i in keep)
    return project(f, selected), selected


__all__ = [
    "ROOT",
    "StepFunction",
    "HaarExpansion",
    "analyze",
    "synthesize",
    "coefficient",
    "coefficient_heap",
    "coefficient_scale",
    "support",
    "haar_function",
    "l1_norm",
    "norm_on",
    "norm_of_sum",
    "project",
    "project_out",
    "tail_projection",
    "threshold",
]
