"""Enlargements of coefficient sets along branches of nearly constant coefficients.

Given ``f``, a set ``A`` of intervals with nonzero coefficients and ``0 < eps``,
the enlargement ``A_eps(f)`` contains every ``J ⊇ I`` (``I`` in ``A``) such that
each ``K`` between ``I`` and ``J`` satisfies ``|c_K - c_I| < eps |c_I|``.

:func:`construct_enlarged_set` builds a set ``E`` with ``A ⊆ E ⊆ A_eps(f)`` whose
projection is bounded by an explicit constant times ``‖f‖``.  It splits ``A``
into dyadic magnitude bands, handles odd bands first and even bands on the
remainder, and relies on :func:`band_enlarge` for each band.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from .dyadic import ROOT, DyadicInterval, IntervalSet
from .errors import NonPositiveThreshold, ParameterError, PreconditionError, ZeroCoefficientError
from .haar import (
    StepFunction,
    _as_fraction,
    coefficient_heap,
    l1_norm,
    project,
    project_out,
)

BAND_CONSTANT = Fraction(45738)
BANDED_CONSTANT = Fraction(42)
EPSILON_CAP = Fraction(1, 3) - Fraction(1, 1000)
TOP = IntervalSet([ROOT, DyadicInterval(0, 0)])


@dataclass(frozen=True)
class EnlargeParams:
    delta: Fraction
    epsilon: Fraction
    alpha: Fraction | None = None
    rho: Fraction | None = None
    band_scale: Fraction | None = None

    def __post_init__(self):
        for name in ("delta", "epsilon", "alpha", "rho", "band_scale"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _as_fraction(value))
        if self.delta <= 0:
            raise ParameterError(f"delta must be positive, got {self.delta}")
        if not 0 < self.epsilon < 1:
            raise ParameterError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if self.alpha is not None and not 0 < self.alpha <= 1:
            raise ParameterError(f"alpha must lie in (0, 1], got {self.alpha}")
        for name in ("rho", "band_scale"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ParameterError(f"{name} must be positive, got {value}")


@dataclass(frozen=True)
class Band:
    m: int
    rho: Fraction
    members: IntervalSet
    enlarged: IntervalSet
    second_pass: bool = False


@dataclass(frozen=True)
class BoundCertificate:
    """Exact record of one instance of ``lhs <= constant * rhs_norm``."""

    lhs: Fraction
    rhs_norm: Fraction
    constant: Fraction
    selected: IntervalSet
    bands: tuple[Band, ...] = ()
    details: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.lhs <= self.constant * self.rhs_norm


def _coefficient_lookup(f: StepFunction):
    heap, scale = coefficient_heap(f)
    n = f.resolution

    def numerator(interval: DyadicInterval) -> int:
        if interval.is_root:
            return heap[0]
        if interval.level >= n:
            return 0
        return heap[interval.heap_index]

    return numerator, scale


def _check_epsilon(epsilon) -> Fraction:
    eps = _as_fraction(epsilon)
    if eps <= 0:
        raise ParameterError(f"epsilon must be positive, got {eps}")
    return eps


def epsilon_enlargement(f: StepFunction, anchors: Iterable[DyadicInterval], epsilon) -> IntervalSet:
    """All intervals reachable upward from an anchor through coefficients within relative ``epsilon``.

    Comparisons are cross-multiplied, so no division happens: with ``eps = p/q``
    the walk continues while ``q |a_K - a_I| < p |a_I|`` on the integer heap.
    """
    eps = _check_epsilon(epsilon)
    anchors = IntervalSet(anchors)
    numerator, _ = _coefficient_lookup(f)
    zeros = [str(i) for i in anchors if numerator(i) == 0]
    if zeros:
        raise ZeroCoefficientError("anchor intervals must carry nonzero coefficients", {"intervals": zeros})
    p, q = eps.numerator, eps.denominator
    out = set()
    for anchor in anchors:
        a = numerator(anchor)
        limit = p * abs(a)
        node = anchor
        while node is not None and q * abs(numerator(node) - a) < limit:
            out.add(node)
            node = node.parent
    return IntervalSet(out)


def _magnitude_band(f: StepFunction, candidates: Iterable[DyadicInterval], rho: Fraction) -> IntervalSet:
    """Members of ``candidates`` with ``rho < |c_I(f)| <= 2 rho``."""
    numerator, scale = _coefficient_lookup(f)
    lo = rho.numerator * scale
    hi = 2 * rho.numerator * scale
    d = rho.denominator
    return IntervalSet(i for i in candidates if lo < abs(numerator(i)) * d <= hi)


def _has_top_coefficients(f: StepFunction) -> bool:
    numerator, _ = _coefficient_lookup(f)
    return any(numerator(i) for i in TOP)


def band_enlarge(f: StepFunction, anchors: Iterable[DyadicInterval], rho, epsilon) -> tuple[IntervalSet, BoundCertificate]:
    """Enlarge the magnitude band ``rho < |c_I| <= 2 rho`` of ``anchors`` with a bounded projection.

    Coefficients above ``3 rho`` are first removed together with their
    ``1/3``-enlargement; the band is then enlarged with respect to what remains.
    ``f`` must have no component on the root or on ``[0, 1)``.
    """
    rho = _as_fraction(rho)
    eps = _as_fraction(epsilon)
    if rho <= 0:
        raise ParameterError(f"rho must be positive, got {rho}")
    if not 0 < eps < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {eps}")
    if _has_top_coefficients(f):
        raise PreconditionError("f must have no coefficient on the root or on [0, 1)")
    anchors = IntervalSet(anchors)
    numerator, scale = _coefficient_lookup(f)
    heap, _ = coefficient_heap(f)

    big_bound = 3 * rho.numerator * scale
    large = IntervalSet(
        DyadicInterval.from_heap_index(i) for i, a in enumerate(heap) if a and abs(a) * rho.denominator > big_bound
    )
    removed = epsilon_enlargement(f, large, Fraction(1, 3))
    remainder = project_out(f, removed)
    band = _magnitude_band(remainder, anchors, rho)
    selected = epsilon_enlargement(remainder, band, eps)

    cert = BoundCertificate(
        lhs=l1_norm(project(f, selected)),
        rhs_norm=l1_norm(f),
        constant=BAND_CONSTANT / eps,
        selected=selected,
        details={"large": large, "removed": removed, "band": band},
    )
    return selected, cert


def _ceil_div2(m: int) -> int:
    return (m + 1) // 2


def construct_enlarged_set(
    f: StepFunction, anchors: Iterable[DyadicInterval], delta, epsilon
) -> tuple[IntervalSet, BoundCertificate]:
    """Return ``E`` with ``A ⊆ E ⊆ A_eps(f)`` and a certificate bounding ``‖P_E(f)‖``.

    ``anchors`` must only contain intervals with ``|c_I(f)| >= delta``.  Inputs
    with ``epsilon >= 1/3`` are processed with ``epsilon`` just below ``1/3``,
    which only shrinks the enlargement.
    """
    d = _as_fraction(delta)
    eps = _as_fraction(epsilon)
    if d <= 0:
        raise NonPositiveThreshold(f"delta must be positive, got {d}", {"delta": str(d)})
    if not 0 < eps < 1:
        raise ParameterError(f"epsilon must lie in (0, 1), got {eps}")
    anchors = IntervalSet(anchors)
    f_norm = l1_norm(f)
    if not anchors:
        return IntervalSet(), BoundCertificate(Fraction(0), f_norm, Fraction(0), IntervalSet())
    if f.is_zero():
        raise PreconditionError("f vanishes but the anchor set is not empty", {"anchors": [str(i) for i in anchors]})

    numerator, scale = _coefficient_lookup(f)
    low = [str(i) for i in anchors if abs(numerator(i)) * d.denominator < d.numerator * scale]
    if low:
        raise PreconditionError(f"anchors with |c_I| < {d}", {"intervals": low})

    eps_eff = min(eps, EPSILON_CAP)
    core = project_out(f, TOP)
    core_anchors = anchors - TOP

    bands: list[Band] = []
    first_pass = IntervalSet()
    second_pass = IntervalSet()
    m0 = 0
    if core_anchors:
        heap, core_scale = coefficient_heap(core)
        peak = Fraction(max(abs(a) for a in heap), core_scale)
        scaled = core / peak
        delta_scaled = d / peak
        m0 = 1
        while Fraction(1, 1 << m0) >= delta_scaled:
            m0 += 1

        collected = set()
        for m in range(1, m0 + 1, 2):
            rho = Fraction(1, 1 << m)
            chosen, _ = band_enlarge(scaled, core_anchors, rho, eps_eff)
            bands.append(Band(m, rho, _magnitude_band(scaled, core_anchors, rho), chosen))
            collected |= chosen
        first_pass = IntervalSet(collected)

        rest = project_out(scaled, first_pass)
        rest_anchors = core_anchors - first_pass
        collected = set()
        for m in range(2, m0 + 1, 2):
            rho = Fraction(1, 1 << m)
            chosen, _ = band_enlarge(rest, rest_anchors, rho, eps_eff)
            bands.append(Band(m, rho, _magnitude_band(rest, rest_anchors, rho), chosen, second_pass=True))
            collected |= chosen
        second_pass = IntervalSet(collected)

    top_part = TOP & epsilon_enlargement(f, anchors, eps_eff)
    selected = first_pass | second_pass | top_part

    c_eps = BAND_CONSTANT / eps_eff
    up, down = _ceil_div2(m0), m0 // 2
    chain = c_eps * up + down * c_eps * (1 + c_eps * up)
    # removing the top components at most doubles the norm of the remainder,
    # and the top components of f together have norm at most ‖f‖
    factor = 2 if _has_top_coefficients(f) else 1
    constant = chain * factor + (1 if top_part else 0)

    cert = BoundCertificate(
        lhs=l1_norm(project(f, selected)),
        rhs_norm=f_norm,
        constant=constant,
        selected=selected,
        bands=tuple(bands),
        details={
            "m0": m0,
            "odd_passes": up,
            "even_passes": down,
            "epsilon_used": eps_eff,
            "band_constant": c_eps,
            "chain_constant": chain,
            "top": top_part,
        },
    )
    return selected, cert
