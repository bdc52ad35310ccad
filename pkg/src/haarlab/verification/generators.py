"""Seeded instance generators for the verification checks.

Instances are built from Haar coefficients rather than point values so that
support constraints (disjointness, bands, frontiers) hold by construction.
Every generator re-validates its output before returning it.  A generator is
a pure function of ``(kind, seed, resolution, params)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..dyadic import ROOT, DyadicInterval, IntervalSet, predecessors
from ..enlargement import TOP
from ..errors import UnsatisfiableParams
from ..haar import StepFunction, coefficient, support, synthesize
from ..symmetrization import zero_frontier

KINDS = ("chain", "direct-chain", "interval-set", "covering", "disjoint-pair", "frontier-pair", "banded", "band", "general")

_DENOMS = (1, 1, 1, 2, 2, 3, 4, 8)


@dataclass(frozen=True)
class Instance:
    kind: str
    resolution: int
    functions: dict[str, StepFunction] = field(default_factory=dict)
    intervals: dict[str, Any] = field(default_factory=dict)
    params: dict[str, Fraction] = field(default_factory=dict)


def trial_rng(seed: int, trial: int, tag: str = "") -> random.Random:
    """Independent stream for one trial, derived only from the master seed."""
    return random.Random(f"haarlab/{tag}/{seed}/{trial}")


def _rational(rng: random.Random, bound: int = 8) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.choice(_DENOMS))


def _nonzero(rng: random.Random, bound: int = 8) -> Fraction:
    q = Fraction(0)
    while q == 0:
        q = _rational(rng, bound)
    return q


def _ratio_in(rng: random.Random, lo: Fraction, hi: Fraction, steps: int = 12) -> Fraction:
    """Grid point in ``[lo, hi]``."""
    return lo + (hi - lo) * Fraction(rng.randint(0, steps), steps)


def _open_unit(rng: random.Random) -> Fraction:
    """Rational in (0, 1) with a few denominators, endpoints excluded."""
    q = rng.choice((2, 3, 4, 5, 6, 8, 10, 12, 100))
    return Fraction(rng.randint(1, q - 1), q)


def _intervals(resolution: int, min_level: int = 0) -> list[DyadicInterval]:
    return [DyadicInterval(n, k) for n in range(min_level, resolution) for k in range(1 << n)]


def _random_interval(rng: random.Random, lo_level: int, hi_level: int) -> DyadicInterval:
    level = rng.randint(lo_level, hi_level)
    return DyadicInterval(level, rng.randrange(1 << level))


def _child(rng: random.Random, node: DyadicInterval) -> DyadicInterval:
    if node.is_root or rng.random() < 0.5:
        return node.left
    return node.right


def random_coefficients(
    rng: random.Random, resolution: int, min_level: int = 0, root: bool = True
) -> dict[DyadicInterval, Fraction]:
    """Sparse random coefficients, sometimes with a constant run along a branch."""
    pool = _intervals(resolution, min_level)
    if root:
        pool.append(ROOT)
    density = rng.choice((0.05, 0.15, 0.3, 0.6, 1.0))
    coeffs = {i: _nonzero(rng) for i in pool if rng.random() < density}
    if pool and rng.random() < 0.5:
        # nearly flat run: the configuration where projections blow up
        bottom = _random_interval(rng, min_level, resolution - 1) if resolution > min_level else ROOT
        value = _nonzero(rng)
        for node in [bottom] + predecessors(bottom):
            if node in pool and rng.random() < 0.9:
                coeffs[node] = value if rng.random() < 0.8 else value * _ratio_in(rng, Fraction(1, 2), Fraction(3, 2))
    return {i: v for i, v in coeffs.items() if v != 0}


def random_function(rng: random.Random, resolution: int, min_level: int = 0, root: bool = True) -> StepFunction:
    return synthesize(random_coefficients(rng, resolution, min_level, root), resolution)


# -- chain instances -----------------------------------------------------------------


def gen_chain(rng: random.Random, resolution: int, direct: bool) -> Instance:
    """``f`` with ``I ⊋ J ⊋ K``; consecutive direct successors when ``direct``."""
    if resolution < 2:
        raise UnsatisfiableParams("chains of three intervals need resolution >= 2")
    top_level = rng.randint(-1, resolution - 2)
    outer = ROOT if top_level == -1 else _random_interval(rng, top_level, top_level)
    if direct:
        middle = _child(rng, outer)
        inner = _child(rng, middle)
    else:
        mid_level = rng.randint(outer.level + 1, resolution - 1)
        middle = outer
        while middle.level < mid_level:
            middle = _child(rng, middle)
        inner_level = rng.randint(middle.level + 1, resolution)
        inner = middle
        while inner.level < inner_level:
            inner = _child(rng, inner)
    coeffs = random_coefficients(rng, resolution)
    if rng.random() < 0.5:
        # put comparable magnitudes on the two outer intervals
        v = _nonzero(rng)
        coeffs[outer] = v
        if middle.level < resolution:
            coeffs[middle] = -v if rng.random() < 0.3 else v * _ratio_in(rng, Fraction(1, 2), Fraction(2))
    f = synthesize({i: v for i, v in coeffs.items() if v != 0}, resolution)
    inst = Instance("direct-chain" if direct else "chain", resolution, {"f": f}, {"I": outer, "J": middle, "K": inner})
    _validate_chain(inst, direct)
    return inst


def _validate_chain(inst: Instance, direct: bool) -> None:
    i, j, k = inst.intervals["I"], inst.intervals["J"], inst.intervals["K"]
    ok = i.contains(j) and j.contains(k) and i != j and j != k
    if direct:
        ok = ok and j.parent == i and k.parent == j
    if not ok:
        raise AssertionError(f"invalid chain {i}, {j}, {k}")


# -- interval sets ---------------------------------------------------------------------


def gen_interval_set(rng: random.Random, resolution: int) -> Instance:
    pool = _intervals(resolution) + [ROOT]
    size = rng.randint(1, min(len(pool), rng.choice((3, 8, 20, 40))))
    if rng.random() < 0.5:
        chosen = set(rng.sample(pool, size))
    else:
        # grow downward from a few seeds so that nesting is common
        chosen = set()
        while len(chosen) < size:
            node = rng.choice(pool)
            while node.level < resolution - 1 and rng.random() < 0.7:
                chosen.add(node)
                node = _child(rng, node)
            chosen.add(node)
    inst = Instance("interval-set", resolution, intervals={"F": IntervalSet(chosen)})
    if not inst.intervals["F"]:
        raise AssertionError("empty interval set")
    return inst


# -- separated-support instances with witnesses ------------------------------------------


def gen_covering(rng: random.Random, resolution: int) -> Instance:
    """``(f, g, F, alpha, eps)`` where each ``I`` in ``F`` has a witness ``J`` below it.

    Witnesses carry ``|c_J(f)| >= alpha``; ``c_I(g)`` keeps relative distance at
    least ``eps`` from ``c_J(f)``; no other member of ``F`` sits between them.
    """
    if resolution < 1:
        raise UnsatisfiableParams("need resolution >= 1")
    alpha = _open_unit(rng)
    eps = _open_unit(rng)
    members: dict[DyadicInterval, DyadicInterval] = {}
    witnesses: set[DyadicInterval] = set()
    attempts = rng.choice((3, 8, 20, 40))
    for _ in range(attempts):
        top = rng.randint(-1, resolution - 2)
        outer = ROOT if top == -1 else _random_interval(rng, top, top)
        if outer in members or outer in witnesses:
            continue
        lo = 0 if outer.is_root else outer.level + 1
        below = _random_interval(rng, lo, resolution - 1)
        if not outer.contains(below) or below == outer:
            below = _child(rng, outer)
            if below.level >= resolution:
                continue
        if below in members:
            continue
        if any(outer.contains(m) and m.contains(below) and m != outer for m in members):
            continue
        if any(m.contains(outer) and outer.contains(w) and m != outer for m, w in members.items()):
            continue
        members[outer] = below
        witnesses.add(below)

    f_coeffs: dict[DyadicInterval, Fraction] = {}
    g_coeffs: dict[DyadicInterval, Fraction] = {}
    for outer, below in members.items():
        sign = 1 if rng.random() < 0.5 else -1
        mag = alpha if rng.random() < 0.5 else alpha * _ratio_in(rng, Fraction(1), Fraction(4))
        f_coeffs[below] = sign * mag
    for outer, below in members.items():
        cj = f_coeffs[below]
        choice = rng.random()
        if choice < 0.2:
            continue
        if choice < 0.6:
            shift = eps * abs(cj) * (1 if rng.random() < 0.5 else -1)
            g_coeffs[outer] = cj + shift
        elif choice < 0.8:
            g_coeffs[outer] = -cj
        else:
            g_coeffs[outer] = cj * _ratio_in(rng, Fraction(1) + eps, Fraction(4))
    taken = set(members) | witnesses
    for interval in _intervals(resolution) + [ROOT]:
        if interval in taken or rng.random() > 0.1:
            continue
        target = f_coeffs if rng.random() < 0.5 else g_coeffs
        target[interval] = _nonzero(rng)
    f_coeffs = {i: v for i, v in f_coeffs.items() if v != 0}
    g_coeffs = {i: v for i, v in g_coeffs.items() if v != 0}
    inst = Instance(
        "covering",
        resolution,
        {"f": synthesize(f_coeffs, resolution), "g": synthesize(g_coeffs, resolution)},
        {"F": IntervalSet(members), "witnesses": dict(members)},
        {"alpha": alpha, "epsilon": eps},
    )
    validate_covering(inst)
    return inst


def validate_covering(inst: Instance) -> None:
    f, g = inst.functions["f"], inst.functions["g"]
    alpha, eps = inst.params["alpha"], inst.params["epsilon"]
    family = inst.intervals["F"]
    if support(f) & support(g):
        raise AssertionError("supports overlap")
    for outer, below in inst.intervals["witnesses"].items():
        if not (outer.contains(below) and outer != below):
            raise AssertionError("witness is not a successor")
        between = [m for m in family if outer.contains(m) and m.contains(below)]
        if between != [outer]:
            raise AssertionError("another member lies between a member and its witness")
        cj = coefficient(f, below)
        if abs(cj) < alpha or abs(coefficient(g, outer) - cj) < eps * abs(cj):
            raise AssertionError("witness coefficient condition fails")


def gen_disjoint_pair(rng: random.Random, resolution: int) -> Instance:
    """``(f, g, I)`` with disjoint Haar supports inside [0, 1], both vanishing on ``I``, ``‖f‖ > 0``."""
    if resolution < 1:
        raise UnsatisfiableParams("need resolution >= 1")
    pivot = _random_interval(rng, 0, max(0, resolution - 2))
    coeffs = random_coefficients(rng, resolution, root=False)
    coeffs.pop(pivot, None)
    f_c, g_c = {}, {}
    for i, v in coeffs.items():
        (f_c if rng.random() < 0.5 else g_c)[i] = v
    if not f_c:
        spare = [i for i in _intervals(resolution) if i != pivot]
        if not spare:
            raise UnsatisfiableParams("no room for a nonzero f")
        i = rng.choice(spare)
        g_c.pop(i, None)
        f_c[i] = _nonzero(rng)
    half = pivot.left if rng.random() < 0.5 else pivot.right
    if half.level < resolution and rng.random() < 0.3:
        # everything inside one half of the pivot: the forced-branch case
        f_c = {i: v for i, v in f_c.items() if half.contains(i)} or {half: _nonzero(rng)}
        g_c = {i: v for i, v in g_c.items() if half.contains(i) and i not in f_c}
    f = synthesize(f_c, resolution)
    g = synthesize(g_c, resolution)
    inst = Instance("disjoint-pair", resolution, {"f": f, "g": g}, {"I": pivot})
    if support(f) & support(g) or f.is_zero() or coefficient(f, pivot) or coefficient(g, pivot):
        raise AssertionError("invalid disjoint pair")
    if any(i.is_root for i in support(f) | support(g)):
        raise AssertionError("root component in disjoint pair")
    return inst


def gen_frontier_pair(rng: random.Random, resolution: int, alpha: Fraction | None = None) -> Instance:
    """``(f, g)`` for the full symmetrization pass.

    Supports are disjoint, avoid the root and ``[0, 1)``, and ``g`` vanishes on
    the zero frontier of ``f``.  With ``alpha`` set, ``|c(f)| >= alpha`` on the
    support of ``f`` and ``|c(g)| <= 1``.
    """
    if resolution < 2:
        raise UnsatisfiableParams("need resolution >= 2")
    pool = _intervals(resolution, min_level=1)
    density = rng.choice((0.05, 0.1, 0.25, 0.5))
    f_c: dict[DyadicInterval, Fraction] = {}
    for i in pool:
        if rng.random() < density:
            f_c[i] = _f_value(rng, alpha)
    if rng.random() < 0.5:
        bottom = _random_interval(rng, 1, resolution - 1)
        value = _f_value(rng, alpha)
        for node in [bottom] + predecessors(bottom):
            if node.level >= 1:
                f_c[node] = value
    if not f_c:
        f_c[rng.choice(pool)] = _f_value(rng, alpha)
    f = synthesize(f_c, resolution)
    banned = set(f_c) | set(zero_frontier(f)) | set(TOP)
    g_density = rng.choice((0.05, 0.2, 0.5, 0.9))
    g_c = {}
    for i in pool:
        if i not in banned and rng.random() < g_density:
            g_c[i] = _g_value(rng, alpha)
    g = synthesize(g_c, resolution)
    params = {} if alpha is None else {"alpha": alpha}
    inst = Instance("frontier-pair", resolution, {"f": f, "g": g}, params=params)
    validate_frontier_pair(inst)
    return inst


def _f_value(rng: random.Random, alpha: Fraction | None) -> Fraction:
    if alpha is None:
        return _nonzero(rng)
    sign = 1 if rng.random() < 0.5 else -1
    return sign * (alpha if rng.random() < 0.6 else alpha * _ratio_in(rng, Fraction(1), Fraction(3)))


def _g_value(rng: random.Random, alpha: Fraction | None) -> Fraction:
    if alpha is None:
        return _nonzero(rng)
    sign = 1 if rng.random() < 0.5 else -1
    return sign * (Fraction(1) if rng.random() < 0.6 else _ratio_in(rng, Fraction(1, 12), Fraction(1)))


def validate_frontier_pair(inst: Instance) -> None:
    f, g = inst.functions["f"], inst.functions["g"]
    sf, sg = support(f), support(g)
    if f.is_zero() or sf & sg or (sf | sg) & TOP:
        raise AssertionError("invalid frontier pair supports")
    if sg & zero_frontier(f):
        raise AssertionError("g touches the zero frontier of f")
    alpha = inst.params.get("alpha")
    if alpha is not None:
        if any(abs(coefficient(f, i)) < alpha for i in sf) or any(abs(coefficient(g, i)) > 1 for i in sg):
            raise AssertionError("coefficient bounds violated")


# -- banded and general instances --------------------------------------------------------


def gen_banded(rng: random.Random, resolution: int) -> Instance:
    """``h`` supported on levels >= 1 with ``|c| >= alpha b`` on ``S`` and ``|c| <= b`` elsewhere."""
    if resolution < 2:
        raise UnsatisfiableParams("need resolution >= 2")
    alpha = Fraction(1) if rng.random() < 0.2 else _open_unit(rng)
    scale = Fraction(rng.randint(1, 8), rng.choice((1, 2, 4)))
    eps = _open_unit(rng)
    pool = _intervals(resolution, min_level=1)
    density = rng.choice((0.05, 0.2, 0.5, 1.0))
    s_prob = rng.choice((0.1, 0.3, 0.6))
    coeffs: dict[DyadicInterval, Fraction] = {}
    chosen: set[DyadicInterval] = set()
    for i in pool:
        if rng.random() >= density:
            continue
        sign = 1 if rng.random() < 0.5 else -1
        if rng.random() < s_prob:
            chosen.add(i)
            coeffs[i] = sign * scale * _ratio_in(rng, alpha, Fraction(2))
        else:
            coeffs[i] = sign * scale * _ratio_in(rng, Fraction(0), Fraction(1))
    if rng.random() < 0.6:
        bottom = _random_interval(rng, 1, resolution - 1)
        value = scale * _ratio_in(rng, alpha, Fraction(1))
        chosen.add(bottom)
        for node in [bottom] + predecessors(bottom):
            if node.level >= 1:
                coeffs[node] = value * (1 if rng.random() < 0.8 else _ratio_in(rng, Fraction(9, 10), Fraction(1)))
        coeffs[bottom] = value
    coeffs = {i: v for i, v in coeffs.items() if v != 0}
    chosen = {i for i in chosen if i in coeffs and abs(coeffs[i]) >= alpha * scale}
    h = synthesize(coeffs, resolution)
    inst = Instance(
        "banded", resolution, {"h": h}, {"S": IntervalSet(chosen)}, {"alpha": alpha, "b": scale, "epsilon": eps}
    )
    validate_banded(inst)
    return inst


def validate_banded(inst: Instance) -> None:
    h = inst.functions["h"]
    alpha, b = inst.params["alpha"], inst.params["b"]
    chosen = inst.intervals["S"]
    if support(h) & TOP:
        raise AssertionError("banded instance touches the top intervals")
    for i in chosen:
        if abs(coefficient(h, i)) < alpha * b:
            raise AssertionError("selected coefficient below alpha*b")
    for i in support(h) - chosen:
        if abs(coefficient(h, i)) > b:
            raise AssertionError("unselected coefficient above b")


def gen_band(rng: random.Random, resolution: int) -> Instance:
    """``(f, A, rho, eps)`` with ``f`` supported on levels >= 1."""
    if resolution < 2:
        raise UnsatisfiableParams("need resolution >= 2")
    coeffs = random_coefficients(rng, resolution, min_level=1, root=False)
    if not coeffs:
        coeffs[_random_interval(rng, 1, resolution - 1)] = _nonzero(rng)
    f = synthesize(coeffs, resolution)
    supp = list(support(f))
    anchors = {i for i in supp if rng.random() < rng.choice((0.3, 0.7, 1.0))}
    anchors |= {_random_interval(rng, 0, resolution - 1) for _ in range(rng.randint(0, 3))}
    pick = abs(coefficient(f, rng.choice(supp)))
    rho = pick * _ratio_in(rng, Fraction(1, 2), Fraction(1), steps=8)
    if rho == pick:
        rho = pick * Fraction(3, 4)
    inst = Instance(
        "band", resolution, {"f": f}, {"A": IntervalSet(anchors)}, {"rho": rho, "epsilon": _open_unit(rng)}
    )
    if support(f) & TOP or rho <= 0:
        raise AssertionError("invalid band instance")
    return inst


def gen_general(rng: random.Random, resolution: int) -> Instance:
    """``(f, A, delta, eps)`` with every anchor satisfying ``|c_I(f)| >= delta``."""
    if resolution < 1:
        raise UnsatisfiableParams("need resolution >= 1")
    coeffs = random_coefficients(rng, resolution)
    if not coeffs:
        coeffs[_random_interval(rng, 0, resolution - 1)] = _nonzero(rng)
    f = synthesize(coeffs, resolution)
    supp = sorted(support(f))
    mags = sorted({abs(coefficient(f, i)) for i in supp})
    delta = rng.choice(mags)
    if rng.random() < 0.5:
        delta = delta * _ratio_in(rng, Fraction(1, 16), Fraction(1), steps=16) or delta
    eligible = [i for i in supp if abs(coefficient(f, i)) >= delta]
    keep = rng.choice((0.2, 0.5, 1.0))
    anchors = IntervalSet(i for i in eligible if rng.random() < keep)
    eps = _open_unit(rng) if rng.random() < 0.8 else Fraction(rng.randint(1, 9), 10)
    inst = Instance("general", resolution, {"f": f}, {"A": anchors}, {"delta": delta, "epsilon": eps})
    if any(abs(coefficient(f, i)) < delta for i in anchors):
        raise AssertionError("anchor below delta")
    return inst


def gen_instance(kind: str, seed: int, resolution: int, params: dict | None = None) -> Instance:
    """Deterministic instance of ``kind`` at ``resolution`` for ``seed``."""
    rng = random.Random(f"haarlab/instance/{kind}/{seed}/{resolution}")
    params = params or {}
    if kind == "chain":
        return gen_chain(rng, resolution, direct=bool(params.get("direct", False)))
    if kind == "direct-chain":
        return gen_chain(rng, resolution, direct=True)
    if kind == "interval-set":
        return gen_interval_set(rng, resolution)
    if kind == "covering":
        return gen_covering(rng, resolution)
    if kind == "disjoint-pair":
        return gen_disjoint_pair(rng, resolution)
    if kind == "frontier-pair":
        alpha = params.get("alpha")
        return gen_frontier_pair(rng, resolution, None if alpha is None else Fraction(alpha))
    if kind == "banded":
        if "alpha" in params or "b" in params:
            return _rebanded(rng, resolution, Fraction(params.get("alpha", 1)), Fraction(params.get("b", 1)))
        return gen_banded(rng, resolution)
    if kind == "band":
        return gen_band(rng, resolution)
    if kind == "general":
        return gen_general(rng, resolution)
    raise UnsatisfiableParams(f"unknown instance kind {kind!r}; expected one of {', '.join(KINDS)}")


def _rebanded(rng: random.Random, resolution: int, alpha: Fraction, b: Fraction) -> Instance:
    """Banded instance with caller-fixed ``alpha`` and ``b``."""
    if not 0 < alpha <= 1 or b <= 0:
        raise UnsatisfiableParams("banded instances need 0 < alpha <= 1 and b > 0")
    pool = _intervals(resolution, min_level=1)
    coeffs, chosen = {}, set()
    for i in pool:
        if rng.random() < 0.3:
            sign = 1 if rng.random() < 0.5 else -1
            if rng.random() < 0.4:
                chosen.add(i)
                coeffs[i] = sign * b * _ratio_in(rng, alpha, Fraction(2))
            else:
                v = sign * b * _ratio_in(rng, Fraction(0), Fraction(1))
                if v:
                    coeffs[i] = v
    if not chosen:
        i = rng.choice(pool)
        chosen.add(i)
        coeffs[i] = b
    inst = Instance(
        "banded",
        resolution,
        {"h": synthesize(coeffs, resolution)},
        {"S": IntervalSet(chosen)},
        {"alpha": alpha, "b": b, "epsilon": _open_unit(rng)},
    )
    validate_banded(inst)
    return inst
