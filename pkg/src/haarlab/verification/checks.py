"""Exact randomized checks, one per inequality.

Each check draws ``trials`` instances from a seeded generator, evaluates the
statement with exact rationals and reduces the outcomes to a
:class:`CheckReport`.  Every statement is normalized to ``small <= big`` (strict
where the inequality is strict); ``worst_ratio`` is the largest ``small / big``
seen.  Statements that also assert set inclusions or structural conditions
count a trial as violated when any of them fails.
"""

from __future__ import annotations

import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from ..dyadic import ROOT, DyadicInterval, IntervalSet, branching_partition
from ..enlargement import BAND_CONSTANT, BANDED_CONSTANT, band_enlarge, construct_enlarged_set, epsilon_enlargement
from ..errors import UnsatisfiableParams
from ..haar import StepFunction, coefficient, l1_norm, norm_of_sum, norm_on, project, support
from ..jsonio import format_rational, interval_list, step_function_to_json
from ..symmetrization import delta, full_symmetrize, symmetrize_step
from . import generators as gen
from .oracles import brute_force_enlargement, direct_coefficient


@dataclass
class Outcome:
    small: Fraction
    big: Fraction
    strict: bool = False
    conditions: dict[str, bool] | None = None

    @property
    def holds(self) -> bool:
        ineq = self.small < self.big if self.strict else self.small <= self.big
        return ineq and all((self.conditions or {}).values())

    @property
    def ratio(self) -> Fraction | None:
        """``small / big``; ``None`` when ``big == 0 < small`` (unbounded)."""
        if self.big == 0:
            return Fraction(0) if self.small <= 0 else None
        return self.small / self.big


@dataclass
class CheckReport:
    statement: str
    trials: int
    violations: int
    worst_ratio: Fraction | None
    seed: int
    resolution: int
    elapsed: float
    witness: dict | None = None
    failed_conditions: dict[str, int] | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "statement": self.statement,
            "trials": self.trials,
            "violations": self.violations,
            "worst_ratio": None if self.worst_ratio is None else format_rational(self.worst_ratio),
            "seed": self.seed,
            "resolution": self.resolution,
            "passed": self.passed,
            "witness": self.witness,
        }
        if self.failed_conditions:
            out["failed_conditions"] = self.failed_conditions
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out

    def summary_line(self) -> str:
        ratio = "inf" if self.worst_ratio is None else f"{float(self.worst_ratio):.6g}"
        status = "PASS" if self.passed else "FAIL"
        return (
            f"{status} {self.statement:<16} trials={self.trials:<6} violations={self.violations:<4} "
            f"worst_ratio={ratio:<10} seed={self.seed} N<={self.resolution}"
        )


def instance_to_json(inst: gen.Instance) -> dict:
    out: dict[str, Any] = {"kind": inst.kind, "resolution": inst.resolution}
    for name, f in inst.functions.items():
        out[name] = step_function_to_json(f)
    for name, value in inst.intervals.items():
        if isinstance(value, DyadicInterval):
            out[name] = str(value)
        elif isinstance(value, dict):
            out[name] = {str(k): str(v) for k, v in sorted(value.items())}
        else:
            out[name] = interval_list(value)
    for name, value in inst.params.items():
        out[name] = format_rational(value)
    return out


# -- evaluators ---------------------------------------------------------------------


def _chain_outcome(inst: gen.Instance, divisor: int) -> Outcome:
    f = inst.functions["f"]
    outer, middle, inner = inst.intervals["I"], inst.intervals["J"], inst.intervals["K"]
    gap = abs(abs(coefficient(f, outer)) - abs(coefficient(f, middle)))
    return Outcome(gap / divisor, norm_on(f, outer) - norm_on(f, inner))


def eval_direct_chain(inst: gen.Instance) -> Outcome:
    return _chain_outcome(inst, 2)


def eval_chain(inst: gen.Instance) -> Outcome:
    return _chain_outcome(inst, 4)


def eval_branching(inst: gen.Instance) -> Outcome:
    leaves, _, branching = branching_partition(inst.intervals["F"])
    return Outcome(Fraction(len(branching)), Fraction(len(leaves)), strict=True)


def eval_covering(inst: gen.Instance) -> Outcome:
    f, g = inst.functions["f"], inst.functions["g"]
    alpha, eps = inst.params["alpha"], inst.params["epsilon"]
    return Outcome(alpha * eps / 6 * len(inst.intervals["F"]), norm_of_sum(f, g))


def _values(f: StepFunction) -> set[Fraction]:
    return {direct_coefficient(f, i) for i in support(f)} | {Fraction(0)}


def _direct_support(f: StepFunction) -> IntervalSet:
    n = f.resolution
    pool = [ROOT] + [DyadicInterval(m, k) for m in range(n) for k in range(1 << m)]
    return IntervalSet(i for i in pool if direct_coefficient(f, i) != 0)


def eval_step(inst: gen.Instance) -> Outcome:
    f, g, pivot = inst.functions["f"], inst.functions["g"], inst.intervals["I"]
    f2, g2, branch = symmetrize_step(f, g, pivot)
    sf, sg = _direct_support(f2), _direct_support(g2)
    # the norm identity of the chosen branch
    shift = delta(f, pivot) if branch == "left" else -delta(f, pivot)
    conditions = {
        "disjoint": not (sf & sg),
        "pivot-cleared": pivot not in sf and pivot not in sg,
        "positive": norm_of_sum(f2, g2) > 0,
        "inherited": {direct_coefficient(f2, i) for i in sf} <= _values(f)
        and {direct_coefficient(g2, i) for i in sg} <= _values(g),
        "norm-identity": l1_norm(f2) == l1_norm(f) + shift,
    }
    before = l1_norm(f) / norm_of_sum(f, g)
    after = l1_norm(f2) / norm_of_sum(f2, g2) if conditions["positive"] else Fraction(0)
    return Outcome(before, after, conditions=conditions)


def _symmetric(f: StepFunction, interval: DyadicInterval) -> bool:
    """``f(x) == f(x - |I|/2)`` for ``x`` in the right half, compared point value by point value."""
    n = f.resolution
    if interval.level >= n:
        return True
    half = interval.measure / 2
    vals = f.values
    lo, hi = interval.start, interval.end
    cells = range(1 << n)
    right = [k for k in cells if lo + half <= Fraction(k, 1 << n) < hi]
    return all(vals[k] == vals[k - int(half * (1 << n))] for k in right)


def symmetrization_conditions(f: StepFunction, g: StepFunction, f_t: StepFunction, g_t: StepFunction) -> dict[str, bool]:
    """Recheck every output property of the full symmetrization from definitions."""
    top = [ROOT, DyadicInterval(0, 0)]
    n = f_t.resolution
    coeffs = {i: direct_coefficient(f_t, i) for i in [ROOT] + [DyadicInterval(m, k) for m in range(n) for k in range(1 << m)]}
    frontier = [
        i
        for i in coeffs
        if not i.is_root and coeffs[i] == 0 and (coeffs.get(i.left, 0) != 0 or coeffs.get(i.right, 0) != 0)
    ]
    sf, sg = _direct_support(f_t), _direct_support(g_t)
    positive = norm_of_sum(f_t, g_t) > 0
    return {
        "top-vanishes": all(direct_coefficient(h, i) == 0 for h in (f_t, g_t) for i in top),
        "frontier-symmetric": all(
            direct_coefficient(g_t, i) == 0 and _symmetric(f_t, i) and _symmetric(g_t, i) for i in frontier
        ),
        "disjoint": not (sf & sg),
        "inherited": {coeffs[i] for i in sf} <= _values(f) and {direct_coefficient(g_t, i) for i in sg} <= _values(g),
        "positive": positive,
    }


def eval_full_symmetrize(inst: gen.Instance) -> Outcome:
    f, g = inst.functions["f"], inst.functions["g"]
    pair = full_symmetrize(f, g)
    conditions = symmetrization_conditions(f, g, pair.f_tilde, pair.g_tilde)
    before = l1_norm(f) / norm_of_sum(f, g)
    after = pair.ratio if conditions["positive"] else Fraction(0)
    return Outcome(before, after, conditions=conditions)


def eval_separated(inst: gen.Instance) -> Outcome:
    f, g = inst.functions["f"], inst.functions["g"]
    alpha = inst.params["alpha"]
    return Outcome(l1_norm(f), (5 / alpha + 1) * norm_of_sum(f, g))


def eval_banded(inst: gen.Instance) -> Outcome:
    h = inst.functions["h"]
    alpha, eps = inst.params["alpha"], inst.params["epsilon"]
    anchors = inst.intervals["S"]
    enlarged = epsilon_enlargement(h, anchors, eps)
    conditions = {"enlargement-matches-oracle": enlarged == brute_force_enlargement(h, anchors, eps)}
    return Outcome(l1_norm(project(h, enlarged)), BANDED_CONSTANT / (alpha**2 * eps) * l1_norm(h), conditions=conditions)


def eval_band(inst: gen.Instance) -> Outcome:
    f = inst.functions["f"]
    rho, eps = inst.params["rho"], inst.params["epsilon"]
    anchors = inst.intervals["A"]
    chosen, cert = band_enlarge(f, anchors, rho, eps)
    band = IntervalSet(i for i in anchors if rho < abs(direct_coefficient(f, i)) <= 2 * rho)
    upper = brute_force_enlargement(f, band, eps)
    conditions = {"band-included": band <= chosen, "within-enlargement": chosen <= upper}
    return Outcome(l1_norm(project(f, chosen)), BAND_CONSTANT / eps * l1_norm(f), conditions=conditions)


def eval_general(inst: gen.Instance) -> Outcome:
    f = inst.functions["f"]
    d, eps = inst.params["delta"], inst.params["epsilon"]
    anchors = inst.intervals["A"]
    chosen, cert = construct_enlarged_set(f, anchors, d, eps)
    upper = brute_force_enlargement(f, anchors, eps)
    lhs = l1_norm(project(f, chosen))
    conditions = {
        "anchors-included": anchors <= chosen,
        "within-enlargement": chosen <= upper,
        "certificate": cert.satisfied and cert.lhs == lhs,
    }
    return Outcome(lhs, cert.constant * l1_norm(f), conditions=conditions)


def _separated_pair(rng, resolution: int) -> gen.Instance:
    alpha = Fraction(1) if rng.random() < 0.2 else gen._open_unit(rng)
    return gen.gen_frontier_pair(rng, resolution, alpha=alpha)


@dataclass(frozen=True)
class Statement:
    id: str
    summary: str
    make: Callable[[Any, int], gen.Instance]
    evaluate: Callable[[gen.Instance], Outcome]
    min_resolution: int = 2


STATEMENTS: dict[str, Statement] = {
    s.id: s
    for s in (
        Statement(
            "lemma-3.1",
            "‖f‖ on I minus K >= ||c_I| - |c_J|| / 2 for direct successors K of J of I",
            lambda rng, n: gen.gen_chain(rng, n, direct=True),
            eval_direct_chain,
        ),
        Statement(
            "lemma-3.2",
            "‖f‖ on I minus K >= ||c_I| - |c_J|| / 4 for successors K of J of I",
            lambda rng, n: gen.gen_chain(rng, n, direct=False),
            eval_chain,
        ),
        Statement(
            "prop-3.3a",
            "#branching members < #minimal members of a finite interval set",
            gen.gen_interval_set,
            eval_branching,
            min_resolution=1,
        ),
        Statement(
            "lemma-3.3",
            "‖f+g‖ >= (alpha eps / 6) |F| when every member of F has a separated witness",
            gen.gen_covering,
            eval_covering,
        ),
        Statement(
            "lemma-3.4",
            "one symmetrization step keeps supports apart and does not lower ‖f‖/‖f+g‖",
            gen.gen_disjoint_pair,
            eval_step,
        ),
        Statement(
            "symmetrize",
            "full frontier symmetrization: output conditions and ratio monotonicity",
            lambda rng, n: gen.gen_frontier_pair(rng, n),
            eval_full_symmetrize,
        ),
        Statement(
            "lemma-3.5",
            "‖f‖ <= (5/alpha + 1) ‖f+g‖ for frontier-separated pairs",
            _separated_pair,
            eval_separated,
        ),
        Statement(
            "thm-3.8",
            "‖P_{S_eps}(h)‖ <= 42 / (alpha^2 eps) ‖h‖ for banded h",
            gen.gen_banded,
            eval_banded,
        ),
        Statement(
            "cor-3.9",
            "band enlargement C with B ⊆ C ⊆ B_eps(f) and ‖P_C(f)‖ <= 45738/eps ‖f‖",
            gen.gen_band,
            eval_band,
        ),
        Statement(
            "thm-2.2",
            "A ⊆ E ⊆ A_eps(f) and the certificate bound on ‖P_E(f)‖",
            gen.gen_general,
            eval_general,
            min_resolution=1,
        ),
    )
}


def check(statement: str, trials: int, seed: int, resolution: int) -> CheckReport:
    """Run ``trials`` exact trials; trial ``t`` uses a resolution in ``[min, resolution]`` drawn from its own stream."""
    if statement not in STATEMENTS:
        raise UnsatisfiableParams(f"unknown statement {statement!r}; expected one of {', '.join(STATEMENTS)}")
    entry = STATEMENTS[statement]
    if resolution < entry.min_resolution:
        raise UnsatisfiableParams(f"{statement} needs resolution >= {entry.min_resolution}")
    if trials < 0:
        raise UnsatisfiableParams("trials must be nonnegative")
    start = time.perf_counter()
    violations = 0
    worst: Fraction | None = Fraction(0)
    worst_key: tuple | None = None
    witness = None
    failed: dict[str, int] = {}
    for t in range(trials):
        rng = gen.trial_rng(seed, t, statement)
        n = rng.randint(entry.min_resolution, resolution)
        inst = entry.make(rng, n)
        outcome = entry.evaluate(inst)
        ratio = outcome.ratio
        if not outcome.holds:
            violations += 1
            for name, ok in (outcome.conditions or {}).items():
                if not ok:
                    failed[name] = failed.get(name, 0) + 1
        # rank: violations first, then unbounded ratios, then by ratio
        key = (not outcome.holds, ratio is None, ratio if ratio is not None else Fraction(0))
        if worst_key is None or key > worst_key:
            worst_key = key
            worst = ratio
            witness = instance_to_json(inst)
    return CheckReport(
        statement=statement,
        trials=trials,
        violations=violations,
        worst_ratio=worst,
        seed=seed,
        resolution=resolution,
        elapsed=time.perf_counter() - start,
        witness=witness,
        failed_conditions=failed or None,
    )


def run_suite(statements: Iterable[str], trials: int, seed: int, resolution: int) -> list[CheckReport]:
    return [check(s, trials, seed, resolution) for s in statements]
