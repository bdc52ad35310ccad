from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from haarlab.dyadic import ROOT, DyadicInterval, IntervalSet, all_intervals, predecessors
from haarlab.errors import NonPositiveThreshold, ResolutionOverflow, ResolutionTooSmall
from haarlab.haar import (
    HaarExpansion,
    StepFunction,
    analyze,
    coefficient,
    haar_function,
    l1_norm,
    norm_on,
    project,
    project_out,
    support,
    synthesize,
    tail_projection,
    threshold,
)

D = DyadicInterval
BRANCH = StepFunction.from_values([4, 0, 0, 0])

rationals = st.builds(Fraction, st.integers(-40, 40), st.integers(1, 12))


@st.composite
def step_functions(draw, max_resolution=5):
    n = draw(st.integers(0, max_resolution))
    return StepFunction.from_values(draw(st.lists(rationals, min_size=1 << n, max_size=1 << n)), n)


def _oracle_key(interval):
    return None if interval.is_root else (interval.level, interval.index)


class TestStepFunction:
    def test_rejects_bad_lengths_and_floats(self):
        with pytest.raises(ValueError):
            StepFunction.from_values([1, 2, 3])
        with pytest.raises(TypeError):
            StepFunction.from_values([0.5, 1])

    def test_overflow(self):
        with pytest.raises(ResolutionOverflow):
            StepFunction.zero(17)

    def test_equality_lifts(self):
        coarse = StepFunction.from_values([1, 2])
        assert coarse == StepFunction.from_values([1, 1, 2, 2])
        assert hash(coarse) == hash(coarse.lift(3))
        assert coarse != StepFunction.from_values([1, 2, 2, 2])

    def test_arithmetic_aligns_resolutions(self):
        a = StepFunction.from_values([1, 2])
        b = StepFunction.from_values(["1/2", 0, 0, 1])
        assert (a + b).values == (Fraction(3, 2), 1, 2, 3)
        assert (a - a).is_zero()
        assert (a * Fraction(1, 3)).values == (Fraction(1, 3), Fraction(2, 3))
        assert (-a / 2).values == (Fraction(-1, 2), -1)


class TestTransformExamples:
    def test_analyze(self):
        assert dict(analyze(StepFunction.constant(1))) == {ROOT: 1}
        assert dict(analyze(BRANCH)) == {ROOT: 1, D(0, 0): 1, D(1, 0): 1}
        assert dict(analyze(StepFunction.from_values([1, -1]))) == {D(0, 0): 1}

    def test_synthesize(self):
        assert synthesize({D(0, 0): 1}, 1).values == (1, -1)
        assert synthesize({ROOT: 1, D(0, 0): 1, D(1, 0): 1}, 2) == BRANCH
        assert synthesize({}, 3).is_zero()
        with pytest.raises(ResolutionTooSmall):
            synthesize({D(2, 0): 1}, 2)

    def test_expansion_stores_nonzero_only(self):
        e = HaarExpansion({ROOT: 0, D(0, 0): Fraction(1, 2)})
        assert list(e) == [D(0, 0)] and e.coefficient(ROOT) == 0
        assert e.support == IntervalSet([D(0, 0)])

    def test_norms(self):
        assert l1_norm(BRANCH) == 1
        assert norm_on(BRANCH, D(1, 0)) == 1
        assert norm_on(BRANCH, D(1, 1)) == 0
        assert l1_norm(StepFunction.zero(3)) == 0
        # finer than the grid: |value| times measure
        assert norm_on(BRANCH, D(3, 0)) == Fraction(1, 2)

    def test_project(self):
        p = project(BRANCH, IntervalSet([ROOT, D(1, 0)]))
        assert p.values == (3, -1, 1, 1)
        assert l1_norm(p) == Fraction(3, 2)
        assert project(BRANCH, []).is_zero()
        assert project(BRANCH, all_intervals(2, include_root=True)) == BRANCH
        assert project_out(BRANCH, [ROOT]) == BRANCH - StepFunction.constant(1)

    def test_tail_projection(self):
        assert tail_projection(BRANCH, D(1, 0)).values == (2, 2, 0, 0)
        assert tail_projection(synthesize({D(0, 0): 3, D(1, 1): -1}, 2), D(0, 0)).is_zero()
        assert tail_projection(StepFunction.zero(2), D(1, 1)).is_zero()

    def test_threshold(self):
        kept, chosen = threshold(BRANCH, 1)
        assert kept == BRANCH and chosen == IntervalSet([ROOT, D(0, 0), D(1, 0)])
        assert threshold(BRANCH, 2) == (StepFunction.zero(2), IntervalSet())
        kept, chosen = threshold(StepFunction.zero(2), Fraction(1, 2))
        assert kept.is_zero() and not chosen
        with pytest.raises(NonPositiveThreshold):
            threshold(BRANCH, 0)


class TestAgainstPointwiseOracle:
    @given(step_functions())
    def test_coefficients_match_integration(self, f):
        values = list(f.values)
        for interval in all_intervals(f.resolution, include_root=True):
            assert coefficient(f, interval) == oracles.coefficient(values, _oracle_key(interval))
        assert l1_norm(f) == oracles.l1(values)

    @given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.dictionaries(
        st.sampled_from(list(all_intervals(n, include_root=True))), rationals, max_size=12))))
    def test_synthesis_matches_pointwise_sum(self, case):
        n, coeffs = case
        expected = oracles.evaluate({_oracle_key(i): c for i, c in coeffs.items()}, n)
        assert list(synthesize(coeffs, n).values) == expected


class TestProperties:
    @given(step_functions())
    def test_round_trip(self, f):
        assert synthesize(analyze(f), f.resolution) == f
        assert support(f) == analyze(f).support

    @given(step_functions(max_resolution=4))
    def test_nested_norm_chain(self, f):
        for outer in all_intervals(f.resolution, include_root=True):
            for inner in all_intervals(f.resolution + 1, include_root=True):
                if outer.contains(inner):
                    assert norm_on(f, outer) >= norm_on(f, inner) >= abs(coefficient(f, inner))

    @given(step_functions(max_resolution=4))
    def test_tail_projection_bound(self, f):
        for interval in all_intervals(f.resolution, include_root=False):
            tail = tail_projection(f, interval)
            assert l1_norm(tail) <= l1_norm(f)
            bound = max(abs(coefficient(f, j)) for j in predecessors(interval))
            assert norm_on(tail, interval) <= bound
            cells = range(*interval.cell_range(tail.resolution))
            assert len({tail.values[k] for k in cells}) == 1

    @settings(max_examples=60)
    @given(step_functions(max_resolution=4), st.data())
    def test_upward_closed_projection_is_contractive(self, f, data):
        # a set closed under taking supersets: the union of predecessor chains
        pool = list(all_intervals(f.resolution, include_root=True))
        seeds = data.draw(st.lists(st.sampled_from(pool), max_size=5))
        closed = IntervalSet(j for i in seeds for j in [i] + predecessors(i))
        assert l1_norm(project(f, closed)) <= l1_norm(f)

    @given(step_functions(max_resolution=4), st.data())
    def test_projection_support_and_idempotence(self, f, data):
        pool = list(all_intervals(f.resolution, include_root=True))
        s = IntervalSet(data.draw(st.lists(st.sampled_from(pool), max_size=8)))
        p = project(f, s)
        assert support(p) == support(f) & s
        assert project(p, s) == p
        assert p + project_out(f, s) == f

    def test_biorthogonality(self):
        for interval in all_intervals(6, include_root=True):
            h = haar_function(interval, 6)
            assert dict(analyze(h)) == {interval: 1}
            assert l1_norm(h) == 1
