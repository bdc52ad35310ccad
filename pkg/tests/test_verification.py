import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from haarlab.dyadic import ROOT, DyadicInterval, IntervalSet
from haarlab.errors import ResolutionOverflow, UnsatisfiableParams
from haarlab.haar import coefficient, l1_norm, support
from haarlab.jsonio import dumps
from haarlab.verification import checks
from haarlab.verification import generators as gen
from haarlab.verification.families import branch_family, spread_family, spread_levels
from haarlab.verification.oracles import brute_force_enlargement, direct_coefficient, direct_norm

D = DyadicInterval


class TestFamilies:
    def test_branch_small_cases(self):
        one = branch_family(1)
        assert one.f.values == (4, 0, 0, 0)
        assert one.anchors == IntervalSet([ROOT, D(1, 0)])
        assert (one.norm, one.projection_norm) == (1, Fraction(3, 2))
        assert branch_family(2).projection_norm == Fraction(17, 8)

    def test_branch_matches_pointwise_definition(self):
        for n in (1, 2, 3):
            assert list(branch_family(n).f.values) == oracles.branch_function(n)

    def test_branch_limits(self):
        branch_family(8)
        with pytest.raises(ResolutionOverflow):
            branch_family(9)
        with pytest.raises(ValueError):
            branch_family(0)

    def test_spread_groups(self):
        groups = spread_levels(3)
        assert groups[0] == [D(1, 0), D(1, 1)]
        assert groups[1] == [D(3, 0), D(3, 1), D(3, 4), D(3, 5)]
        assert [len(g) for g in groups] == [2, 4, 8]
        # each group sits inside the left halves of the previous one
        for prev, cur in zip(groups, groups[1:]):
            assert all(any(p.left.contains(c) for p in prev) for c in cur)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_spread_family(self, n):
        fam = spread_family(n)
        assert fam.norm == 1
        # same projection norm as the branch family
        assert fam.projection_norm == branch_family(n).projection_norm
        for eps in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(99, 100)):
            assert fam.enlargement_is_trivial(eps)

    def test_spread_limit(self):
        with pytest.raises(ResolutionOverflow):
            spread_family(5)


class TestOracles:
    @settings(max_examples=50)
    @given(st.integers(0, 2**32))
    def test_direct_routes_agree_with_pointwise_model(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 5)
        f = gen.random_function(rng, n)
        values = list(f.values)
        for i in [ROOT] + [D(m, k) for m in range(n) for k in range(1 << m)]:
            key = None if i.is_root else (i.level, i.index)
            assert direct_coefficient(f, i) == oracles.coefficient(values, key)
        assert direct_norm(f) == oracles.l1(values) == l1_norm(f)
        anchors = [i for i in support(f) if rng.random() < 0.5]
        eps = Fraction(rng.randint(1, 9), 10)
        keys = [None if i.is_root else (i.level, i.index) for i in anchors]
        expected = {ROOT if k is None else D(*k) for k in oracles.enlargement(values, n, keys, eps)}
        assert set(brute_force_enlargement(f, anchors, eps)) == expected


class TestGenerators:
    def test_chain_example(self):
        inst = gen.gen_instance("chain", 1, 6)
        i, j, k = inst.intervals["I"], inst.intervals["J"], inst.intervals["K"]
        assert i.contains(j) and j.contains(k) and len({i, j, k}) == 3
        assert inst.resolution == 6

    def test_direct_chain_links(self):
        for seed in range(30):
            inst = gen.gen_instance("direct-chain", seed, 5)
            i, j, k = inst.intervals["I"], inst.intervals["J"], inst.intervals["K"]
            assert j.parent == i and k.parent == j

    def test_banded_example(self):
        inst = gen.gen_instance("banded", 2, 6, {"alpha": Fraction(1, 2), "b": 1})
        h, chosen = inst.functions["h"], inst.intervals["S"]
        assert chosen
        assert all(abs(coefficient(h, i)) >= Fraction(1, 2) for i in chosen)
        assert all(abs(coefficient(h, i)) <= 1 for i in support(h) - chosen)

    def test_interval_set_example(self):
        inst = gen.gen_instance("interval-set", 3, 5)
        assert inst.intervals["F"] and all(i.level < 5 for i in inst.intervals["F"])

    @pytest.mark.parametrize("kind", gen.KINDS)
    def test_deterministic(self, kind):
        a = checks.instance_to_json(gen.gen_instance(kind, 11, 5))
        b = checks.instance_to_json(gen.gen_instance(kind, 11, 5))
        assert a == b

    def test_unknown_kind_and_bad_params(self):
        with pytest.raises(UnsatisfiableParams):
            gen.gen_instance("nope", 0, 4)
        with pytest.raises(UnsatisfiableParams):
            gen.gen_instance("banded", 0, 4, {"alpha": 2})
        with pytest.raises(UnsatisfiableParams):
            gen.gen_instance("disjoint-pair", 0, 1)

    @settings(max_examples=40)
    @given(st.integers(0, 2**32))
    def test_covering_hypotheses(self, seed):
        inst = gen.gen_covering(random.Random(seed), 6)
        gen.validate_covering(inst)


class TestChecks:
    def test_spec_examples(self):
        for name, trials, n in (("lemma-3.2", 500, 8), ("prop-3.3a", 500, 7), ("thm-3.8", 200, 8)):
            report = checks.check(name, trials, 7, n)
            assert report.trials == trials
            assert report.violations == 0
            assert report.worst_ratio is not None and report.worst_ratio <= 1

    @pytest.mark.parametrize("name", list(checks.STATEMENTS))
    def test_reproducible(self, name):
        a = checks.check(name, 15, 3, 5).to_json()
        b = checks.check(name, 15, 3, 5).to_json()
        assert dumps(a) == dumps(b)
        assert a["trials"] == 15 and "elapsed" not in a

    def test_timing_is_opt_in(self):
        report = checks.check("lemma-3.1", 3, 0, 4)
        assert "elapsed" in report.to_json(timing=True)

    def test_invalid_requests(self):
        with pytest.raises(UnsatisfiableParams):
            checks.check("lemma-9.9", 1, 0, 4)
        with pytest.raises(UnsatisfiableParams):
            checks.check("lemma-3.1", 1, 0, 1)

    def test_weakened_constant_is_caught(self, monkeypatch):
        # shrinking the constant far below the truth must surface violations
        monkeypatch.setattr(checks, "BANDED_CONSTANT", Fraction(1, 10**6))
        report = checks.check("thm-3.8", 50, 1, 6)
        assert report.violations > 0
        assert report.worst_ratio is None or report.worst_ratio > 1
        assert report.witness["kind"] == "banded"

    def test_broken_inclusion_is_caught(self, monkeypatch):
        real = checks.construct_enlarged_set

        def sloppy(f, anchors, d, eps):
            chosen, cert = real(f, anchors, d, eps)
            return chosen | IntervalSet([ROOT, D(0, 0), D(1, 1)]), cert

        monkeypatch.setattr(checks, "construct_enlarged_set", sloppy)
        report = checks.check("thm-2.2", 40, 2, 5)
        assert report.violations > 0
        assert "within-enlargement" in report.failed_conditions

    def test_outcome_ratio_normalization(self):
        assert checks.Outcome(Fraction(1), Fraction(2)).ratio == Fraction(1, 2)
        assert checks.Outcome(Fraction(0), Fraction(0)).ratio == 0
        unbounded = checks.Outcome(Fraction(1), Fraction(0))
        assert unbounded.ratio is None and not unbounded.holds
        assert not checks.Outcome(Fraction(1), Fraction(1), strict=True).holds
