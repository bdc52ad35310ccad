from fractions import Fraction

import pytest

from haarlab.dyadic import ROOT, DyadicInterval
from haarlab.errors import SchemaError
from haarlab.haar import StepFunction
from haarlab.jsonio import (
    expansion_from_json,
    expansion_to_json,
    format_rational,
    parse_interval_list,
    parse_rational,
    step_function_from_json,
    step_function_to_json,
)


@pytest.mark.parametrize(
    "value, text",
    [(Fraction(3), "3"), (Fraction(-5, 8), "-5/8"), (Fraction(10, -4), "-5/2"), (Fraction(0), "0")],
)
def test_canonical_rationals(value, text):
    assert format_rational(value) == text
    assert parse_rational(text) == value


@pytest.mark.parametrize("raw", [0.5, True, None, "1/0", "x", "1.5"])
def test_rejected_rationals(raw):
    with pytest.raises(SchemaError):
        parse_rational(raw)


def test_non_reduced_input_is_reduced_on_output():
    assert format_rational(parse_rational("6/-4")) == "-3/2"


def test_step_function_round_trip():
    f = StepFunction.from_values(["1/2", -3, 0, "7/4"])
    raw = step_function_to_json(f)
    assert raw == {"resolution": 2, "values": ["1/2", "-3", "0", "7/4"]}
    assert step_function_from_json(raw) == f
    # resolution may be omitted
    assert step_function_from_json({"values": raw["values"]}) == f
    with pytest.raises(SchemaError):
        step_function_from_json({"resolution": 3, "values": raw["values"]})


def test_expansion_round_trip():
    raw = {"coeffs": {"root": "1", "2/3": "-1/4"}}
    e = expansion_from_json(raw)
    assert e.coefficient(ROOT) == 1 and e.coefficient(DyadicInterval(2, 3)) == Fraction(-1, 4)
    assert expansion_to_json(e) == raw
    with pytest.raises(SchemaError):
        expansion_from_json({"coeffs": {"bad": "1"}})


def test_interval_lists():
    assert list(parse_interval_list(["1/1", "root"])) == [ROOT, DyadicInterval(1, 1)]
    with pytest.raises(SchemaError):
        parse_interval_list("root")
