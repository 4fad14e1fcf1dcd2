import json

import pytest
from hypothesis import given

from conftest import polys
from lpalg.expr import (
    ExprSyntaxError,
    format_poly,
    load_seed,
    parse_poly,
    print_poly,
    save_seed,
    seed_from_dict,
    seed_to_dict,
)
from lpalg.lpseed import Seed, SeedError
from lpalg.polycore import ZERO, x

x0, x1, x2, x3 = (x(i) for i in range(4))


def test_parse_examples():
    assert parse_poly("x1*x2 + 1", 3) == x1 * x2 + 1
    assert parse_poly("x1*x3 + x2^2", 4) == x1 * x3 + x2 ** 2
    assert parse_poly("-(x1 - 2)^2*x0", 3) == -((x1 - 2) ** 2) * x0
    assert parse_poly("  7 ") == 7


def test_precedence():
    assert parse_poly("2*x1^2") == 2 * x1 ** 2
    assert parse_poly("x1 - x2 - x3") == x1 - x2 - x3
    assert parse_poly("-x1^2") == -(x1 ** 2)
    assert parse_poly("x1 + x2*x3") == x1 + x2 * x3


@pytest.mark.parametrize("text,column", [
    ("x1 + (", 6),
    ("x1x2", 3),
    ("2 x1", 3),
    ("x1 + ", 6),
    ("x1 ^ -2", 6),
    ("x1 $ 2", 4),
])
def test_syntax_errors_point_at_column(text, column):
    with pytest.raises(ExprSyntaxError) as info:
        parse_poly(text, 4)
    assert info.value.line == 1 and info.value.column == column
    assert "^" in str(info.value)


def test_error_on_later_line():
    with pytest.raises(ExprSyntaxError) as info:
        parse_poly("x1 +\n  x2 *", 4)
    assert (info.value.line, info.value.column) == (2, 7)


def test_variable_out_of_range():
    with pytest.raises(ExprSyntaxError, match="out of range"):
        parse_poly("x1 + x3", 3)


def test_print_examples():
    assert format_poly(x1 * x2 + 1) == "x1*x2 + 1"
    assert format_poly(-x1 + x2 - 1) == "-x1 + x2 - 1"
    assert format_poly(ZERO) == "0"
    assert print_poly(x1 ** 2 - 3 * x0) == format_poly(x1 ** 2 - 3 * x0)
    assert format_poly(x(1, -1) + 1).startswith("laurent:")


@given(polys(nvars=5, max_terms=6, hi=4, coeff=40))
def test_parse_print_round_trip(p):
    assert parse_poly(format_poly(p)) == p


def test_seed_documents(tmp_path):
    doc = {"n": 3, "polys": ["x1*x2 + 1", "x0 + x2", "x0*x1 + 1"]}
    s = seed_from_dict(doc)
    assert isinstance(s, Seed) and s.n == 3
    assert list(s) == [x1 * x2 + 1, x0 + x2, x0 * x1 + 1]
    assert seed_to_dict(s) == doc
    path = tmp_path / "seed.json"
    save_seed(s, path)
    assert json.loads(path.read_text()) == doc
    assert load_seed(path) == s


def test_seed_rejects_self_dependence():
    with pytest.raises(SeedError, match="P_0 depends on x_0"):
        seed_from_dict({"n": 3, "polys": ["x0 + x1", "x0 + x2", "x0*x1 + 1"]})


def test_seed_rejects_bad_documents(tmp_path):
    with pytest.raises(SeedError):
        seed_from_dict({"n": 3, "polys": ["x1*x2 + 1", "x0 + x2"]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ValueError):
        load_seed(bad)
