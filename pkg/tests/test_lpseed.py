import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lpalg.expr import parse_poly
from lpalg.lpseed import (
    Seed,
    SeedError,
    exchange_laurent,
    generate_seed,
    integrality_screen,
    is_period1,
    kappa,
    mutate,
    rotate_down,
    same_up_to_sign,
    tau,
    verify_period1_by_mutation,
)
from lpalg.polycore import ONE, x

x0, x1, x2, x3 = (x(i) for i in range(4))


def P(text, n):
    return parse_poly(text, n)


def test_tau_examples():
    p = x1 * x2 + 1
    # Q free of x0 just shifts down
    assert tau(p, x2 + 1, 1, 3) == x1 + 1
    # walking the seed of x1*x2 + 1 backwards
    assert tau(p, p.downshift(), 2, 3) == x0 + x2
    assert tau(p, x0 + x2, 1, 3) == p


def test_kappa_examples():
    p = x1 * x2 + 1
    assert kappa(p, p, 0, 3) == x0 + x2
    assert kappa(p, x0 + x2, 1, 3) == x0 * x1 + 1


def test_tau_rejects_dependence():
    with pytest.raises(SeedError):
        tau(x1 * x2 + 1, x1 + x2, 1, 3)
    with pytest.raises(SeedError):
        kappa(x1 * x2 + 1, x0 + x1, 0, 3)


def test_generate_seed_x1x2_plus_1():
    polys, ok = generate_seed(x1 * x2 + 1, 3)
    assert ok
    assert polys == [x1 * x2 + 1, x0 + x2, x0 * x1 + 1]


def test_generate_seed_validates_input():
    with pytest.raises(SeedError):
        generate_seed(x0 + x1, 3)
    with pytest.raises(SeedError):
        generate_seed(x1 * x2, 3)
    with pytest.raises(SeedError):
        generate_seed(x(3) + 1, 3)
    with pytest.raises(SeedError):
        generate_seed(x1 + 1, 3, pivot=0)


def test_is_period1_examples():
    assert is_period1(x1 * x2 + 1, 3).verdict == "Period1"
    r = is_period1(x1 + x2 + 1, 3)
    assert r.verdict == "NotPeriod1" and r.stage == "pseudoperiod"
    r = is_period1(x1 * x3 + x2 ** 2, 4)
    assert r.verdict == "Period1" and verify_period1_by_mutation(r.seed)
    assert r.to_dict()["verdict"] == "Period1"


def test_sign_matters_for_integrality():
    # -x1*x2 - x1 - x2 is not period 1 although its negative is
    assert is_period1(-x1 * x2 - x1 - x2, 3).verdict == "NotPeriod1"
    assert is_period1(x1 * x2 + x1 + x2, 3).verdict == "Period1"


def test_pivot_choice_does_not_change_verdict():
    for text, n in [("x1*x3 + x2^2", 4), ("x1*x4 + x2*x3", 5), ("x1*x2 + 3*x1 + 3*x2 + 5", 3)]:
        p = P(text, n)
        verdicts = {is_period1(p, n, pivot=k).verdict for k in range(1, n)}
        assert verdicts == {"Period1"}


def test_seed_validation():
    with pytest.raises(SeedError, match="depends on x_1"):
        Seed(3, (x1 * x2 + 1, x1 + x2, x0 * x1 + 1))
    with pytest.raises(SeedError, match="divisible"):
        Seed(3, (x1 * x2, x0 + x2, x0 * x1 + 1))
    with pytest.raises(SeedError, match="expected 3"):
        Seed(3, (x1 * x2 + 1,))


def test_mutation_example():
    s = Seed(3, (x1 * x2 + 1, x0 + x2, x0 * x1 + 1))
    m = mutate(s, 0)
    assert m.new_variable == x1 * x2 + 1
    assert m.marker() == "x0' = (x1*x2 + 1)/x0"
    assert verify_period1_by_mutation(s)


def test_exchange_laurent_trivial_for_binomial():
    s = Seed(3, (x1 * x2 + 1, x0 + x2, x0 * x1 + 1))
    assert exchange_laurent(s, 0).trivial


def test_rotate_down():
    assert rotate_down(x0 * x1 + x2, 3) == x2 * x0 + x1


def test_integrality_screen():
    assert integrality_screen(x1 * x2 + 1, 3) is None
    # x1*x2^2 - 1 leaves the integers from an alternating start
    assert "not an integer" in integrality_screen(x1 * x2 ** 2 - 1, 3)


def _rational_terms(p, n, start, count):
    w = [Fraction(v) for v in start]
    out = list(w)
    for _ in range(count):
        if w[0] == 0:
            break  # the run ends at a zero term
        nxt = p.evaluate(w) / w[0]
        out.append(nxt)
        w = w[1:] + [nxt]
    return out


small_poly = st.lists(
    st.tuples(st.tuples(st.integers(0, 2), st.integers(0, 2)), st.integers(-2, 2)),
    min_size=1, max_size=4,
)


@given(small_poly)
def test_screen_is_sound(items):
    """A screen rejection is a real non-integral term of the recurrence."""
    d = {}
    for (i, j), c in items:
        d[(0, i, j)] = d.get((0, i, j), 0) + c
    from lpalg.polycore import LaurentPoly, core

    p = LaurentPoly(d)
    if p.is_zero() or p.is_constant() or core(p) != p:
        return
    msg = integrality_screen(p, 3)
    if msg is None:
        return
    starts = [[1, 1, 1], [1, -1, 1], [-1, 1, -1]]
    found = False
    for st_ in starts:
        ts = _rational_terms(p, 3, st_, 12)
        if any(t.denominator != 1 for t in ts):
            found = True
    assert found


def test_period1_seed_terms_are_laurent_at_pm1():
    """Oracle: Period1 verdicts imply integral +-1 runs well past the screen."""
    for text in ["x1*x2 + 1", "x1^2 + x2^2 + 3*x1*x2", "1 - x1*x2^2", "x1*x2 - 1"]:
        p = P(text, 3)
        assert is_period1(p, 3).is_period1
        for st_ in itertools.product((1, -1), repeat=3):
            ts = _rational_terms(p, 3, list(st_), 14)
            assert all(t.denominator == 1 for t in ts)


def test_same_up_to_sign():
    assert same_up_to_sign(x1 + 1, -x1 - 1)
    assert not same_up_to_sign(x1 + 1, x1 - 1)
    assert same_up_to_sign(ONE, ONE)
