"""The recurrence x_{m+n} = P(x_{m+1}, ..., x_{m+n-1}) / x_m.

Terms are produced either as Laurent polynomials in the initial variables
x_0 .. x_{n-1} (every division is checked to be exact) or as exact rationals
from a numeric start.  The second half of the module checks conserved
quantities, k-invariants and the multilinear recurrences they give.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Union

from .polycore import ONE, ZERO, LaurentPoly, compose, exact_div, gcd, x

__all__ = [
    "DEFAULT_TERM_BUDGET",
    "InvariantReport",
    "InvariantSpec",
    "LaurentViolation",
    "Mode",
    "MultilinearReport",
    "SequenceState",
    "SingularityAt",
    "TermBudgetExceeded",
    "check_invariant",
    "check_multilinearization",
    "detect_period",
    "invariant_polynomial",
    "invariant_spec",
    "numeric_terms",
    "step_numeric",
    "step_symbolic",
    "symbolic_terms",
]

DEFAULT_TERM_BUDGET = 200_000

Number = Union[int, Fraction]


class Mode(str, enum.Enum):
    LaurentSymbolic = "LaurentSymbolic"
    ExactNumeric = "ExactNumeric"


class LaurentViolation(ArithmeticError):
    """The division producing term ``m + n`` is not exact.

    ``numerator`` and ``denominator`` are the polynomial and the old term;
    ``remainder_witness`` is the numerator with their common factor removed.
    """

    def __init__(self, m: int, numerator: LaurentPoly, denominator: LaurentPoly):
        self.m = m
        self.numerator = numerator
        self.denominator = denominator
        g = gcd(numerator, denominator)
        self.remainder_witness = exact_div(numerator, g) or numerator
        super().__init__(f"term {m} does not divide the numerator of term {m}+n")


class SingularityAt(ZeroDivisionError):
    def __init__(self, m: int):
        self.m = m
        super().__init__(f"term x_{m} is zero")


class TermBudgetExceeded(RuntimeError):
    def __init__(self, index: int, size: int, budget: int):
        self.index = index
        self.size = size
        super().__init__(f"term {index} has {size} monomials, over the budget of {budget}")


@dataclass
class SequenceState:
    """Sliding window of the last n terms; ``m`` is the index of window[0]."""

    P: LaurentPoly
    n: int
    mode: Mode
    window: List[Union[LaurentPoly, Number]]
    m: int = 0
    budget: int = DEFAULT_TERM_BUDGET

    def __post_init__(self):
        if len(self.window) != self.n:
            raise ValueError(f"window must hold {self.n} terms, got {len(self.window)}")
        if self.P.depends_on(0) or self.P.max_index() >= self.n:
            raise ValueError(f"P must lie in Z[x_1, ..., x_{self.n - 1}]")

    @classmethod
    def symbolic(cls, P: LaurentPoly, n: int, budget: int = DEFAULT_TERM_BUDGET) -> "SequenceState":
        return cls(P, n, Mode.LaurentSymbolic, [x(i) for i in range(n)], 0, budget)

    @classmethod
    def numeric(cls, P: LaurentPoly, n: int, initial: Optional[Sequence[Number]] = None) -> "SequenceState":
        start = [1] * n if initial is None else [_normal(Fraction(v)) for v in initial]
        return cls(P, n, Mode.ExactNumeric, start)

    def step(self):
        return step_symbolic(self) if self.mode is Mode.LaurentSymbolic else step_numeric(self)


def _normal(v: Fraction) -> Number:
    return v.numerator if v.denominator == 1 else v


def _advance(state: SequenceState, term) -> None:
    state.window.pop(0)
    state.window.append(term)
    state.m += 1


def step_symbolic(state: SequenceState) -> LaurentPoly:
    """Next term as a Laurent polynomial; raises LaurentViolation if inexact."""
    if state.mode is not Mode.LaurentSymbolic:
        raise ValueError("state is not in symbolic mode")
    w = state.window
    num = compose(state.P, {i: w[i] for i in range(1, state.n)})
    q = exact_div(num, w[0])
    if q is None:
        raise LaurentViolation(state.m, num, w[0])
    if len(q) > state.budget:
        raise TermBudgetExceeded(state.m + state.n, len(q), state.budget)
    _advance(state, q)
    return q


def step_numeric(state: SequenceState) -> Number:
    """Next term in exact rational arithmetic."""
    if state.mode is not Mode.ExactNumeric:
        raise ValueError("state is not in numeric mode")
    w = state.window
    if w[0] == 0:
        raise SingularityAt(state.m)
    num = state.P.evaluate([0] + list(w[1:]))
    q = _normal(Fraction(num) / Fraction(w[0]))
    _advance(state, q)
    return q


def symbolic_terms(P: LaurentPoly, n: int, count: int, budget: int = DEFAULT_TERM_BUDGET) -> List[LaurentPoly]:
    """Terms x_0 .. x_{count-1} as Laurent polynomials."""
    st = SequenceState.symbolic(P, n, budget)
    out = list(st.window[:count])
    while len(out) < count:
        out.append(step_symbolic(st))
    return out


def numeric_terms(P: LaurentPoly, n: int, count: int, initial: Optional[Sequence[Number]] = None) -> List[Number]:
    st = SequenceState.numeric(P, n, initial)
    out = list(st.window[:count])
    while len(out) < count:
        out.append(step_numeric(st))
    return out


def detect_period(terms: Sequence, n: int) -> Optional[int]:
    """Least p with terms[i + p] == terms[i] for i < n, if within the list.

    A recurrence of order n is periodic as soon as one window of n terms
    reappears, so matching the initial window suffices.
    """
    for p in range(1, len(terms) - n + 1):
        if all(terms[i + p] == terms[i] for i in range(n)):
            return p
    return None


# ---------------------------------------------------------------------------
# conserved quantities and k-invariants
# ---------------------------------------------------------------------------

def _y(i: int) -> LaurentPoly:
    return x(i)


def _prod(idx) -> LaurentPoly:
    out = ONE
    for i in idx:
        out = out * _y(i)
    return out


def _sum(idx) -> LaurentPoly:
    return sum((_y(i) for i in idx), ZERO)


@dataclass(frozen=True)
class InvariantSpec:
    """J_m = numerator / denominator with y_i standing for x_{m+i}.

    ``k`` is the period of J in m (1 for a conserved quantity).  The
    multilinear recurrence reads ``y_target = J_{m mod k} * multiplier -
    subtrahend``.
    """

    family: str
    n: int
    k: int
    numerator: LaurentPoly
    denominator: LaurentPoly
    target: int
    multiplier: LaurentPoly
    subtrahend: LaurentPoly

    @property
    def width(self) -> int:
        return max(self.numerator.max_index(), self.denominator.max_index(),
                   self.target, self.multiplier.max_index(), self.subtrahend.max_index()) + 1


def invariant_spec(family: str, n: int, params: Optional[Mapping[str, int]] = None) -> InvariantSpec:
    """Invariant and multilinear recurrence for one of the six supported families.

    Parameters: ``A``, ``B`` (where applicable), ``r`` for Jumping and ``k``
    for the sink-type binomial x_k x_{n-k} + 1.
    """
    from .families import FamilySpec

    p = dict(params or {})
    fam = FamilySpec(family, n, {}).family
    A = int(p.get("A", 0))
    B = int(p.get("B", 0))
    if fam == "SymmetricSecondPowers":
        yi = [_y(i) for i in range(n)]
        num = sum((v * v for v in yi), ZERO) + _sum(range(n)) * A + B
        return InvariantSpec(fam, n, 1, num, _prod(range(n)), n, _prod(range(1, n)), _y(0) + A)
    if fam == "Jumping":
        r = int(p["r"])
        return InvariantSpec(fam, n, 1, _y(1) + _y(n + r), _prod(range(r + 1, n + 1)),
                             n + r, _prod(range(r + 1, n + 1)), _y(1))
    if fam == "SinkBinomial":
        k = int(p["k"])
        if not 0 < k < n:
            raise ValueError("need 0 < k < n")
        return InvariantSpec(fam, n, n - k, _y(0) + _y(2 * k), _y(k), 2 * k, _y(k), _y(0))
    if fam == "Extreme":
        return InvariantSpec(fam, n, n - 1, _y(2) + _y(0) + A, _y(1), 2, _y(1), _y(0) + A)
    if fam in ("Chain", "MultilinearSymmetric"):
        if n % 2 == 0 or n < 3:
            raise ValueError(f"{fam} invariant needs odd n >= 3")
        odd = _prod(2 * i + 1 for i in range((n - 1) // 2))
        if fam == "Chain":
            return InvariantSpec(fam, n, 2, _y(n - 1) + _y(0) + A, odd, n - 1, odd, _y(0) + A)
        return InvariantSpec(fam, n, 2, _sum(range(n)) + A, odd, n - 1, odd, _sum(range(n - 1)) + A)
    raise ValueError(f"no invariant known for family {family}")


def invariant_polynomial(family: str, n: int, params: Optional[Mapping[str, int]] = None) -> LaurentPoly:
    """The P that ``invariant_spec`` with the same arguments describes."""
    from .families import FamilySpec, build

    p = dict(params or {})
    fam = FamilySpec(family, n, {}).family
    A = int(p.get("A", 0))
    B = int(p.get("B", 0))
    if fam == "SymmetricSecondPowers":
        return build(FamilySpec(fam, n, {"As": [A], "A": B}))
    if fam == "Jumping":
        return build(FamilySpec(fam, n, {"r": int(p["r"]), "A": A}))
    if fam == "SinkBinomial":
        k = int(p["k"])
        if not 0 < k < n:
            raise ValueError("need 0 < k < n")
        a = [0] * (n - 1)
        a[k - 1] += 1
        a[n - k - 1] += 1
        return build(FamilySpec(fam, n, {"a": a}))
    if fam in ("Extreme", "Chain", "MultilinearSymmetric"):
        return build(FamilySpec(fam, n, {"A": A, "B": B}))
    raise ValueError(f"no invariant known for family {family}")


def _window_eval(e: LaurentPoly, terms: Sequence[LaurentPoly], m: int) -> LaurentPoly:
    if e.is_constant():
        return e
    return compose(e, {i: terms[m + i] for i in e.variables()})


@dataclass
class InvariantReport:
    ok: bool
    k: int
    checked: int
    failures: List[int] = field(default_factory=list)
    strict: Optional[bool] = None  # J_{m+1} != J_m somewhere (meaningful when k > 1)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "k": self.k, "checked": self.checked,
                "failures": self.failures, "strict": self.strict}


def _mono_exponents(e: LaurentPoly, m: int) -> Optional[Dict[int, int]]:
    """Exponents of a monomial in y, keyed by absolute term index m + i."""
    ts = list(e.terms())
    if len(ts) != 1:
        return None
    return {m + i: k for i, k in enumerate(ts[0][0]) if k}


def _term_product(terms: Sequence[LaurentPoly], ex: Mapping[int, int]) -> LaurentPoly:
    out = ONE
    for i, k in ex.items():
        out = out * terms[i] ** k
    return out


def _same_ratio(spec: InvariantSpec, terms: Sequence[LaurentPoly], nums: Mapping[int, LaurentPoly],
                a: int, b: int) -> bool:
    """J_a == J_b, cross-multiplied.

    When the denominator is a monomial in the window, factors shared by the
    two windows cancel before anything is multiplied out.
    """
    ea = _mono_exponents(spec.denominator, a)
    eb = _mono_exponents(spec.denominator, b)
    if ea is None:
        da = _window_eval(spec.denominator, terms, a)
        db = _window_eval(spec.denominator, terms, b)
        return nums[a] * db == nums[b] * da
    for i in set(ea) & set(eb):
        c = min(ea[i], eb[i])
        ea[i] -= c
        eb[i] -= c
    return nums[a] * _term_product(terms, eb) == nums[b] * _term_product(terms, ea)


def _j_width(spec: InvariantSpec) -> int:
    return max(spec.numerator.max_index(), spec.denominator.max_index()) + 1


def _terms_for(P: LaurentPoly, n: int, horizon: int, budget: int,
               initial: Optional[Sequence[Number]]) -> list:
    if initial is None:
        return symbolic_terms(P, n, horizon + 1, budget)
    return [Fraction(v) for v in numeric_terms(P, n, horizon + 1, initial)]


def _num_value(e: LaurentPoly, terms: Sequence[Fraction], m: int) -> Fraction:
    vals = terms[m:m + e.max_index() + 1]
    return Fraction(e.evaluate(vals)) if e.max_index() >= 0 else Fraction(e.evaluate([]))


def check_invariant(spec: InvariantSpec, P: LaurentPoly, n: int, horizon: int = 10,
                    budget: int = DEFAULT_TERM_BUDGET,
                    initial: Optional[Sequence[Number]] = None) -> InvariantReport:
    """Verify J_{m+k} = J_m for every J_m whose window lies in x_0 .. x_horizon.

    Symbolic by default; with ``initial`` the terms are exact rationals from
    that start instead, which reaches far longer horizons.
    """
    if n != spec.n:
        raise ValueError(f"spec is for n = {spec.n}, got n = {n}")
    terms = _terms_for(P, n, horizon, budget, initial)
    last = horizon - _j_width(spec) + 1  # largest m whose window fits
    if initial is None:
        nums = {m: _window_eval(spec.numerator, terms, m) for m in range(0, last + 1)}

        def same(a: int, b: int) -> bool:
            return _same_ratio(spec, terms, nums, a, b)
    else:
        J = {m: _num_value(spec.numerator, terms, m) / _num_value(spec.denominator, terms, m)
             for m in range(0, last + 1)}

        def same(a: int, b: int) -> bool:
            return J[a] == J[b]
    fails = []
    checked = 0
    for m in range(0, last - spec.k + 1):
        checked += 1
        if not same(m, m + spec.k):
            fails.append(m)
    strict = None
    if spec.k > 1 and last >= 1:
        strict = any(not same(m, m + 1) for m in range(last))
    return InvariantReport(not fails and checked > 0, spec.k, checked, fails, strict)


@dataclass
class MultilinearReport:
    ok: bool
    checked: int
    failures: List[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": self.failures}


def check_multilinearization(spec: InvariantSpec, P: LaurentPoly, n: int, horizon: int = 10,
                             budget: int = DEFAULT_TERM_BUDGET,
                             initial: Optional[Sequence[Number]] = None) -> MultilinearReport:
    """Verify x_{m+target} = J_{m mod k} * multiplier - subtrahend for all fitting m.

    J_0 .. J_{k-1} are evaluated once on the initial terms.  Symbolically the
    identity is checked cross-multiplied by the denominator of J; with
    ``initial`` it is checked in exact rationals.
    """
    if n != spec.n:
        raise ValueError(f"spec is for n = {spec.n}, got n = {n}")
    terms = _terms_for(P, n, horizon, budget, initial)
    jw = _j_width(spec)
    for i in range(spec.k):
        if i + jw - 1 > horizon:
            raise ValueError(f"horizon {horizon} too short for J_{i}")
    fails = []
    checked = 0
    if initial is not None:
        J = [_num_value(spec.numerator, terms, i) / _num_value(spec.denominator, terms, i) for i in range(spec.k)]
        for m in range(0, horizon - spec.width + 2):
            want = J[m % spec.k] * _num_value(spec.multiplier, terms, m) - _num_value(spec.subtrahend, terms, m)
            checked += 1
            if terms[m + spec.target] != want:
                fails.append(m)
        return MultilinearReport(not fails and checked > 0, checked, fails)
    nums = {i: _window_eval(spec.numerator, terms, i) for i in range(spec.k)}
    for m in range(0, horizon - spec.width + 2):
        i = m % spec.k
        lhs = terms[m + spec.target] + _window_eval(spec.subtrahend, terms, m)
        den = _mono_exponents(spec.denominator, i)
        mul = _mono_exponents(spec.multiplier, m)
        if den is None or mul is None:
            lhs = lhs * _window_eval(spec.denominator, terms, i)
            rhs = nums[i] * _window_eval(spec.multiplier, terms, m)
        else:
            # shared term factors cancel; the constant coefficients stay
            cd = next(iter(spec.denominator.terms()))[1]
            cm = next(iter(spec.multiplier.terms()))[1]
            for t in set(den) & set(mul):
                c = min(den[t], mul[t])
                den[t] -= c
                mul[t] -= c
            lhs = lhs * _term_product(terms, den) * cd
            rhs = nums[i] * _term_product(terms, mul) * cm
        checked += 1
        if lhs != rhs:
            fails.append(m)
    return MultilinearReport(not fails and checked > 0, checked, fails)
