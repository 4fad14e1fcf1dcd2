"""Seeds of Laurent phenomenon algebras and period-1 detection.

A seed of size ``n`` is a tuple of exchange polynomials ``P_0 .. P_{n-1}`` in
``x_0 .. x_{n-1}`` with ``P_i`` independent of ``x_i`` and not divisible by
any variable.  Index ``n`` is used as the one scratch variable wherever a
fresh symbol is needed; it never survives into a returned seed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .polycore import (
    LaurentPoly,
    PolyError,
    core,
    exact_div,
    multiplicity,
    remove_common_factors,
    substitute,
    x,
)

__all__ = [
    "ExchangeLaurent",
    "Mutation",
    "PeriodReport",
    "Seed",
    "SeedError",
    "exchange_laurent",
    "generate_seed",
    "integrality_screen",
    "is_period1",
    "kappa",
    "mutate",
    "rotate_down",
    "same_up_to_sign",
    "tau",
    "verify_period1_by_mutation",
]


class SeedError(ValueError):
    """Invalid seed or invalid input to a seed operation."""


@dataclass(frozen=True)
class Seed:
    n: int
    polys: Tuple[LaurentPoly, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        if len(polys) != self.n:
            raise SeedError(f"expected {self.n} exchange polynomials, got {len(polys)}")
        for i, p in enumerate(polys):
            if p.is_zero():
                raise SeedError(f"P_{i} is zero")
            if not p.is_polynomial():
                raise SeedError(f"P_{i} has negative exponents")
            if p.max_index() >= self.n:
                raise SeedError(f"P_{i} uses x_{p.max_index()} outside the cluster of size {self.n}")
            if p.depends_on(i):
                raise SeedError(f"P_{i} depends on x_{i}")
            if core(p) != p:
                raise SeedError(f"P_{i} is divisible by a variable")

    def __getitem__(self, i: int) -> LaurentPoly:
        return self.polys[i]

    def __iter__(self):
        return iter(self.polys)

    def __len__(self) -> int:
        return self.n


def _check_generator(P: LaurentPoly, n: int) -> None:
    if n < 2:
        raise SeedError("cluster size must be at least 2")
    if P.is_zero():
        raise SeedError("P is zero")
    if not P.is_polynomial():
        raise SeedError("P must be an ordinary polynomial")
    if P.depends_on(0):
        raise SeedError("P depends on x_0")
    if P.max_index() >= n:
        raise SeedError(f"P uses x_{P.max_index()} but n = {n}")
    if core(P) != P:
        raise SeedError("P is divisible by a variable")


# ---------------------------------------------------------------------------
# tau and kappa
# ---------------------------------------------------------------------------

def tau(P: LaurentPoly, Q: LaurentPoly, i: int, n: int) -> LaurentPoly:
    """Map Q (independent of x_i) to the preceding intermediate polynomial."""
    if Q.depends_on(i):
        raise SeedError(f"Q depends on x_{i}")
    if i < 1:
        raise SeedError("tau needs i >= 1")
    if not Q.depends_on(0):
        return Q.downshift()
    D = substitute(P, i, 0)
    if D.is_zero():
        raise SeedError(f"P vanishes at x_{i} = 0")
    G = substitute(Q, 0, D * x(n, -1))
    H = remove_common_factors(G, D)
    return H.downshift()


def kappa(P: LaurentPoly, Q: LaurentPoly, i: int, n: int) -> LaurentPoly:
    """Inverse of :func:`tau`: map Q (independent of x_i) to the next intermediate."""
    if Q.depends_on(i):
        raise SeedError(f"Q depends on x_{i}")
    if not Q.depends_on(n - 1):
        return Q.upshift()
    Pd = P.downshift()
    D = substitute(Pd, i, 0)
    if D.is_zero():
        raise SeedError(f"P vanishes at x_{i + 1} = 0")
    G = substitute(Q, n - 1, D * x(n, -1))
    H = remove_common_factors(G, D)
    ren = {j: j + 1 for j in range(n)}
    ren[n] = 0
    return H.rename(ren)


def same_up_to_sign(a: LaurentPoly, b: LaurentPoly) -> bool:
    """Equality up to the units +-1 of the integers."""
    return a == b or a == -b


def generate_seed(P: LaurentPoly, n: int, pivot: Optional[int] = None) -> Tuple[List[LaurentPoly], bool]:
    """Candidate period-1 seed generated by P.

    P_0 = P and P_{n-1} is P shifted down; P_k .. P_{n-2} come from tau and
    P_1 .. P_{k-1} from kappa.  The flag reports whether both maps agree across
    the seam between P_{k-1} and P_k.  Returns the raw list because a failing
    candidate need not be a valid :class:`Seed`.
    """
    _check_generator(P, n)
    k = n // 2 if pivot is None else pivot
    if not 1 <= k <= max(n - 1, 1):
        raise SeedError(f"pivot must satisfy 0 < k < n, got {k}")
    polys: List[Optional[LaurentPoly]] = [None] * n
    polys[0] = P
    polys[n - 1] = P.downshift()
    for i in range(n - 2, k - 1, -1):
        polys[i] = tau(P, polys[i + 1], i + 1, n)
    for i in range(1, k):
        polys[i] = kappa(P, polys[i - 1], i - 1, n)
    ok = same_up_to_sign(kappa(P, polys[k - 1], k - 1, n), polys[k])
    if ok:
        ok = same_up_to_sign(tau(P, polys[k], k, n), polys[k - 1])
    return polys, ok  # type: ignore[return-value]


# ---------------------------------------------------------------------------
# exchange Laurent polynomials and mutation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExchangeLaurent:
    base: int
    exponents: Tuple[int, ...]
    value: LaurentPoly

    @property
    def trivial(self) -> bool:
        return not any(self.exponents)


def exchange_laurent(s: Seed, i: int) -> ExchangeLaurent:
    """The Laurent monomial multiple of P_i compatible with every other P_j."""
    n = s.n
    Pi = s[i]
    a = [0] * n
    fresh = x(n, -1)
    for j in range(n):
        if j == i or not Pi.depends_on(j):
            continue
        Pj = s[j]
        if Pj.is_unit_monomial():
            continue
        F = substitute(Pi, j, Pj * fresh)
        a[j] = -multiplicity(F, Pj)
    value = Pi.mul_monomial(a) if any(a) else Pi
    return ExchangeLaurent(i, tuple(a), value)


@dataclass(frozen=True)
class Mutation:
    seed: Seed
    k: int
    new_variable: LaurentPoly  # numerator of x'_k = new_variable / x_k

    def marker(self) -> str:
        from .expr import format_poly

        return f"x{self.k}' = ({format_poly(self.new_variable)})/x{self.k}"


def mutate(s: Seed, k: int) -> Mutation:
    """Mutation at k; the new cluster variable keeps the label x_k."""
    n = s.n
    if not 0 <= k < n:
        raise SeedError(f"mutation index {k} outside 0..{n - 1}")
    hat = exchange_laurent(s, k).value
    fresh = x(n, -1)
    new: List[LaurentPoly] = []
    for j, Pj in enumerate(s):
        if j == k or not Pj.depends_on(k):
            new.append(Pj)
            continue
        try:
            D = substitute(hat, j, 0)
        except PolyError as exc:
            raise SeedError(f"degenerate mutation at {k}: {exc}") from exc
        if D.is_zero():
            raise SeedError(f"degenerate mutation at {k}: exchange polynomial vanishes at x_{j} = 0")
        G = substitute(Pj, k, D * fresh)
        H = remove_common_factors(G, D)
        new.append(H.rename({n: k}))
    return Mutation(Seed(n, tuple(new)), k, hat)


def rotate_down(p: LaurentPoly, n: int) -> LaurentPoly:
    """Relabel x_0 -> x_{n-1} and x_j -> x_{j-1} for j > 0."""
    ren = {j: j - 1 for j in range(1, n)}
    ren[0] = n - 1
    return p.rename(ren)


def verify_period1_by_mutation(s: Seed) -> bool:
    """Mutate at 0 and compare with the seed slid down by one place."""
    n = s.n
    try:
        m = mutate(s, 0).seed
    except (SeedError, PolyError):
        return False
    for i in range(n - 1):
        if not same_up_to_sign(s[i], rotate_down(m[i + 1], n)):
            return False
    if s[0].depends_on(0):
        return False
    return same_up_to_sign(s[n - 1], s[0].downshift())


# ---------------------------------------------------------------------------
# decision procedure
# ---------------------------------------------------------------------------

_SCREEN_BITS = 4096


def _int_terms(P: LaurentPoly, n: int, start: Sequence[int], count: int) -> Optional[int]:
    """Run the recurrence from integer start values.

    Returns the index of the first non-integral term, or None if the run
    stays integral.  A zero term or a term beyond the size budget ends the
    run without a verdict.
    """
    w = list(start)
    for m in range(count):
        if w[0] == 0:
            return None
        q, r = divmod(P.evaluate(w), w[0])
        if r:
            return m + n
        if q.bit_length() > _SCREEN_BITS:
            return None
        w = w[1:] + [q]
    return None


def integrality_screen(P: LaurentPoly, n: int, count: Optional[int] = None) -> Optional[str]:
    """Cheap certificate that P is not period 1, or None.

    A period-1 P makes every term a Laurent polynomial, so starting from
    +-1 values every term is an integer.  A non-integral term therefore
    rules P out.  Passing the screen proves nothing.
    """
    if count is None:
        count = 2 * n + 6
    starts = [[1] * n, [(-1) ** j for j in range(n)], [-((-1) ** j) for j in range(n)]]
    for st in starts:
        bad = _int_terms(P, n, st, count)
        if bad is not None:
            return f"term {bad} from start {st} is not an integer"
    return None


@dataclass
class PeriodReport:
    verdict: str  # "Period1" | "NotPeriod1" | "Undetermined"
    stage: Optional[str] = None
    detail: Optional[str] = None
    seed: Optional[Seed] = None
    hat_condition: Optional[str] = None  # ByDependency | ByTermCount | ByDirectComputation | Failed
    candidate: Optional[List[LaurentPoly]] = field(default=None, repr=False)

    @property
    def is_period1(self) -> bool:
        return self.verdict == "Period1"

    def to_dict(self) -> dict:
        from .expr import format_poly

        d: Dict[str, object] = {"verdict": self.verdict}
        if self.stage is not None:
            d["stage"] = self.stage
        if self.detail is not None:
            d["detail"] = self.detail
        if self.hat_condition is not None:
            d["hat_condition"] = self.hat_condition
        if self.seed is not None:
            d["seed"] = {"n": self.seed.n, "polys": [format_poly(p) for p in self.seed]}
        return d


def _hat_condition(s: Seed) -> str:
    P0 = s[0]
    if all(s[j].depends_on(0) for j in range(1, s.n) if P0.depends_on(j)):
        return "ByDependency"
    if len({len(p) for p in s}) == 1:
        return "ByTermCount"
    if exchange_laurent(s, 0).trivial:
        return "ByDirectComputation"
    return "Failed"


def is_period1(P: LaurentPoly, n: int, pivot: Optional[int] = None, screen: bool = True) -> PeriodReport:
    """Decide whether P generates a period-1 seed of size n."""
    try:
        _check_generator(P, n)
    except SeedError as exc:
        return PeriodReport("NotPeriod1", "input", str(exc))
    if P.is_constant():
        return PeriodReport("NotPeriod1", "input", "P is a constant")
    if screen:
        why = integrality_screen(P, n)
        if why is not None:
            return PeriodReport("NotPeriod1", "integrality", why)
    try:
        polys, ok = generate_seed(P, n, pivot)
    except (SeedError, PolyError) as exc:
        return PeriodReport("NotPeriod1", "generation", str(exc))
    if not ok:
        return PeriodReport("NotPeriod1", "pseudoperiod", "tau and kappa disagree at the pivot", candidate=polys)
    try:
        s = Seed(n, tuple(polys))
    except SeedError as exc:
        return PeriodReport("NotPeriod1", "seed", str(exc), candidate=polys)
    hat = _hat_condition(s)
    if hat == "Failed":
        if not verify_period1_by_mutation(s):
            return PeriodReport("NotPeriod1", "mutation", "exchange Laurent polynomial differs from P_0",
                                hat_condition=hat, candidate=polys)
        return PeriodReport("Undetermined", "hat", "exchange Laurent polynomial differs from P_0",
                            hat_condition=hat, candidate=polys)
    return PeriodReport("Period1", seed=s, hat_condition=hat, candidate=polys)
