"""Named families of period-1 polynomials, their closed-form seeds, and the
small-n classifiers.

A family instance is a :class:`FamilySpec`; :func:`build` turns it into the
generating polynomial and :func:`expected_seed` into the seed predicted by
the closed-form intermediate polynomials (``None`` where no formula is
available for the parameter regime).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .lpseed import Seed
from .polycore import ONE, ZERO, LaurentPoly, core, exact_div, gcd, is_irreducible_best_effort, substitute, x
from .quiver import BMatrix, epsilon

__all__ = [
    "FAMILIES",
    "FIXTURES",
    "FamilyError",
    "FamilySpec",
    "N3Class",
    "build",
    "classify_n2",
    "classify_n3",
    "expand",
    "expected_seed",
    "expected_seed_reason",
    "family_grid",
    "flip_symmetric_matrix",
    "reflect",
]

FAMILIES = (
    "SymmetricSecondPowers",
    "SinkBinomial",
    "Extreme",
    "Singleton",
    "Chain",
    "MultilinearSymmetric",
    "Jumping",
    "Hopping",
    "FlipSymmetric",
    "Balanced",
    "VectorSum",
    "LittlePi",
    "Pi",
    "GaleRobinson",
)

_ALIASES = {f.lower(): f for f in FAMILIES}
_ALIASES.update({
    "symmetric": "SymmetricSecondPowers",
    "sink": "SinkBinomial",
    "multilinear": "MultilinearSymmetric",
    "flip": "FlipSymmetric",
    "vector": "VectorSum",
    "littlepi": "LittlePi",
    "little-pi": "LittlePi",
    "gale-robinson": "GaleRobinson",
    "gr": "GaleRobinson",
})


class FamilyError(ValueError):
    """A family parameter constraint is violated."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    params: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        name = _ALIASES.get(str(self.family).lower().replace("_", ""), None) or _ALIASES.get(str(self.family).lower())
        if name is None:
            raise FamilyError(f"unknown family {self.family!r}")
        object.__setattr__(self, "family", name)
        object.__setattr__(self, "params", dict(self.params))

    def get(self, key: str, default=None):
        return self.params.get(key, default)

    def describe(self) -> str:
        ps = ", ".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}(n={self.n}{', ' + ps if ps else ''})"


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def _mono(exps: Mapping[int, int], coeff: int = 1) -> LaurentPoly:
    if not exps:
        return LaurentPoly.const(coeff)
    e = [0] * (max(exps) + 1)
    for i, k in exps.items():
        e[i] += k
    return LaurentPoly({tuple(e): coeff})


def _prod(idx: Iterable[int]) -> LaurentPoly:
    out: Dict[int, int] = {}
    for i in idx:
        out[i] = out.get(i, 0) + 1
    return _mono(out)


def _elementary(k: int, variables: Sequence[int]) -> LaurentPoly:
    out = ZERO
    for combo in itertools.combinations(variables, k):
        out = out + _prod(combo)
    return out


def _others(n: int, i: int) -> List[int]:
    return [j for j in range(n) if j != i]


def _as_args(P: LaurentPoly, args: Sequence[int]) -> LaurentPoly:
    """P(x_1, ..., x_{n-1}) evaluated at (x_{args[0]}, x_{args[1]}, ...)."""
    return P.rename({k + 1: v for k, v in enumerate(args)})


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise FamilyError(msg)


def _int(spec: FamilySpec, key: str, default: Optional[int] = None) -> int:
    v = spec.get(key, default)
    if v is None:
        raise FamilyError(f"{spec.family} needs parameter {key}")
    return int(v)


def _closed_set(S: Iterable[int], n: int) -> bool:
    S = set(S)
    return all((n - i) in S for i in S)


def _is_monic_special(cs: Sequence[int]) -> Optional[str]:
    """n = 2 class of the coefficient list c_0 .. c_d, or None.

    Monic of degree d with c_0 = 1 and palindromic coefficients; or c_0 = -1,
    d even and c_i = (-1)^(d-i-1) c_(d-i), that is P(x) = -x^d P(-1/x); or
    monic quadratic with c_0 != 0.  Degree 1 needs c_0 = 1.
    """
    d = len(cs) - 1
    if d < 1 or cs[d] != 1 or cs[0] == 0:
        return None
    if d == 2:
        return "MonicDeg2"
    if cs[0] == 1 and all(cs[i] == cs[d - i] for i in range(d + 1)):
        return "Palindromic"
    if cs[0] == -1 and d % 2 == 0 and all(cs[i] == (-1) ** (d - i - 1) * cs[d - i] for i in range(d + 1)):
        return "AntipalindromicEven"
    return None


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------

def build(spec: FamilySpec) -> LaurentPoly:
    """The generating polynomial of a family instance."""
    f, n = spec.family, spec.n
    _require(isinstance(n, int) and n >= 2, f"n must be an integer >= 2, got {n}")
    vs = list(range(1, n))
    if f == "SymmetricSecondPowers":
        As = list(spec.get("As", []))
        _require(len(As) <= n - 1, f"at most {n - 1} elementary coefficients allowed")
        P = sum((x(i) ** 2 for i in vs), ZERO)
        for k, c in enumerate(As, start=1):
            if c:
                P = P + _elementary(k, vs) * int(c)
        return P + _int(spec, "A", 0)
    if f == "SinkBinomial":
        a = [int(v) for v in spec.get("a", [])]
        _require(len(a) == n - 1, f"exponent vector must have length {n - 1}")
        _require(all(v >= 0 for v in a) and any(a), "exponents must be non-negative and not all zero")
        for i in range(1, n):
            _require((a[i - 1] == 0) == (a[n - i - 1] == 0),
                     f"a_{i} = 0 must hold exactly when a_{n - i} = 0")
        return _mono({i: a[i - 1] for i in vs if a[i - 1]}) + 1
    if f == "Extreme":
        _require(n >= 3, "Extreme needs n >= 3")
        A, B = _int(spec, "A", 0), _int(spec, "B", 0)
        return x(1) * x(n - 1) + sum((x(i) for i in vs), ZERO) * A + B
    if f == "Singleton":
        _require(n % 2 == 0, "Singleton needs even n")
        cs = spec.get("coeffs")
        if cs is None:
            cs = [_int(spec, "B", 0), _int(spec, "A", 0), 1]
        cs = [int(c) for c in cs]
        _require(_is_monic_special(cs) is not None,
                 "Singleton needs a monic palindromic, even-degree antipalindromic, or quadratic polynomial")
        h = n // 2
        return sum((x(h) ** k * c for k, c in enumerate(cs) if c), ZERO)
    if f == "Chain":
        _require(n > 2 and n % 2 == 1, "Chain needs odd n > 2")
        A, B = _int(spec, "A", 0), _int(spec, "B", 0)
        return sum((x(i) * x(i + 1) for i in range(1, n - 1)), ZERO) + sum((x(i) for i in vs), ZERO) * A + B
    if f == "MultilinearSymmetric":
        _require(n > 2 and n % 2 == 1, "MultilinearSymmetric needs odd n > 2")
        A, B = _int(spec, "A", 0), _int(spec, "B", 0)
        return _elementary(2, vs) + _elementary(1, vs) * A + B
    if f in ("Jumping", "Hopping"):
        r = _int(spec, "r")
        _require(r >= 1, "r must be positive")
        if f == "Jumping":
            _require(n >= 2 * r + 1, f"Jumping needs n >= 2r+1 = {2 * r + 1}")
        else:
            _require(n >= 2 * r + 2, f"Hopping needs n >= 2r+2 = {2 * r + 2}")
        _require(n % r == 1 % r, f"n = {n} is not congruent to 1 mod r = {r}")
        return _hop_F(n, r, 1, *_hop_coeffs(spec))
    if f in ("FlipSymmetric", "Balanced"):
        L, R, a = _flip_params(spec)
        M1 = _mono({i: a[i] for i in L})
        M2 = _mono({i: a[i] for i in R})
        if f == "FlipSymmetric":
            return M1 + M2
        m = _int(spec, "m")
        _require(m > 1, "Balanced needs m > 1")
        As = [int(v) for v in spec.get("As", [])]
        _require(len(As) <= m // 2, f"at most {m // 2} coefficients A_i allowed")
        return _balanced(M1, M2, m, As)
    if f == "VectorSum":
        a = [int(v) for v in spec.get("a", [])]
        _require(len(a) == n - 1, f"exponent vector must have length {n - 1}")
        vecs = spec.get("B", {})
        if not isinstance(vecs, Mapping):
            vecs = {tuple(b): 1 for b in vecs}
        P = _mono({i: a[i - 1] for i in vs if a[i - 1]}) + 1
        for b, C in vecs.items():
            b = [int(v) for v in b]
            _require(len(b) == n - 1, "vectors in B must have length n-1")
            _require(all(0 < bi < ai for bi, ai in zip(b, a)), f"vector {b} must satisfy 0 < b_i < a_i")
            _require(int(C) > 0, "coefficients C_b must be positive")
            P = P + (_mono({i: b[i - 1] for i in vs}) + _mono({i: a[i - 1] - b[i - 1] for i in vs})) * int(C)
        return P
    if f in ("LittlePi", "Pi"):
        k = _int(spec, "k")
        _require(k >= 1 and n > 2 * k, f"needs n > 2k, got n = {n}, k = {k}")
        _require(n != 3 * k, "needs n != 3k")
        tail = x(2 * k) * x(n - 2 * k)
        if f == "LittlePi":
            A = _int(spec, "A", 1)
            return x(k) * A + x(n - k) * A + tail
        A, B = _int(spec, "A"), _int(spec, "B")
        a1, b1, a2, b2 = (_int(spec, s) for s in ("a1", "b1", "a2", "b2"))
        _require(min(a1, b1, a2, b2) >= 0, "exponents must be non-negative")
        _require(a1 + b1 == a2 + b2, "needs a1 + b1 = a2 + b2")
        return (_mono({k: a1, n - k: b1}, A) + _mono({k: a2, n - k: b2}, B)) + tail
    if f == "GaleRobinson":
        p, q, r = _int(spec, "p"), _int(spec, "q"), _int(spec, "r")
        _require(0 < p < q < r, "needs 0 < p < q < r")
        _require(p + q + r == n, f"needs p + q + r = n, got {p + q + r} != {n}")
        A, B, C = _int(spec, "A", 1), _int(spec, "B", 1), _int(spec, "C", 1)
        return x(p) * x(n - p) * A + x(q) * x(n - q) * B + x(r) * x(n - r) * C
    raise FamilyError(f"unknown family {f}")


def _hop_coeffs(spec: FamilySpec) -> Tuple[int, int]:
    if spec.family == "Jumping":
        return 0, _int(spec, "A", 0)
    return _int(spec, "A", 0), _int(spec, "B", 0)


def _hop_F(n: int, r: int, a: int, A: int, B: int) -> LaurentPoly:
    """Sum of x_{a+rk} x_{a+rk+r-1}, optionally with the hopping links, plus B."""
    cnt = (n - a) // r
    P = sum((x(a + r * k) * x(a + r * k + r - 1) for k in range(cnt)), ZERO)
    if A:
        P = P + sum((x(a + r * k + r - 1) * x(a + r * k + r) for k in range(cnt - 1)), ZERO) * A
    return P + B


def _flip_params(spec: FamilySpec) -> Tuple[List[int], List[int], Dict[int, int]]:
    n = spec.n
    L = sorted(int(i) for i in spec.get("L", []))
    R = sorted(int(i) for i in spec.get("R", []))
    a = {int(k): int(v) for k, v in dict(spec.get("a", {})).items()}
    _require(not set(L) & set(R), "L and R must be disjoint")
    _require(all(0 < i < n for i in L + R), "L and R must lie in 1..n-1")
    _require(_closed_set(L, n), "L must satisfy i in L <=> n-i in L")
    _require(_closed_set(R, n), "R must satisfy i in R <=> n-i in R")
    _require(bool(L) or bool(R), "L and R cannot both be empty")
    for i in L + R:
        _require(a.get(i, 0) > 0, f"a({i}) must be a positive integer")
    return L, R, a


def _balanced(M1: LaurentPoly, M2: LaurentPoly, m: int, As: Sequence[int]) -> LaurentPoly:
    P = M1 ** m + M2 ** m
    for i, A in enumerate(As, start=1):
        if not A:
            continue
        if 2 * i == m:
            P = P + (M1 ** i) * (M2 ** i) * A
        else:
            P = P + ((M1 ** i) * (M2 ** (m - i)) + (M1 ** (m - i)) * (M2 ** i)) * A
    return P


# ---------------------------------------------------------------------------
# closed-form seeds
# ---------------------------------------------------------------------------

def _require_coprime(P: LaurentPoly, mids: Mapping[int, LaurentPoly]) -> None:
    """Reject closed forms that are visibly reducible: two of them share a factor."""
    polys = [(0, P)] + sorted(mids.items())
    for a, (i, p) in enumerate(polys):
        for j, q in polys[a + 1:]:
            if p == q:
                continue
            g = gcd(p, q)
            if not g.is_constant():
                raise _NoClosedForm(f"closed forms for P_{i} and P_{j} share the factor {g}")


def _primitive(p: LaurentPoly) -> LaurentPoly:
    c = p.content()
    return p if c == 1 else exact_div(p, LaurentPoly.const(c))


def _finish(n: int, P: LaurentPoly, mids: Mapping[int, LaurentPoly]) -> Seed:
    polys = [P] + [_primitive(core(mids[i])) for i in range(1, n - 1)] + [P.downshift()]
    return Seed(n, tuple(polys[:n]))


def _fill_by_upshift(n: int, anchors: Mapping[int, LaurentPoly]) -> Dict[int, LaurentPoly]:
    """Complete P_1..P_{n-2}: each P_j is the nearest anchor below j shifted up."""
    out = {}
    keys = sorted(anchors)
    for j in range(1, n - 1):
        if j in anchors:
            out[j] = anchors[j]
            continue
        i = max(t for t in keys if t < j)
        out[j] = anchors[i].shift(j - i)
    return out


def flip_symmetric_matrix(row0: Sequence[int]) -> BMatrix:
    """The period-1 mutual matrix determined by its first row.

    Column 0 is b_i0 = -b_{0,n-i}; every other entry follows from the
    closed-form conditions for mutual period-1 double quivers.
    """
    n = len(row0)
    rows = [[0] * n for _ in range(n)]
    rows[0] = list(row0)
    for i in range(1, n):
        rows[i][0] = -row0[n - i]
    partial = BMatrix(rows)  # epsilon only reads row 0 and column 0
    for i in range(1, n):
        for j in range(1, n):
            if i < j:
                rows[i][j] = -sum(epsilon(partial, i - k, j - k) for k in range(i + 1)) + row0[j - i]
            elif j < i:
                rows[i][j] = -sum(epsilon(partial, i - k, j - k) for k in range(j + 1)) - row0[n - i + j]
    return BMatrix(rows)


def _row_binomial(row: Sequence[int]) -> Tuple[LaurentPoly, LaurentPoly]:
    pos = {j: v for j, v in enumerate(row) if v > 0}
    neg = {j: -v for j, v in enumerate(row) if v < 0}
    return _mono(pos), _mono(neg)


def _root_monomial(M: LaurentPoly, m: int) -> LaurentPoly:
    (e, c), = M.as_dict().items()
    _require(all(v % m == 0 for v in e), "monomial is not an m-th power")
    return LaurentPoly({tuple(v // m for v in e): c})


class _NoClosedForm(Exception):
    pass


def expected_seed(spec: FamilySpec) -> Optional[Seed]:
    """Seed predicted by the closed-form intermediate polynomials.

    Returns None for parameter regimes without a usable closed form; see
    :func:`expected_seed_reason`.
    """
    try:
        return _expected_seed(spec)
    except _NoClosedForm:
        return None


def expected_seed_reason(spec: FamilySpec) -> Optional[str]:
    """Why :func:`expected_seed` gives None for this spec, or None if it does not."""
    try:
        _expected_seed(spec)
    except _NoClosedForm as exc:
        return str(exc)
    return None


def _expected_seed(spec: FamilySpec) -> Seed:
    f, n = spec.family, spec.n
    P = build(spec)
    if n == 2:
        return Seed(2, (P, P.downshift()))
    mids: Dict[int, LaurentPoly] = {}
    if f == "SymmetricSecondPowers":
        for i in range(1, n - 1):
            mids[i] = _as_args(P, _others(n, i))
    elif f == "SinkBinomial":
        a = [0] + [int(v) for v in spec.get("a")]
        for i in range(1, n - 1):
            left = _mono({j: a[n - i + j] for j in range(i) if a[n - i + j]})
            right = _mono({i + j: a[j] for j in range(1, n - i) if a[j]})
            mids[i] = left + right
    elif f == "Extreme":
        A = _int(spec, "A", 0)
        for i in range(1, n - 1):
            mids[i] = x(i - 1) + x(i + 1) + A
    elif f == "Singleton":
        h = n // 2
        for i in range(1, n - 1):
            mids[i] = P.rename({h: (i + h) % n})
    elif f in ("Chain", "MultilinearSymmetric"):
        if n % 2 == 0:
            raise _NoClosedForm(f"{f} closed form needs odd n")
        A, B = _int(spec, "A", 0), _int(spec, "B", 0)
        for i in range(1, n - 1):
            rest = _others(n, i)
            if i % 2 == 1:
                if f == "Chain":
                    mids[i] = x(0) + x(n - 1) + A
                else:
                    mids[i] = _elementary(1, rest) + A
            elif f == "Chain":
                pairs = sum((x(t) * x(t + 1) for t in range(n - 1) if i not in (t, t + 1)), ZERO)
                mids[i] = pairs + _elementary(1, rest) * A + B
            else:
                mids[i] = _elementary(2, rest) + _elementary(1, rest) * A + B
    elif f == "Hopping" and _int(spec, "r") == 2 and _int(spec, "A", 0) == 1:
        # every adjacent product appears once: this is the chain polynomial with A = 0
        return _expected_seed(FamilySpec("Chain", n, {"A": 0, "B": _int(spec, "B", 0)}))
    elif f in ("Jumping", "Hopping"):
        mids = _hop_seed(spec)
        _require_coprime(P, mids)
    elif f == "FlipSymmetric":
        L, R, a = _flip_params(spec)
        row0 = [0] * n
        for i in L:
            row0[i] = a[i]
        for i in R:
            row0[i] = -a[i]
        B = flip_symmetric_matrix(row0)
        for i in range(1, n - 1):
            m1, m2 = _row_binomial(B.rows[i])
            mids[i] = m1 + m2
    elif f == "Balanced":
        L, R, a = _flip_params(spec)
        m = _int(spec, "m")
        As = [int(v) for v in spec.get("As", [])]
        row0 = [0] * n
        for i in L:
            row0[i] = a[i] * m
        for i in R:
            row0[i] = -a[i] * m
        B = flip_symmetric_matrix(row0)
        for i in range(1, n - 1):
            m1, m2 = _row_binomial(B.rows[i])
            mids[i] = _balanced(_root_monomial(m1, m), _root_monomial(m2, m), m, As)
    elif f == "VectorSum":
        a = [0] + [int(v) for v in spec.get("a")]
        vecs = spec.get("B", {})
        if not isinstance(vecs, Mapping):
            vecs = {tuple(b): 1 for b in vecs}
        terms = [([0] * n, 1)] + [([0] + [int(v) for v in b], int(C)) for b, C in vecs.items()]
        for i in range(1, n - 1):
            tot = ZERO
            for b, C in terms:
                first = {t: b[n - i + t] for t in range(i)}
                first.update({t: a[t - i] - b[t - i] for t in range(i + 1, n)})
                second = {t: a[n - i + t] - b[n - i + t] for t in range(i)}
                second.update({t: b[t - i] for t in range(i + 1, n)})
                tot = tot + _mono(first, C) + _mono(second, C)
            mids[i] = tot
    elif f == "LittlePi":
        mids = _little_pi_seed(spec)
    elif f == "Pi":
        mids = _pi_seed(spec)
    elif f == "GaleRobinson":
        mids = _gale_robinson_seed(spec)
    return _finish(n, P, mids)


def _hop_seed(spec: FamilySpec) -> Dict[int, LaurentPoly]:
    n = spec.n
    r = _int(spec, "r")
    A, B = _hop_coeffs(spec)

    def F(a: int) -> LaurentPoly:
        # every pair x_s x_{s+r-1} with s = a mod r inside x_0 .. x_{n-1}
        starts = list(range(a % r, n - r + 1, r))
        out = sum((x(s) * x(s + r - 1) for s in starts), ZERO)
        if A:
            # links join consecutive pairs; the link after the last pair is
            # kept for a >= 2 and the one before the first pair for a = r-1
            links = [s + r - 1 for s in starts[:-1]]
            last = starts[-1] + r - 1
            if a >= 2 and last + 1 < n:
                links.append(last)
            if a == r - 1 and starts[0] >= 1:
                links.append(starts[0] - 1)
            out = out + sum((x(t) * x(t + 1) for t in links), ZERO) * A
        return out + B

    def prod(lo: int, hi: int, idx) -> LaurentPoly:
        return _prod(idx(k) for k in range(lo, hi + 1))

    mids: Dict[int, LaurentPoly] = {}
    for j in range(1, r - 1):
        tot = ZERO
        for i in range(1, j + 2):
            aij = prod(0, j - i, lambda k: k) * prod(0, i - 2, lambda k: n - r + j - k)
            tot = tot + aij * F(j + 2 - i)
        mids[j] = substitute(tot, j, 0)
        # P is invariant under x_i <-> x_{n-i}, so the seed is mirrored
        mids[n - j - 1] = mids[j].rename({t: n - 1 - t for t in range(n)})
    for j in range(max(r - 1, 1), n - r + 1):
        tot = ZERO
        for i in range(1, r + 1):
            ai = prod(0, r - 1 - i, lambda k: k) * prod(0, i - 2, lambda k: n - k - 1)
            tot = tot + ai * F(r - i + 1)
        mids[j] = substitute(tot, j, 0)
    return mids


def _little_pi_seed(spec: FamilySpec) -> Optional[Dict[int, LaurentPoly]]:
    n, k, A = spec.n, _int(spec, "k"), _int(spec, "A", 1)
    X = x
    if n > 4 * k:
        anchors = {
            k: A * X(0) * X(2 * k) + A * X(2 * k) * X(n - 2 * k) + X(0) * X(3 * k) * X(n - k) + A * A * X(n - k),
            2 * k: X(0) * X(3 * k) + X(k) * X(4 * k) + A * A,
            n - 2 * k: A * X(k) * X(n - 3 * k) + A * X(n - 3 * k) * X(n - k) + X(0) * X(n - 4 * k) * X(n - k) + A * A * X(0),
            n - k: A * X(0) + A * X(n - 2 * k) + X(k) * X(n - 3 * k),
        }
    elif n == 4 * k:
        anchors = {
            k: A * X(0) * X(2 * k) + A * X(2 * k) ** 2 + X(0) * X(3 * k) ** 2 + A * A * X(3 * k),
            2 * k: A * X(k) ** 2 + A * X(k) * X(3 * k) + X(0) ** 2 * X(3 * k) + A * A * X(0),
            3 * k: A * X(0) + A * X(2 * k) + X(k) ** 2,
        }
    elif 3 * k < n < 4 * k:
        anchors = {
            k: A * X(0) * X(2 * k) + A * X(2 * k) * X(n - 2 * k) + X(0) * X(3 * k) * X(n - k) + A * A * X(n - k),
            n - 2 * k: (X(0) * X(n - 3 * k) * X(n - k) + X(0) * X(2 * n - 5 * k) * X(n - k)
                        + X(n - 3 * k) * X(k) * X(2 * n - 4 * k) + X(n - 3 * k) * X(n - k) * X(2 * n - 4 * k)
                        + A * X(0) * X(2 * n - 4 * k)),
            2 * k: A * X(k) * X(5 * k - n) + A * X(k) * X(3 * k) + X(0) * X(4 * k - n) * X(3 * k) + A * A * X(4 * k - n),
            n - k: A * X(0) + A * X(n - 2 * k) + X(k) * X(n - 3 * k),
        }
    else:
        anchors = {
            n - 2 * k: X(2 * n - 4 * k) * X(k) + X(2 * n - 4 * k) * X(n - k) + X(0) * X(n - k) + X(0) * X(2 * n - 3 * k),
            k: (X(0) * X(n - k) * X(4 * k - n) + X(0) * X(n - k) * X(2 * k) + X(0) * X(3 * k - n) * X(2 * k)
                + X(n - 2 * k) * X(3 * k - n) * X(2 * k) + A * X(3 * k - n) * X(n - k)),
            n - k: X(n - 2 * k) * X(k) + X(2 * n - 3 * k) * X(n - 2 * k) + X(0) * X(2 * n - 3 * k) + X(k) * X(2 * n - 4 * k),
            2 * k: A * X(3 * k - n) + A * X(k) + X(0) * X(4 * k - n),
        }
    anchors = {j: v for j, v in anchors.items() if 0 < j < n - 1}
    anchors[0] = build(spec)
    return _fill_by_upshift(n, anchors)


def _pi_seed(spec: FamilySpec) -> Optional[Dict[int, LaurentPoly]]:
    n, k = spec.n, _int(spec, "k")
    A, B = _int(spec, "A"), _int(spec, "B")
    a1, b1, a2, b2 = (_int(spec, s) for s in ("a1", "b1", "a2", "b2"))
    if a2 < a1:  # the closed forms assume a2 >= a1 (hence b1 >= b2)
        A, B, a1, b1, a2, b2 = B, A, a2, b2, a1, b1
    X = x

    def m(coeff, **e):
        return _mono({int(key[1:]): v for key, v in e.items() if v}, coeff)

    def M(coeff: int, pairs) -> LaurentPoly:
        d: Dict[int, int] = {}
        for i, v in pairs:
            if v:
                d[i] = d.get(i, 0) + v
        return _mono(d, coeff)

    if n > 4 * k:
        anchors = {
            k: M(A, [(2 * k, a2 + b2), (n - 2 * k, b1)]) + M(B, [(2 * k, a2 + b2), (n - 2 * k, b2), (0, b1 - b2)])
            + M(1, [(0, b1), (3 * k, 1), (n - k, 1)]),
            2 * k: M(1, [(0, 1), (3 * k, a2 + b2)]) + M(1, [(k, a1 + b1), (4 * k, 1)]),
            n - 2 * k: M(A, [(k, a1), (n - 3 * k, a1 + b1), (n - k, a2 - a1)]) + M(B, [(k, a2), (n - 3 * k, a2 + b2)])
            + M(1, [(0, 1), (n - 4 * k, 1), (n - k, a2)]),
            n - k: M(A, [(0, a1), (n - 2 * k, b1)]) + M(B, [(0, a2), (n - 2 * k, b2)]) + X(k) * X(n - 3 * k),
        }
    elif n == 4 * k:
        anchors = {
            k: M(A, [(2 * k, a2 + b1 + b2)]) + M(B, [(2 * k, a2 + 2 * b2), (0, a2 - a1)]) + M(1, [(0, b1), (3 * k, 2)]),
            2 * k: M(A, [(k, 2 * a1 + b1), (3 * k, a2 - a1)]) + M(B, [(k, 2 * a2 + b2)]) + M(1, [(0, 2), (3 * k, a2)]),
            3 * k: M(A, [(0, a1), (2 * k, b1)]) + M(B, [(0, a2), (2 * k, b2)]) + X(k) ** 2,
        }
    elif 3 * k < n < 4 * k:
        anchors = {
            k: M(A, [(2 * k, a2 + b2), (n - 2 * k, b1)]) + M(B, [(0, a2 - a1), (2 * k, a2 + b2), (n - 2 * k, b2)])
            + M(1, [(0, b1), (3 * k, 1), (n - k, 1)]),
            n - 2 * k: M(A, [(0, 1), (2 * n - 5 * k, b1), (n - k, a2)])
            + M(B, [(0, 1), (2 * n - 5 * k, b2), (n - 3 * k, a2 - a1), (n - k, a2)])
            + M(A, [(n - 3 * k, b1), (k, a1), (2 * n - 4 * k, 1), (n - k, a2 - a1)])
            + M(B, [(n - 3 * k, b1), (k, a2), (2 * n - 4 * k, 1)]),
            2 * k: M(A, [(3 * k, a2 - a1), (5 * k - n, a1), (k, a1 + b1)]) + M(B, [(k, a2 + b2), (5 * k - n, a2)])
            + M(1, [(0, 1), (4 * k - n, 1), (3 * k, a2)]),
            n - k: M(A, [(0, a1), (n - 2 * k, b1)]) + M(B, [(0, a2), (n - 2 * k, b2)]) + X(k) * X(n - 3 * k),
        }
    else:
        if a1 > b2:
            raise _NoClosedForm("Pi with 5k > n > 4k: only a1 <= b2 has a closed form")
        anchors = {
            n - 2 * k: M(A, [(2 * n - 4 * k, 1), (k, a1), (n - k, b1 - a1)])
            + M(B, [(2 * n - 4 * k, 1), (k, a2), (n - k, b1 - a2)])
            + M(A, [(0, 1), (2 * n - 3 * k, b1)]) + M(B, [(0, 1), (n - k, a2 - a1), (2 * n - 3 * k, b2)]),
            k: M(A, [(0, b1), (2 * k, a2 - a1), (4 * k - n, a1), (n - k, 1)]) + M(B, [(0, b1), (n - k, 1), (4 * k - n, a2)])
            + M(A, [(3 * k - n, 1), (n - 2 * k, b1), (2 * k, a2)])
            + M(B, [(0, a2 - a1), (n - 2 * k, b2), (2 * k, a2), (3 * k - n, 1)]),
            n - k: M(A, [(0, a1), (n - 2 * k, b1 - a1), (2 * n - 3 * k, 1)]) + M(B, [(0, a2), (2 * n - 3 * k, 1), (n - 2 * k, b2 - a1)])
            + M(A, [(k, 1), (2 * n - 4 * k, b1)]) + M(B, [(n - 2 * k, a2 - a1), (2 * n - 4 * k, b2), (k, 1)]),
            2 * k: M(A, [(3 * k - n, a1), (k, b1)]) + M(B, [(3 * k - n, a2), (k, b2)]) + X(0) * X(4 * k - n),
        }
    del m
    anchors = {j: v for j, v in anchors.items() if 0 < j < n - 1}
    anchors[0] = build(spec)
    return _fill_by_upshift(n, anchors)


def _gale_robinson_seed(spec: FamilySpec) -> Optional[Dict[int, LaurentPoly]]:
    n = spec.n
    p, q, r = _int(spec, "p"), _int(spec, "q"), _int(spec, "r")
    A, B, C = _int(spec, "A", 1), _int(spec, "B", 1), _int(spec, "C", 1)
    if not 2 * r < n:
        raise _NoClosedForm("Gale-Robinson closed form needs 2r < n")
    X = x
    anchors = {
        p: A * B * X(q) * X(2 * p) * X(p + r) + A * C * X(r) * X(2 * p) * X(p + q)
        + C * X(0) * X(p + r) * X(n + p - r) + B * X(0) * X(p + q) * X(n + p - q),
        q: A * B * X(q - p) * X(p) * X(2 * q) * X(q + r) + A * B * X(0) * X(2 * q - p) * X(p + q) * X(q + r)
        + A * C * X(0) * X(r + q - p) * X(p + q) * X(2 * q)
        + B * C * X(q - p) * X(r) * X(p + q) * X(2 * q) + C * X(0) * X(q - p) * X(q + r) * X(n + q - r),
        r: A * B * X(0) * X(r - p) * X(p + r - q) * X(q + r) * X(2 * r)
        + A * C * X(r - p) * X(p) * X(r - q) * X(q + r) * X(2 * r)
        + A * B * X(0) * X(q + r - p) * X(r - q) * X(p + r) * X(2 * r)
        + B * C * X(r - p) * X(q) * X(r - q) * X(p + r) * X(2 * r)
        + A * C * X(0) * X(r - q) * X(2 * r - p) * X(p + r) * X(q + r)
        + B * C * X(0) * X(r - p) * X(2 * r - q) * X(p + r) * X(q + r),
        n - r: A * B * X(q) * X(p + q - r) * X(2 * p) * X(n + q - r) + A * C * X(q) * X(2 * p + q - r) * X(p) * X(n + q - r)
        + C * X(0) * X(p + q - r) * X(n + p - r) * X(n + q - r)
        + A * B * X(p + q - r) * X(2 * q) * X(p) * X(n + p - r) + B * C * X(q) * X(n + q - 2 * r) * X(p) * X(n + p - r),
        n - q: A * B * X(r) * X(p) * X(n + p - 2 * q) + A * C * X(r) * X(2 * p) * X(p + r - q)
        + B * X(0) * X(p + r - q) * X(n + p - q) + C * X(p) * X(r - q) * X(n + p - q),
        n - p: A * X(0) * X(n - 2 * p) + B * X(q - p) * X(r) + C * X(r - p) * X(q),
    }
    anchors[0] = build(spec)
    return _fill_by_upshift(n, anchors)


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def expand(F: LaurentPoly, n: int, k: int) -> LaurentPoly:
    """k-expansion: x_i becomes x_{ik}; the result lives in arity n*k."""
    if k <= 0:
        raise FamilyError("expansion factor must be positive")
    if F.max_index() >= n:
        raise FamilyError(f"F uses x_{F.max_index()} but n = {n}")
    return F.rename({i: i * k for i in range(n)})


def reflect(F: LaurentPoly, n: int) -> LaurentPoly:
    """Reverse the variables: x_i becomes x_{n-i}."""
    if F.max_index() >= n:
        raise FamilyError(f"F uses x_{F.max_index()} but n = {n}")
    if F.depends_on(0):
        raise FamilyError("F depends on x_0")
    return F.rename({i: n - i for i in range(1, n)})


# ---------------------------------------------------------------------------
# classifiers
# ---------------------------------------------------------------------------

def classify_n2(P: LaurentPoly) -> Optional[str]:
    """Class of a univariate P in x_1 among the n = 2 period-1 families.

    One of "Palindromic", "AntipalindromicEven", "MonicDeg2", "UnitTwisted"
    or None.
    """
    vs = P.variables()
    if vs - {1}:
        raise FamilyError("classify_n2 needs a polynomial in x_1 only")
    if P.is_constant():
        raise FamilyError("classify_n2 needs a nonconstant polynomial")
    d = P.degree_in(1)
    cs = [0] * (d + 1)
    for e, c in P.as_dict().items():
        cs[e[1] if len(e) > 1 else 0] = c
    return _is_monic_special(cs) or _unit_twisted(cs)


def _unit_twisted(cs: Sequence[int]) -> Optional[str]:
    """The relations c_i = -c_(d-i) c_0^(d-i-1): the seam returns -P instead of P.

    Exchange polynomials are only fixed up to the units +-1, and the
    recurrence of such a P turns into one for a sign-twisted sequence, so
    these are period 1 as well (for example -x^2 - 3).
    """
    d = len(cs) - 1
    if d < 1 or cs[d] != -1 or cs[0] == 0:
        return None
    if all(cs[i] == -cs[d - i] * cs[0] ** (d - i - 1) for i in range(d)):
        return "UnitTwisted"
    return None


@dataclass(frozen=True)
class N3Class:
    class_id: Optional[int]
    matched_params: Mapping[str, int] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.class_id is not None


def _n3_coeffs(P: LaurentPoly) -> Dict[Tuple[int, int], int]:
    out = {}
    for e, c in P.as_dict().items():
        e = e + (0,) * (3 - len(e))
        out[(e[1], e[2])] = c
    return out


def classify_n3_coeffs(cs: Mapping[Tuple[int, int], int]) -> N3Class:
    """:func:`classify_n3` on a coefficient map (i, j) -> coefficient of x1^i x2^j.

    Negating every variable turns the recurrence of P(x1, x2) into the one
    of P(-x1, -x2), so a P whose negation lands in a listed family is
    reported with that family and ``negated=1`` (e.g. 1 - x1*x2^2).
    """
    found = _classify_listed(cs)
    if found:
        return found
    flipped = {(i, j): (-1) ** (i + j) * c for (i, j), c in cs.items()}
    found = _classify_listed(flipped)
    if found:
        return N3Class(found.class_id, {**found.matched_params, "negated": 1})
    return found


def _classify_listed(cs: Mapping[Tuple[int, int], int]) -> N3Class:
    cs = {k: v for k, v in cs.items() if v}
    if not cs:
        return N3Class(None)
    keys = set(cs)
    if all(i > 0 for i, _ in keys) or all(j > 0 for _, j in keys):
        return N3Class(None)

    def only(*allowed) -> bool:
        return keys <= set(allowed)

    g = cs.get
    c11, c10, c01, c00 = g((1, 1), 0), g((1, 0), 0), g((0, 1), 0), g((0, 0), 0)
    if only((1, 1), (1, 0), (0, 1), (0, 0)):
        if c11 == 1 and c00 == 0 and c10 == c01 and c10 != 0:
            return N3Class(1, {"a": c10})
        if c11 == 1 and c00 == 0 and c10 == -c01 and c10 != 0:
            return N3Class(2, {"a": c10})
        if c11 == 0 and (c10, c01, c00) == (1, -1, -1):
            return N3Class(3)
        if c11 == 0 and (c10, c01, c00) == (-1, 1, -1):
            return N3Class(4)
        if c11 == 1 and c10 == c01 and (c10, c00) != (0, 0):
            return N3Class(5, {"a": c10, "b": c00})
        if c11 in (1, -1) and c10 == 0 and c01 == 0 and c00 != 0:
            return N3Class(8, {"sign": c11, "a": c00})
    if only((2, 0), (0, 2), (1, 1), (1, 0), (0, 1), (0, 0)):
        if g((2, 0)) == 1 and g((0, 2)) == 1 and c10 == c01:
            return N3Class(6, {"a": c11, "b": c10, "c": c00})
        if g((2, 0)) == -1 and g((0, 2)) == -1 and c10 == 0 and c01 == 0:
            return N3Class(7, {"a": c11, "b": c00})
    m = max(i for i, _ in keys)
    nn = max(j for _, j in keys)
    if m > 0 and nn > 0 and c00 in (1, -1) and g((m, nn)):
        inner = [k for k in keys if k not in ((0, 0), (m, nn))]
        if all(0 < i < m and 0 < j < nn for i, j in inner):
            if c00 == 1 and g((m, nn)) == 1:
                ok = True
                for (i, j) in inner:
                    mirror = (m - i, nn - j)
                    if mirror == (i, j):
                        continue  # a self-mirror term may carry any coefficient
                    else:
                        ok = ok and g(mirror, 0) == cs[(i, j)]
                if ok:
                    return N3Class(9, {"m": m, "n": nn})
            if c00 == -1 and (m - nn) % 2 == 0 and g((m, nn)) == (-1) ** (m + 1):
                ok = True
                for (i, j) in inner:
                    mirror = (m - i, nn - j)
                    s = (-1) ** (m + i + j)
                    if mirror == (i, j):
                        ok = ok and s == 1
                    else:
                        ok = ok and g(mirror, 0) == s * cs[(i, j)]
                if ok:
                    return N3Class(10, {"m": m, "n": nn})
    return N3Class(None)


def classify_n3(P: LaurentPoly) -> N3Class:
    """Match P in Z[x1, x2] against the ten n = 3 period-1 families."""
    if P.variables() - {1, 2}:
        raise FamilyError("classify_n3 needs a polynomial in x_1, x_2")
    if not P.is_polynomial():
        raise FamilyError("classify_n3 needs an ordinary polynomial")
    return classify_n3_coeffs(_n3_coeffs(P))


# ---------------------------------------------------------------------------
# parameter grid
# ---------------------------------------------------------------------------

def _divisors_feasible(n: int, lo: int) -> List[int]:
    return [r for r in range(2, n) if n % r == 1 % r and n >= lo * r + lo // 2 + 1]


def family_grid(max_n: int = 9, coeff: int = 3, expo: int = 3, thorough: bool = True) -> List[FamilySpec]:
    """Desk-scale parameter grid covering every family.

    Coefficients range over [-coeff, coeff] and exponents over [1, expo];
    combinatorial families (exponent vectors, index subsets) are sampled
    deterministically rather than enumerated in full when ``thorough`` is
    False.
    """
    cs = range(-coeff, coeff + 1)
    out: List[FamilySpec] = []
    add = out.append
    for n in range(3, max_n + 1):
        # symmetric with second powers: A and one elementary coefficient at a time
        for A in cs:
            add(FamilySpec("SymmetricSecondPowers", n, {"A": A}))
        for k in range(1, n):
            for c in (cs if thorough else (-coeff, coeff)):
                if c:
                    As = [0] * k
                    As[k - 1] = c
                    add(FamilySpec("SymmetricSecondPowers", n, {"A": 1, "As": As}))
        for A in cs:
            for B in cs:
                add(FamilySpec("Extreme", n, {"A": A, "B": B}))
                if n % 2 == 1:
                    add(FamilySpec("Chain", n, {"A": A, "B": B}))
                    add(FamilySpec("MultilinearSymmetric", n, {"A": A, "B": B}))
        # sink binomials: symmetric zero pattern, exponents 1..expo on a few patterns
        half = list(range(1, n // 2 + 1))
        for mask in range(1, 2 ** len(half)):
            sup = [i for b, i in enumerate(half) if mask >> b & 1]
            sup = sorted(set(sup) | {n - i for i in sup})
            for e in range(1, expo + 1):
                a = [0] * (n - 1)
                for t, i in enumerate(sup):
                    a[i - 1] = 1 + (e + t) % expo
                add(FamilySpec("SinkBinomial", n, {"a": a}))
        for r in range(2, n):
            if n % r == 1 % r:
                if n >= 2 * r + 1:
                    for A in cs:
                        add(FamilySpec("Jumping", n, {"r": r, "A": A}))
                if n >= 2 * r + 2:
                    for A in cs:
                        for B in (cs if thorough else (0, 1)):
                            add(FamilySpec("Hopping", n, {"r": r, "A": A, "B": B}))
        for k in range(1, n):
            if n > 2 * k and n != 3 * k:
                for A in cs:
                    if A:
                        add(FamilySpec("LittlePi", n, {"k": k, "A": A}))
                for A in (-2, 1, 3):
                    for B in (-3, 2):
                        for a1 in range(1, expo + 1):
                            for a2 in range(1, expo + 1):
                                s = max(a1, a2) + 1
                                if a1 == a2 or s - min(a1, a2) > expo:
                                    continue
                                add(FamilySpec("Pi", n, {"k": k, "A": A, "B": B, "a1": a1, "b1": s - a1,
                                                         "a2": a2, "b2": s - a2}))
        # flip-symmetric binomials and balanced polynomials
        pairs = [tuple(sorted({i, n - i})) for i in range(1, n // 2 + 1)]
        for assign in itertools.product((0, 1, 2), repeat=len(pairs)):
            L = [i for p, s in zip(pairs, assign) if s == 1 for i in p]
            R = [i for p, s in zip(pairs, assign) if s == 2 for i in p]
            if not L:
                continue
            for e in range(1, expo + 1):
                a = {i: 1 + (e + i) % expo for i in L + R}
                if _odd_power_gcd(a):
                    continue
                add(FamilySpec("FlipSymmetric", n, {"L": L, "R": R, "a": a}))
            if R and n <= 7:
                a = {i: 1 + i % 2 for i in L + R}
                add(FamilySpec("Balanced", n, {"L": L, "R": R, "a": a, "m": 2, "As": [1]}))
                add(FamilySpec("Balanced", n, {"L": L, "R": R, "a": a, "m": 3, "As": [2]}))
        if n % 2 == 0:
            for A in cs:
                for B in cs:
                    if B:
                        add(FamilySpec("Singleton", n, {"A": A, "B": B}))
            add(FamilySpec("Singleton", n, {"coeffs": [1, 2, 3, 2, 1]}))
            add(FamilySpec("Singleton", n, {"coeffs": [-1, 1, 0, 0, 0, 1, 1]}))
        if n <= 6:
            for a in itertools.product(range(2, expo + 1), repeat=n - 1):
                if sum(a) > 2 * (n - 1) + 2:
                    continue
                b = tuple(1 for _ in a)
                add(FamilySpec("VectorSum", n, {"a": list(a), "B": {b: 1 + sum(a) % 3}}))
        for p in range(1, n):
            for q in range(p + 1, n):
                r = n - p - q
                if r > q:
                    for A, B, C in ((1, 1, 1), (2, -1, 3)):
                        add(FamilySpec("GaleRobinson", n, {"p": p, "q": q, "r": r, "A": A, "B": B, "C": C}))
    if max_n >= 2:
        for A in cs:
            for B in cs:
                if B:
                    add(FamilySpec("Singleton", 2, {"A": A, "B": B}))
    # degenerate parameter choices such as x1*x2 + x1 + x2 + 1 = (x1 + 1)(x2 + 1)
    return [s for s in out if not is_irreducible_best_effort(build(s)).reducible]


def _odd_power_gcd(a: Mapping[int, int]) -> bool:
    g = 0
    for v in a.values():
        g = math.gcd(g, v)
    while g % 2 == 0 and g:
        g //= 2
    return g > 1


# one instance of every family, shared by the self-test and the test suite; sizes
# are picked so that twelve symbolic terms stay small (quadratic recurrences
# with few variables blow up quickly)
FIXTURES: Tuple[FamilySpec, ...] = (
    FamilySpec("SymmetricSecondPowers", 9, {"As": [0, 2], "A": 5}),
    FamilySpec("SinkBinomial", 6, {"a": [1, 0, 2, 0, 1]}),
    FamilySpec("Extreme", 4, {"A": 3, "B": 2}),
    FamilySpec("Singleton", 4, {"A": 1, "B": 2}),
    FamilySpec("Chain", 7, {"A": 2, "B": 3}),
    FamilySpec("MultilinearSymmetric", 7, {"A": 1, "B": 2}),
    FamilySpec("Jumping", 7, {"r": 3, "A": 1}),
    FamilySpec("Hopping", 10, {"r": 3, "A": 2, "B": 1}),
    FamilySpec("FlipSymmetric", 8, {"L": [1, 7], "R": [3, 5], "a": {1: 1, 7: 1, 3: 2, 5: 2}}),
    FamilySpec("Balanced", 8, {"L": [1, 7], "R": [4], "a": {1: 1, 7: 1, 4: 2}, "m": 2, "As": [1]}),
    FamilySpec("VectorSum", 9, {"a": [3, 2, 2, 2, 2, 2, 2, 3], "B": {(1,) * 8: 2}}),
    FamilySpec("LittlePi", 7, {"k": 1, "A": 2}),
    FamilySpec("Pi", 8, {"k": 2, "A": 1, "B": 2, "a1": 1, "b1": 2, "a2": 2, "b2": 1}),
    FamilySpec("GaleRobinson", 6, {"p": 1, "q": 2, "r": 3, "A": 1, "B": 1, "C": 1}),
)
