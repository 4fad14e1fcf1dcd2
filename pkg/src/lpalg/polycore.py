"""Exact multivariate Laurent polynomials over the integers.

A :class:`LaurentPoly` maps exponent tuples to nonzero Python ints.  Every
exponent tuple inside one polynomial has the same length (the number of
variable slots); binary operations pad the shorter operand.  Variable ``i`` is
``x_i``.  Values are immutable and hashable.

The module also carries the integer-polynomial kernel the rest of the package
leans on: exact division, multivariate gcd (recursive primitive
pseudo-remainder sequences), multiplicity and best-effort irreducibility.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from operator import add as _oadd, sub as _osub
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Exp = Tuple[int, ...]
Terms = Dict[Exp, int]


class PolyError(ValueError):
    """Raised on an invalid polynomial operation."""


# ---------------------------------------------------------------------------
# raw helpers on term dicts (all keys of one dict share a length)
# ---------------------------------------------------------------------------

def _pad(t: Terms, nv: int, target: int) -> Terms:
    if target == nv:
        return t
    z = (0,) * (target - nv)
    return {e + z: c for e, c in t.items()}


def _mul_raw(a: Terms, b: Terms) -> Terms:
    if len(a) < len(b):
        a, b = b, a
    if len(a) * len(b) >= _PACK_THRESHOLD:
        return _mul_packed(a, b)
    out: Terms = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple(map(_oadd, ea, eb))
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


_PACK_THRESHOLD = 2048


def _mul_packed(a: Terms, b: Terms) -> Terms:
    """Product with each exponent tuple packed into one integer key.

    Exponents are shifted to be non-negative and every slot gets enough bits
    for the largest possible sum, so packed keys add without carries.
    """
    nv = len(next(iter(a)))
    if nv == 0:
        return {(): a[()] * b[()]} if a[()] * b[()] else {}
    lo_a, hi_a = _min_exps(a, nv), _max_exps(a, nv)
    lo_b, hi_b = _min_exps(b, nv), _max_exps(b, nv)
    width = max(ha - la + hb - lb for la, ha, lb, hb in zip(lo_a, hi_a, lo_b, hi_b)).bit_length() or 1
    shifts = [width * i for i in range(nv)]

    def pack(t: Terms, lo: Exp) -> Dict[int, int]:
        return {sum((v - l) << s for v, l, s in zip(e, lo, shifts)): c for e, c in t.items()}

    pa = pack(a, lo_a)
    out: Dict[int, int] = {}
    get = out.get
    if a is b:
        # squaring: each unordered pair once
        items = list(pa.items())
        for i, (ka, ca) in enumerate(items):
            k = ka + ka
            out[k] = get(k, 0) + ca * ca
            c2 = 2 * ca
            for kb, cb in items[i + 1:]:
                k = ka + kb
                out[k] = get(k, 0) + c2 * cb
    else:
        pb = pack(b, lo_b)
        for kb, cb in pb.items():
            for ka, ca in pa.items():
                k = ka + kb
                out[k] = get(k, 0) + ca * cb
    base = [la + lb for la, lb in zip(lo_a, lo_b)]
    mask = (1 << width) - 1
    res: Terms = {}
    for k, c in out.items():
        if c:
            res[tuple(((k >> s) & mask) + o for s, o in zip(shifts, base))] = c
    return res


def _add_raw(a: Terms, b: Terms, sign: int = 1) -> Terms:
    out = dict(a)
    get = out.get
    for e, c in b.items():
        v = get(e, 0) + sign * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _scale_raw(a: Terms, k: int) -> Terms:
    if k == 0:
        return {}
    return {e: c * k for e, c in a.items()}


def _min_exps(t: Terms, nv: int) -> Exp:
    it = iter(t)
    m = list(next(it))
    for e in it:
        for i in range(nv):
            if e[i] < m[i]:
                m[i] = e[i]
    return tuple(m)


def _max_exps(t: Terms, nv: int) -> Exp:
    it = iter(t)
    m = list(next(it))
    for e in it:
        for i in range(nv):
            if e[i] > m[i]:
                m[i] = e[i]
    return tuple(m)


def _shift_mono(t: Terms, m: Exp, sign: int = 1) -> Terms:
    if not any(m):
        return t
    if sign > 0:
        return {tuple(map(_oadd, e, m)): c for e, c in t.items()}
    return {tuple(map(_osub, e, m)): c for e, c in t.items()}


def _order_key(e: Exp) -> Tuple[int, Exp]:
    # graded lex: total degree first, then lower variable index more significant
    return (sum(e), e)


def _leading(t: Terms) -> Exp:
    return max(t, key=_order_key)


def _content_raw(t: Terms) -> int:
    g = 0
    for c in t.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _vars_raw(t: Terms, nv: int) -> set:
    out = set()
    for e in t:
        for i in range(nv):
            if e[i]:
                out.add(i)
    return out


def _is_const(t: Terms) -> bool:
    return len(t) <= 1 and all(not any(e) for e in t)


def _exact_div_raw(a: Terms, b: Terms) -> Optional[Terms]:
    """Exact quotient of ordinary polynomials, or None if b does not divide a."""
    if not a:
        return {}
    if len(b) == 1:
        (eb, cb), = b.items()
        out = {}
        for e, c in a.items():
            d = tuple(map(_osub, e, eb))
            if min(d, default=0) < 0:
                return None
            q, r = divmod(c, cb)
            if r:
                return None
            out[d] = q
        return out
    # cheap necessary condition: value at the all-ones point
    sb = sum(b.values())
    if sb and sum(a.values()) % sb:
        return None
    lb = max(b)  # lex order is a monomial order; max tuple leads
    clb = b[lb]
    rest = [(e, c) for e, c in b.items() if e != lb]
    r = dict(a)
    heap = [tuple(-x for x in e) for e in r]
    heapq.heapify(heap)
    q: Terms = {}
    push, pop = heapq.heappush, heapq.heappop
    while heap:
        ne = pop(heap)
        e = tuple(-x for x in ne)
        c = r.pop(e, 0)
        if not c:
            continue
        d = tuple(map(_osub, e, lb))
        if min(d) < 0:
            return None
        qc, rem = divmod(c, clb)
        if rem:
            return None
        q[d] = qc
        for eb, cb in rest:
            m = tuple(map(_oadd, d, eb))
            old = r.get(m)
            v = (old or 0) - qc * cb
            if v:
                if old is None:
                    push(heap, tuple(-x for x in m))
                r[m] = v
            elif old is not None:
                del r[m]
    return q


# ---------------------------------------------------------------------------
# gcd kernel (ordinary polynomials, non-negative exponents)
# ---------------------------------------------------------------------------

def _normalize_sign(t: Terms) -> Terms:
    if t and t[_leading(t)] < 0:
        return {e: -c for e, c in t.items()}
    return t


def _coeffs_in(t: Terms, v: int) -> Dict[int, Terms]:
    """View t as a univariate polynomial in x_v; coefficients keep slot v at 0."""
    out: Dict[int, Terms] = {}
    for e, c in t.items():
        k = e[v]
        if k:
            e = e[:v] + (0,) + e[v + 1:]
        out.setdefault(k, {})[e] = c
    return out


def _from_coeffs(cs: Dict[int, Terms], v: int) -> Terms:
    out: Terms = {}
    for k, ct in cs.items():
        for e, c in ct.items():
            if k:
                e = e[:v] + (e[v] + k,) + e[v + 1:]
            out[e] = c
    return out


def _gcd_many(polys: Sequence[Terms], nv: int) -> Terms:
    polys = sorted(polys, key=len)
    g = polys[0]
    for p in polys[1:]:
        if _is_const(g):
            # only the integer content can still shrink
            k = abs(next(iter(g.values())))
            for q in polys:
                k = math.gcd(k, _content_raw(q))
                if k == 1:
                    break
            return {(0,) * nv: k}
        g = _gcd_raw(g, p, nv)
    return _normalize_sign(g)


def _content_in(t: Terms, v: int, nv: int) -> Terms:
    return _gcd_many(list(_coeffs_in(t, v).values()), nv)


def _prem(A: Dict[int, Terms], B: Dict[int, Terms]) -> Dict[int, Terms]:
    dB = max(B)
    lcB = B[dB]
    R = dict(A)
    while R:
        dR = max(R)
        if dR < dB:
            break
        lcR = R[dR]
        s = dR - dB
        R = {d: _mul_raw(c, lcB) for d, c in R.items()}
        for d, c in B.items():
            k = d + s
            v = _add_raw(R.get(k, {}), _mul_raw(c, lcR), -1)
            if v:
                R[k] = v
            else:
                R.pop(k, None)
    return R


def _pp_univ(R: Dict[int, Terms], nv: int) -> Dict[int, Terms]:
    c = _gcd_many(list(R.values()), nv)
    if _is_const(c) and abs(next(iter(c.values()))) == 1:
        return R
    return {d: _exact_div_raw(t, c) for d, t in R.items()}


def _gcd_prim(a: Terms, b: Terms, nv: int) -> Terms:
    """gcd of two nonzero polynomials without monomial factors."""
    if _is_const(a) or _is_const(b):
        k = math.gcd(_content_raw(a), _content_raw(b))
        return {(0,) * nv: k}
    va, vb = _vars_raw(a, nv), _vars_raw(b, nv)
    if va != vb:
        # a variable occurring in only one operand can be projected away
        for v in va - vb:
            a = _content_in(a, v, nv)
            return _gcd_raw(a, b, nv)
        for v in vb - va:
            b = _content_in(b, v, nv)
            return _gcd_raw(a, b, nv)
    ca_all = _max_exps(a, nv)
    cb_all = _max_exps(b, nv)
    v = min(va, key=lambda i: max(ca_all[i], cb_all[i]))
    A = _coeffs_in(a, v)
    B = _coeffs_in(b, v)
    ca = _gcd_many(list(A.values()), nv)
    cb = _gcd_many(list(B.values()), nv)
    c = _gcd_raw(ca, cb, nv)
    if not (_is_const(ca) and abs(next(iter(ca.values()))) == 1):
        A = {d: _exact_div_raw(t, ca) for d, t in A.items()}
    if not (_is_const(cb) and abs(next(iter(cb.values()))) == 1):
        B = {d: _exact_div_raw(t, cb) for d, t in B.items()}
    if max(A) < max(B):
        A, B = B, A
    while True:
        R = _prem(A, B)
        if not R:
            break
        if max(R) == 0:
            return c
        A, B = B, _pp_univ(R, nv)
    g = _from_coeffs(B, v)
    return _normalize_sign(_mul_raw(g, c))


def _gcd_raw(a: Terms, b: Terms, nv: int) -> Terms:
    if not a:
        return _normalize_sign(b)
    if not b:
        return _normalize_sign(a)
    ma = _min_exps(a, nv)
    mb = _min_exps(b, nv)
    m = tuple(map(min, ma, mb))
    g = _gcd_prim(_shift_mono(a, ma, -1), _shift_mono(b, mb, -1), nv)
    return _normalize_sign(_shift_mono(g, m))


# ---------------------------------------------------------------------------
# the value type
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Exact Laurent polynomial in x_0, x_1, ... with integer coefficients."""

    __slots__ = ("_t", "_nv", "_hash")

    def __init__(self, terms: Optional[Mapping[Sequence[int], int]] = None):
        t: Terms = {}
        nv = 0
        if terms:
            nv = max(len(e) for e in terms)
            for e, c in terms.items():
                if c:
                    e = tuple(e) + (0,) * (nv - len(e))
                    v = t.get(e, 0) + int(c)
                    if v:
                        t[e] = v
                    else:
                        t.pop(e)
        self._t = t
        self._nv = nv
        self._hash = None

    @classmethod
    def _raw(cls, t: Terms, nv: int) -> "LaurentPoly":
        p = object.__new__(cls)
        p._t = t
        p._nv = nv
        p._hash = None
        return p

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls._raw({(): int(c)} if c else {}, 0)

    @classmethod
    def var(cls, i: int, power: int = 1) -> "LaurentPoly":
        if i < 0:
            raise PolyError(f"negative variable index {i}")
        e = [0] * (i + 1)
        e[i] = power
        return cls._raw({tuple(e): 1}, i + 1)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls({tuple(exps): coeff})

    # basic protocol ---------------------------------------------------
    @property
    def nvars(self) -> int:
        """Number of variable slots (not necessarily all used)."""
        return self._nv

    def terms(self) -> Iterator[Tuple[Exp, int]]:
        """Terms in canonical order (graded lex, descending)."""
        for e in sorted(self._t, key=_order_key, reverse=True):
            yield e, self._t[e]

    def as_dict(self) -> Dict[Exp, int]:
        """Trimmed exponent tuples mapped to coefficients."""
        return {_trim(e): c for e, c in self._t.items()}

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def _key(self) -> frozenset:
        return frozenset((_trim(e), c) for e, c in self._t.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if len(self._t) != len(other._t):
            return False
        if self._nv == other._nv:
            return self._t == other._t
        nv = max(self._nv, other._nv)
        return _pad(self._t, self._nv, nv) == _pad(other._t, other._nv, nv)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self) -> str:
        from .expr import format_poly
        return f"LaurentPoly({format_poly(self)!r})"

    def __str__(self) -> str:
        from .expr import format_poly
        return format_poly(self)

    # arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        raise TypeError(f"cannot combine LaurentPoly with {type(other).__name__}")

    def _aligned(self, other: "LaurentPoly") -> Tuple[Terms, Terms, int]:
        nv = max(self._nv, other._nv)
        return _pad(self._t, self._nv, nv), _pad(other._t, other._nv, nv), nv

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        a, b, nv = self._aligned(other)
        return LaurentPoly._raw(_add_raw(a, b), nv)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        a, b, nv = self._aligned(other)
        return LaurentPoly._raw(_add_raw(a, b, -1), nv)

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._t.items()}, self._nv)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, int):
            return LaurentPoly._raw(_scale_raw(self._t, other), self._nv)
        other = self._coerce(other)
        a, b, nv = self._aligned(other)
        return LaurentPoly._raw(_mul_raw(a, b), nv)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if not self.is_unit_monomial():
                raise PolyError("negative power of a non-monomial")
            (e, c), = self._t.items()
            return LaurentPoly._raw({tuple(-x * (-k) for x in e): c ** (-k)}, self._nv)
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = LaurentPoly._raw(_mul_raw(base._t, base._t), base._nv)
        return result

    # inspection -------------------------------------------------------
    def variables(self) -> set:
        """Indices of variables that occur with a nonzero exponent."""
        return _vars_raw(self._t, self._nv)

    def depends_on(self, i: int) -> bool:
        if i >= self._nv:
            return False
        return any(e[i] for e in self._t)

    def degree_in(self, i: int) -> int:
        if not self._t:
            raise PolyError("degree of zero polynomial")
        if i >= self._nv:
            return 0
        return max(e[i] for e in self._t)

    def min_degree_in(self, i: int) -> int:
        if not self._t:
            raise PolyError("degree of zero polynomial")
        if i >= self._nv:
            return 0
        return min(e[i] for e in self._t)

    def total_degree(self) -> int:
        if not self._t:
            raise PolyError("degree of zero polynomial")
        return max(sum(e) for e in self._t)

    def is_polynomial(self) -> bool:
        return all(x >= 0 for e in self._t for x in e)

    def is_constant(self) -> bool:
        return _is_const(self._t)

    def constant_value(self) -> int:
        if not self._t:
            return 0
        if not self.is_constant():
            raise PolyError("not a constant")
        return next(iter(self._t.values()))

    def is_monomial(self) -> bool:
        return len(self._t) == 1

    def is_unit_monomial(self) -> bool:
        return len(self._t) == 1 and abs(next(iter(self._t.values()))) == 1

    def leading_coefficient(self) -> int:
        return self._t[_leading(self._t)]

    def content(self) -> int:
        return _content_raw(self._t)

    def max_index(self) -> int:
        """Largest variable index present, or -1 for constants."""
        vs = self.variables()
        return max(vs) if vs else -1

    # structural maps --------------------------------------------------
    def rename(self, mapping: Mapping[int, int]) -> "LaurentPoly":
        """Simultaneously send x_i to x_mapping[i] (unlisted indices fixed)."""
        if not self._t:
            return self
        idx = {i: mapping.get(i, i) for i in range(self._nv)}
        if idx and min(idx.values()) < 0:
            bad = [i for i in idx if idx[i] < 0 and any(e[i] for e in self._t)]
            if bad:
                raise PolyError(f"variable x_{bad[0]} would map to a negative index")
        nv = max([v for i, v in idx.items() if any(e[i] for e in self._t)], default=-1) + 1
        out: Terms = {}
        for e, c in self._t.items():
            ne = [0] * nv
            for i, x in enumerate(e):
                if x:
                    ne[idx[i]] += x
            k = tuple(ne)
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out, nv)

    def shift(self, delta: int) -> "LaurentPoly":
        """Upshift (delta=+1) or downshift (delta=-1) every variable index."""
        if delta > 0:
            z = (0,) * delta
            return LaurentPoly._raw({z + e: c for e, c in self._t.items()}, self._nv + delta)
        if delta < 0:
            d = -delta
            for e in self._t:
                if any(e[:d]):
                    raise PolyError(f"downshift of a polynomial depending on x_{d - 1}")
            return LaurentPoly._raw({e[d:]: c for e, c in self._t.items()}, max(self._nv - d, 0))
        return self

    def upshift(self) -> "LaurentPoly":
        return self.shift(1)

    def downshift(self) -> "LaurentPoly":
        return self.shift(-1)

    def mul_monomial(self, exps: Sequence[int]) -> "LaurentPoly":
        m = tuple(exps)
        nv = max(self._nv, len(m))
        t = _pad(self._t, self._nv, nv)
        m = m + (0,) * (nv - len(m))
        return LaurentPoly._raw(_shift_mono(t, m), nv)

    def coefficients_in(self, i: int) -> Dict[int, "LaurentPoly"]:
        """Map exponent k of x_i to the coefficient of x_i^k."""
        if i >= self._nv:
            return {0: self} if self._t else {}
        return {k: LaurentPoly._raw(t, self._nv) for k, t in _coeffs_in(self._t, i).items()}

    def subs(self, i: int, value: Union["LaurentPoly", int]) -> "LaurentPoly":
        """Substitute x_i <- value."""
        return substitute(self, i, value)

    def evaluate(self, values: Sequence[Union[int, Fraction]]) -> Union[int, Fraction]:
        """Numeric value with x_i = values[i]."""
        total = 0
        cache: Dict[Tuple[int, int], Union[int, Fraction]] = {}
        for e, c in self._t.items():
            term = c
            for i, x in enumerate(e):
                if x:
                    key = (i, x)
                    p = cache.get(key)
                    if p is None:
                        v = values[i]
                        if x < 0:
                            if v == 0:
                                raise ZeroDivisionError(f"x_{i} = 0 at a negative exponent")
                            p = Fraction(1, 1) / Fraction(v) ** (-x)
                        else:
                            p = v ** x
                        cache[key] = p
                    term = term * p
            total += term
        return total


def _trim(e: Exp) -> Exp:
    n = len(e)
    while n and e[n - 1] == 0:
        n -= 1
    return e[:n]


ZERO = LaurentPoly.const(0)
ONE = LaurentPoly.const(1)


def x(i: int, power: int = 1) -> LaurentPoly:
    """The variable x_i (optionally raised to a power)."""
    return LaurentPoly.var(i, power)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def substitute(p: LaurentPoly, v: int, r: Union[LaurentPoly, int]) -> LaurentPoly:
    """Exact result of x_v <- r.

    ``r`` is any Laurent polynomial; negative powers of x_v in ``p`` require
    ``r`` to be a unit monomial, and substituting 0 there is a pole.
    """
    if isinstance(r, int):
        r = LaurentPoly.const(r)
    if not p.depends_on(v):
        return p
    groups = p.coefficients_in(v)
    if r.is_zero():
        if min(groups) < 0:
            raise PolyError("Laurent pole at zero")
        return groups.get(0, ZERO)
    out = ZERO
    powers: Dict[int, LaurentPoly] = {}
    for k in sorted(groups):
        if k < 0 and not r.is_unit_monomial():
            raise PolyError(f"x_{v} occurs with negative exponent; substitute is not a unit")
        rk = powers.get(k)
        if rk is None:
            rk = r ** k
            powers[k] = rk
        out = out + groups[k] * rk
    return out


def compose(p: LaurentPoly, values: Mapping[int, LaurentPoly]) -> LaurentPoly:
    """Simultaneous substitution x_i <- values[i] for every listed i."""
    cache: Dict[Tuple[int, int], LaurentPoly] = {}
    total = ZERO
    for e, c in p._t.items():
        term: LaurentPoly = LaurentPoly.const(c)
        rest = list(e)
        for i, k in enumerate(e):
            if k and i in values:
                rest[i] = 0
                key = (i, k)
                pw = cache.get(key)
                if pw is None:
                    pw = values[i] ** k
                    cache[key] = pw
                term = term * pw
        if any(rest):
            term = term.mul_monomial(rest)
        total = total + term
    return total


@dataclass(frozen=True)
class ContentSplit:
    content: int
    sign: int
    primitive_part: LaurentPoly


def content_split(p: LaurentPoly) -> ContentSplit:
    """p = sign * content * primitive_part with a positive leading coefficient."""
    if p.is_zero():
        raise PolyError("content of zero")
    c = p.content()
    sign = 1 if p.leading_coefficient() > 0 else -1
    k = sign * c
    return ContentSplit(c, sign, LaurentPoly._raw({e: v // k for e, v in p._t.items()}, p._nv))


def strip_units(p: LaurentPoly) -> Tuple[Exp, LaurentPoly]:
    """Split off the monomial making every variable's minimum exponent zero.

    Returns ``(monomial_exponents, core)`` with ``p == core * x^monomial``.
    The integer content stays in the core.
    """
    if p.is_zero():
        raise PolyError("strip_units of zero")
    m = _min_exps(p._t, p._nv)
    return _trim(m), LaurentPoly._raw(_shift_mono(p._t, m, -1), p._nv)


def core(p: LaurentPoly) -> LaurentPoly:
    return strip_units(p)[1]


def exact_div(a: LaurentPoly, b: LaurentPoly) -> Optional[LaurentPoly]:
    """Quotient q with a == b*q in the Laurent ring, or None."""
    if b.is_zero():
        raise ZeroDivisionError("exact_div by zero")
    if a.is_zero():
        return ZERO
    nv = max(a._nv, b._nv)
    ta, tb = _pad(a._t, a._nv, nv), _pad(b._t, b._nv, nv)
    ma, mb = _min_exps(ta, nv), _min_exps(tb, nv)
    q = _exact_div_raw(_shift_mono(ta, ma, -1), _shift_mono(tb, mb, -1))
    if q is None:
        return None
    shift = tuple(map(_osub, ma, mb))
    return LaurentPoly._raw(_shift_mono(q, shift), nv)


def gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Primitive-part gcd of the polynomial cores, positive leading coefficient.

    Monomials are units in the Laurent ring, so operands are first reduced to
    their cores; gcd(a, 0) is the normalized core of a.
    """
    if a.is_zero() and b.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    if a.is_zero():
        return content_split(core(b)).primitive_part
    if b.is_zero():
        return content_split(core(a)).primitive_part
    nv = max(a._nv, b._nv)
    ca = _pad(core(a)._t, a._nv, nv)
    cb = _pad(core(b)._t, b._nv, nv)
    return LaurentPoly._raw(_gcd_raw(ca, cb, nv), nv)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """gcd in the ordinary polynomial ring (monomial factors kept)."""
    if not (a.is_polynomial() and b.is_polynomial()):
        raise PolyError("poly_gcd needs ordinary polynomials")
    if a.is_zero() and b.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    nv = max(a._nv, b._nv)
    return LaurentPoly._raw(_gcd_raw(_pad(a._t, a._nv, nv), _pad(b._t, b._nv, nv), nv), nv)


def is_unit(p: LaurentPoly) -> bool:
    """Units of the Laurent ring are +-monomials."""
    return p.is_unit_monomial()


def multiplicity(a: LaurentPoly, d: LaurentPoly) -> int:
    """Largest m with d**m dividing a in the Laurent ring."""
    if a.is_zero():
        raise PolyError("multiplicity in zero")
    if d.is_zero() or d.is_unit_monomial():
        raise PolyError("multiplicity of a unit or zero")
    m = 0
    q = a
    while True:
        q = exact_div(q, d)
        if q is None:
            return m
        m += 1


def remove_common_factors(g: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Divide g by everything it shares with d, then clear the monomial part.

    Whole copies of d are divided out first, with d's own sign; any proper
    common factor left afterwards is removed with a positive leading
    coefficient.  The result is a polynomial not divisible by any variable
    (the Laurent monomial normalizer has coefficient +1).
    """
    h = core(g)
    dc = core(d)
    if dc.is_constant():
        k = abs(dc.constant_value())
        if k != 1:
            s = dc.constant_value()
            while True:
                c = h.content()
                if c % k == 0:
                    h = LaurentPoly._raw({e: v // s for e, v in h._t.items()}, h._nv)
                    continue
                g2 = math.gcd(c, k)
                if g2 == 1:
                    break
                h = LaurentPoly._raw({e: v // g2 for e, v in h._t.items()}, h._nv)
        return h
    while True:
        q = exact_div(h, dc)
        if q is None:
            break
        h = q
    while True:
        f = gcd(h, dc)
        if f.is_constant() and abs(f.constant_value()) == 1:
            break
        h = exact_div(h, f)
    return core(h)


# ---------------------------------------------------------------------------
# irreducibility (best effort)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Irreducibility:
    status: str  # "Irreducible" | "Reducible" | "Unknown"
    witness: Optional[LaurentPoly] = None

    @property
    def reducible(self) -> bool:
        return self.status == "Reducible"


def _rational_root(cs: Dict[int, int]) -> Optional[Fraction]:
    """Some rational root of an integer univariate polynomial, if any."""
    if 0 not in cs:
        return Fraction(0)
    d = max(cs)
    lead, const = cs[d], cs[0]

    def divisors(k: int) -> list:
        k = abs(k)
        out = []
        i = 1
        while i * i <= k:
            if k % i == 0:
                out.append(i)
                out.append(k // i)
            i += 1
        return out

    for p in divisors(const):
        for q in divisors(lead):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(c * r ** k for k, c in cs.items()) == 0:
                    return r
    return None


def _divisors(k: int) -> List[int]:
    k = abs(k)
    if k > 10 ** 6:
        return [1, k]  # large coefficients: only the trivial divisors
    return [d for d in range(1, k + 1) if k % d == 0]


def _monomial_divisors(e: Exp) -> List[Exp]:
    out: List[Exp] = [()]
    for i, k in enumerate(e):
        out = [d + (j,) for d in out for j in range(k + 1)]
    return out


def _linear_factor(p: LaurentPoly, v: int, limit: int = 4000) -> Optional[LaurentPoly]:
    """A factor a*x_v + b with a, b single terms, found by trial division.

    Only tried when the top and bottom coefficients of p in x_v are single
    terms, so that a and b range over finitely many term divisors.
    """
    cs = p.coefficients_in(v)
    top, bot = cs[max(cs)], cs[min(cs)]
    if len(top) != 1 or len(bot) != 1 or max(cs) < 2:
        return None
    (ea, ca), = top.as_dict().items()
    (eb, cb), = bot.as_dict().items()
    tried = 0
    for ma in _monomial_divisors(ea):
        for da in _divisors(ca):
            for mb in _monomial_divisors(eb):
                for db in _divisors(cb):
                    for sg in (1, -1):
                        f = LaurentPoly({ma: da}) * x(v) + LaurentPoly({mb: sg * db})
                        tried += 1
                        if tried > limit:
                            return None
                        if f.total_degree() and exact_div(p, f) is not None:
                            return f
    return None


def is_irreducible_best_effort(p: LaurentPoly) -> Irreducibility:
    """Tri-state irreducibility test over the integers.

    Reducible comes with a nontrivial factor.  Irreducible is only claimed
    where a complete criterion applies: content-1 linear polynomials,
    univariate polynomials of degree <= 3 without rational roots, and
    bilinear polynomials a*x*y + b*x + c*y + d with ad != bc.
    """
    if not p.is_polynomial():
        raise PolyError("irreducibility of a Laurent polynomial")
    if p.is_zero() or p.is_constant():
        raise PolyError("irreducibility of a constant")
    c = p.content()
    if c > 1:
        return Irreducibility("Reducible", LaurentPoly.const(c))
    mono, rest = strip_units(p)
    if any(mono) and not (rest.is_constant() and sum(mono) == 1):
        i = next(k for k, v in enumerate(mono) if v)
        return Irreducibility("Reducible", x(i))
    if p.total_degree() == 1:
        return Irreducibility("Irreducible")
    vs = sorted(p.variables())
    # repeated factor: gcd with a partial derivative
    for v in vs:
        dp = derivative(p, v)
        g = poly_gcd(p, dp)
        if not g.is_constant():
            return Irreducibility("Reducible", g)
    if len(vs) == 1:
        v = vs[0]
        cs = {k: t.constant_value() for k, t in p.coefficients_in(v).items()}
        r = _rational_root(cs)
        if r is not None:
            return Irreducibility("Reducible", x(v) * r.denominator - r.numerator)
        if max(cs) <= 3:
            return Irreducibility("Irreducible")
        return Irreducibility("Unknown")
    for v in vs:
        f = _linear_factor(p, v)
        if f is not None:
            return Irreducibility("Reducible", f)
    if len(vs) == 2 and all(p.degree_in(v) == 1 for v in vs):
        i, j = vs
        d = p.as_dict()

        def co(ei: int, ej: int) -> int:
            e = [0] * (j + 1)
            e[i], e[j] = ei, ej
            return d.get(_trim(tuple(e)), 0)

        a, b, cc, dd = co(1, 1), co(1, 0), co(0, 1), co(0, 0)
        if a * dd - b * cc != 0:
            return Irreducibility("Irreducible")
        # (a x + c)(a y + b) / a when a != 0
        if a:
            f = x(i) * a + cc
            g = poly_gcd(p, f)
            if not g.is_constant():
                return Irreducibility("Reducible", g)
        return Irreducibility("Unknown")
    return Irreducibility("Unknown")


def derivative(p: LaurentPoly, v: int) -> LaurentPoly:
    out: Terms = {}
    for e, c in p._t.items():
        if v < len(e) and e[v]:
            ne = e[:v] + (e[v] - 1,) + e[v + 1:]
            out[ne] = c * e[v]
    return LaurentPoly._raw(out, p._nv)


def evaluate(p: LaurentPoly, values: Sequence[Union[int, Fraction]]) -> Union[int, Fraction]:
    return p.evaluate(values)


def from_terms(items: Iterable[Tuple[Sequence[int], int]]) -> LaurentPoly:
    d: Dict[Tuple[int, ...], int] = {}
    for e, c in items:
        e = tuple(e)
        d[e] = d.get(e, 0) + c
    return LaurentPoly(d)
