"""Double quivers, encoded by their B-matrices.

Entry ``b[i][j]`` counts half-edges between ``i`` and ``j`` attached at
``i``; positive means outgoing from ``i``.  A matrix with zero diagonal is
the whole description, so everything here works on matrices.  The binomial
seed of a matrix has ``P_i`` equal to the product of ``x_j^b`` over positive
entries plus the product of ``x_j^-b`` over negative entries of row ``i``.
"""
from __future__ import annotations

import itertools
import json
from typing import Iterable, List, Optional, Sequence, Tuple

from .lpseed import Seed, SeedError
from .polycore import LaurentPoly

__all__ = [
    "BMatrix",
    "QuiverError",
    "canonical_quiver_from_binomial_seed",
    "check_mutual_theorem",
    "check_sink_type_theorem",
    "epsilon",
    "is_mutable",
    "is_mutual_at_zero",
    "is_period1_quiver",
    "is_sink_at_zero",
    "mutate_bmatrix",
    "relabel_down",
    "seed_from_quiver",
    "theorem_binomial_membership",
    "to_dot",
]


class QuiverError(ValueError):
    pass


class BMatrix:
    """Immutable square integer matrix with zero diagonal."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Sequence[int]]):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise QuiverError(f"row {i} has length {len(r)}, expected {n}")
            if r[i] != 0:
                raise QuiverError(f"nonzero diagonal entry at ({i}, {i})")
        self.rows = rows

    @classmethod
    def from_json(cls, text: str) -> "BMatrix":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError(f"malformed matrix JSON: {exc}") from exc
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise QuiverError("matrix must be a JSON array of arrays")
        return cls(data)

    def to_json(self) -> str:
        return json.dumps([list(r) for r in self.rows])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: Tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if isinstance(other, BMatrix):
            return self.rows == other.rows
        if isinstance(other, (list, tuple)):
            return self.rows == tuple(tuple(r) for r in other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.rows)

    def __neg__(self) -> "BMatrix":
        return BMatrix([[-v for v in r] for r in self.rows])

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        return f"BMatrix({self.tolist()})"


def is_mutable(B: BMatrix, i: int) -> bool:
    return all(B[i, j] != 0 for j in range(B.n) if j != i and B[j, i] != 0)


def mutate_bmatrix(B: BMatrix, k: int) -> BMatrix:
    if not is_mutable(B, k):
        raise QuiverError(f"vertex {k} is not mutable")
    n = B.n
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            b = B[i, j]
            if i == k or j == k:
                row.append(-b)
            elif B[k, i] * B[k, j] < 0:
                row.append(b + B[i, k] * abs(B[k, j]))
            else:
                row.append(b)
        out.append(row)
    return BMatrix(out)


def relabel_down(B: BMatrix) -> BMatrix:
    """Matrix after renaming vertex 0 to n-1 and vertex j to j-1."""
    n = B.n
    return BMatrix([[B[(i + 1) % n, (j + 1) % n] for j in range(n)] for i in range(n)])


def is_period1_quiver(B: BMatrix) -> bool:
    """Mutate at 0, slide labels down by one, compare with B."""
    if not is_mutable(B, 0):
        return False
    return relabel_down(mutate_bmatrix(B, 0)) == B


def epsilon(B: BMatrix, i: int, j: int) -> int:
    """Increment added to b_ij by mutation at vertex 0."""
    if B[0, i] * B[0, j] < 0:
        return B[i, 0] * abs(B[0, j])
    return 0


def is_sink_at_zero(B: BMatrix) -> bool:
    return all(B[0, j] <= 0 and B[j, 0] >= 0 for j in range(1, B.n))


def is_mutual_at_zero(B: BMatrix) -> bool:
    return all(B[0, i] * B[i, 0] <= 0 for i in range(1, B.n))


def check_sink_type_theorem(B: BMatrix) -> bool:
    """Closed-form period-1 test for a matrix whose vertex 0 is a sink."""
    if not is_sink_at_zero(B):
        raise QuiverError("vertex 0 is not a sink")
    n = B.n
    for i in range(1, n):
        a, b = B[0, i], B[0, n - i]
        if not ((a < 0 and b < 0) or (a == 0 and b == 0)):
            return False
        if B[i, 0] != -B[0, n - i]:
            return False
    for i in range(1, n):
        for j in range(1, n):
            if i < j and B[i, j] != B[0, j - i]:
                return False
            if j < i and B[i, j] != -B[0, n - i + j]:
                return False
    return True


def check_mutual_theorem(B: BMatrix) -> bool:
    """Closed-form period-1 test for a matrix mutual at vertex 0."""
    if not is_mutual_at_zero(B):
        raise QuiverError("matrix is not mutual at vertex 0")
    n = B.n
    for i in range(1, n):
        a, b = B[i, 0], B[0, i]
        if not (a * b < 0 or (a == 0 and b == 0)):
            return False
        if B[i, 0] != -B[0, n - i]:
            return False
    for i in range(1, n):
        for j in range(1, n):
            if i < j:
                want = -sum(epsilon(B, i - k, j - k) for k in range(i + 1)) + B[0, j - i]
            elif j < i:
                want = -sum(epsilon(B, i - k, j - k) for k in range(j + 1)) - B[0, n - i + j]
            else:
                continue
            if B[i, j] != want:
                return False
    return True


def _row_poly(row: Sequence[int]) -> LaurentPoly:
    pos = [v if v > 0 else 0 for v in row]
    neg = [-v if v < 0 else 0 for v in row]
    return LaurentPoly({tuple(pos): 1}) + LaurentPoly({tuple(neg): 1})


def seed_from_quiver(B: BMatrix) -> Seed:
    return Seed(B.n, tuple(_row_poly(r) for r in B.rows))


def _binomial_row(p: LaurentPoly, n: int, i: int) -> List[int]:
    if p == 2:
        return [0] * n
    terms = list(p.terms())
    if len(terms) != 2 or any(c != 1 for _, c in terms):
        raise QuiverError(f"P_{i} is not a binomial with unit coefficients")
    e1, e2 = (tuple(e[:n]) + (0,) * (n - len(e)) for e, _ in terms)
    if any(a and b for a, b in zip(e1, e2)):
        raise QuiverError(f"the monomials of P_{i} share a variable")
    return [a - b for a, b in zip(e1, e2)]


_FREE_ROW_LIMIT = 12


def canonical_quiver_from_binomial_seed(s: Seed) -> BMatrix:
    """The matrix mutual at 0 whose binomial seed is s.

    Row 0 puts the canonically first monomial of P_0 on the positive side;
    every other row meeting vertex 0 is oriented so that b_i0 and b_0i have
    opposite signs.  Rows not meeting vertex 0 are oriented to make the
    quiver period 1 when some orientation does.
    """
    n = s.n
    rows = [_binomial_row(p, n, i) for i, p in enumerate(s)]
    for i in range(1, n):
        if rows[i][0] * rows[0][i] > 0:
            rows[i] = [-v for v in rows[i]]
    # rows with b_i0 = 0 have no forced orientation; take the first choice
    # that makes the quiver period 1, if there is one
    free = [i for i in range(1, n) if rows[i][0] == 0 and any(rows[i])]
    first = BMatrix(rows)
    if len(free) > _FREE_ROW_LIMIT or is_period1_quiver(first):
        return first
    for flips in itertools.product((False, True), repeat=len(free)):
        trial = [list(r) for r in rows]
        for i, f in zip(free, flips):
            if f:
                trial[i] = [-v for v in trial[i]]
        B = BMatrix(trial)
        if is_period1_quiver(B):
            return B
    return first


def theorem_binomial_membership(a: Sequence[int], b: Sequence[int], n: int) -> bool:
    """Zero-pattern test for the binomial prod x_i^a_i + prod x_i^b_i.

    ``a`` and ``b`` list the exponents of x_1 .. x_{n-1}.
    """
    a, b = list(a), list(b)
    if len(a) != n - 1 or len(b) != n - 1:
        raise QuiverError(f"exponent vectors must have length {n - 1}")
    if any(v < 0 for v in a + b):
        raise QuiverError("exponents must be non-negative")
    if any(u and v for u, v in zip(a, b)):
        raise QuiverError("the two monomials share a variable")
    for i in range(1, n):
        if (a[i - 1] == 0) != (a[n - i - 1] == 0):
            return False
        if (b[i - 1] == 0) != (b[n - i - 1] == 0):
            return False
    return True


def to_dot(B: BMatrix, name: str = "Q") -> str:
    """Graphviz text; each half-edge is drawn from the vertex it is attached at."""
    lines = [f"digraph {name} {{"]
    for i in range(B.n):
        lines.append(f'  x{i} [label="x{i}"];')
    for i in range(B.n):
        for j in range(B.n):
            b = B[i, j]
            for _ in range(abs(b)):
                if b > 0:
                    lines.append(f'  x{i} -> x{j} [tailport=c, arrowhead=halfopen, label="@{i}"];')
                else:
                    lines.append(f'  x{j} -> x{i} [headport=c, arrowhead=halfopen, label="@{i}"];')
    lines.append("}")
    return "\n".join(lines)
