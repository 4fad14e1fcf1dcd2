"""Text and JSON I/O for polynomials and seeds.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := ['-'] factor ('*' factor)*
    factor := atom ['^' uint]
    atom   := uint | var | '(' expr ')'
    var    := 'x' uint

Multiplication must be written with ``*``; juxtaposition is a syntax error.
"""
from __future__ import annotations

import json
import warnings
from pathlib import Path
from typing import List, Optional, Union

from .polycore import LaurentPoly, is_irreducible_best_effort

__all__ = [
    "ExprSyntaxError",
    "format_poly",
    "load_seed",
    "parse_poly",
    "print_poly",
    "save_seed",
    "seed_from_dict",
    "seed_to_dict",
]


class ExprSyntaxError(ValueError):
    """Parse failure; ``line`` and ``column`` are 1-based."""

    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        start = text.rfind("\n", 0, pos) + 1
        col = pos - start + 1
        end = text.find("\n", pos)
        src = text[start:] if end < 0 else text[start:end]
        super().__init__(f"{message} at line {line}, column {col}\n  {src}\n  {' ' * (col - 1)}^")
        self.line = line
        self.column = col
        self.detail = message


class _Parser:
    def __init__(self, text: str, arity: Optional[int]):
        self.text = text
        self.pos = 0
        self.arity = arity

    def error(self, msg: str, pos: Optional[int] = None) -> ExprSyntaxError:
        return ExprSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip(self) -> None:
        t = self.text
        while self.pos < len(t) and t[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip()
        start = self.pos
        t = self.text
        while self.pos < len(t) and t[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(t[start:self.pos])

    def parse(self) -> LaurentPoly:
        if not self.peek():
            raise self.error("empty expression")
        p = self.expr()
        if self.peek():
            c = self.peek()
            if c == "x" or c.isdigit() or c == "(":
                raise self.error("implicit multiplication is not allowed; use '*'")
            raise self.error(f"unexpected character {c!r}")
        return p

    def expr(self) -> LaurentPoly:
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> LaurentPoly:
        neg = False
        if self.peek() == "-":
            self.pos += 1
            neg = True
        p = self.factor()
        while self.peek() == "*":
            self.pos += 1
            p = p * self.factor()
        return -p if neg else p

    def factor(self) -> LaurentPoly:
        p = self.atom()
        if self.peek() == "^":
            self.pos += 1
            if self.peek() == "-":
                raise self.error("negative exponents are not accepted")
            p = p ** self.uint()
        return p

    def atom(self) -> LaurentPoly:
        c = self.peek()
        if c == "(":
            opened = self.pos
            self.pos += 1
            if not self.peek():
                raise self.error("unclosed '('", opened)
            p = self.expr()
            if self.peek() != ")":
                if not self.peek():
                    raise self.error("unclosed '('", opened)
                raise self.error("expected ')'")
            self.pos += 1
            return p
        if c == "x":
            start = self.pos
            self.pos += 1
            if not (self.pos < len(self.text) and self.text[self.pos].isdigit()):
                raise self.error("expected a variable index after 'x'")
            i = self.uint()
            if self.arity is not None and i >= self.arity:
                raise self.error(f"variable x{i} out of range for n = {self.arity}", start)
            return LaurentPoly.var(i)
        if c.isdigit():
            return LaurentPoly.const(self.uint())
        if not c:
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected character {c!r}")


def parse_poly(text: str, arity: Optional[int] = None) -> LaurentPoly:
    """Parse polynomial text; variable indices must be below ``arity`` if given."""
    return _Parser(text, arity).parse()


def _mono_text(e) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k:
            parts.append(f"x{i}^{k}" if k > 0 else f"x{i}^({k})")
    return "*".join(parts)


def format_poly(p: LaurentPoly) -> str:
    """Canonical text; Laurent values get a ``laurent:`` prefix."""
    if p.is_zero():
        return "0"
    out: List[str] = []
    for e, c in p.terms():
        m = _mono_text(e)
        a = abs(c)
        if not m:
            body = str(a)
        elif a == 1:
            body = m
        else:
            body = f"{a}*{m}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    s = "".join(out)
    return s if p.is_polynomial() else "laurent:" + s


def print_poly(p: LaurentPoly) -> str:
    return format_poly(p)


# ---------------------------------------------------------------------------
# seeds
# ---------------------------------------------------------------------------

def seed_from_dict(doc: dict, check_irreducible: bool = False):
    from .lpseed import Seed, SeedError

    if not isinstance(doc, dict) or "n" not in doc or "polys" not in doc:
        raise SeedError('seed document must be an object with "n" and "polys"')
    n = doc["n"]
    polys = doc["polys"]
    if not isinstance(n, int) or n < 1:
        raise SeedError(f"invalid cluster size {n!r}")
    if not isinstance(polys, list) or len(polys) != n:
        raise SeedError(f"expected {n} polynomials, got {len(polys) if isinstance(polys, list) else polys!r}")
    ps = [parse_poly(str(t), n) for t in polys]
    s = Seed(n, tuple(ps))
    if check_irreducible:
        for i, p in enumerate(ps):
            if p.is_constant():
                continue
            r = is_irreducible_best_effort(p)
            if r.status == "Reducible":
                warnings.warn(f"P_{i} is reducible (factor {r.witness})")
            elif r.status == "Unknown":
                warnings.warn(f"irreducibility of P_{i} not established")
    return s


def seed_to_dict(seed) -> dict:
    return {"n": seed.n, "polys": [format_poly(p) for p in seed.polys]}


def load_seed(path: Union[str, Path], check_irreducible: bool = False):
    from .lpseed import SeedError

    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SeedError(f"malformed JSON in {path}: {exc}") from exc
    return seed_from_dict(doc, check_irreducible)


def save_seed(seed, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(seed_to_dict(seed), indent=2) + "\n")
