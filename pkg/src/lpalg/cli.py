"""The ``lp`` command.

Exit codes: 0 when the command succeeds and any verdict is positive, 1 when
the verdict is negative or a violation was found, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from .expr import ExprSyntaxError, format_poly, load_seed, parse_poly, seed_to_dict
from .families import (
    FIXTURES,
    FamilyError,
    FamilySpec,
    build,
    classify_n2,
    classify_n3,
    expected_seed,
    expected_seed_reason,
)
from .lpseed import SeedError, generate_seed, is_period1, mutate, same_up_to_sign, verify_period1_by_mutation
from .polycore import PolyError
from .quiver import (
    BMatrix,
    QuiverError,
    canonical_quiver_from_binomial_seed,
    check_mutual_theorem,
    check_sink_type_theorem,
    is_mutable,
    is_mutual_at_zero,
    is_period1_quiver,
    is_sink_at_zero,
    mutate_bmatrix,
)
from .sequence import (
    DEFAULT_TERM_BUDGET,
    LaurentViolation,
    SingularityAt,
    TermBudgetExceeded,
    check_invariant,
    check_multilinearization,
    detect_period,
    invariant_polynomial,
    invariant_spec,
    numeric_terms,
    symbolic_terms,
)

OK, NO, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, payload: Any, lines: Sequence[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _poly(text: str, n: Optional[int] = None):
    try:
        return parse_poly(text, n)
    except ExprSyntaxError as exc:
        raise UsageError(str(exc)) from exc


def _number(text: str):
    try:
        v = Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not an exact number: {text!r}") from exc
    return v.numerator if v.denominator == 1 else v


def _num_text(v) -> str:
    return str(v)


def _params(tokens: Sequence[str]) -> Dict[str, Any]:
    """KEY=VALUE tokens; values are read as JSON when possible."""
    out: Dict[str, Any] = {}
    for tok in tokens:
        if "=" not in tok:
            raise UsageError(f"expected KEY=VALUE, got {tok!r}")
        k, v = tok.split("=", 1)
        try:
            val = json.loads(v)
        except json.JSONDecodeError:
            val = v
        if isinstance(val, dict):
            # JSON object keys are strings; index maps want ints
            val = {(int(a) if a.lstrip("-").isdigit() else a): b for a, b in val.items()}
        out[k.strip()] = val
    return out


def _seed_lines(polys) -> List[str]:
    return [f"  P{i} = {format_poly(p)}" for i, p in enumerate(polys)]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    P = _poly(args.poly, args.n)
    rep = is_period1(P, args.n, args.pivot)
    lines = [f"verdict: {rep.verdict}"]
    if rep.stage:
        lines.append(f"stage: {rep.stage}")
    if rep.detail:
        lines.append(f"detail: {rep.detail}")
    if rep.seed is not None:
        lines.append(f"hat condition: {rep.hat_condition}")
        lines += _seed_lines(rep.seed)
    _emit(args, rep.to_dict(), lines)
    return OK if rep.is_period1 else NO


def cmd_seed(args) -> int:
    P = _poly(args.poly, args.n)
    try:
        polys, ok = generate_seed(P, args.n, args.pivot)
    except (SeedError, PolyError) as exc:
        _emit(args, {"error": str(exc)}, [f"generation failed: {exc}"])
        return NO
    payload = {"n": args.n, "polys": [format_poly(p) for p in polys], "pseudoperiod": ok}
    _emit(args, payload, _seed_lines(polys) + [f"pseudoperiod: {ok}"])
    return OK if ok else NO


def cmd_mutate(args) -> int:
    s = load_seed(args.seed)
    m = mutate(s, args.at)
    payload = seed_to_dict(m.seed)
    payload["new_variable"] = m.marker()
    _emit(args, payload, [m.marker()] + _seed_lines(m.seed))
    return OK


def cmd_sequence(args) -> int:
    P = _poly(args.poly, args.n)
    numeric = args.numeric or args.ones or args.initial is not None
    if numeric and args.symbolic:
        raise UsageError("--symbolic cannot be combined with numeric options")
    try:
        if numeric:
            init = None if args.initial is None else [_number(t) for t in args.initial.split(",")]
            if init is not None and len(init) != args.n:
                raise UsageError(f"--initial needs {args.n} values")
            terms = numeric_terms(P, args.n, args.terms, init)
            text = [_num_text(v) for v in terms]
        else:
            terms = symbolic_terms(P, args.n, args.terms, args.budget)
            text = [format_poly(t) for t in terms]
    except LaurentViolation as exc:
        _emit(args, {"violation": exc.m, "witness": format_poly(exc.remainder_witness)},
              [f"Laurent violation computing term {exc.m + args.n}",
               f"  witness: {format_poly(exc.remainder_witness)}"])
        return NO
    except SingularityAt as exc:
        _emit(args, {"singularity": exc.m}, [f"term x_{exc.m} is zero; the recurrence stops"])
        return NO
    except TermBudgetExceeded as exc:
        _emit(args, {"budget_exceeded": exc.index, "size": exc.size}, [str(exc)])
        return NO
    period = detect_period(terms, args.n)
    # the JSON payload is the bare list of terms as strings
    payload: Any = text
    lines = list(text) if numeric else [f"x{i} = {t}" for i, t in enumerate(text)]
    if numeric and not args.json:
        lines = [",".join(text)]
    if period is not None:
        lines.append(f"period: {period}")
    _emit(args, payload, lines)
    return OK


def _matrix(args) -> BMatrix:
    if args.matrix is not None and args.seed is not None:
        raise UsageError("give either --matrix or --seed")
    if args.matrix is not None:
        return BMatrix.from_json(args.matrix)
    if args.seed is not None:
        return canonical_quiver_from_binomial_seed(load_seed(args.seed))
    raise UsageError("a matrix is required (--matrix or --seed)")


def cmd_quiver(args) -> int:
    B = _matrix(args)
    if args.action == "mutate":
        if args.at is None:
            raise UsageError("quiver mutate needs --at")
        if not 0 <= args.at < B.n:
            raise UsageError(f"--at must lie in 0..{B.n - 1}")
        if not is_mutable(B, args.at):
            _emit(args, {"mutable": False}, [f"vertex {args.at} is not mutable"])
            return NO
        M = mutate_bmatrix(B, args.at)
        _emit(args, {"matrix": M.tolist()}, [M.to_json()])
        return OK
    if args.action == "from-binomial":
        _emit(args, {"matrix": B.tolist()}, [B.to_json()])
        return OK
    res: Dict[str, Any] = {"period1": is_period1_quiver(B),
                           "mutable": [v for v in range(B.n) if is_mutable(B, v)]}
    if is_sink_at_zero(B):
        res["sink_theorem"] = check_sink_type_theorem(B)
    if is_mutual_at_zero(B):
        res["mutual_theorem"] = check_mutual_theorem(B)
    lines = [f"{k}: {v}" for k, v in res.items()]
    _emit(args, res, lines)
    return OK if res["period1"] else NO


def cmd_classify(args) -> int:
    P = _poly(args.poly)
    try:
        if args.n == 2:
            c = classify_n2(P)
            payload = {"class": c}
            found = c is not None
            line = c or "no class"
        else:
            r = classify_n3(P)
            payload = {"class": r.class_id, "params": dict(r.matched_params)}
            found = bool(r)
            line = f"class {r.class_id} {dict(r.matched_params)}" if found else "no class"
    except FamilyError as exc:
        raise UsageError(str(exc)) from exc
    _emit(args, payload, [line])
    return OK if found else NO


def cmd_family(args) -> int:
    spec = FamilySpec(args.name, args.n, _params(args.params))
    P = build(spec)
    payload: Dict[str, Any] = {"family": spec.family, "n": spec.n, "poly": format_poly(P)}
    lines = [spec.describe(), f"P = {format_poly(P)}"]
    if args.emit_seed:
        s = expected_seed(spec)
        if s is None:
            why = expected_seed_reason(spec)
            payload["seed"] = None
            payload["reason"] = why
            lines.append(f"no closed-form seed: {why}")
        else:
            payload["seed"] = [format_poly(p) for p in s]
            lines += _seed_lines(s)
    _emit(args, payload, lines)
    return OK


def cmd_invariant(args) -> int:
    params = _params(args.params)
    try:
        spec = invariant_spec(args.family, args.n, params)
        P = invariant_polynomial(args.family, args.n, params)
    except KeyError as exc:
        raise UsageError(f"missing parameter {exc.args[0]}") from exc
    init = None if args.initial is None else [_number(t) for t in args.initial.split(",")]
    if init is not None and len(init) != args.n:
        raise UsageError(f"--initial needs {args.n} values")
    horizon = args.terms - 1
    try:
        inv = check_invariant(spec, P, args.n, horizon, args.budget, init)
        ml = check_multilinearization(spec, P, args.n, horizon, args.budget, init)
    except TermBudgetExceeded as exc:
        _emit(args, {"budget_exceeded": exc.index}, [str(exc)])
        return NO
    payload = {"poly": format_poly(P), "invariant": inv.to_dict(), "multilinear": ml.to_dict()}
    lines = [f"P = {format_poly(P)}",
             f"J_(m+{inv.k}) = J_m: {'ok' if inv.ok else 'FAILED'} ({inv.checked} checks, failures {inv.failures})",
             f"multilinear recurrence: {'ok' if ml.ok else 'FAILED'} ({ml.checked} checks, failures {ml.failures})"]
    _emit(args, payload, lines)
    return OK if inv.ok and ml.ok else NO


def _random_mutable(rng: random.Random, n: int) -> BMatrix:
    while True:
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i != j:
                    rows[i][j] = rng.randint(-2, 2)
        B = BMatrix(rows)
        k = rng.randrange(n)
        if is_mutable(B, k):
            return B


def cmd_selftest(args) -> int:
    rng = random.Random(args.rng_seed)
    failures: List[str] = []
    lines: List[str] = []
    for spec in FIXTURES:
        P = build(spec)
        rep = is_period1(P, spec.n)
        ok = rep.is_period1 and verify_period1_by_mutation(rep.seed)
        exp = expected_seed(spec)
        if ok and exp is not None:
            ok = all(same_up_to_sign(a, b) for a, b in zip(exp, rep.seed))
        try:
            symbolic_terms(P, spec.n, 12)
        except (LaurentViolation, TermBudgetExceeded):
            ok = False
        lines.append(f"{'ok  ' if ok else 'FAIL'} {spec.describe()}")
        if not ok:
            failures.append(spec.describe())
    for _ in range(50):
        n = rng.randint(2, 6)
        B = _random_mutable(rng, n)
        k = next(v for v in range(n) if is_mutable(B, v))
        if mutate_bmatrix(mutate_bmatrix(B, k), k) != B:
            failures.append(f"quiver involution {B.tolist()} at {k}")
    lines.append(f"{len(failures)} failure(s)")
    _emit(args, {"failures": failures}, lines)
    return OK if not failures else NO


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _size(text: str) -> int:
    v = _nonneg(text)
    if v < 2:
        raise argparse.ArgumentTypeError("n must be at least 2")
    return v


def make_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="lp", description="Period-1 Laurent phenomenon seeds and their recurrences.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("check", parents=[common], help="decide whether P generates a period-1 seed")
    s.add_argument("poly")
    s.add_argument("--n", type=_size, required=True)
    s.add_argument("--pivot", type=_nonneg)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("seed", parents=[common], help="print the candidate seed of P")
    s.add_argument("poly")
    s.add_argument("--n", type=_size, required=True)
    s.add_argument("--pivot", type=_nonneg)
    s.set_defaults(func=cmd_seed)

    s = sub.add_parser("mutate", parents=[common], help="mutate a seed file")
    s.add_argument("--seed", required=True)
    s.add_argument("--at", type=_nonneg, required=True)
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("sequence", parents=[common], help="terms of x_{m+n} = P(...)/x_m")
    s.add_argument("poly")
    s.add_argument("--n", type=_size, required=True)
    s.add_argument("--terms", type=_nonneg, default=12)
    s.add_argument("--numeric", action="store_true")
    s.add_argument("--ones", action="store_true", help="numeric, starting from all ones")
    s.add_argument("--symbolic", action="store_true")
    s.add_argument("--initial", help="comma-separated exact start values")
    s.add_argument("--budget", type=_nonneg, default=DEFAULT_TERM_BUDGET, help="monomials allowed per term")
    s.set_defaults(func=cmd_sequence)

    s = sub.add_parser("quiver", parents=[common], help="B-matrix operations")
    s.add_argument("action", choices=("mutate", "check", "from-binomial"))
    s.add_argument("--matrix")
    s.add_argument("--seed")
    s.add_argument("--at", type=_nonneg)
    s.set_defaults(func=cmd_quiver)

    s = sub.add_parser("classify", parents=[common], help="match P against the n = 2 or n = 3 classes")
    s.add_argument("poly")
    s.add_argument("--n", type=int, choices=(2, 3), required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("family", parents=[common], help="build a family member")
    s.add_argument("name")
    s.add_argument("params", nargs="*", help="KEY=VALUE, values in JSON")
    s.add_argument("--n", type=_size, required=True)
    s.add_argument("--emit-seed", action="store_true")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("invariant", parents=[common], help="check a conserved quantity or k-invariant")
    s.add_argument("family")
    s.add_argument("params", nargs="*", help="KEY=VALUE")
    s.add_argument("--n", type=_size, required=True)
    s.add_argument("--terms", type=_nonneg, default=11, help="number of terms x_0 .. x_(T-1)")
    s.add_argument("--initial", help="check on exact rationals from this start instead")
    s.add_argument("--budget", type=_nonneg, default=DEFAULT_TERM_BUDGET)
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("selftest", parents=[common], help="run the fixture suite")
    s.add_argument("--rng-seed", type=int, default=20130601)
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    try:
        # KEY=VALUE parameters may follow the options
        args, extra = parser.parse_known_args(argv)
        if extra:
            if getattr(args, "command", None) in ("family", "invariant") and all("=" in t for t in extra):
                args.params = list(args.params) + extra
            else:
                raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
        if args.command is None:
            raise UsageError("a subcommand is required")
        return args.func(args)
    except UsageError as exc:
        print(f"lp: {exc}", file=sys.stderr)
        return USAGE
    except (SeedError, FamilyError, QuiverError, PolyError, ValueError, OSError) as exc:
        print(f"lp: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
