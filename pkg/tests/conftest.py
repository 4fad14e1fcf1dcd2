import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from lpalg.polycore import LaurentPoly

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def polys(nvars=3, max_terms=4, lo=0, hi=3, coeff=5):
    """Small random (Laurent) polynomials in x_0 .. x_{nvars-1}."""
    mono = st.tuples(*[st.integers(lo, hi)] * nvars)
    term = st.tuples(mono, st.integers(-coeff, coeff))
    return st.lists(term, max_size=max_terms).map(_from_terms)


def nonzero_polys(**kw):
    return polys(**kw).filter(lambda p: not p.is_zero())


def _from_terms(items):
    d = {}
    for e, c in items:
        d[e] = d.get(e, 0) + c
    return LaurentPoly(d)


def naive_mul(a, b):
    """Schoolbook product on the public term dictionaries."""
    out = {}
    for ea, ca in a.as_dict().items():
        for eb, cb in b.as_dict().items():
            n = max(len(ea), len(eb))
            ea2 = ea + (0,) * (n - len(ea))
            eb2 = eb + (0,) * (n - len(eb))
            e = tuple(u + v for u, v in zip(ea2, eb2))
            out[e] = out.get(e, 0) + ca * cb
    return LaurentPoly(out)


def to_sympy(p, nvars=8):
    import sympy

    xs = sympy.symbols(f"x0:{nvars}")
    expr = 0
    for e, c in p.as_dict().items():
        t = sympy.Integer(c)
        for i, k in enumerate(e):
            t *= xs[i] ** k
        expr += t
    return expr, xs
