"""Vectorised integrality screens for the exhaustive classification runs.

Each screen runs the recurrence from a +-1 start on many coefficient rows
at once.  Values that grow too large are tracked only modulo the divisor
that the next exact division needs, so a reported non-integral term is a
certificate in the same sense as ``lpseed.integrality_screen``.  Rows that
survive are handed to the exact ``is_period1``.
"""
import itertools

import numpy as np

N3_MONOMIALS = [(i, j) for d in range(4) for i in range(d + 1) for j in [d - i]]


def coefficient_rows(nmono, lo, hi):
    vals = np.arange(lo, hi + 1, dtype=np.int64)
    grids = np.meshgrid(*([vals] * nmono), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _eval2(C, a, b, mod=None):
    """Sum C[:, k] a^i b^j over N3_MONOMIALS, optionally reduced mod ``mod``."""
    tot = np.zeros(len(C), dtype=np.int64)
    if mod is not None:
        a, b = a % mod, b % mod
    pa = [np.ones_like(a), a]
    pb = [np.ones_like(b), b]
    for _ in range(2):
        pa.append(pa[-1] * a if mod is None else (pa[-1] * a) % mod)
        pb.append(pb[-1] * b if mod is None else (pb[-1] * b) % mod)
    for k, (i, j) in enumerate(N3_MONOMIALS):
        t = pa[i] * pb[j]
        if mod is not None:
            t %= mod
        tot = tot + C[:, k] * t
        if mod is not None:
            tot %= mod
    return tot


def screen_n3(C):
    """Boolean mask of rows certified non-integral from some +-1 start."""
    bad = np.zeros(len(C), dtype=bool)
    for s0, s1, s2 in itertools.product((1, -1), repeat=3):
        one = np.ones(len(C), dtype=np.int64)
        x3 = _eval2(C, s1 * one, s2 * one) * s0
        x4 = _eval2(C, s2 * one, x3) * s1
        # |x4| < 2^19 keeps every power in the x5 evaluation below 2^62
        assert np.abs(x4).max() < 2 ** 19
        x5 = _eval2(C, x3, x4) * s2
        m3, m4 = np.abs(x3), np.abs(x4)
        ok = (m3 > 0) & (m4 > 0) & ~bad
        m3s = np.where(ok, m3, 1)
        m4s = np.where(ok, m4, 1)
        # x6 = P(x4, x5) / x3
        r6 = _eval2(C, x4, x5, m3s)
        fail6 = ok & (r6 != 0)
        bad |= fail6
        ok &= ~fail6
        # x7 = P(x5, x6) / x4, with x6 known modulo |x4|
        M = m3s * m4s
        assert M.max() < 2 ** 31  # residue products stay below 2^62
        R = _eval2(C, x4, x5, M)
        x6m = (np.sign(x3) * (R // m3s)) % m4s
        r7 = _eval2(C, x5, x6m, m4s)
        bad |= ok & (r7 != 0)
    return bad


def _evalu(C, a, mod=None):
    tot = np.zeros(len(C), dtype=np.int64)
    p = np.ones_like(a)
    if mod is not None:
        a = a % mod
    for k in range(C.shape[1]):
        tot = tot + C[:, k] * p
        if mod is not None:
            tot %= mod
        p = p * a if mod is None else (p * a) % mod
    return tot


def screen_n2(C):
    """Same idea for univariate P and n = 2 (terms x2, x3 exact, x4 mod |x2|)."""
    bad = np.zeros(len(C), dtype=bool)
    for s0, s1 in itertools.product((1, -1), repeat=2):
        one = np.ones(len(C), dtype=np.int64)
        x2 = _evalu(C, s1 * one) * s0
        m2 = np.abs(x2)
        assert m2.max() < 2 ** 31
        ok = m2 > 0
        m2s = np.where(ok, m2, 1)
        # x3 = P(x2) / x1 is exact; x4 = P(x3) / x2 needs x3 mod |x2| only
        x3m = (_evalu(C, x2, m2s) * s1) % m2s
        r4 = _evalu(C, x3m, m2s)
        bad |= ok & (r4 != 0)
    return bad
