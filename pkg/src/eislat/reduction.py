"""LLL reduction and short-vector enumeration for definite E-lattices.

Enumeration works on the integral real form 2Re<x, y> over the Z-basis
{b_i, w b_i}; a vector of complex norm n has real norm 2n.  The LLL step uses
exact rational Gram-Schmidt data, which also drives the Fincke-Pohst search
(in floating point with a safety margin; every candidate is re-checked
exactly).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .eisenstein import UNIT_PAIRS, Pair, emul
from .elinalg import EVec
from .lattice import HermitianLattice, real_form

DEFAULT_ENUM_CAP = 10**6
_EPS = 1e-7


class NotPositiveDefiniteError(ValueError):
    pass


class EnumerationCapExceeded(RuntimeError):
    def __init__(self, cap: int, partial: int):
        super().__init__(f"enumeration cap {cap} exceeded ({partial} vectors found so far)")
        self.cap = cap
        self.partial = partial


@dataclass
class LLLResult:
    transform: list[list[int]]  # rows: reduced basis in the input basis
    gram: list[list[int]]
    B: list[Fraction]  # squared Gram-Schmidt lengths
    mu: list[list[Fraction]]


def lll_reduce(gram: Sequence[Sequence[int]], delta: Fraction = Fraction(99, 100)) -> LLLResult:
    """LLL-reduce a positive definite integral Gram matrix.

    Gram-Schmidt data are exact rationals, updated incrementally (Gram version
    of the classical algorithm).  The transform is unimodular over Z.
    """
    n = len(gram)
    Q = [[int(x) for x in row] for row in gram]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 0:
        return LLLResult(U, Q, [], [])
    mu = [[Fraction(0)] * n for _ in range(n)]
    B = [Fraction(0)] * n

    def gso(k: int) -> None:
        for j in range(k):
            s = Fraction(Q[k][j])
            for i in range(j):
                s -= mu[j][i] * mu[k][i] * B[i]
            mu[k][j] = s / B[j]
        s = Fraction(Q[k][k])
        for j in range(k):
            s -= mu[k][j] * mu[k][j] * B[j]
        if s <= 0:
            raise NotPositiveDefiniteError("Gram matrix is not positive definite")
        B[k] = s

    def red(k: int, l: int) -> None:
        m = mu[k][l]
        if abs(m) <= Fraction(1, 2):
            return
        q = math.floor(m + Fraction(1, 2))
        # b_k -= q b_l
        for j in range(n):
            U[k][j] -= q * U[l][j]
        old = Q[k][l]
        diag = Q[k][k] - 2 * q * old + q * q * Q[l][l]
        for j in range(n):
            if j != k:
                Q[k][j] -= q * Q[l][j]
        Q[k][k] = diag
        for j in range(n):
            Q[j][k] = Q[k][j]
        mu[k][l] -= q
        for i in range(l):
            mu[k][i] -= q * mu[l][i]

    def swap(k: int, kmax: int) -> None:
        U[k], U[k - 1] = U[k - 1], U[k]
        Q[k], Q[k - 1] = Q[k - 1], Q[k]
        for row in Q:
            row[k], row[k - 1] = row[k - 1], row[k]
        for j in range(k - 1):
            mu[k][j], mu[k - 1][j] = mu[k - 1][j], mu[k][j]
        m = mu[k][k - 1]
        b = B[k] + m * m * B[k - 1]
        mu[k][k - 1] = m * B[k - 1] / b
        B[k] = B[k - 1] * B[k] / b
        B[k - 1] = b
        for i in range(k + 1, kmax + 1):
            t = mu[i][k]
            mu[i][k] = mu[i][k - 1] - m * t
            mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k]

    if Q[0][0] <= 0:
        raise NotPositiveDefiniteError("Gram matrix is not positive definite")
    B[0] = Fraction(Q[0][0])
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            gso(k)
        red(k, k - 1)
        if B[k] < (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            swap(k, kmax)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return LLLResult(U, Q, B, mu)


@dataclass
class _Prepared:
    Q: list[list[int]]  # real form times its denominator
    d: int
    lll: LLLResult
    Bf: list[float]
    muf: list[list[float]]
    step: int  # every value x^T Q x is a multiple of this


def _prepare(L: HermitianLattice) -> _Prepared:
    cached = getattr(L, "_fp_cache", None)
    if cached is not None:
        return cached
    p, q = L.signature
    if q:
        raise NotPositiveDefiniteError("enumeration refused on an indefinite lattice")
    Q, d = real_form(L.gram)
    res = lll_reduce(Q)
    step = 0
    n = len(Q)
    for i in range(n):
        step = math.gcd(step, Q[i][i])
        for j in range(i):
            step = math.gcd(step, 2 * Q[i][j])
    prep = _Prepared(Q, d, res, [float(b) for b in res.B],
                     [[float(x) for x in row] for row in res.mu], step or 1)
    L._fp_cache = prep
    return prep


def _fincke_pohst(prep: _Prepared, bound: int, cap: int | None, shrink: bool = False):
    """Integer vectors y (reduced coordinates) with 0 < y^T Qred y <= bound.

    With ``shrink`` the search keeps only the best vector found and tightens
    the bound below it, returning the shortest nonzero vector.
    """
    Qr = prep.lll.gram
    B, mu = prep.Bf, prep.muf
    n = len(Qr)
    x = [0] * n
    out: list[tuple[int, ...]] = []

    class _Improved(Exception):
        pass

    def exact(y) -> int:
        s = 0
        for i in range(n):
            if y[i]:
                row = Qr[i]
                s += y[i] * sum(row[j] * y[j] for j in range(n) if y[j])
        return s

    def rec(j: int, rem: float, limit: int) -> None:
        c = 0.0
        for i in range(j + 1, n):
            if x[i]:
                c -= mu[i][j] * x[i]
        r = math.sqrt(max(rem, 0.0) / B[j])
        lo = math.ceil(c - r - _EPS)
        hi = math.floor(c + r + _EPS)
        for v in sorted(range(lo, hi + 1), key=lambda v: (abs(v - c), v)):
            t = B[j] * (v - c) ** 2
            if t > rem + _EPS * (1 + rem):
                continue
            x[j] = v
            if j == 0:
                if any(x):
                    val = exact(x)
                    if 0 < val <= limit:
                        if shrink:
                            raise _Improved((val, tuple(x)))
                        out.append(tuple(x))
                        if cap is not None and len(out) > cap:
                            raise EnumerationCapExceeded(cap, len(out))
            else:
                rec(j - 1, rem - t, limit)
        x[j] = 0

    if not shrink:
        rec(n - 1, float(bound), bound)
        return out
    best = None
    limit = bound
    while limit > 0:
        x[:] = [0] * n
        try:
            rec(n - 1, float(limit), limit)
        except _Improved as found:
            best = found.args[0]
            limit = best[0] - prep.step
            continue
        break
    return best


def _to_coords(prep: _Prepared, y: Sequence[int]) -> EVec:
    U = prep.lll.transform
    n = len(U)
    z = [0] * n
    for i, yi in enumerate(y):
        if yi:
            row = U[i]
            for j in range(n):
                z[j] += yi * row[j]
    return tuple((z[2 * i], z[2 * i + 1]) for i in range(n // 2))


def _sort_key(v: EVec) -> tuple:
    return tuple(-c for p in v for c in p)


@dataclass
class ShortVectors:
    norm_bound: Fraction
    vectors: list[EVec]  # lattice coordinates, deterministic order
    norms: list[Fraction]

    @property
    def classes(self) -> list[EVec]:
        """One representative per unit-scalar class."""
        return unit_classes(self.vectors)


def unit_classes(vectors: Sequence[EVec]) -> list[EVec]:
    reps = set()
    for v in vectors:
        reps.add(max(tuple(emul(u, c) for c in v) for u in UNIT_PAIRS))
    return sorted(reps, key=_sort_key)


def short_vectors(L: HermitianLattice, max_norm, cap: int | None = DEFAULT_ENUM_CAP) -> ShortVectors:
    """All nonzero vectors of L with |v|^2 <= max_norm."""
    prep = _prepare(L)
    bound = Fraction(max_norm) * 2 * prep.d
    ib = math.floor(bound)
    ys = _fincke_pohst(prep, ib, cap)
    vecs = [_to_coords(prep, y) for y in ys]
    vecs.sort(key=_sort_key)
    norms = [L.norm_coords(v) for v in vecs]
    for v, nv in zip(vecs, norms):
        if not (0 < nv <= Fraction(max_norm)):
            raise AssertionError(f"enumeration returned a vector of norm {nv}")
    return ShortVectors(Fraction(max_norm), vecs, norms)


def enumerate_short(L: HermitianLattice, target_norm, cap: int | None = DEFAULT_ENUM_CAP) -> list[EVec]:
    """All vectors of L with |v|^2 == target_norm, in lattice coordinates."""
    sv = short_vectors(L, target_norm, cap)
    t = Fraction(target_norm)
    return [v for v, nv in zip(sv.vectors, sv.norms) if nv == t]


def roots(L: HermitianLattice, cap: int | None = DEFAULT_ENUM_CAP) -> list[EVec]:
    return enumerate_short(L, 3, cap)


def min_norm(L: HermitianLattice) -> tuple[Fraction, EVec]:
    """Minimum norm of a nonzero vector and one vector achieving it."""
    prep = _prepare(L)
    start = min(prep.lll.gram[i][i] for i in range(len(prep.lll.gram)))
    best = _fincke_pohst(prep, start, None, shrink=True)
    if best is None:
        raise AssertionError("shortest-vector search found nothing below the basis minimum")
    val, y = best
    v = _to_coords(prep, y)
    nv = L.norm_coords(v)
    if nv * 2 * prep.d != val:
        raise AssertionError("shortest vector norm mismatch")
    return nv, v
