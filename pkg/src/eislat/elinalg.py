"""Exact module theory over E and linear algebra over Q(w).

Integral vectors are tuples of ``(a, b)`` pairs.  Fractional vectors and
matrices carry one positive integer denominator (``ScaledEMatrix``).  Module
computations clear the denominator first, run a Hermite normal form over E and
reattach it.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .eisenstein import (
    EisensteinInt,
    Pair,
    econj,
    edivmod,
    emul,
    enorm,
    exact_quotient,
    reduce_mod,
    unit_to_canonical,
)

EVec = tuple[Pair, ...]
ZERO: Pair = (0, 0)


# ---------------------------------------------------------------------------
# vector helpers on pair tuples

def vadd(x: Sequence[Pair], y: Sequence[Pair]) -> EVec:
    return tuple((a[0] + b[0], a[1] + b[1]) for a, b in zip(x, y))


def vsub(x: Sequence[Pair], y: Sequence[Pair]) -> EVec:
    return tuple((a[0] - b[0], a[1] - b[1]) for a, b in zip(x, y))


def vscale(c: Pair, x: Sequence[Pair]) -> EVec:
    return tuple(emul(c, a) for a in x)


def vint(k: int, x: Sequence[Pair]) -> EVec:
    return tuple((k * a[0], k * a[1]) for a in x)


def vconj(x: Sequence[Pair]) -> EVec:
    return tuple(econj(a) for a in x)


def is_zero(x: Sequence[Pair]) -> bool:
    return all(a == ZERO for a in x)


def as_evec(xs: Iterable) -> EVec:
    return tuple(EisensteinInt.coerce(x).pair() for x in xs)


def hermitian_ip(x: Sequence[Pair], y: Sequence[Pair], signs: Sequence[int] | None = None) -> Pair:
    """<x, y> = sum eps_i x_i conj(y_i); linear in x, antilinear in y."""
    a = b = 0
    for i, (p, q) in enumerate(zip(x, y)):
        if p == ZERO or q == ZERO:
            continue
        s, t = emul(p, econj(q))
        if signs is not None and signs[i] < 0:
            s, t = -s, -t
        a += s
        b += t
    return (a, b)


def content(entries: Iterable[Pair]) -> int:
    g = 0
    for a, b in entries:
        g = gcd(g, a, b)
    return g


# ---------------------------------------------------------------------------
# scaled containers

@dataclass(frozen=True)
class ScaledEVector:
    entries: EVec
    denom: int = 1

    def __post_init__(self):
        if self.denom < 1:
            raise ValueError("denominator must be positive")

    def normalized(self) -> ScaledEVector:
        g = gcd(content(self.entries), self.denom)
        if g <= 1:
            return self
        return ScaledEVector(tuple((a // g, b // g) for a, b in self.entries), self.denom // g)

    def __len__(self) -> int:
        return len(self.entries)

    def to_q(self) -> list[tuple[Fraction, Fraction]]:
        d = self.denom
        return [(Fraction(a, d), Fraction(b, d)) for a, b in self.entries]

    @classmethod
    def of(cls, xs: Iterable, denom: int = 1) -> ScaledEVector:
        return cls(as_evec(xs), denom)


@dataclass(frozen=True)
class ScaledEMatrix:
    rows: tuple[EVec, ...]
    denom: int = 1

    def __post_init__(self):
        if self.denom < 1:
            raise ValueError("denominator must be positive")

    @classmethod
    def of(cls, rows: Iterable[Iterable], denom: int = 1) -> ScaledEMatrix:
        return cls(tuple(as_evec(r) for r in rows), denom)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def normalized(self) -> ScaledEMatrix:
        g = gcd(content(e for r in self.rows for e in r), self.denom)
        if g <= 1:
            return self
        return ScaledEMatrix(tuple(tuple((a // g, b // g) for a, b in r) for r in self.rows), self.denom // g)

    def row(self, i: int) -> ScaledEVector:
        return ScaledEVector(self.rows[i], self.denom)

    def to_q(self) -> list[list[tuple[Fraction, Fraction]]]:
        d = self.denom
        return [[(Fraction(a, d), Fraction(b, d)) for a, b in r] for r in self.rows]

    @classmethod
    def from_q(cls, rows: Sequence[Sequence[tuple[Fraction, Fraction]]]) -> ScaledEMatrix:
        d = 1
        for r in rows:
            for s, t in r:
                d = lcm(d, s.denominator, t.denominator)
        return cls(tuple(tuple((int(s * d), int(t * d)) for s, t in r) for r in rows), d).normalized()

    def is_integral(self) -> bool:
        return self.normalized().denom == 1

    def entry(self, i: int, j: int) -> tuple[Fraction, Fraction]:
        a, b = self.rows[i][j]
        return (Fraction(a, self.denom), Fraction(b, self.denom))


def common_denominator(vectors: Sequence[ScaledEVector]) -> tuple[list[EVec], int]:
    d = 1
    for v in vectors:
        d = lcm(d, v.denom)
    return [vint(d // v.denom, v.entries) for v in vectors], d


# ---------------------------------------------------------------------------
# Hermite normal form over E

def echelon(rows: Sequence[Sequence[Pair]], ncols: int | None = None, transform: bool = False):
    """Row-reduce integral rows to Hermite normal form.

    Returns ``(hnf_rows, pivot_columns, U)`` where ``U`` (when requested) is
    unimodular with ``U * rows`` equal to the full reduced matrix; its rows
    past ``len(hnf_rows)`` span the left kernel of ``rows``.
    """
    work = [list(r) for r in rows]
    m = len(work)
    n = ncols if ncols is not None else (len(work[0]) if work else 0)
    U = [[(1, 0) if i == j else ZERO for j in range(m)] for i in range(m)] if transform else None

    def sub_mult(i: int, q: Pair, k: int) -> None:
        # row_i -= q * row_k
        ri, rk = work[i], work[k]
        for c in range(n):
            x = rk[c]
            if x != ZERO:
                s, t = emul(q, x)
                y = ri[c]
                ri[c] = (y[0] - s, y[1] - t)
        if U is not None:
            ui, uk = U[i], U[k]
            for c in range(m):
                x = uk[c]
                if x != ZERO:
                    s, t = emul(q, x)
                    y = ui[c]
                    ui[c] = (y[0] - s, y[1] - t)

    r = 0
    pivots: list[int] = []
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if work[i][c] != ZERO]
            if not nz:
                break
            p = min(nz, key=lambda i: (enorm(work[i][c]), i))
            if p != r:
                work[p], work[r] = work[r], work[p]
                if U is not None:
                    U[p], U[r] = U[r], U[p]
            piv = work[r][c]
            clean = True
            for i in range(r + 1, m):
                x = work[i][c]
                if x != ZERO:
                    q, rem = edivmod(x, piv)
                    sub_mult(i, q, r)
                    if rem != ZERO:
                        clean = False
            if clean:
                break
        if work[r][c] == ZERO:
            continue
        u = unit_to_canonical(work[r][c])
        if u != (1, 0):
            work[r] = [emul(u, x) for x in work[r]]
            if U is not None:
                U[r] = [emul(u, x) for x in U[r]]
        piv = work[r][c]
        for i in range(r):
            x = work[i][c]
            if x == ZERO:
                continue
            rem = reduce_mod(x, piv)
            if rem != x:
                q = exact_quotient((x[0] - rem[0], x[1] - rem[1]), piv)
                sub_mult(i, q, r)
        pivots.append(c)
        r += 1
    hnf_rows = [tuple(w) for w in work[:r]]
    return hnf_rows, pivots, (tuple(tuple(u) for u in U) if U is not None else None)


def left_kernel(rows: Sequence[Sequence[Pair]], ncols: int | None = None) -> list[EVec]:
    """Saturated basis of {x in E^m : x * rows = 0}."""
    if not rows:
        return []
    h, _, U = echelon(rows, ncols, transform=True)
    return [tuple(u) for u in U[len(h):]]


def extended_gcd(values: Sequence[Pair]) -> tuple[Pair, EVec]:
    """(g, y) with sum y_i * values_i = g and g the canonical gcd."""
    h, _, U = echelon([(v,) for v in values], 1, transform=True)
    if not h:
        return ZERO, tuple(ZERO for _ in values)
    return h[0][0], U[0]


@dataclass(frozen=True)
class EModule:
    """A finitely generated E-submodule of Q(w)^n in canonical HNF."""

    hnf_rows: tuple[EVec, ...]
    pivots: tuple[int, ...]
    denom: int
    dim: int

    @property
    def rank(self) -> int:
        return len(self.hnf_rows)

    @property
    def basis(self) -> ScaledEMatrix:
        return ScaledEMatrix(self.hnf_rows, self.denom)

    def basis_vectors(self) -> list[ScaledEVector]:
        return [ScaledEVector(r, self.denom) for r in self.hnf_rows]

    def coordinates(self, v: ScaledEVector | Sequence) -> EVec | None:
        """E-coordinates of v in the HNF basis, or None if v is not in the module."""
        if not isinstance(v, ScaledEVector):
            v = ScaledEVector(as_evec(v))
        if len(v.entries) != self.dim:
            raise ValueError(f"dimension mismatch: {len(v.entries)} vs {self.dim}")
        d = lcm(self.denom, v.denom)
        res = list(vint(d // v.denom, v.entries))
        k = d // self.denom
        coords: list[Pair] = []
        pos = 0
        for row, c in zip(self.hnf_rows, self.pivots):
            while pos < c:
                if res[pos] != ZERO:
                    return None
                pos += 1
            piv = (row[c][0] * k, row[c][1] * k)
            q = exact_quotient(res[c], piv) if res[c] != ZERO else ZERO
            if q is None:
                return None
            if q != ZERO:
                for j in range(c, self.dim):
                    x = row[j]
                    if x != ZERO:
                        s, t = emul(q, x)
                        res[j] = (res[j][0] - s * k, res[j][1] - t * k)
            coords.append(q)
        if any(x != ZERO for x in res):
            return None
        return tuple(coords)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains_module(self, other: EModule) -> bool:
        return all(self.coordinates(v) is not None for v in other.basis_vectors())

    def reduce(self, v: ScaledEVector) -> ScaledEVector:
        """Canonical representative of v modulo the module (v in its Q-span)."""
        d = lcm(self.denom, v.denom)
        res = list(vint(d // v.denom, v.entries))
        k = d // self.denom
        for row, c in zip(self.hnf_rows, self.pivots):
            piv = (row[c][0] * k, row[c][1] * k)
            x = res[c]
            rem = reduce_mod(x, piv)
            if rem != x:
                q = exact_quotient((x[0] - rem[0], x[1] - rem[1]), piv)
                for j in range(c, self.dim):
                    y = row[j]
                    if y != ZERO:
                        s, t = emul(q, y)
                        res[j] = (res[j][0] - s * k, res[j][1] - t * k)
        return ScaledEVector(tuple(res), d).normalized()

    def __add__(self, other: EModule) -> EModule:
        return hnf(list(self.basis_vectors()) + list(other.basis_vectors()), self.dim)


def hnf(rows: ScaledEMatrix | Sequence, dim: int | None = None) -> EModule:
    """Canonical HNF basis of the E-span of the given rows."""
    if isinstance(rows, ScaledEMatrix):
        vecs, d = [tuple(r) for r in rows.rows], rows.denom
        n = rows.ncols if dim is None else dim
    else:
        items = [r if isinstance(r, ScaledEVector) else ScaledEVector(as_evec(r)) for r in rows]
        vecs, d = common_denominator(items)
        n = dim if dim is not None else (len(items[0]) if items else 0)
    h, piv, _ = echelon(vecs, n)
    g = gcd(content(e for r in h for e in r), d) if h else d
    if g > 1:
        h = [tuple((a // g, b // g) for a, b in r) for r in h]
        d //= g
    if not h:
        d = 1
    return EModule(tuple(h), tuple(piv), d, n)


def module_equal(a: EModule, b: EModule) -> bool:
    return a == b


# ---------------------------------------------------------------------------
# the field Q(w): pairs of Fractions

Q = tuple[Fraction, Fraction]
QZERO: Q = (Fraction(0), Fraction(0))
QONE: Q = (Fraction(1), Fraction(0))


def qmul(x: Q, y: Q) -> Q:
    a, b = x
    c, d = y
    bd = b * d
    return (a * c - bd, a * d + b * c - bd)


def qadd(x: Q, y: Q) -> Q:
    return (x[0] + y[0], x[1] + y[1])


def qsub(x: Q, y: Q) -> Q:
    return (x[0] - y[0], x[1] - y[1])


def qconj(x: Q) -> Q:
    return (x[0] - x[1], -x[1])


def qnorm(x: Q) -> Fraction:
    a, b = x
    return a * a - a * b + b * b


def qinv(x: Q) -> Q:
    n = qnorm(x)
    if n == 0:
        raise ZeroDivisionError("inverse of zero in Q(w)")
    c = qconj(x)
    return (c[0] / n, c[1] / n)


def qreal(x: Q) -> Fraction:
    """Real part of a + b*w."""
    return x[0] - x[1] / 2


def to_qmatrix(m) -> list[list[Q]]:
    if isinstance(m, ScaledEMatrix):
        return m.to_q()
    return [[(Fraction(a), Fraction(b)) for a, b in as_evec(r)] for r in m]


def q_row_reduce(mat: list[list[Q]]) -> tuple[list[list[Q]], list[int], Q]:
    """Reduced row echelon form over Q(w); also returns the determinant factor."""
    A = [list(r) for r in mat]
    m = len(A)
    n = len(A[0]) if A else 0
    r = 0
    det: Q = QONE
    pivots = []
    for c in range(n):
        p = next((i for i in range(r, m) if A[i][c] != QZERO), None)
        if p is None:
            det = QZERO
            continue
        if p != r:
            A[p], A[r] = A[r], A[p]
            det = (-det[0], -det[1])
        det = qmul(det, A[r][c])
        inv = qinv(A[r][c])
        A[r] = [qmul(inv, x) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c] != QZERO:
                f = A[i][c]
                A[i] = [qsub(x, qmul(f, y)) for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots, det


def rank_q(m) -> int:
    A = to_qmatrix(m)
    if not A:
        return 0
    return len(q_row_reduce(A)[1])


def det_q(m) -> Q:
    A = to_qmatrix(m)
    if len(A) != (len(A[0]) if A else 0):
        raise ValueError("determinant of a non-square matrix")
    if not A:
        return QONE
    _, piv, det = q_row_reduce(A)
    return det if len(piv) == len(A) else QZERO


def inverse_q(m) -> list[list[Q]]:
    A = to_qmatrix(m)
    n = len(A)
    aug = [row + [QONE if i == j else QZERO for j in range(n)] for i, row in enumerate(A)]
    R, piv, _ = q_row_reduce(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def qmatmul(A: list[list[Q]], B: list[list[Q]]) -> list[list[Q]]:
    out = []
    for row in A:
        acc = []
        for j in range(len(B[0])):
            s = QZERO
            for k, x in enumerate(row):
                if x != QZERO and B[k][j] != QZERO:
                    s = qadd(s, qmul(x, B[k][j]))
            acc.append(s)
        out.append(acc)
    return out


def solve_left(coeff_rows: list[list[Q]], target: list[Q]) -> list[Q] | None:
    """x with x * coeff_rows = target, or None when inconsistent."""
    m = len(coeff_rows)
    n = len(target)
    # columns of the transposed system
    aug = [[coeff_rows[i][j] for i in range(m)] + [target[j]] for j in range(n)]
    R, piv, _ = q_row_reduce(aug)
    if m in piv:
        return None
    x = [QZERO] * m
    for r, c in enumerate(piv):
        x[c] = R[r][m]
    return x


def hermitian_signature(gram) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a Hermitian matrix, by exact congruence."""
    H = to_qmatrix(gram)
    pos = neg = 0
    n0 = len(H)
    while H:
        n = len(H)
        i = next((k for k in range(n) if H[k][k] != QZERO), None)
        if i is None:
            pair = next(((k, l) for k in range(n) for l in range(n) if H[k][l] != QZERO), None)
            if pair is None:
                break
            k, l = pair
            t = H[k][l]
            tc = qconj(t)
            # e_k <- e_k + t e_l
            H[k] = [qadd(x, qmul(t, y)) for x, y in zip(H[k], H[l])]
            for row in H:
                row[k] = qadd(row[k], qmul(row[l], tc))
            i = k
        d = H[i][i]
        if qreal(d) > 0:
            pos += 1
        else:
            neg += 1
        dinv = qinv(d)
        rest = [k for k in range(n) if k != i]
        H = [[qsub(H[j][k], qmul(qmul(H[j][i], dinv), H[i][k])) for k in rest] for j in rest]
    return pos, neg, n0 - pos - neg


# ---------------------------------------------------------------------------
# quotients of modules

@dataclass(frozen=True)
class QuotientStructure:
    order: int
    invariants: tuple[int, ...]
    omega_trivial: bool
    field: str  # "F3", "F4", "0" or "mixed"
    dimension: int
    representatives: tuple[ScaledEVector, ...]

    @property
    def label(self) -> str:
        if self.field == "0":
            return "0"
        return f"{self.field}^{self.dimension}"


def quotient_structure(A: EModule, B: EModule, list_cosets: bool = True) -> QuotientStructure:
    """Structure of B/A as an abelian group and E-module."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    if not B.contains_module(A):
        raise ValueError("A is not contained in B")
    if A.rank != B.rank:
        raise ValueError("quotient of modules of different rank is infinite")
    k = B.rank
    T = [B.coordinates(v) for v in A.basis_vectors()]
    real = []
    for row in T:
        r0: list[int] = []
        r1: list[int] = []
        for a, b in row:
            r0 += [a, b]
            r1 += [-b, a - b]
        real.append(r0)
        real.append(r1)
    if k == 0:
        inv: tuple[int, ...] = ()
    else:
        facs = invariant_factors(Matrix(real), domain=ZZ)
        inv = tuple(abs(int(f)) for f in facs if abs(int(f)) != 1)
    order = 1
    for f in inv:
        order *= f
    omega_trivial = all(
        A.coordinates(ScaledEVector(vsub(vscale((0, 1), v.entries), v.entries), v.denom)) is not None
        for v in B.basis_vectors()
    )
    if order == 1:
        field, dim = "0", 0
    elif all(f == 3 for f in inv) and omega_trivial:
        field, dim = "F3", len(inv)
    elif all(f == 2 for f in inv) and not omega_trivial and len(inv) % 2 == 0:
        field, dim = "F4", len(inv) // 2
    else:
        field, dim = "mixed", len(inv)
    reps: tuple[ScaledEVector, ...] = ()
    if list_cosets and order <= 5000:
        zero = A.reduce(ScaledEVector(tuple(ZERO for _ in range(A.dim))))
        seen = {zero}
        frontier = [zero]
        gens = [A.reduce(v) for v in B.basis_vectors()]
        gens += [A.reduce(ScaledEVector(vscale((0, 1), v.entries), v.denom)) for v in B.basis_vectors()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    dd = lcm(x.denom, g.denom)
                    y = A.reduce(ScaledEVector(vadd(vint(dd // x.denom, x.entries), vint(dd // g.denom, g.entries)), dd))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(seen) != order:
            raise AssertionError(f"coset enumeration found {len(seen)} cosets, expected {order}")
        reps = tuple(sorted(seen, key=lambda v: (v.denom, v.entries)))
    return QuotientStructure(order, inv, omega_trivial, field, dim, reps)
