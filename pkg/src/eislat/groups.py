"""Triflections, finite matrix groups over E and automorphisms of definite lattices.

Matrices act on row vectors from the right (``x -> x M``).  For batch work a
matrix over E is a numpy int64 array of shape (n, n, 2) holding the
coefficients of 1 and w, together with one positive denominator.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .eisenstein import INT_LIMIT, EisensteinOverflowError, Pair, econj, emul
from .elinalg import (
    EVec,
    ScaledEMatrix,
    ScaledEVector,
    ZERO,
    as_evec,
    hermitian_ip,
    hnf,
    qconj,
    qmatmul,
    qmul,
)
from .lattice import HermitianLattice

DEFAULT_CLOSURE_CAP = 200_000

# (w - 1) as a + b w
_W_MINUS_1 = (-1, 1)


class NotARootError(ValueError):
    pass


class ClosureCapExceeded(RuntimeError):
    def __init__(self, cap: int, partial: int):
        super().__init__(f"group closure exceeded the cap of {cap} elements ({partial} found)")
        self.cap = cap
        self.partial = partial


# ---------------------------------------------------------------------------
# triflections

def triflection(r, signs: Sequence[int] | None = None) -> ScaledEMatrix:
    """Matrix of x -> x + (w - 1) <x, r>/3 r on the ambient space.

    Row convention: entry (i, j) is delta_ij + (w - 1)/3 * eps_i conj(r_i) r_j.
    """
    rv = r if isinstance(r, ScaledEVector) else ScaledEVector(as_evec(r))
    n = len(rv)
    signs = tuple(signs) if signs is not None else (1,) * n
    d = rv.denom
    nr = hermitian_ip(rv.entries, rv.entries, signs)
    if nr != (3 * d * d, 0):
        raise NotARootError(f"triflection needs a vector of norm 3, got {nr}/{d * d}")
    D = 3 * d * d
    rows = []
    for i in range(n):
        ci = econj(rv.entries[i])
        if signs[i] < 0:
            ci = (-ci[0], -ci[1])
        wc = emul(_W_MINUS_1, ci)
        row = []
        for j in range(n):
            s, t = emul(wc, rv.entries[j])
            if i == j:
                s += D
            row.append((s, t))
        rows.append(tuple(row))
    return ScaledEMatrix(tuple(rows), D).normalized()


def triflection_coords(L: HermitianLattice, c: Sequence) -> ScaledEMatrix:
    """Triflection in the root with lattice coordinates c, on lattice coordinates.

    Entry (i, j) is delta_ij + (w - 1)/3 * <b_i, r> c_j.
    """
    cv = as_evec(c)
    if L.norm_coords(cv) != 3:
        raise NotARootError("triflection needs a vector of norm 3")
    n = L.rank
    e = [tuple((1, 0) if k == i else ZERO for k in range(n)) for i in range(n)]
    wm1 = (Fraction(-1), Fraction(1))
    rows = []
    for i in range(n):
        ip = L.ip_coords(e[i], cv)
        f = qmul(wm1, ip)
        f = (f[0] / 3, f[1] / 3)
        row = []
        for j in range(n):
            x = qmul(f, (Fraction(cv[j][0]), Fraction(cv[j][1])))
            if i == j:
                x = (x[0] + 1, x[1])
            row.append(x)
        rows.append(row)
    return ScaledEMatrix.from_q(rows)


# ---------------------------------------------------------------------------
# dense matrix helpers

def to_array(M: ScaledEMatrix) -> np.ndarray:
    return np.array([[list(x) for x in row] for row in M.rows], dtype=np.int64)


def from_array(A: np.ndarray, denom: int = 1) -> ScaledEMatrix:
    rows = tuple(tuple((int(A[i, j, 0]), int(A[i, j, 1])) for j in range(A.shape[1])) for i in range(A.shape[0]))
    return ScaledEMatrix(rows, denom).normalized()


def _guard(*arrays: np.ndarray, n: int) -> None:
    m = 1
    for a in arrays:
        m *= int(np.abs(a).max()) if a.size else 0
    if 3 * n * m >= INT_LIMIT:
        raise EisensteinOverflowError("matrix product could exceed the 62-bit limit")


def emat_mul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of (batched) E-matrices stored as (..., n, n, 2) integer arrays."""
    n = A.shape[-2]
    _guard(A, B, n=n)
    a0, a1 = A[..., 0], A[..., 1]
    b0, b1 = B[..., 0], B[..., 1]
    p11 = a1 @ b1
    re = a0 @ b0 - p11
    om = a0 @ b1 + a1 @ b0 - p11
    return np.stack([re, om], axis=-1)


def matmul(A: ScaledEMatrix, B: ScaledEMatrix) -> ScaledEMatrix:
    return from_array(emat_mul(to_array(A), to_array(B)), A.denom * B.denom)


def identity(n: int) -> ScaledEMatrix:
    return ScaledEMatrix(tuple(tuple((1, 0) if i == j else ZERO for j in range(n)) for i in range(n)))


def matpow(A: ScaledEMatrix, k: int) -> ScaledEMatrix:
    out = identity(A.nrows)
    for _ in range(k):
        out = matmul(out, A)
    return out


def apply(v: Sequence, M: ScaledEMatrix) -> ScaledEVector:
    """Row vector times matrix."""
    vv = v if isinstance(v, ScaledEVector) else ScaledEVector(as_evec(v))
    n = M.ncols
    out = []
    for j in range(n):
        a = b = 0
        for i, x in enumerate(vv.entries):
            if x != ZERO:
                s, t = emul(x, M.rows[i][j])
                a += s
                b += t
        out.append((a, b))
    return ScaledEVector(tuple(out), vv.denom * M.denom).normalized()


def inverse(M: ScaledEMatrix) -> ScaledEMatrix:
    from .elinalg import inverse_q
    return ScaledEMatrix.from_q(inverse_q(M))


def preserves_gram(M: ScaledEMatrix, gram: ScaledEMatrix) -> bool:
    """M G M* == G."""
    Mq = M.to_q()
    Ms = [[qconj(x) for x in col] for col in zip(*Mq)]
    return qmatmul(qmatmul(Mq, gram.to_q()), Ms) == gram.to_q()


def braid(A: ScaledEMatrix, B: ScaledEMatrix) -> bool:
    return matmul(matmul(A, B), A) == matmul(matmul(B, A), B)


def commute(A: ScaledEMatrix, B: ScaledEMatrix) -> bool:
    return matmul(A, B) == matmul(B, A)


# ---------------------------------------------------------------------------
# closure

@dataclass
class MatrixGroup:
    """Elements of a finite matrix group, stored as numerators over one denominator."""

    elements: np.ndarray  # (order, n, n, 2)
    denom: int
    _index: set = field(default_factory=set, repr=False)

    @property
    def order(self) -> int:
        return int(self.elements.shape[0])

    def _key(self, M: ScaledEMatrix) -> bytes | None:
        if self.denom % M.denom:
            return None
        A = to_array(M) * (self.denom // M.denom)
        return np.ascontiguousarray(A).tobytes()

    def __contains__(self, M: ScaledEMatrix) -> bool:
        k = self._key(M.normalized())
        return k is not None and k in self._index


def closure_group(gens: Sequence[ScaledEMatrix], cap: int = DEFAULT_CLOSURE_CAP,
                  dim: int | None = None) -> MatrixGroup:
    """Breadth-first closure of the generators under right multiplication."""
    if not gens:
        if dim is None:
            raise ValueError("dimension needed for the trivial group")
        I = to_array(identity(dim))
        return MatrixGroup(I[None], 1, {np.ascontiguousarray(I).tobytes()})
    n = gens[0].nrows
    D = 1
    for g in gens:
        D = lcm(D, g.denom)
    G = [to_array(g) * (D // g.denom) for g in gens]
    I = to_array(identity(n)) * D
    seen = {I.tobytes()}
    elements = [I[None]]
    frontier = I[None]
    while frontier.shape[0]:
        fresh = []
        for g in G:
            prod = emat_mul(frontier, g)
            if D != 1:
                if np.any(prod % D):
                    raise ValueError("group elements leave the common denominator")
                prod //= D
            flat = np.ascontiguousarray(prod).reshape(prod.shape[0], -1)
            for k in range(prod.shape[0]):
                key = flat[k].tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(prod[k])
                    if len(seen) > cap:
                        raise ClosureCapExceeded(cap, len(seen))
        if not fresh:
            break
        frontier = np.stack(fresh)
        elements.append(frontier)
    return MatrixGroup(np.concatenate(elements), D, seen)


def unit_scalar_classes(vectors: Sequence[EVec]) -> list[EVec]:
    from .reduction import unit_classes
    return unit_classes(vectors)


def root_triflections(L: HermitianLattice, roots: Sequence[EVec]) -> list[ScaledEMatrix]:
    """One triflection per unit-scalar class of roots (lattice coordinates)."""
    return [triflection_coords(L, c) for c in unit_scalar_classes(roots)]


# ---------------------------------------------------------------------------
# automorphisms of definite lattices

class NotSpannedError(ValueError):
    pass


def _ip_table(L: HermitianLattice, S: Sequence[EVec]) -> tuple[np.ndarray, np.ndarray]:
    """Integer arrays (re, w) with <s_i, s_j> = (re + w*w)/denom."""
    X = np.array([[list(c) for c in v] for v in S], dtype=np.int64)  # (m, n, 2)
    G = to_array(L.gram)  # numerators
    # <x, y> = x G y*
    XG = emat_mul(X[:, None, :, :], G[None])[:, 0]  # (m, n, 2)
    Yc = np.stack([X[..., 0] - X[..., 1], -X[..., 1]], axis=-1)  # conj
    a0, a1 = XG[..., 0], XG[..., 1]
    b0, b1 = Yc[..., 0], Yc[..., 1]
    p11 = a1 @ b1.T
    re = a0 @ b0.T - p11
    om = a0 @ b1.T + a1 @ b0.T - p11
    return re, om


def aut_order_definite(L: HermitianLattice, norm=None, vectors: Sequence[EVec] | None = None) -> int:
    """Order of the group of E-linear isometries of a definite lattice.

    The lattice must be spanned by its vectors of the given norm (roots by
    default).  A spanning subset of these vectors is fixed; every isometry is
    determined by their images, which are searched by backtracking with
    Gram-matrix pruning.
    """
    from .reduction import enumerate_short
    if not L.is_definite:
        raise ValueError("automorphism search needs a definite lattice")
    nv = Fraction(3) if norm is None else Fraction(norm)
    S = list(vectors) if vectors is not None else enumerate_short(L, nv)
    S.sort()
    n = L.rank
    full = hnf([tuple((1, 0) if k == i else ZERO for k in range(n)) for i in range(n)], n)
    if not S or hnf(S, n) != full:
        raise NotSpannedError(f"lattice is not spanned by its vectors of norm {nv}")
    # greedy spanning subset
    chosen: list[int] = []
    for i, s in enumerate(S):
        cur = hnf([S[j] for j in chosen] + [s], n)
        prev = hnf([S[j] for j in chosen], n) if chosen else None
        if prev is None or cur != prev:
            chosen.append(i)
            if cur == full:
                break
    re, om = _ip_table(L, S)
    target_re = re[np.ix_(chosen, chosen)]
    target_om = om[np.ix_(chosen, chosen)]
    m = len(S)
    k = len(chosen)
    diag_ok = (re[np.arange(m), np.arange(m)] == target_re[0, 0]) & (om[np.arange(m), np.arange(m)] == target_om[0, 0])
    count = 0
    images: list[int] = []

    def extend(level: int, mask: np.ndarray) -> None:
        nonlocal count
        if level == k:
            count += 1
            return
        for j in np.flatnonzero(mask):
            images.append(int(j))
            if level + 1 < k:
                nxt = diag_ok.copy()
                for l, img in enumerate(images):
                    nxt &= (re[:, img] == target_re[level + 1, l]) & (om[:, img] == target_om[level + 1, l])
                extend(level + 1, nxt)
            else:
                extend(level + 1, mask)
            images.pop()

    extend(0, diag_ok.copy())
    return count
