"""Hermitian lattices over E.

A lattice is either a set of generators in an ambient space E^N carrying the
diagonal form sum eps_i x_i conj(y_i), or an abstract Gram matrix.  In both
cases the lattice keeps an E-basis and its Gram matrix ``G[i][j] = <b_i, b_j>``;
lattice coordinates are row vectors, so ``<x, y> = x G y*``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Sequence

from .eisenstein import Pair, divisible_by_theta, emul, econj, egcd
from .elinalg import (
    EModule,
    EVec,
    QuotientStructure,
    ScaledEMatrix,
    ScaledEVector,
    ZERO,
    as_evec,
    common_denominator,
    det_q,
    extended_gcd,
    hermitian_ip,
    hermitian_signature,
    hnf,
    inverse_q,
    left_kernel,
    qmatmul,
    qconj,
    quotient_structure,
    rank_q,
    solve_left,
    to_qmatrix,
    vadd,
    vint,
    vscale,
)


class DegenerateLatticeError(ValueError):
    pass


def _as_scaled(v) -> ScaledEVector:
    return v if isinstance(v, ScaledEVector) else ScaledEVector(as_evec(v))


class HermitianLattice:
    """An E-lattice with an explicit E-basis."""

    def __init__(self, gram: ScaledEMatrix, basis: ScaledEMatrix | None = None,
                 signs: Sequence[int] | None = None, name: str = ""):
        self.gram = gram.normalized()
        self.basis = basis.normalized() if basis is not None else None
        self.signs = tuple(signs) if signs is not None else None
        self.name = name
        if self.basis is not None and self.signs is None:
            raise ValueError("an ambient basis needs the signs of the ambient form")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_generators(cls, generators: Sequence, signs: Sequence[int] | None = None,
                        name: str = "") -> HermitianLattice:
        vecs = [_as_scaled(v) for v in generators]
        if not vecs:
            raise ValueError("no generators")
        n = len(vecs[0])
        signs = tuple(signs) if signs is not None else (1,) * n
        module = hnf(vecs, n)
        basis = module.basis
        return cls(gram_of(basis, signs), basis, signs, name)

    @classmethod
    def from_gram(cls, gram, name: str = "") -> HermitianLattice:
        g = gram if isinstance(gram, ScaledEMatrix) else ScaledEMatrix.of(gram)
        return cls(g, None, None, name)

    # -- basic data ----------------------------------------------------------

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<HermitianLattice{label} rank={self.rank}>"

    @property
    def rank(self) -> int:
        return self.gram.nrows

    @property
    def has_ambient(self) -> bool:
        return self.basis is not None

    @cached_property
    def module(self) -> EModule:
        if self.basis is None:
            raise ValueError("abstract lattice has no ambient module")
        return hnf(self.basis, self.basis.ncols)

    @cached_property
    def gram_q(self):
        return self.gram.to_q()

    @cached_property
    def det(self) -> Fraction:
        d = det_q(self.gram)
        if d[1] != 0:
            raise AssertionError("Hermitian determinant is not real")
        return d[0]

    @cached_property
    def signature(self) -> tuple[int, int]:
        p, n, z = hermitian_signature(self.gram)
        if z:
            raise DegenerateLatticeError(f"Gram matrix has a {z}-dimensional radical")
        return p, n

    @property
    def is_definite(self) -> bool:
        p, n = self.signature
        return n == 0

    def ip(self, x, y) -> tuple[Fraction, Fraction]:
        """Inner product of two ambient vectors (lattice must have an ambient space)."""
        xs, ys = _as_scaled(x), _as_scaled(y)
        a, b = hermitian_ip(xs.entries, ys.entries, self.signs)
        d = xs.denom * ys.denom
        return (Fraction(a, d), Fraction(b, d))

    def ip_coords(self, x: Sequence[Pair], y: Sequence[Pair]) -> tuple[Fraction, Fraction]:
        """Inner product of two vectors given by lattice coordinates."""
        G = self.gram.rows
        d = self.gram.denom
        a = b = 0
        for i, xi in enumerate(x):
            if xi == ZERO:
                continue
            for j, yj in enumerate(y):
                if yj == ZERO or G[i][j] == ZERO:
                    continue
                s, t = emul(emul(xi, G[i][j]), econj(yj))
                a += s
                b += t
        return (Fraction(a, d), Fraction(b, d))

    def norm_coords(self, x: Sequence[Pair]) -> Fraction:
        a, b = self.ip_coords(x, x)
        return a - b / 2

    def to_ambient(self, coords: Sequence[Pair]) -> ScaledEVector:
        if self.basis is None:
            raise ValueError("abstract lattice has no ambient space")
        acc = tuple(ZERO for _ in range(self.basis.ncols))
        for c, row in zip(coords, self.basis.rows):
            if c != ZERO:
                acc = vadd(acc, vscale(c, row))
        return ScaledEVector(acc, self.basis.denom).normalized()

    def coordinates(self, v) -> EVec | None:
        """Lattice coordinates of an ambient vector, None when outside the lattice."""
        vs = _as_scaled(v)
        mc = self.module.coordinates(vs)
        if mc is None or self.module.basis == self.basis:
            return mc
        x = solve_left(self.basis.to_q(), vs.to_q())
        if x is None or any(a.denominator != 1 or b.denominator != 1 for a, b in x):
            return None
        return tuple((int(a), int(b)) for a, b in x)

    def __contains__(self, v) -> bool:
        return self.coordinates(v) is not None

    def same_module(self, other: HermitianLattice) -> bool:
        return self.module == other.module

    def contains_lattice(self, other: HermitianLattice) -> bool:
        return self.module.contains_module(other.module)


def gram_of(basis: ScaledEMatrix, signs: Sequence[int]) -> ScaledEMatrix:
    rows = basis.rows
    n = len(rows)
    G = [[hermitian_ip(rows[i], rows[j], signs) for j in range(n)] for i in range(n)]
    return ScaledEMatrix(tuple(tuple(r) for r in G), basis.denom * basis.denom).normalized()


def gram_of_vectors(vectors: Sequence, signs: Sequence[int]) -> ScaledEMatrix:
    vecs, d = common_denominator([_as_scaled(v) for v in vectors])
    return gram_of(ScaledEMatrix(tuple(vecs), d), signs)


def sublattice(L: HermitianLattice, coords: Sequence[Sequence[Pair]], name: str = "") -> HermitianLattice:
    """Sublattice spanned by vectors given in L's coordinates."""
    if L.has_ambient:
        return HermitianLattice.from_generators([L.to_ambient(c) for c in coords], L.signs, name)
    M = hnf([as_evec(c) for c in coords], L.rank)
    if M.denom != 1:
        raise ValueError("coordinates must be integral")
    X = [list(r) for r in M.hnf_rows]
    return HermitianLattice(_transform_gram(L, X), None, None, name)


def _transform_gram(L: HermitianLattice, X: Sequence[Sequence[Pair]]) -> ScaledEMatrix:
    G = L.gram_q
    Xq = to_qmatrix(X)
    Xs = [[qconj(x) for x in col] for col in zip(*Xq)]
    return ScaledEMatrix.from_q(qmatmul(qmatmul(Xq, G), Xs))


# ---------------------------------------------------------------------------
# integrality and duality

@dataclass(frozen=True)
class GramInfo:
    gram: ScaledEMatrix
    in_theta_dual: bool
    theta_unimodular: bool
    det: Fraction


def gram_and_integrality(L: HermitianLattice) -> GramInfo:
    """Gram matrix together with the flags L <= theta L' and L = theta L'."""
    det = L.det
    if det == 0:
        raise DegenerateLatticeError("degenerate Gram matrix")
    g = L.gram
    inside = g.denom == 1 and all(divisible_by_theta(x) for r in g.rows for x in r)
    unimod = inside and det * det == 3 ** L.rank
    return GramInfo(g, inside, unimod, det)


def theta_dual(L: HermitianLattice) -> HermitianLattice:
    """theta * L' : all v with <v, l> in thetaE for every l in L."""
    if L.det == 0:
        raise DegenerateLatticeError("dual of a degenerate lattice")
    Ginv = inverse_q(L.gram)
    theta = (Fraction(1), Fraction(2))
    from .elinalg import qmul
    C = [[qmul(theta, x) for x in row] for row in Ginv]  # coordinates of theta*b*_k
    if L.has_ambient:
        B = L.basis.to_q()
        amb = qmatmul(C, B)
        basis = ScaledEMatrix.from_q(amb)
        return HermitianLattice.from_generators([basis.row(i) for i in range(basis.nrows)], L.signs,
                                                name=f"theta({L.name})'")
    gram = ScaledEMatrix.from_q([[(3 * a, 3 * b) for a, b in row] for row in Ginv])
    return HermitianLattice(gram, None, None, f"theta({L.name})'")


def theta_dual_coords(L: HermitianLattice) -> ScaledEMatrix:
    """Basis of theta L' written in L's coordinates."""
    Ginv = inverse_q(L.gram)
    from .elinalg import qmul
    theta = (Fraction(1), Fraction(2))
    return ScaledEMatrix.from_q([[qmul(theta, x) for x in row] for row in Ginv])


def glue_quotient(L: HermitianLattice) -> QuotientStructure:
    """Structure of theta L' / L (requires L <= theta L')."""
    n = L.rank
    ident = hnf([tuple((1, 0) if i == j else ZERO for j in range(n)) for i in range(n)], n)
    D = hnf(theta_dual_coords(L), n)
    return quotient_structure(ident, D)


class IntegralityError(ValueError):
    pass


def real_gram(L: HermitianLattice, scaled: bool = False):
    """Z-Gram matrix 2Re<x, y> on the basis b_1, w b_1, b_2, w b_2, ...

    For L <= theta L' the entries are integers in 3Z.  With ``scaled=True``
    the matrix is divided by 3, giving the even form (2/3)Re<x, y>.
    """
    info_ok = L.gram.denom == 1 and all(divisible_by_theta(x) for r in L.gram.rows for x in r)
    if not info_ok:
        for i, r in enumerate(L.gram.rows):
            for j, x in enumerate(r):
                if L.gram.denom != 1 or not divisible_by_theta(x):
                    raise IntegralityError(f"<b_{i}, b_{j}> = {x}/{L.gram.denom} is not in thetaE")
    Q, d = real_form(L.gram)
    if scaled:
        Q = [[x // 3 for x in row] for row in Q]
    return Q


def real_form(gram: ScaledEMatrix) -> tuple[list[list[int]], int]:
    """(Q, d) with Q/d the matrix of 2Re<,> on the Z-basis {b_i, w b_i}."""
    G = gram.rows
    n = len(G)
    Q = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            g = G[i][j]
            wg = emul((0, 1), g)  # <w b_i, b_j>
            gw = emul(g, (-1, -1))  # <b_i, w b_j> = conj(w) g
            Q[2 * i][2 * j] = 2 * g[0] - g[1]
            Q[2 * i + 1][2 * j] = 2 * wg[0] - wg[1]
            Q[2 * i][2 * j + 1] = 2 * gw[0] - gw[1]
            Q[2 * i + 1][2 * j + 1] = 2 * g[0] - g[1]
    return Q, gram.denom


# ---------------------------------------------------------------------------
# orthogonal complements and null vectors

def orth_complement(L: HermitianLattice, S: Sequence, coords: bool = False,
                    name: str = "") -> HermitianLattice | None:
    """The saturated sublattice {v in L : <v, s> = 0 for all s in S}.

    S holds ambient vectors, or lattice coordinates when ``coords`` is set.
    Returns None for the zero lattice.
    """
    n = L.rank
    if not S:
        return L
    cols: list[list[tuple[Fraction, Fraction]]] = []
    for s in S:
        if coords:
            col = [L.ip_coords(tuple((1, 0) if k == i else ZERO for k in range(n)), as_evec(s))
                   for i in range(n)]
        else:
            col = [L.ip(L.basis.row(i), s) for i in range(n)]
        cols.append(col)
    d = 1
    for col in cols:
        for a, b in col:
            d = lcm(d, a.denominator, b.denominator)
    K = [tuple((int(cols[k][i][0] * d), int(cols[k][i][1] * d)) for k in range(len(cols))) for i in range(n)]
    ker = left_kernel(K, len(cols))
    if not ker:
        return None
    return sublattice(L, ker, name)


def is_primitive(L: HermitianLattice, coords: Sequence[Pair]) -> bool:
    g = (0, 0)
    for c in coords:
        g = egcd(g, c) if g != (0, 0) else c
    return g != (0, 0) and (g[0] * g[0] - g[0] * g[1] + g[1] * g[1]) == 1


@dataclass
class NullSplit:
    rho: EVec  # lattice coordinates
    w: EVec  # lattice coordinates, <rho, w> = theta and |w|^2 = 0
    hyperbolic_gram: tuple[tuple[Pair, Pair], tuple[Pair, Pair]]
    complement: HermitianLattice


class NullVectorError(ValueError):
    pass


def split_null(L: HermitianLattice, rho, coords: bool = False) -> NullSplit:
    """Split off a hyperbolic plane <rho, w> from L = theta L'.

    Returns w with <rho, w> = theta, |w|^2 = 0 and the orthogonal complement of
    <rho, w>, which maps isometrically onto rho^perp / <rho>.
    """
    info = gram_and_integrality(L)
    if not info.theta_unimodular:
        raise NullVectorError("split_null needs L = theta L'")
    c = as_evec(rho) if coords else L.coordinates(rho)
    if c is None:
        raise NullVectorError("rho is not in the lattice")
    if L.norm_coords(c) != 0:
        raise NullVectorError("rho is not a null vector")
    if not is_primitive(L, c):
        raise NullVectorError("rho is not primitive")
    n = L.rank
    e = [tuple((1, 0) if k == i else ZERO for k in range(n)) for i in range(n)]
    # g_j = <rho, b_j>
    g = []
    for j in range(n):
        a, b = L.ip_coords(c, e[j])
        g.append((int(a), int(b)))
    gg, y = extended_gcd(g)
    # sum y_j g_j = gg; want sum g_j conj(x_j) = theta
    from .eisenstein import exact_quotient
    f = exact_quotient((1, 2), gg)
    if f is None:
        raise NullVectorError("no vector has inner product theta with rho")
    x = tuple(econj(emul(yj, f)) for yj in y)
    ipw = L.ip_coords(c, x)
    assert ipw == (1, 2), ipw
    k = L.norm_coords(x)
    if k % 3:
        raise AssertionError("norm of w not divisible by 3")
    shift = (0, int(k // 3))  # w + (k/3) w rho
    w = vadd(x, vscale(shift, c))
    assert L.norm_coords(w) == 0 and L.ip_coords(c, w) == (1, 2)
    comp = orth_complement(L, [c, w], coords=True, name=f"complement of null vector")
    hyper = (((0, 0), (1, 2)), ((-1, -2), (0, 0)))
    return NullSplit(c, w, hyper, comp)


# ---------------------------------------------------------------------------
# gluing

@dataclass(frozen=True)
class GlueDatum:
    component: HermitianLattice
    copies: int
    code_generators: tuple[tuple[int, ...], ...]
    field: str
    representatives: dict  # field symbol -> ScaledEVector in theta L0'

    def check(self) -> None:
        L0 = self.component
        D = theta_dual(L0)
        zero = ScaledEVector(tuple(ZERO for _ in range(L0.basis.ncols)))
        if self.representatives.get(0, zero).entries != zero.entries and \
                self.representatives[0] not in L0:
            raise ValueError("representative of 0 must lie in L0")
        for s, v in self.representatives.items():
            if v not in D:
                raise ValueError(f"representative of {s} is not in theta L0'")
        base = self.representatives.get(1)
        if base is None:
            raise ValueError("representative of 1 missing")
        q = 3 if self.field == "F3" else 4
        for s in range(q):
            v = self.representatives.get(s)
            if v is None:
                raise ValueError(f"representative of symbol {s} missing")
            expected = _symbol_multiple(self.field, s, base)
            diff = ScaledEVector(*_diff(v, expected))
            if diff not in L0:
                raise ValueError(f"representative of {s} is in the wrong residue class")


def _symbol_multiple(field: str, s: int, v: ScaledEVector) -> ScaledEVector:
    if field == "F3":
        k = {0: 0, 1: 1, 2: -1}[s]
        return ScaledEVector(vint(k, v.entries), v.denom)
    scal = {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (-1, -1)}[s]
    return ScaledEVector(vscale(scal, v.entries), v.denom)


def _diff(x: ScaledEVector, y: ScaledEVector) -> tuple[EVec, int]:
    d = lcm(x.denom, y.denom)
    a = vint(d // x.denom, x.entries)
    b = vint(d // y.denom, y.entries)
    return tuple((p[0] - q[0], p[1] - q[1]) for p, q in zip(a, b)), d


def direct_sum(parts: Sequence[HermitianLattice], name: str = "") -> HermitianLattice:
    gens = []
    total = sum(p.basis.ncols for p in parts)
    signs: list[int] = []
    offset = 0
    for p in parts:
        m = p.basis.ncols
        for i in range(p.rank):
            v = p.basis.row(i)
            ent = tuple(ZERO for _ in range(offset)) + v.entries + tuple(ZERO for _ in range(total - offset - m))
            gens.append(ScaledEVector(ent, v.denom))
        signs += list(p.signs)
        offset += m
    return HermitianLattice.from_generators(gens, signs, name)


def glue(datum: GlueDatum, name: str = "") -> HermitianLattice:
    """L0^n together with the lifts of the code generators."""
    datum.check()
    L0 = datum.component
    n = datum.copies
    m = L0.basis.ncols
    base = direct_sum([L0] * n)
    gens = [base.basis.row(i) for i in range(base.rank)]
    for word in datum.code_generators:
        if len(word) != n:
            raise ValueError("code length does not match the number of copies")
        parts = [datum.representatives[s] for s in word]
        d = 1
        for p in parts:
            d = lcm(d, p.denom)
        ent: tuple = ()
        for p in parts:
            ent += vint(d // p.denom, p.entries)
        gens.append(ScaledEVector(ent, d))
    return HermitianLattice.from_generators(gens, base.signs, name or f"glued {L0.name}^{n}")
