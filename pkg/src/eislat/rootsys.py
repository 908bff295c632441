"""Root systems of definite lattices: components and glue-coset minima."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .elinalg import EVec, ScaledEMatrix, ScaledEVector, ZERO, hnf, qconj, qmatmul, rank_q
from .lattice import HermitianLattice, glue_quotient, theta_dual_coords
from .reduction import DEFAULT_ENUM_CAP, roots as enumerate_roots, short_vectors

# (rank, number of roots) -> indecomposable root lattice
COMPONENT_TYPES = {(1, 6): "A2", (2, 24): "D4", (3, 72): "E6", (4, 240): "E8"}


class UnclassifiedComponentError(AssertionError):
    pass


@dataclass(frozen=True)
class RootComponent:
    rank: int
    roots: int
    label: str


def root_components(L: HermitianLattice, roots: Sequence[EVec] | None = None,
                    cap: int | None = DEFAULT_ENUM_CAP) -> list[RootComponent]:
    """Split the roots into classes of the transitive closure of non-orthogonality."""
    R = list(roots) if roots is not None else enumerate_roots(L, cap)
    m = len(R)
    if not m:
        return []
    import numpy as np
    from .groups import _ip_table
    re, om = _ip_table(L, R)
    nz = (re != 0) | (om != 0)
    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in zip(*np.nonzero(np.triu(nz, 1))):
        a, b = find(int(i)), find(int(j))
        if a != b:
            parent[a] = b
    comps: dict[int, list[int]] = {}
    for i in range(m):
        comps.setdefault(find(i), []).append(i)
    out = []
    for members in comps.values():
        rk = rank_q([R[i] for i in members])
        key = (rk, len(members))
        if key not in COMPONENT_TYPES:
            raise UnclassifiedComponentError(f"root component of rank {rk} with {len(members)} roots")
        out.append(RootComponent(rk, len(members), COMPONENT_TYPES[key]))
    out.sort(key=lambda c: (c.rank, c.roots))
    return out


def component_summary(comps: Sequence[RootComponent]) -> str:
    if not comps:
        return "none"
    counts: dict[str, int] = {}
    for c in comps:
        counts[c.label] = counts.get(c.label, 0) + 1
    return " + ".join(f"{k}^{v}" if v > 1 else k for k, v in sorted(counts.items()))


def _coset_key(x: Sequence[tuple[Fraction, Fraction]]) -> tuple:
    return tuple((a - (a.numerator // a.denominator), b - (b.numerator // b.denominator)) for a, b in x)


def coset_min_norms(L: HermitianLattice, start=Fraction(1)) -> dict[tuple, Fraction]:
    """Minimal norm of every nonzero coset of theta L' / L.

    Cosets are keyed by the fractional parts of their lattice coordinates.
    The search enumerates theta L' up to a growing norm bound until every
    coset has been met; all vectors below the bound are seen, so each
    recorded minimum is exact.
    """
    order = glue_quotient(L).order
    if order == 1:
        return {}
    C = theta_dual_coords(L)
    Cq = C.to_q()
    G = L.gram_q
    Cs = [[qconj(x) for x in col] for col in zip(*Cq)]
    D = HermitianLattice(ScaledEMatrix.from_q(qmatmul(qmatmul(Cq, G), Cs)), None, None, "theta dual")
    bound = Fraction(start)
    zero = _coset_key([(Fraction(0), Fraction(0))] * L.rank)
    while True:
        best: dict[tuple, Fraction] = {}
        sv = short_vectors(D, bound)
        for y, nv in zip(sv.vectors, sv.norms):
            x = [(Fraction(0), Fraction(0))] * L.rank
            for yi, row in zip(y, Cq):
                if yi == ZERO:
                    continue
                for j, c in enumerate(row):
                    a, b = yi
                    s = (a * c[0] - b * c[1], a * c[1] + b * c[0] - b * c[1])
                    x[j] = (x[j][0] + s[0], x[j][1] + s[1])
            k = _coset_key(x)
            if k == zero:
                continue
            if k not in best or nv < best[k]:
                best[k] = nv
        if len(best) == order - 1:
            return dict(sorted(best.items()))
        bound *= 2
