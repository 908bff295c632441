"""The indecomposable Eisenstein root lattices, the glued Niemeier lattices,
the Leech lattice inside L13,1 and the classification of null vectors."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .codes import GOLAY_ROWS, HEXACODE_ROWS, TETRACODE_ROWS
from .eisenstein import Pair
from .elinalg import EVec, ScaledEVector, ZERO, hnf, vscale
from .groups import aut_order_definite, closure_group, root_triflections
from .lattice import (
    GlueDatum,
    HermitianLattice,
    direct_sum,
    glue,
    glue_quotient,
    gram_and_integrality,
    split_null,
    theta_dual,
)
from .model import L131Model, build_model, mv
from .reduction import DEFAULT_ENUM_CAP, min_norm, roots as enumerate_roots
from .report import VerificationRecord, check
from .rootsys import RootComponent, component_summary, coset_min_norms, root_components

TH: Pair = (1, 2)
TH_BAR: Pair = (-1, -2)


class RootLatticeKind(enum.Enum):
    A2 = "A2"
    D4 = "D4"
    E6 = "E6"
    E8 = "E8"


def _e(n: int, i: int, z: Pair = TH) -> EVec:
    return tuple(z if k == i else ZERO for k in range(n))


def root_lattice(kind: RootLatticeKind | str) -> HermitianLattice:
    """A2 = theta E; D4 = {(x, x, y) : x = y mod theta}; E6 = {(x, y, z) : x = y = z mod theta};
    E8 = vectors of E^4 reducing mod theta into the tetracode."""
    k = RootLatticeKind(kind)
    if k is RootLatticeKind.A2:
        gens = [(TH,)]
    elif k is RootLatticeKind.D4:
        gens = [((1, 0), (1, 0), (1, 0)), (ZERO, ZERO, TH), (TH, TH, ZERO)]
    elif k is RootLatticeKind.E6:
        gens = [((1, 0),) * 3] + [_e(3, i) for i in range(3)]
    else:
        lifts = [tuple((c if c < 2 else -1, 0) for c in row) for row in TETRACODE_ROWS]
        gens = lifts + [_e(4, i) for i in range(4)]
    return HermitianLattice.from_generators(gens, name=k.value)


@dataclass(frozen=True)
class RootLatticeRecord:
    kind: RootLatticeKind
    roots: int
    reflection_order: int
    aut_order: int
    glue: str
    coset_min_norm: Fraction | None

    def as_tuple(self) -> tuple:
        return (self.roots, self.reflection_order, self.aut_order, self.glue, self.coset_min_norm)


ROOT_LATTICE_EXPECTED = {
    RootLatticeKind.A2: RootLatticeRecord(RootLatticeKind.A2, 6, 3, 6, "F3^1", Fraction(1)),
    RootLatticeKind.D4: RootLatticeRecord(RootLatticeKind.D4, 24, 24, 72, "F4^1", Fraction(3, 2)),
    RootLatticeKind.E6: RootLatticeRecord(RootLatticeKind.E6, 72, 648, 1296, "F3^1", Fraction(2)),
    RootLatticeKind.E8: RootLatticeRecord(RootLatticeKind.E8, 240, 155520, 155520, "0", None),
}
ROOT_LATTICE_COLUMNS = ("roots", "reflection group order", "automorphism group order", "glue group",
                  "coset minimal norm")


def root_lattice_record(kind: RootLatticeKind | str, cap: int = 200_000) -> RootLatticeRecord:
    k = RootLatticeKind(kind)
    L = root_lattice(k)
    R = enumerate_roots(L)
    refl = closure_group(root_triflections(L, R), cap=cap).order
    aut = aut_order_definite(L, vectors=R)
    q = glue_quotient(L)
    mins = set(coset_min_norms(L).values())
    if len(mins) > 1:
        raise AssertionError(f"{k.value}: nonzero glue cosets have different minimal norms {sorted(mins)}")
    return RootLatticeRecord(k, len(R), refl, aut, q.label, mins.pop() if mins else None)


def verify_root_lattice(kind: RootLatticeKind | str, cap: int = 200_000) -> RootLatticeRecord:
    """Compute a row and fail naming the first column that differs from the expected row."""
    k = RootLatticeKind(kind)
    got = root_lattice_record(k, cap)
    for col, e, a in zip(ROOT_LATTICE_COLUMNS, ROOT_LATTICE_EXPECTED[k].as_tuple(), got.as_tuple()):
        if e != a:
            raise AssertionError(f"{k.value}: {col} is {a}, expected {e}")
    return got


def root_lattice_checks(kind: RootLatticeKind | str, cap: int = 200_000) -> list[VerificationRecord]:
    k = RootLatticeKind(kind)
    L = root_lattice(k)
    anc = f"indecomposable Eisenstein root lattice {k.value}"
    info = gram_and_integrality(L)
    R = enumerate_roots(L)
    pre = f"root_lattice.{k.value}"
    out = [
        check(f"{pre}.integral", "L lies in theta L'", True, info.in_theta_dual, anc),
        check(f"{pre}.root_span", "L is spanned by its roots", True, hnf(R, L.rank) == hnf(
            [tuple((1, 0) if j == i else ZERO for j in range(L.rank)) for i in range(L.rank)], L.rank), anc),
    ]
    got = root_lattice_record(k, cap)
    for col, e, a in zip(ROOT_LATTICE_COLUMNS, ROOT_LATTICE_EXPECTED[k].as_tuple(), got.as_tuple()):
        out.append(check(f"{pre}.{col.replace(' ', '_')}", col, e if e is not None else "none",
                         a if a is not None else "none", anc))
    return out


# ---------------------------------------------------------------------------
# Niemeier lattices

NIEMEIER_KINDS = ("A2^12", "D4^6", "E6^4", "E8^3")
NIEMEIER_ROOTS = {"A2^12": 72, "D4^6": 144, "E6^4": 288, "E8^3": 720}


def glue_datum(kind: str) -> GlueDatum | None:
    """Component, code and coset representatives for a glued lattice (None for E8^3)."""
    if kind == "A2^12":
        L0 = root_lattice("A2")
        one = ScaledEVector(((1, 0),))
        reps = {0: ScaledEVector((ZERO,)), 1: one, 2: ScaledEVector(((-1, 0),))}
        return GlueDatum(L0, 12, GOLAY_ROWS, "F3", reps)
    if kind == "D4^6":
        L0 = root_lattice("D4")
        v = ScaledEVector((TH, TH, ZERO), 2)
        reps = {0: ScaledEVector((ZERO,) * 3), 1: v,
                2: ScaledEVector(vscale((0, 1), v.entries), 2),
                3: ScaledEVector(vscale((-1, -1), v.entries), 2)}
        return GlueDatum(L0, 6, HEXACODE_ROWS, "F4", reps)
    if kind == "E6^4":
        L0 = root_lattice("E6")
        v = ScaledEVector(((1, 0), (-1, 0), ZERO))
        reps = {0: ScaledEVector((ZERO,) * 3), 1: v, 2: ScaledEVector(((-1, 0), (1, 0), ZERO))}
        return GlueDatum(L0, 4, TETRACODE_ROWS, "F3", reps)
    if kind == "E8^3":
        return None
    raise ValueError(f"unknown Niemeier kind {kind!r}")


def niemeier(kind: str) -> HermitianLattice:
    datum = glue_datum(kind)
    if datum is None:
        return direct_sum([root_lattice("E8")] * 3, "E8^3")
    return glue(datum, kind)


def niemeier_checks(kind: str, cap: int | None = DEFAULT_ENUM_CAP) -> list[VerificationRecord]:
    anc = f"Eisenstein Niemeier lattice {kind} glued along its code"
    L = niemeier(kind)
    info = gram_and_integrality(L)
    R = enumerate_roots(L, cap)
    pre = f"niemeier.{kind}"
    datum = glue_datum(kind)
    out = [
        check(f"{pre}.rank", "rank", 12, L.rank, anc),
        check(f"{pre}.theta_unimodular", "L = theta L'", True, info.theta_unimodular, anc),
        check(f"{pre}.det", "absolute determinant", 3 ** 6, abs(info.det), anc),
        check(f"{pre}.roots", "number of roots", NIEMEIER_ROOTS[kind], len(R), anc),
    ]
    if datum is not None:
        base = direct_sum([datum.component] * datum.copies)
        out.append(check(f"{pre}.roots_in_base", "roots lying in the unglued sum", len(R),
                         sum(L.to_ambient(r) in base for r in R), anc))
        comp_min = min(coset_min_norms(datum.component).values())
        out.append(check(f"{pre}.representative_norm", "glue representative of 1 has the minimal coset norm",
                         comp_min, min_norm_rep(datum.representatives[1], datum.component), anc))
    comps = root_components(L, R)
    out.append(check(f"{pre}.components", "root system", kind, component_summary(comps), anc))
    return out


def min_norm_rep(v: ScaledEVector, L0: HermitianLattice) -> Fraction:
    from .elinalg import hermitian_ip
    a, _ = hermitian_ip(v.entries, v.entries, L0.signs)
    return Fraction(a, v.denom * v.denom)


# ---------------------------------------------------------------------------
# null vectors of L13,1

class NullType(enum.Enum):
    A2 = "A2 type"
    D4 = "D4 type"
    E6 = "E6 type"
    E8 = "E8 type"
    LEECH = "Leech type"


NULL_TYPES = {"A2^12": NullType.A2, "D4^6": NullType.D4, "E6^4": NullType.E6, "E8^3": NullType.E8,
              "none": NullType.LEECH}


class UnrecognizedNullTypeError(ValueError):
    pass


@dataclass
class NullClassification:
    kind: NullType
    complement: HermitianLattice
    roots: int
    components: list[RootComponent]


def null_complement(rho: Sequence[Pair], model: L131Model | None = None) -> HermitianLattice:
    M = model or build_model()
    return split_null(M.lattice, tuple(rho)).complement


def classify_null(rho: Sequence[Pair], model: L131Model | None = None,
                  cap: int | None = DEFAULT_ENUM_CAP) -> NullClassification:
    """Type of a primitive null vector of L13,1, read off from the roots of rho-perp / rho."""
    K = null_complement(rho, model)
    R = enumerate_roots(K, cap)
    comps = root_components(K, R)
    label = component_summary(comps)
    if label not in NULL_TYPES:
        raise UnrecognizedNullTypeError(f"root system {label} of the null vector quotient")
    return NullClassification(NULL_TYPES[label], K, len(R), comps)


def sample_null_vectors(model: L131Model | None = None) -> dict[str, tuple[EVec, NullType]]:
    """The five sample null vectors with the types they are expected to have."""
    M = model or build_model()
    P = M.plane
    tri = P.triangles()[0]
    vert = set(tri)
    lines = [P.line_through(tri[0], tri[1]), P.line_through(tri[1], tri[2]), P.line_through(tri[0], tri[2])]
    on = set().union(*(P.line_points[l] for l in lines))
    quad = next(P.general_position_quadruples())
    return {
        "(-4-w; 1^13)": (M.rho, NullType.LEECH),
        "(theta; theta, 0^12)": (mv(TH, {0: TH}), NullType.E6),
        "(theta; thetabar, 0^12)": (mv(TH, {0: TH_BAR}), NullType.A2),
        "(3+w; 1^4, -1^3, 0^6)": (mv((3, 1), {p: (-1, 0) if p in vert else ZERO if p in on else (1, 0)
                                               for p in range(13)}), NullType.D4),
        "(2 theta; theta^4, 0^9)": (mv((2, 4), {p: TH for p in quad}), NullType.E8),
    }


def null_type_checks(model: L131Model | None = None, cap: int | None = DEFAULT_ENUM_CAP,
                     progress=None, spot_checks: int = 6) -> list[VerificationRecord]:
    M = model or build_model()
    anc = "null vectors of L13,1 and the Niemeier lattice of their quotient"
    out = []
    for name, (v, expected) in sample_null_vectors(M).items():
        if progress:
            progress(f"classifying null vector {name}")
        ok = v in M.lattice and sum(x[0] * x[0] - x[0] * x[1] + x[1] * x[1] for x in v[1:]) == \
            v[0][0] ** 2 - v[0][0] * v[0][1] + v[0][1] ** 2
        out.append(check(f"null.{name}.null", f"{name} is a null vector of L", True, ok, anc))
        cl = classify_null(v, M, cap)
        out.append(check(f"null.{name}.type", f"type of {name}", expected.value, cl.kind.value, anc))
    # the E8 type must not depend on which four points in general position carry theta
    quads = list(M.plane.general_position_quadruples())
    sample = quads[::len(quads) // spot_checks][:spot_checks] if spot_checks else []
    if progress and sample:
        progress(f"classifying {len(sample)} further E8-type placements")
    kinds = [classify_null(mv((2, 4), {p: TH for p in q}), M, cap).kind.value for q in sample]
    out.append(check("null.E8.placements", "types over sampled general-position quadruples",
                     (NullType.E8.value,) * len(sample), tuple(kinds), anc))
    return out


def leech_from_l131(model: L131Model | None = None) -> HermitianLattice:
    """rho-perp / rho for rho = (-4-w; 1^13); fails if it has roots."""
    M = model or build_model()
    K = null_complement(M.rho, M)
    if enumerate_roots(K):
        raise AssertionError("the quotient has roots, so rho is not of Leech type")
    return K


def leech_checks(model: L131Model | None = None) -> list[VerificationRecord]:
    M = model or build_model()
    anc = "rho = (-4-w; 1^13) has Leech type"
    K = null_complement(M.rho, M)
    info = gram_and_integrality(K)
    nmin, _ = min_norm(K)
    return [
        check("leech.rank", "rank of rho-perp / rho", 12, K.rank, anc),
        check("leech.definite", "signature", (12, 0), K.signature, anc),
        check("leech.theta_unimodular", "L = theta L'", True, info.theta_unimodular, anc),
        check("leech.roots", "number of roots", 0, len(enumerate_roots(K)), anc),
        check("leech.min_norm", "minimal norm", 6, nmin, anc),
    ]


def theta_dual_equal(L: HermitianLattice) -> bool:
    return theta_dual(L).same_module(L)
