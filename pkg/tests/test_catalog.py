import itertools
from fractions import Fraction

import pytest

from eislat import catalog
from eislat.catalog import (
    NIEMEIER_ROOTS,
    NullType,
    RootLatticeKind,
    RootLatticeRecord,
    UnrecognizedNullTypeError,
    classify_null,
    glue_datum,
    niemeier,
    sample_null_vectors,
    root_lattice,
    theta_dual_equal,
    verify_root_lattice,
)
from eislat.codes import TETRACODE_ROWS
from eislat.eisenstein import UNIT_PAIRS, mod_theta
from eislat.elinalg import vscale
from eislat.model import mv
from eislat.reduction import roots as enumerate_roots

# elements of E of norm at most 3
SMALL = [(a, b) for a in range(-2, 3) for b in range(-2, 3) if a * a - a * b + b * b <= 3]


def n(z):
    return z[0] * z[0] - z[0] * z[1] + z[1] * z[1]


def tetracode_words():
    words = set()
    for cs in itertools.product(range(3), repeat=2):
        words.add(tuple(sum(c * r[i] for c, r in zip(cs, TETRACODE_ROWS)) % 3 for i in range(4)))
    return words


def member(kind, x):
    res = [mod_theta(z) for z in x]
    if kind == "A2":
        return res[0] == 0
    if kind == "D4":
        return x[0] == x[1] and res[0] == res[2]
    if kind == "E6":
        return res[0] == res[1] == res[2]
    return tuple(res) in tetracode_words()


DIMS = {"A2": 1, "D4": 3, "E6": 3, "E8": 4}


@pytest.mark.parametrize("kind,count", [("A2", 6), ("D4", 24), ("E6", 72), ("E8", 240)])
def test_root_count_against_ambient_box(kind, count):
    box = [x for x in itertools.product(SMALL, repeat=DIMS[kind])
           if sum(n(z) for z in x) == 3 and member(kind, x)]
    L = root_lattice(kind)
    R = enumerate_roots(L)
    assert len(box) == len(R) == count
    assert all(r in L for r in box)
    assert all(r.entries in set(box) for r in (L.to_ambient(c) for c in R))


def test_d4_example_root():
    L = root_lattice("D4")
    v = ((0, 1), (0, 1), (1, 0))
    assert v in L and sum(n(z) for z in v) == 3


def test_e8_is_theta_self_dual():
    assert theta_dual_equal(root_lattice("E8"))
    assert not theta_dual_equal(root_lattice("A2"))


def test_table_mismatch_names_the_column(monkeypatch):
    bad = dict(catalog.ROOT_LATTICE_EXPECTED)
    bad[RootLatticeKind.A2] = RootLatticeRecord(RootLatticeKind.A2, 6, 3, 12, "F3^1", Fraction(1))
    monkeypatch.setattr(catalog, "ROOT_LATTICE_EXPECTED", bad)
    with pytest.raises(AssertionError, match="automorphism group order"):
        verify_root_lattice("A2")


def test_unknown_kinds():
    with pytest.raises(ValueError):
        niemeier("A1^24")
    with pytest.raises(ValueError):
        root_lattice("F4")
    assert glue_datum("E8^3") is None


def test_niemeier_a2_roots():
    L = niemeier("A2^12")
    assert L.rank == 12 and len(enumerate_roots(L)) == NIEMEIER_ROOTS["A2^12"]


@pytest.mark.parametrize("u", UNIT_PAIRS[1:3])
def test_null_type_invariant_under_units(model, u):
    vecs = sample_null_vectors(model)
    for label in ("(theta; theta, 0^12)", "(theta; thetabar, 0^12)"):
        v, t = vecs[label]
        assert classify_null(v, model).kind == t == classify_null(vscale(u, v), model).kind


def test_unrecognized_null_type(model, monkeypatch):
    monkeypatch.setattr(catalog, "NULL_TYPES", {})
    with pytest.raises(UnrecognizedNullTypeError):
        classify_null(mv((1, 2), {0: (1, 2)}), model)
    assert NullType.LEECH.value == "Leech type"
