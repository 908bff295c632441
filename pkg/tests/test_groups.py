import random

import pytest

from eislat.catalog import root_lattice
from eislat.elinalg import ScaledEVector
from eislat.groups import (
    ClosureCapExceeded,
    NotARootError,
    aut_order_definite,
    apply,
    braid,
    closure_group,
    commute,
    identity,
    inverse,
    matmul,
    matpow,
    preserves_gram,
    root_triflections,
    triflection,
    triflection_coords,
)
from eislat.elinalg import vscale
from eislat.reduction import roots


def test_triflection_basic():
    r = ((1, 0), (1, 0), (1, 0))
    T = triflection(r)
    assert matpow(T, 3) == identity(3)
    assert apply(r, T) == ScaledEVector(vscale((0, 1), r))
    assert apply(((1, 0), (-1, 0), (0, 0)), T) == ScaledEVector(((1, 0), (-1, 0), (0, 0)))
    with pytest.raises(NotARootError):
        triflection(((1, 0), (1, 0)))


def test_conjugation_identity_on_random_isometries():
    E8 = root_lattice("E8")
    R = roots(E8)
    rng = random.Random(11)
    for _ in range(15):
        g = identity(4)
        for _ in range(rng.randint(1, 5)):
            g = matmul(g, triflection_coords(E8, rng.choice(R)))
        assert preserves_gram(g, E8.gram)
        r = rng.choice(R)
        rg = apply(r, g)
        assert rg.denom == 1
        lhs = triflection_coords(E8, rg.entries)
        rhs = matmul(matmul(inverse(g), triflection_coords(E8, r)), g)
        assert lhs == rhs


def test_braid_and_commute(model):
    p, l = model.point_roots[0], model.line_roots[next(iter(model.plane.point_lines[0]))]
    A = triflection(p, model.lattice.signs)
    B = triflection(l, model.lattice.signs)
    assert braid(A, B) and not commute(A, B)
    C = triflection(model.point_roots[1], model.lattice.signs)
    assert commute(A, C)


def test_closures():
    A2 = root_lattice("A2")
    assert closure_group(root_triflections(A2, roots(A2))).order == 3
    D4 = root_lattice("D4")
    G = closure_group(root_triflections(D4, roots(D4)))
    assert G.order == 24 and identity(2) in G
    with pytest.raises(ClosureCapExceeded):
        closure_group(root_triflections(D4, roots(D4)), cap=10)
    assert closure_group([], dim=3).order == 1


def test_aut_orders_small():
    assert aut_order_definite(root_lattice("A2")) == 6
    assert aut_order_definite(root_lattice("D4")) == 72
