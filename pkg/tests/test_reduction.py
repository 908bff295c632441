import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eislat.catalog import root_lattice
from eislat.elinalg import ScaledEMatrix
from eislat.lattice import HermitianLattice, real_form, sublattice
from eislat.reduction import (
    EnumerationCapExceeded,
    NotPositiveDefiniteError,
    lll_reduce,
    min_norm,
    roots,
    short_vectors,
)


def brute_force(L, bound):
    """All nonzero coordinate vectors of norm <= bound, by a box search."""
    G = np.array([[complex(a - b / 2, b * math.sqrt(3) / 2) for a, b in row] for row in L.gram.rows]) / L.gram.denom
    lam = min(np.linalg.eigvalsh(G))
    k = int(math.isqrt(int(2 * float(bound) / lam) + 1)) + 1
    rng = range(-k, k + 1)
    out = []
    for c in itertools.product(itertools.product(rng, rng), repeat=L.rank):
        if any(x != (0, 0) for x in c):
            n = L.norm_coords(c)
            if n <= bound:
                out.append(c)
    return sorted(out)


def gram2(p, q, z):
    return HermitianLattice.from_gram([[(p, 0), z], [(z[0] - z[1], -z[1]), (q, 0)]])


@settings(max_examples=40)
@given(st.integers(1, 6), st.integers(1, 6), st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
       st.integers(1, 8))
def test_enumeration_matches_brute_force_rank2(p, q, z, bound):
    if p * q - (z[0] ** 2 - z[0] * z[1] + z[1] ** 2) <= 0:
        return
    L = gram2(p, q, z)
    assert sorted(short_vectors(L, bound).vectors) == brute_force(L, bound)


@pytest.mark.parametrize("kind", ["A2", "D4"])
def test_enumeration_matches_brute_force_small_root_lattices(kind):
    L = root_lattice(kind)
    for bound in (3, 6, 9):
        assert sorted(short_vectors(L, bound).vectors) == brute_force(L, bound)


def test_enumeration_on_root_pairs_of_e8():
    E8 = root_lattice("E8")
    R = roots(E8)
    seen = 0
    for a, b in itertools.combinations(R[:40], 2):
        S = sublattice(E8, [a, b])
        if S.rank == 2:
            assert sorted(short_vectors(S, 6).vectors) == brute_force(S, 6)
            seen += 1
        if seen >= 6:
            break
    assert seen == 6


def test_lll_transform_and_conditions():
    Q, d = real_form(root_lattice("E8").gram)
    res = lll_reduce(Q)
    T = np.array(res.transform, dtype=object)
    assert abs(round(float(np.linalg.det(np.array(res.transform, dtype=float))))) == 1
    assert (T.dot(np.array(Q, dtype=object)).dot(T.T) == np.array(res.gram, dtype=object)).all()
    n = len(Q)
    for k in range(1, n):
        for j in range(k):
            assert abs(res.mu[k][j]) <= Fraction(1, 2)
        assert res.B[k] >= (Fraction(99, 100) - res.mu[k][k - 1] ** 2) * res.B[k - 1]


def test_lll_rejects_indefinite():
    with pytest.raises(NotPositiveDefiniteError):
        lll_reduce([[1, 0], [0, -1]])


def test_min_norms():
    assert min_norm(root_lattice("A2"))[0] == 3
    assert min_norm(root_lattice("E8"))[0] == 3
    L = HermitianLattice.from_gram(ScaledEMatrix.of([[(2, 0)]], 3))
    assert min_norm(L)[0] == Fraction(2, 3)


def test_root_counts_small():
    assert [len(roots(root_lattice(k))) for k in ("A2", "D4", "E6")] == [6, 24, 72]


def test_cap_and_indefinite(model):
    with pytest.raises(EnumerationCapExceeded) as exc:
        short_vectors(root_lattice("E8"), 3, cap=10)
    assert exc.value.cap == 10
    with pytest.raises(NotPositiveDefiniteError):
        roots(model.lattice)
