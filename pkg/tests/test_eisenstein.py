import cmath

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eislat.eisenstein import (
    INT_LIMIT,
    OMEGA,
    OMEGA_BAR,
    ONE,
    THETA,
    UNIT_PAIRS,
    EisensteinInt,
    EisensteinOverflowError,
    canonical_associate,
    edivmod,
    egcd,
    emul,
    enorm,
    exact_quotient,
    mod_theta,
    mod_two,
    parse,
    reduce_mod,
    residues,
    unit_to_canonical,
    units,
)

from conftest import nonzero_pairs, pairs, small_pairs

CASES = settings(max_examples=2500)


def as_matrix(p):
    """Multiplication by a + bw on the basis (1, w), as a 2x2 integer matrix acting on rows."""
    a, b = p
    # 1 -> a + b w ; w -> a w + b w^2 = -b + (a - b) w
    return ((a, b), (-b, a - b))


def matmul2(x, y):
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2))


@CASES
@given(pairs, pairs)
def test_multiplication_matches_matrix_representation(x, y):
    assert as_matrix(emul(x, y)) == matmul2(as_matrix(x), as_matrix(y))


@CASES
@given(small_pairs, small_pairs, small_pairs)
def test_ring_axioms(x, y, z):
    X, Y, Z = EisensteinInt(*x), EisensteinInt(*y), EisensteinInt(*z)
    assert X * Y == Y * X
    assert (X * Y) * Z == X * (Y * Z)
    assert X * (Y + Z) == X * Y + X * Z
    assert X + (-X) == 0 and X * ONE == X
    assert (X * Y).norm() == X.norm() * Y.norm()
    assert (X * Y).conj() == X.conj() * Y.conj()


@CASES
@given(pairs, nonzero_pairs)
def test_euclidean_division(x, y):
    q, r = edivmod(x, y)
    qy = emul(q, y)
    assert (qy[0] + r[0], qy[1] + r[1]) == x
    # coordinate rounding leaves x/y - q in a parallelogram of norm at most 3/4
    assert 4 * enorm(r) <= 3 * enorm(y)


@CASES
@given(pairs, nonzero_pairs, pairs)
def test_reduce_mod_is_a_class_function(x, y, k):
    shifted = tuple(a + b for a, b in zip(x, emul(k, y)))
    r = reduce_mod(x, y)
    assert r == reduce_mod(shifted, y)
    assert exact_quotient((x[0] - r[0], x[1] - r[1]), y) is not None


@settings(max_examples=500)
@given(pairs)
def test_norm_matches_complex_embedding(x):
    z = EisensteinInt(*x).to_complex()
    assert abs(abs(z) ** 2 - enorm(x)) <= 1e-6 * max(1, enorm(x))


@settings(max_examples=1000)
@given(nonzero_pairs)
def test_canonical_associate(x):
    c = canonical_associate(x)
    assert c == emul(unit_to_canonical(x), x)
    for u in UNIT_PAIRS:
        assert canonical_associate(emul(u, x)) == c


tiny = st.tuples(st.integers(-10**4, 10**4), st.integers(-10**4, 10**4))


@settings(max_examples=1000)
@given(tiny.filter(any), tiny.filter(any), tiny)
def test_gcd_divides_and_is_combination_free(x, y, k):
    g = egcd(x, y)
    assert exact_quotient(x, g) is not None and exact_quotient(y, g) is not None
    # a common multiple factor is absorbed into the gcd
    kk = k if k != (0, 0) else (1, 0)
    assert egcd(emul(kk, x), emul(kk, y)) == canonical_associate(emul(kk, g))


@CASES
@given(pairs, pairs)
def test_residue_maps_are_ring_homomorphisms(x, y):
    s = (x[0] + y[0], x[1] + y[1])
    assert mod_theta(s) == (mod_theta(x) + mod_theta(y)) % 3
    assert mod_theta(emul(x, y)) == mod_theta(x) * mod_theta(y) % 3
    # F4 addition is XOR in the encoding
    assert mod_two(s) == mod_two(x) ^ mod_two(y)


def test_units_and_constants():
    assert sorted(u.pair() for u in units()) == sorted(UNIT_PAIRS)
    assert all(u.norm() == 1 for u in units())
    assert OMEGA * OMEGA == OMEGA_BAR and OMEGA * OMEGA_BAR == ONE
    assert THETA == OMEGA - OMEGA_BAR and THETA.norm() == 3
    assert THETA * THETA == -3
    assert cmath.isclose(OMEGA.to_complex(), cmath.exp(2j * cmath.pi / 3))


def test_residues_and_parse():
    assert residues(THETA) == (0, 1)
    assert residues(OMEGA) == (1, 2)
    assert parse("2-3w") == EisensteinInt(2, -3)
    assert parse("-w") == EisensteinInt(0, -1)
    assert parse("theta") == THETA
    assert str(EisensteinInt(2, -3)) == "2-3w"


def test_overflow_detected():
    with pytest.raises(EisensteinOverflowError):
        EisensteinInt(INT_LIMIT + 1, 0)
    big = (2**40, 0)
    with pytest.raises(EisensteinOverflowError):
        emul(big, big)


def test_bulk_random_ring_cases():
    import random
    rng = random.Random(7)
    for _ in range(20000):
        x = (rng.randint(-999, 999), rng.randint(-999, 999))
        y = (rng.randint(-999, 999), rng.randint(-999, 999))
        assert as_matrix(emul(x, y)) == matmul2(as_matrix(x), as_matrix(y))
        if y != (0, 0):
            q, r = edivmod(x, y)
            qy = emul(q, y)
            assert (qy[0] + r[0], qy[1] + r[1]) == x and enorm(r) < enorm(y)


def test_divisibility_helpers():
    x = EisensteinInt(7, 3)
    assert THETA.divides(THETA * x)
    assert not THETA.divides(ONE)
    assert (THETA * x).exact_div(THETA) == x
    with pytest.raises(ArithmeticError):
        ONE.exact_div(THETA)
    zero = EisensteinInt(0, 0)
    assert zero.divides(0) and not zero.divides(1)
