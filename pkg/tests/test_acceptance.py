"""End-to-end acceptance checks; one printed pass/fail line per criterion (see conftest)."""
import itertools
import random
from fractions import Fraction

from eislat.catalog import (
    NIEMEIER_KINDS,
    NullType,
    RootLatticeKind,
    classify_null,
    leech_from_l131,
    niemeier,
    niemeier_checks,
    sample_null_vectors,
    verify_root_lattice,
)
from eislat.eisenstein import UNIT_PAIRS, edivmod, emul, enorm
from eislat.elinalg import hnf, rank_q, vadd, vscale
from eislat.groups import braid, commute, triflection
from eislat.lattice import HermitianLattice, gram_and_integrality, gram_of_vectors
from eislat.model import (
    PRIMITIVE_SIXTH,
    SIGNS,
    THETA,
    batch_one,
    batch_two,
    graph_checks,
    invariant_subspace_scan,
    ip,
    norm,
    root_derivation,
    sixth_root,
    y555_data,
    y555_suite,
)
from eislat.plane import BLACK, WHITE, c_families, cperp_sum_one_families, y_diagram
from eislat.reduction import min_norm, roots, short_vectors

import test_groups
import test_reduction
from test_eisenstein import as_matrix, matmul2
from test_reduction import brute_force, gram2


def add(x, y):
    return (x[0] + y[0], x[1] + y[1])


def test_criterion_01_code_censuses(model):
    fam = c_families(model.plane)
    words = set(model.C.codewords())
    assert len(words) == 729
    assert tuple(len(f) for f in fam.values()) == (1, 156, 26, 468, 78)
    assert set().union(*fam.values()) == words
    fam1 = cperp_sum_one_families(model.plane)
    sum_one = {w for w in model.Cperp.codewords() if sum(w) % 3 == 1}
    assert tuple(len(f) for f in fam1.values()) == (13, 78, 234, 234, 156, 13, 1)
    assert set().union(*fam1.values()) == sum_one and len(sum_one) == 729


def test_criterion_02_root_lattice_table():
    rows = [verify_root_lattice(k).as_tuple() for k in RootLatticeKind]
    assert [r[0] for r in rows] == [6, 24, 72, 240]
    assert [r[1] for r in rows] == [3, 24, 648, 155520]
    assert [r[2] for r in rows] == [6, 72, 1296, 155520]
    assert [r[3] for r in rows] == ["F3^1", "F4^1", "F3^1", "0"]
    assert [r[4] for r in rows] == [Fraction(1), Fraction(3, 2), Fraction(2), None]


def test_criterion_03_point_and_line_roots(model):
    P = model.plane
    for r in model.point_roots + model.line_roots:
        assert norm(r) == 3 and r in model
    for p, l in itertools.product(range(13), range(13)):
        expect = THETA if P.incident(p, l) else (0, 0)
        assert ip(model.point_roots[p], model.line_roots[l]) == expect
    span = HermitianLattice.from_generators(list(model.point_roots + model.line_roots), SIGNS)
    assert span.same_module(model.lattice)
    assert gram_and_integrality(model.lattice).theta_unimodular
    assert model.lattice.signature == (13, 1)


def test_criterion_04_niemeier_lattices():
    expected = {"A2^12": 72, "D4^6": 144, "E6^4": 288, "E8^3": 720}
    for kind in NIEMEIER_KINDS:
        L = niemeier(kind)
        assert gram_and_integrality(L).theta_unimodular
        assert len(roots(L)) == expected[kind]
        recs = niemeier_checks(kind)
        assert all(r.passed for r in recs), [r for r in recs if not r.passed]


def test_criterion_05_leech_extraction(model):
    K = leech_from_l131(model)
    assert K.rank == 12 and K.signature == (12, 0)
    assert gram_and_integrality(K).theta_unimodular
    assert roots(K) == []
    assert min_norm(K)[0] == 6


def test_criterion_06_null_type_classifier(model):
    vecs = sample_null_vectors(model)
    got = [classify_null(v, model).kind for v, _ in vecs.values()]
    assert got == [NullType.LEECH, NullType.E6, NullType.A2, NullType.D4, NullType.E8]
    for v, _ in vecs.values():
        assert norm(v) == 0 and v in model


def test_criterion_07_invariant_subspace_scan(model):
    recs = invariant_subspace_scan(model)
    assert all(r.passed for r in recs), [r for r in recs if not r.passed]
    actual = " ".join(r.actual for r in recs)
    assert "265720" in actual


def test_criterion_08_y555(model):
    recs = [r for r in y555_suite(model, embeddings=2) if not r.check_id.startswith("graph.")]
    assert all(r.passed for r in recs), [r for r in recs if not r.passed]
    data = y555_data()
    for c in (BLACK, WHITE):
        emb = data.embeddings[c][0]
        diag = y_diagram(5, c)
        R = [model.node_root(x) for x in emb]
        assert rank_q(gram_of_vectors(R, SIGNS)) == 14
        T = [triflection(r, SIGNS) for r in R]
        pairs = list(itertools.combinations(range(16), 2))
        assert len(pairs) == 120
        for i, j in pairs:
            assert (braid(T[i], T[j]) if diag.adjacent(i, j) else commute(T[i], T[j]))


def test_criterion_09_graph_facts(model):
    recs = graph_checks(model, y555_data())
    assert all(r.passed for r in recs), [r for r in recs if not r.passed]
    assert int(recs[0].actual) > 0


def test_criterion_10_root_derivation(model):
    recs = [r for r in root_derivation(model) if not r.check_id.startswith("sixth.")]
    assert all(r.passed for r in recs), [r for r in recs if not r.passed]
    steps = {r.check_id.split(".")[1] for r in recs if r.check_id.startswith("derive.")}
    assert {"step1", "step2", "step3", "step4", "step5"} <= steps
    b = list(batch_one(model).values()) + list(batch_two(model).values())
    assert len(set(b)) == 390
    assert all(ip(r, model.rho) == THETA and norm(vadd(model.rho, r)) == 3 and vadd(model.rho, r) in model
               for r in b)


def test_criterion_11_sixth_root(model):
    for r in (model.point_roots[0], next(iter(batch_one(model).values())),
              next(iter(batch_two(model).values()))):
        z = sixth_root(model, r)
        assert z in PRIMITIVE_SIXTH
        assert emul(emul(z, z), z) == (-1, 0) and z != (-1, 0)


def test_criterion_12_property_suites():
    rng = random.Random(2024)
    for _ in range(10_000):
        x = tuple(rng.randint(-10**4, 10**4) for _ in range(2))
        y = tuple(rng.randint(-10**4, 10**4) for _ in range(2))
        z = tuple(rng.randint(-10**4, 10**4) for _ in range(2))
        assert as_matrix(emul(x, y)) == matmul2(as_matrix(x), as_matrix(y))
        assert emul(x, add(y, z)) == add(emul(x, y), emul(x, z))
        assert emul(emul(x, y), z) == emul(x, emul(y, z))
        if y != (0, 0):
            q, r = edivmod(x, y)
            assert add(emul(q, y), r) == x and 4 * enorm(r) <= 3 * enorm(y)
    for _ in range(200):
        rows = [tuple((rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(3)) for _ in range(4)]
        shuffled = [vscale(rng.choice(UNIT_PAIRS), r) for r in rng.sample(rows, len(rows))]
        assert hnf(shuffled, 3) == hnf(rows, 3)
    for _ in range(60):
        p, q = rng.randint(1, 6), rng.randint(1, 6)
        zz = (rng.randint(-3, 3), rng.randint(-3, 3))
        if p * q - (zz[0] ** 2 - zz[0] * zz[1] + zz[1] ** 2) <= 0:
            continue
        L = gram2(p, q, zz)
        bound = rng.randint(1, 8)
        assert sorted(short_vectors(L, bound).vectors) == brute_force(L, bound)
    test_reduction.test_enumeration_on_root_pairs_of_e8()
    test_groups.test_conjugation_identity_on_random_isometries()
