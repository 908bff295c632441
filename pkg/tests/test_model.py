import cmath
import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from eislat.eisenstein import UNIT_PAIRS, emul
from eislat.elinalg import ZERO, rank_q, vadd, vscale
from eislat.groups import apply, triflection
from eislat.lattice import gram_of_vectors
from eislat.model import (
    FAMILIES,
    PRIMITIVE_SIXTH,
    SIGNS,
    batch_one,
    batch_two,
    derivation_steps,
    in_family,
    ip,
    lattice_generators,
    mv,
    norm,
    sixth_root,
    sixth_root_scaled,
    y555_data,
    y555_root_checks,
    chain_span_checks,
)

OMEGA = cmath.exp(2j * cmath.pi / 3)


def cnorm(x):
    """Lorentzian norm computed with complex floats."""
    vals = [a + b * OMEGA for a, b in x]
    return round(-abs(vals[0]) ** 2 + sum(abs(v) ** 2 for v in vals[1:]))


coeffs = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


@settings(max_examples=60)
@given(st.lists(coeffs, min_size=21, max_size=21))
def test_membership_on_lattice_combinations(model, cs):
    gens = lattice_generators(model.Cperp)
    x = tuple([ZERO] * 14)
    for c, g in zip(cs, gens):
        x = vadd(x, vscale(c, g))
    assert model.satisfies_congruences(x)
    assert x in model


@settings(max_examples=150)
@given(st.lists(coeffs, min_size=14, max_size=14))
def test_membership_predicates_agree(model, xs):
    x = tuple(xs)
    assert model.satisfies_congruences(x) == (x in model)
    assert norm(x) == cnorm(x)


def test_named_vectors(model):
    for r in model.point_roots + model.line_roots:
        assert model.satisfies_congruences(r) and r in model
        assert cnorm(r) == 3
    assert model.rho in model and cnorm(model.rho) == 0
    # one step off a root leaves the lattice
    r = model.line_roots[0]
    bumped = (r[0],) + ((r[1][0] + 1, r[1][1]),) + r[2:]
    assert bumped not in model and not model.satisfies_congruences(bumped)


def test_triflections_preserve_lattice(model):
    gens = lattice_generators(model.Cperp)
    for r in model.point_roots[:4] + model.line_roots[:4]:
        T = triflection(r, SIGNS)
        for g in gens:
            img = apply(g, T)
            assert img.denom == 1 and img.entries in model


def test_gram_rank_bounded(model):
    vecs = list(model.point_roots + model.line_roots) + [model.rho]
    assert rank_q(gram_of_vectors(vecs, SIGNS)) == 14


def test_batches_distinct_and_hypotheses(model):
    b1, b2 = batch_one(model), batch_two(model)
    allr = list(b1.values()) + list(b2.values())
    assert len(set(allr)) == 390
    theta = (1, 2)
    for r in allr[::7]:
        assert cnorm(r) == 3 and ip(r, model.rho) == theta and cnorm(vadd(model.rho, r)) == 3


def test_first_step_sum_is_exact(model):
    s1 = derivation_steps(model)[0]
    assert vadd(s1.a, s1.b) == s1.expected_sum
    assert in_family(model.plane, s1.expected_sum, "S1")


def test_family_predicates_reject_other_families(model):
    steps = {s.name: s for s in derivation_steps(model)}
    sums = {
        "S1": vadd(steps["step1"].a, steps["step1"].b),
        "S3": vadd(steps["step3"].a, steps["step3"].b),
        "S4": vadd(steps["step4"].a, steps["step4"].b),
        "S5": vadd(steps["step5"].a, steps["step5"].b),
        "B1": next(iter(batch_one(model).values())),
        "S2": next(iter(batch_two(model).values())),
        "line": model.line_roots[3],
    }
    for have, v in sums.items():
        assert in_family(model.plane, v, have)
        for other in FAMILIES:
            if other != have:
                assert not in_family(model.plane, v, other), (have, other)


def test_sixth_root_for_all_point_roots_and_units(model):
    for r in model.point_roots:
        z = sixth_root(model, r)
        assert z in PRIMITIVE_SIXTH
        assert emul(emul(z, z), z) == (-1, 0)
        assert all(sixth_root_scaled(model, r, u) == z for u in UNIT_PAIRS)


def test_y555_checks_independent_of_embedding(model):
    data = y555_data()
    embs = next(iter(data.embeddings.values()))[::1000]
    results = []
    for e in embs:
        recs = y555_root_checks(model, e) + chain_span_checks(model, e)
        assert all(r.passed for r in recs)
        results.append([(r.check_id, r.actual) for r in recs])
    assert all(r == results[0] for r in results)
