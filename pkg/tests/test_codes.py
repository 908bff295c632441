import itertools

import pytest

from eislat import codes
from eislat.codes import (
    Code,
    CodeSelfCheckError,
    hexacode,
    standard_code_checks,
    ternary_golay,
    tetracode,
    zero_code,
)

# F4 with encoding c0 + 2 c1: 0, 1, v = 2, v^2 = 3
LOG = {1: 0, 2: 1, 3: 2}
EXP = [1, 2, 3]


def f4_mul(x, y):
    if x == 0 or y == 0:
        return 0
    return EXP[(LOG[x] + LOG[y]) % 3]


def f4_conj(x):
    return f4_mul(x, x)


def herm(x, y):
    s = 0
    for a, b in zip(x, y):
        s ^= f4_mul(a, f4_conj(b))
    return s


def brute_dual(code):
    """All words orthogonal to the generators, found by exhausting the ambient space."""
    q = code.field.q
    out = set()
    for w in itertools.product(range(q), repeat=code.length):
        if q == 3:
            ok = all(sum(a * b for a, b in zip(w, g)) % 3 == 0 for g in code.generator)
        else:
            ok = all(herm(w, g) == 0 for g in code.generator)
        if ok:
            out.add(w)
    return out


def brute_census(words):
    cnt = {}
    for w in words:
        k = sum(1 for x in w if x)
        cnt[k] = cnt.get(k, 0) + 1
    return dict(sorted(cnt.items()))


@pytest.mark.parametrize("build", [tetracode, hexacode])
def test_small_codes_are_self_dual_by_brute_force(build):
    c = build()
    assert brute_dual(c) == set(c.codewords())


def test_golay_self_dual_by_orthogonality_and_size():
    g = ternary_golay()
    words = set(g.codewords())
    assert len(words) == 729
    assert all(sum(a * b for a, b in zip(x, y)) % 3 == 0 for x in g.generator for y in g.generator)


def test_censuses_against_direct_count():
    for name, c in {"tetracode": tetracode(), "hexacode": hexacode(), "golay": ternary_golay()}.items():
        census = {k: v for k, v in c.weight_census().items() if v}
        assert census == brute_census(c.codewords())
        assert census == codes.STANDARD_CENSUS[name]


def test_min_weights_and_sizes():
    assert tetracode().min_weight() == 3
    assert hexacode().min_weight() == 4 and hexacode().size == 64
    assert ternary_golay().min_weight() == 6 and ternary_golay().size == 729


def test_dual_involution_and_zero_code():
    c = Code.of("F3", [(1, 1, 0, 2, 1)], 5)
    assert c.dual().dual().same_code(c)
    h = Code.of("F4", [(1, 2, 3, 0)], 4)
    assert h.dual().dual().same_code(h)
    z = zero_code("F3", 4)
    assert z.dual().dimension == 4


def test_enumeration_cap():
    big = Code.of("F3", [tuple(int(i == j) for j in range(13)) for i in range(13)], 13)
    with pytest.raises(ValueError):
        next(big.codewords())


def test_corrupted_constant_fails_self_check():
    bad = list(codes.GOLAY_ROWS)
    bad[0] = (1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2)
    with pytest.raises(CodeSelfCheckError):
        ternary_golay(tuple(bad))


def test_standard_code_records_pass():
    assert all(r.passed for r in standard_code_checks())
