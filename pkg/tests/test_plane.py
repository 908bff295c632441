import itertools

from eislat.fields import PackedSpinner, pack_f3, spin
from eislat.plane import (
    BLACK,
    WHITE,
    L33_ORDER,
    Plane,
    compose,
    cycle_extension_facts,
    incidence_graph,
    induced_embeddings,
    induced_paths,
    l33_group,
    line_code,
    line_difference_code,
    perm_inverse,
    y_diagram,
)


def test_axioms():
    P = Plane()
    assert P.check_axioms()
    assert P.points[0] == (0, 0, 1)
    assert all(P.incident(P.meet(a, b), a) for a in range(13) for b in range(13) if a != b)


def test_group_order_against_all_matrices():
    """Count the point permutations induced by every invertible 3x3 matrix over F3."""
    P = Plane()
    perms = set()
    for entries in itertools.product(range(3), repeat=9):
        M = [entries[0:3], entries[3:6], entries[6:9]]
        det = (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
               + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) % 3
        if det:
            perms.add(P.matrix_perm(M))
    G = l33_group(P)
    assert len(perms) == L33_ORDER == G.order
    assert set(G.elements) == perms


def test_group_preserves_incidence():
    P = Plane()
    G = l33_group(P)
    for g in G.elements[::97]:
        lines = P.line_image(g)
        assert all(P.incident(g[p], lines[l]) == P.incident(p, l) for p in range(13) for l in range(13))
        assert compose(g, perm_inverse(g)) == tuple(range(13))
    assert tuple(range(13)) in G


def test_codes_of_the_plane():
    P = Plane()
    C, D = line_difference_code(P), line_code(P)
    assert C.dimension == 6 and D.dimension == 7
    assert D.same_code(C.dual())
    assert all(w in D for w in C.generator)


def test_packed_spinner_matches_plain_spin():
    P = Plane()
    G = l33_group(P)
    gens = [list(g) for g in G.gens]
    sp = PackedSpinner(gens)
    C = line_difference_code(P)
    for v in [C.generator[0], (1, 2) + (0,) * 11, (1,) * 13, (1, 1, 1) + (0,) * 10]:
        assert sp.dimension([pack_f3(v)]) == spin([v], gens).rank()


def brute_embeddings(pattern, host):
    """Place pattern nodes in index order, checking every pair against the host."""
    n = pattern.n
    out = []

    def rec(img):
        k = len(img)
        if k == n:
            out.append(tuple(img))
            return
        for x in range(host.n):
            if x in img or host.colors[x] != pattern.colors[k]:
                continue
            if all(pattern.adjacent(k, j) == host.adjacent(x, img[j]) for j in range(k)):
                rec(img + [x])

    rec([])
    return sorted(out)


def test_embedding_search_against_brute_force():
    g = incidence_graph(Plane())
    for c in (BLACK, WHITE):
        # a Y111 diagram checks the search on a pattern small enough for brute force
        small = y_diagram(1, c)
        assert induced_embeddings(small, g) == brute_embeddings(small, g)
    full = induced_embeddings(y_diagram(5, BLACK), g)
    assert len(full) == L33_ORDER
    # spot-check inducedness on a few of them
    d = y_diagram(5, BLACK)
    for e in full[::701]:
        assert all(d.adjacent(i, j) == g.adjacent(e[i], e[j]) for i in range(16) for j in range(16) if i != j)


def brute_induced_paths(g, length):
    found = set()

    def rec(path):
        if len(path) == length:
            if all(g.adjacent(path[i], path[j]) == (abs(i - j) == 1)
                   for i in range(length) for j in range(i + 1, length)):
                found.add(min(tuple(path), tuple(reversed(path))))
            return
        for x in g.neighbors(path[-1]):
            if x not in path and not any(g.adjacent(x, y) for y in path[:-1]):
                rec(path + [x])

    for s in range(g.n):
        rec([s])
    return found


def test_induced_paths_against_brute_force():
    g = incidence_graph(Plane())
    for k in (3, 6):
        assert set(induced_paths(g, k)) == brute_induced_paths(g, k)


def test_cycle_facts():
    g = incidence_graph(Plane())
    f = cycle_extension_facts(g, 11, 4)
    assert f.paths == len(induced_paths(g, 11))
    assert f.unique_extensions == f.paths == f.complement_is_path
    assert f.counterexample is None
