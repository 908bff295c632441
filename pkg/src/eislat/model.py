"""The Lorentzian lattice L13,1 built from the projective plane of order 3.

Vectors are 14-tuples of pairs (x0; x1, ..., x13) with the form
-x0 y0* + x1 y1* + ... + x13 y13*; coordinate k >= 1 is the plane point k - 1.
A vector lies in L when x0 = x1 + ... + x13 mod theta and the residues of
(x1, ..., x13) mod theta form a word of the line code C^perp.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cache
from typing import Callable, Sequence

from .codes import Code
from .eisenstein import UNIT_PAIRS, Pair, emul, mod_theta
from .elinalg import EVec, ScaledEVector, ZERO, hermitian_ip, rank_q, vadd, vscale, vsub
from .fields import PackedSpinner, pack_f3
from .groups import apply, braid, closure_group, commute, triflection
from .lattice import HermitianLattice, gram_and_integrality, gram_of_vectors, orth_complement
from .plane import (
    BLACK,
    WHITE,
    ColoredGraph,
    Plane,
    PermGroup,
    c_families,
    cperp_sum_one_families,
    cycle_extension_facts,
    find_extension,
    graph_automorphisms,
    incidence_graph,
    induced_embeddings,
    l33_group,
    line_code,
    line_difference_code,
    orbit_of_sets,
    shape_census,
    vertices_and_edges,
    y_arms,
    y_diagram,
)
from .reduction import roots as enumerate_roots
from .report import VerificationRecord, check

SIGNS = (-1,) + (1,) * 13
ONE: Pair = (1, 0)
W: Pair = (0, 1)
WB: Pair = (-1, -1)
THETA: Pair = (1, 2)
CUBE_ROOTS = (ONE, W, WB)
RHO_X0: Pair = (-4, -1)

Progress = Callable[[str], None]


def _neg(x: Pair) -> Pair:
    return (-x[0], -x[1])


def mv(x0: Pair, coords: dict[int, Pair] | None = None) -> EVec:
    """Model vector with first coordinate x0 and the given point coordinates."""
    out = [ZERO] * 14
    out[0] = x0
    for p, z in (coords or {}).items():
        out[1 + p] = z
    return tuple(out)


def ip(x: Sequence[Pair], y: Sequence[Pair]) -> Pair:
    return hermitian_ip(x, y, SIGNS)


def norm(x: Sequence[Pair]) -> int:
    return ip(x, x)[0]


@dataclass
class L131Model:
    plane: Plane
    group: PermGroup
    C: Code
    Cperp: Code
    lattice: HermitianLattice
    point_roots: tuple[EVec, ...]
    line_roots: tuple[EVec, ...]
    rho: EVec

    def satisfies_congruences(self, x: Sequence[Pair]) -> bool:
        """The defining congruence conditions of L, checked directly."""
        res = [mod_theta(z) for z in x]
        return (res[0] - sum(res[1:])) % 3 == 0 and tuple(res[1:]) in self.Cperp

    def __contains__(self, x) -> bool:
        return x in self.lattice

    def is_root(self, x: Sequence[Pair]) -> bool:
        return norm(x) == 3 and x in self.lattice

    def node_root(self, node: int) -> EVec:
        """Root of a node of the incidence graph (points 0..12, lines 13..25)."""
        return self.point_roots[node] if node < 13 else self.line_roots[node - 13]


def lattice_generators(Cperp: Code) -> list[EVec]:
    """theta e_k for all k, and lifts of a basis of C^perp with x0 the coordinate sum."""
    gens = [tuple(THETA if k == i else ZERO for k in range(14)) for i in range(14)]
    for row in Cperp.generator:
        lift = [(1, 0) if c == 1 else (-1, 0) if c == 2 else ZERO for c in row]
        gens.append(((sum(z[0] for z in lift), 0),) + tuple(lift))
    return gens


@cache
def build_model() -> L131Model:
    plane = Plane()
    Cperp = line_code(plane)
    L = HermitianLattice.from_generators(lattice_generators(Cperp), SIGNS, "L13,1")
    pts = tuple(mv(ZERO, {i: THETA}) for i in range(13))
    lines = tuple(mv(ONE, {p: ONE for p in plane.line_points[l]}) for l in range(13))
    rho = mv(RHO_X0, {p: ONE for p in range(13)})
    return L131Model(plane, l33_group(plane), line_difference_code(plane), Cperp, L, pts, lines, rho)


# ---------------------------------------------------------------------------
# codes of the plane

def code_checks(M: L131Model) -> list[VerificationRecord]:
    plane, C, D = M.plane, M.C, M.Cperp
    a = "line difference code and line code of the plane"
    out = [
        check("codes.plane_axioms", "plane of order 3: 4 points per line, lines meet in 1 point", True,
              plane.check_axioms(), a),
        check("codes.C.dimension", "dimension of C", 6, C.dimension, a),
        check("codes.Cperp.dimension", "dimension of C^perp", 7, D.dimension, a),
        check("codes.Cperp.is_dual", "C^perp equals the dual of C", True, D.same_code(C.dual()), a),
        check("codes.Cperp.spanned_by_lines", "C^perp is spanned by the 13 lines", True,
              D.same_code(Code.of("F3", [plane.line_vector(l) for l in range(13)], 13)), a),
        check("codes.C.self_orthogonal", "C is contained in C^perp", True,
              all(w in D for w in C.generator), a),
        check("codes.all_ones_in_Cperp", "all-ones vector lies in C^perp", True, (1,) * 13 in D, a),
    ]
    cw = set(C.codewords())
    fam = c_families(plane)
    out.append(check("codes.C.size", "number of elements of C", 729, len(cw), a))
    out.append(check("codes.C.census", "elements of C by sign shape up to sign",
                     {(0, 0): 1, (0, 9): 26, (3, 3): 156, (3, 6): 468, (6, 6): 78},
                     shape_census(cw, merge_sign=True), a))
    out.append(check("codes.C.families", "family sizes: zero, line differences, affine planes, "
                     "3 general lines, concurrent 2-minus-2", (1, 156, 26, 468, 78),
                     tuple(len(v) for v in fam.values()), a))
    out.append(check("codes.C.families_exhaust", "the described families are exactly C", True,
                     set().union(*fam.values()) == cw, a))
    s1 = {w for w in D.codewords() if sum(w) % 3 == 1}
    fam1 = cperp_sum_one_families(plane)
    out.append(check("codes.Cperp.sum_one_census", "coordinate-sum-1 elements of C^perp by sign shape",
                     {(1, 6): 78, (4, 0): 13, (4, 3): 234, (4, 6): 234, (4, 9): 13, (7, 3): 156, (13, 0): 1},
                     shape_census(s1), a))
    out.append(check("codes.Cperp.sum_one_families", "family sizes of the coordinate-sum-1 elements",
                     (13, 78, 234, 234, 156, 13, 1), tuple(len(v) for v in fam1.values()), a))
    out.append(check("codes.Cperp.sum_one_families_exhaust", "the described families are exactly the "
                     "coordinate-sum-1 elements", True, set().union(*fam1.values()) == s1, a))
    out.append(check("codes.l33.order", "order of the collineation group", 5616, M.group.order,
                     "the plane's collineation group"))
    out.append(check("codes.l33.point_orbits", "point orbit sizes of the collineation group", (13,),
                     tuple(sorted(len(o) for o in _orbits(M.group))), "the plane's collineation group"))
    return out


def _orbits(G: PermGroup) -> list[set[int]]:
    seen: set[int] = set()
    out = []
    for x in range(G.degree):
        if x not in seen:
            o = G.orbit(x)
            seen |= o
            out.append(o)
    return out


# ---------------------------------------------------------------------------
# the model itself

def verify_model(M: L131Model) -> list[VerificationRecord]:
    L = M.lattice
    a = "point and line roots span L13,1"
    roots26 = M.point_roots + M.line_roots
    info = gram_and_integrality(L)
    span = HermitianLattice.from_generators(list(roots26), SIGNS)
    inc = M.plane.incidence
    pl_ok = all(ip(M.point_roots[p], M.line_roots[l]) == (THETA if inc[p, l] else ZERO)
                for p in range(13) for l in range(13))
    pp_ok = all(ip(M.point_roots[p], M.point_roots[q]) == ZERO for p in range(13) for q in range(p))
    ll_ok = all(ip(M.line_roots[p], M.line_roots[q]) == ZERO for p in range(13) for q in range(p))
    theta_e0 = mv(THETA)
    image_rank = Code.of("F3", [[mod_theta(z) for z in L.basis.row(i).entries] for i in range(L.rank)],
                         14).dimension
    return [
        check("model.rank", "rank of L", 14, L.rank, a),
        check("model.signature", "signature of L", (13, 1), L.signature, "signature (13,1)"),
        check("model.roots_in_L", "the 26 point and line roots lie in L", True, all(r in L for r in roots26), a),
        check("model.roots_satisfy_congruences", "the 26 roots satisfy the defining congruences", True,
              all(M.satisfies_congruences(r) for r in roots26), a),
        check("model.root_norms", "norms of the 26 roots", (3,), tuple(sorted({norm(r) for r in roots26})), a),
        check("model.roots_span", "the 26 roots span L", True, span.same_module(L), a),
        check("model.point_line_products", "<p, l> is theta on incidence and 0 otherwise", True, pl_ok, a),
        check("model.point_roots_orthogonal", "distinct point roots are orthogonal", True, pp_ok, a),
        check("model.line_roots_orthogonal", "distinct line roots are orthogonal", True, ll_ok, a),
        check("model.contains_theta_e0", "(theta; 0^13) lies in L", True, theta_e0 in L, "L = theta L'"),
        check("model.image_mod_theta", "dimension of the image of L in F3^14", 7, image_rank, "L = theta L'"),
        check("model.det", "determinant of the Gram matrix", -3 ** 7, info.det, "L = theta L'"),
        check("model.theta_unimodular", "L = theta L'", True, info.theta_unimodular, "L = theta L'"),
        check("model.rho_in_L", "rho = (-4-w; 1^13) lies in L", True, M.rho in L, "the null vector rho"),
        check("model.rho_null", "norm of rho", 0, norm(M.rho), "the null vector rho"),
    ]


# ---------------------------------------------------------------------------
# Y555 inside the incidence graph

@dataclass
class Y555Data:
    graph: ColoredGraph
    node_perms: object  # (5616, 26) array of graph automorphisms
    embeddings: dict[int, list[tuple[int, ...]]]  # centre colour -> embeddings


@cache
def y555_data() -> Y555Data:
    M = build_model()
    g = incidence_graph(M.plane)
    perms = graph_automorphisms(M.plane, M.group)
    emb = {c: induced_embeddings(y_diagram(5, c), g) for c in (BLACK, WHITE)}
    return Y555Data(g, perms, emb)


def embedding_checks(M: L131Model, data: Y555Data) -> list[VerificationRecord]:
    a = "Y555 embeds in the incidence graph uniquely up to the collineation group"
    out = []
    for c in (BLACK, WHITE):
        name = "black" if c == BLACK else "white"
        emb = data.embeddings[c]
        sets = sorted({frozenset(e) for e in emb}, key=sorted)
        out.append(check(f"y555.{name}.exists", f"an induced embedding with a {name} centre exists",
                         True, bool(emb), a))
        if not emb:
            continue
        orbit = orbit_of_sets(sets, data.node_perms)
        out.append(check(f"y555.{name}.one_orbit", f"image sets with a {name} centre form one orbit",
                         True, orbit == set(sets), a))
        # the group acts regularly on embeddings: orbit of one map is all of them
        e0 = list(emb[0])
        imgs = {tuple(int(x) for x in row[e0]) for row in data.node_perms}
        out.append(check(f"y555.{name}.regular", f"every {name}-centred embedding is the image of the "
                         "first under exactly one collineation", (len(emb), True),
                         (len(imgs), imgs == set(emb)), a))
    return out


def y555_root_checks(M: L131Model, embedding: Sequence[int]) -> list[VerificationRecord]:
    """Gram rank and braid/commute relations of the 16 roots of an embedded Y555."""
    a = "the 16 roots of Y555 have a Gram matrix of rank 14"
    diag = y_diagram(5, BLACK if embedding[0] < 13 else WHITE)
    R = [M.node_root(x) for x in embedding]
    G = gram_of_vectors(R, SIGNS)
    value_ok = True
    for i, j in itertools.permutations(range(16), 2):
        expect = ZERO
        if diag.adjacent(i, j):
            expect = THETA if embedding[i] < 13 else _neg(THETA)
        value_ok &= G.rows[i][j] == expect
    T = [triflection(r, SIGNS) for r in R]
    rel_ok = n_braid = n_comm = 0
    for i, j in itertools.combinations(range(16), 2):
        if diag.adjacent(i, j):
            ok = braid(T[i], T[j]) and not commute(T[i], T[j])
            n_braid += 1
        else:
            ok = commute(T[i], T[j])
            n_comm += 1
        rel_ok += ok
    return [
        check("y555.roots.gram_rank", "rank of the 16 x 16 Gram matrix", 14, rank_q(G), a),
        check("y555.roots.products", "<r_i, r_j> is theta (black i), -theta (white i) when joined, else 0",
              True, bool(value_ok), "inner products of joined point and line roots"),
        check("y555.roots.relations", "pairs satisfying ABA=BAB (joined) or AB=BA (unjoined)",
              (120, 15, 105), (rel_ok, n_braid, n_comm), "braid and commutation relations"),
    ]


def chain_parts(embedding: Sequence[int]) -> tuple[list[int], list[int]]:
    """The 11-chain through two arms and the 4-chain at the end of the third arm."""
    arms = y_arms(5)
    e = [embedding[k] for k in reversed(arms[0])] + [embedding[0]] + [embedding[k] for k in arms[1]]
    f = [embedding[k] for k in arms[2][1:]]
    return e, f


def chain_span_checks(M: L131Model, embedding: Sequence[int]) -> list[VerificationRecord]:
    a = "the 11-chain spans L9,1, the 4-chain spans E8, together they span L"
    e, f = chain_parts(embedding)
    RE = [M.node_root(x) for x in e]
    RF = [M.node_root(x) for x in f]
    LE = HermitianLattice.from_generators(RE, SIGNS, "11-chain span")
    LF = HermitianLattice.from_generators(RF, SIGNS, "4-chain span")
    LEF = HermitianLattice.from_generators(RE + RF, SIGNS)
    ie, jf = gram_and_integrality(LE), gram_and_integrality(LF)
    return [
        check("chains.E.rank", "rank of the 11-chain span", 10, LE.rank, a),
        check("chains.E.signature", "signature of the 11-chain span", (9, 1), LE.signature, a),
        check("chains.E.theta_unimodular", "11-chain span satisfies L = theta L'", True, ie.theta_unimodular, a),
        check("chains.F.rank", "rank of the 4-chain span", 4, LF.rank, a),
        check("chains.F.definite", "4-chain span is positive definite", (4, 0), LF.signature, a),
        check("chains.F.roots", "roots of the 4-chain span", 240, len(enumerate_roots(LF)), a),
        check("chains.F.theta_unimodular", "4-chain span satisfies L = theta L'", True, jf.theta_unimodular, a),
        check("chains.EF.orthogonal", "11-chain roots are orthogonal to 4-chain roots", True,
              all(ip(x, y) == ZERO for x in RE for y in RF), a),
        check("chains.EF.span", "the 15 chain roots span L", True, LEF.same_module(M.lattice), a),
    ]


def graph_checks(M: L131Model, data: Y555Data) -> list[VerificationRecord]:
    a = "an 11-chain of the incidence graph closes to a unique 12-cycle leaving a 4-chain"
    facts = cycle_extension_facts(data.graph, 11, 4)
    out = [
        check("graph.paths.unique_cycle", "induced 11-paths with exactly one induced 12-cycle extension",
              facts.paths, facts.unique_extensions, a),
        check("graph.paths.complement", "induced 11-paths whose cycle leaves a 4-node induced path",
              facts.paths, facts.complement_is_path, a),
    ]
    arms = y_arms(5)
    phi = list(range(16))
    for x, y in zip(arms[0], arms[1]):
        phi[x], phi[y] = y, x
    for c in (BLACK, WHITE):
        name = "black" if c == BLACK else "white"
        emb = data.embeddings[c][0]
        idx = find_extension(data.node_perms, emb, [emb[phi[k]] for k in range(16)])
        out.append(check(f"graph.phi_extends.{name}", f"the arm swap of a {name}-centred Y555 extends to a "
                         "colour-preserving automorphism", True, idx is not None,
                         "the diagram automorphism extends to the incidence graph"))
    return out


def y555_suite(M: L131Model, embeddings: int = 3) -> list[VerificationRecord]:
    """All Y555 checks; root checks run on the first few embeddings of each colouring."""
    data = y555_data()
    out = embedding_checks(M, data)
    for c in (BLACK, WHITE):
        for k, emb in enumerate(data.embeddings[c][:embeddings]):
            tag = f"{'black' if c == BLACK else 'white'}{k}"
            for rec in y555_root_checks(M, emb) + chain_span_checks(M, emb):
                out.append(VerificationRecord(f"{rec.check_id}[{tag}]", rec.description, rec.expected,
                                              rec.actual, rec.anchor))
    out += graph_checks(M, data)
    return out


# ---------------------------------------------------------------------------
# invariant subspaces of the sum-zero code

def _lines_of_sum_zero(n: int = 13):
    """One packed representative of every 1-dimensional subspace of the sum-zero space of F3^n."""
    for head in range(n - 1):
        for tail in itertools.product(range(3), repeat=n - 2 - head):
            v = [0] * head + [1] + list(tail)
            v.append(-sum(v) % 3)
            yield v


def _scan_chunk(args) -> tuple[int, int, int, int, tuple | None]:
    head, gens, members = args
    spinner = PackedSpinner(gens)
    n = len(gens[0])
    n_in = ok_in = n_out = ok_out = 0
    bad = None
    for tail in itertools.product(range(3), repeat=n - 2 - head):
        v = [0] * head + [1] + list(tail)
        v.append(-sum(v) % 3)
        pv = pack_f3(v)
        if pv in members:
            n_in += 1
            d = spinner.dimension([pv])
            ok_in += d == 6
        else:
            n_out += 1
            d = spinner.dimension([pv], stop_at=12)
            ok_out += d == 12
        if bad is None and d != (6 if pv in members else 12):
            bad = (tuple(v), d)
    return n_in, ok_in, n_out, ok_out, bad


def invariant_subspace_scan(M: L131Model, jobs: int = 1, progress: Progress | None = None
                            ) -> list[VerificationRecord]:
    """C is the only nontrivial subspace of the sum-zero space Z invariant under the collineations.

    Z stands for theta M'/M with M the sum-zero sublattice of (theta E)^13, restricted to
    the part of 3-power order.  Every line <v> of Z is spun under the group generators.
    """
    a = "C is the unique nontrivial invariant subspace of the sum-zero code"
    gens = [list(g) for g in M.group.gens]
    members = frozenset(pack_f3(w) for w in M.C.codewords())
    Cbasis = [pack_f3(r) for r in M.C.generator]
    spinner = PackedSpinner(gens)
    Z = Code.of("F3", [[1 if k == i else 2 if k == 12 else 0 for k in range(13)] for i in range(12)], 13)
    out = [
        check("invariant.Z.dimension", "dimension of the sum-zero space Z", 12, Z.dimension, a),
        check("invariant.C_in_Z", "C lies in Z", True, all(w in Z for w in M.C.generator), a),
        check("invariant.Z.invariant", "Z is invariant under the group generators", True,
              spinner.dimension([pack_f3(r) for r in Z.generator]) == 12, a),
    ]
    # Z / C: complement of C in Z by pivot columns, then all lines of the complement
    piv = _pivots(M.C)
    comp = [[1 if k == i else 2 if k == 12 else 0 for k in range(13)] for i in range(12) if i not in piv]
    n_q = ok_q = 0
    for coeffs in _projective_points(len(comp)):
        v = [sum(c * r[k] for c, r in zip(coeffs, comp)) % 3 for k in range(13)]
        n_q += 1
        ok_q += spinner.dimension([pack_f3(v)] + Cbasis, stop_at=12) == 12
    out.append(check("invariant.ZmodC.irreducible", "lines of Z/C whose spin (with C) is all of Z",
                     (364, 364), (n_q, ok_q), a))
    tasks = [(h, gens, members) for h in range(11, -1, -1)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_scan_chunk, tasks))
    else:
        results = []
        for t in tasks:
            results.append(_scan_chunk(t))
            if progress:
                progress(f"invariant subspace scan: leading position {t[0]} done")
    n_in = sum(r[0] for r in results)
    n_out = sum(r[2] for r in results)
    bad = next((r[4] for r in results if r[4] is not None), None)
    out.append(check("invariant.lines.total", "lines of Z scanned", (3 ** 12 - 1) // 2, n_in + n_out, a))
    out.append(check("invariant.C.irreducible", "lines of C whose spin is C", (364, 364),
                     (n_in, sum(r[1] for r in results)), a))
    out.append(check("invariant.no_complement", "lines outside C whose spin is Z", (265356, 265356),
                     (n_out, sum(r[3] for r in results)), a))
    out.append(check("invariant.witness", "counterexample line and spin dimension", None, bad, a))
    return out


def _pivots(code: Code) -> list[int]:
    return [next(k for k, x in enumerate(r) if x) for r in code.generator]


def _projective_points(k: int):
    for head in range(k):
        for tail in itertools.product(range(3), repeat=k - 1 - head):
            yield [0] * head + [1] + list(tail)


# ---------------------------------------------------------------------------
# root families for the null vector rho

def cube_class(z: Pair) -> int | None:
    """0, 1 for cube roots of unity, -1 for their negatives, None otherwise."""
    if z == ZERO:
        return 0
    if z in CUBE_ROOTS:
        return 1
    if _neg(z) in CUBE_ROOTS:
        return -1
    return None


def profile(x: Sequence[Pair], x0: Pair) -> tuple[int | None, ...] | None:
    """Cube-root classes of the point coordinates of the unit multiple of x with first coordinate x0."""
    for u in UNIT_PAIRS:
        if emul(u, x[0]) == x0:
            return tuple(cube_class(emul(u, z)) for z in x[1:])
    return None


def _classes(prof) -> tuple[set[int], set[int], set[int]]:
    return ({p for p, c in enumerate(prof) if c == 1}, {p for p, c in enumerate(prof) if c == -1},
            {p for p, c in enumerate(prof) if c == 0})


def _line_minus_point(plane: Plane, s: set[int]) -> tuple[int, int] | None:
    """(line, point) with s = line minus point, if s is three collinear points."""
    if len(s) != 3:
        return None
    for l in range(13):
        if s <= plane.line_points[l]:
            (p,) = plane.line_points[l] - s
            return l, p
    return None


def _triangle(plane: Plane, v: set[int]) -> tuple[set[int], set[int]] | None:
    """Vertices and edge points of the triangle on three noncollinear points."""
    if len(v) != 3 or plane.collinear(tuple(v)):
        return None
    a, b, c = sorted(v)
    lines = [plane.line_through(a, b), plane.line_through(b, c), plane.line_through(a, c)]
    return vertices_and_edges(plane, lines)


def _fam_line(plane, prof):
    pos, neg, zero = _classes(prof)
    return not neg and len(pos) == 4 and plane.collinear(tuple(pos))


def _fam_s1(plane, prof):
    pos, neg, zero = _classes(prof)
    a, b = _line_minus_point(plane, pos), _line_minus_point(plane, neg)
    return bool(a and b and a[1] == b[1] and a[0] != b[0] and len(zero) == 7)


def _fam_s2(plane, prof):
    pos, neg, zero = _classes(prof)
    t = _triangle(plane, pos)
    return bool(t and zero == t[1] and len(neg) == 4)


def _fam_s3(plane, prof):
    pos, neg, zero = _classes(prof)
    if len(neg) != 1 or len(pos) != 6:
        return False
    (x,) = neg
    through = [plane.line_points[l] - {x} for l in plane.point_lines[x]]
    return any(pos == s | t for s, t in itertools.combinations(through, 2))


def _fam_s4(plane, prof):
    pos, neg, zero = _classes(prof)
    a, b = _line_minus_point(plane, neg), _line_minus_point(plane, zero)
    return bool(a and b and a[1] == b[1] and a[0] != b[0] and len(pos) == 7)


def _fam_s5(plane, prof):
    pos, neg, zero = _classes(prof)
    t = _triangle(plane, zero)
    return bool(t and pos == t[1] and len(neg) == 4)


def _fam_batch1(plane, prof):
    pos, neg, zero = _classes(prof)
    a, b = _line_minus_point(plane, zero), _line_minus_point(plane, pos)
    return bool(a and b and a[1] == b[1] and a[0] != b[0] and len(neg) == 7)


# family name -> (normalized first coordinate, predicate on cube-root classes)
FAMILIES = {
    "line": (ONE, _fam_line),
    "S1": (THETA, _fam_s1),
    "S2": ((2, 0), _fam_s2),
    "S3": ((2, 0), _fam_s3),
    "S4": ((3, 1), _fam_s4),
    "S5": ((3, 2), _fam_s5),
    "B1": ((3, 2), _fam_batch1),
}

FAMILY_DESCRIPTIONS = {
    "line": "(1; cube roots on a line)",
    "S1": "(theta; 1 on l-P, -1 on m-P)",
    "S2": "(2; 1 at triangle vertices, 0 on its edges, -1 elsewhere)",
    "S3": "(2; -1 at X, 1 on two lines through X)",
    "S4": "(3+w; -1 on l-P, 0 on m-P, 1 elsewhere)",
    "S5": "(3+2w; 0 at triangle vertices, 1 on its edges, -1 elsewhere)",
    "B1": "(3+2w; 0 on l-P, 1 on m-P, -1 elsewhere)",
}


def in_family(plane: Plane, x: Sequence[Pair], name: str) -> bool:
    x0, pred = FAMILIES[name]
    prof = profile(x, x0)
    return prof is not None and None not in prof and pred(plane, prof)


@dataclass(frozen=True)
class Step:
    name: str
    a: EVec
    b: EVec
    b_family: str
    out_family: str
    expected_sum: EVec | None = None


def derivation_steps(M: L131Model) -> list[Step]:
    """The explicit root pairs (a, b) whose sums move through the families."""
    P = M.plane
    l, m = 0, 1
    p = P.meet(l, m)
    lp = sorted(P.line_points[l] - {p})
    mp = sorted(P.line_points[m] - {p})
    line_l = M.line_roots[l]
    steps = []
    # step 1: a = (-w; -1 on m)
    a = mv(_neg(W), {q: (-1, 0) for q in P.line_points[m]})
    exp = mv((1, -1), {**{q: ONE for q in lp}, **{q: (-1, 0) for q in mp}})
    steps.append(Step("step1", a, line_l, "line", "S1", exp))
    # step 2: b = (theta; 1 on l-P, -1 on m-P), a on the line n through Q1 in l-P and Q2 in m-P
    b = mv(THETA, {**{q: ONE for q in lp}, **{q: (-1, 0) for q in mp}})
    q1, q2 = lp[0], mp[0]
    n = P.line_through(q1, q2)
    rest = {q: ONE for q in P.line_points[n] - {q1, q2}}
    a = mv(ONE, {**rest, q1: WB, q2: ONE})
    steps.append(Step("step2", a, b, "S1", "S2"))
    # step 3: a on a second line m through P with w at P
    a = mv(ONE, {**{q: ONE for q in mp}, p: W})
    steps.append(Step("step3", a, line_l, "line", "S3"))
    # step 4: b = (2; -1 at X, 1 on l1 u l2 minus X), a on a third line n through X
    x = p
    l1, l2, n3, k4 = sorted(P.point_lines[x])
    b4 = mv((2, 0), {**{q: ONE for q in (P.line_points[l1] | P.line_points[l2]) - {x}}, x: (-1, 0)})
    a = mv(_neg(WB), {**{q: (-1, 0) for q in P.line_points[n3] - {x}}, x: _neg(W)})
    steps.append(Step("step4", a, b4, "S3", "S4"))
    # conjugate variant of step 4, landing in the family of the first batch
    a = mv(_neg(W), {**{q: (-1, 0) for q in P.line_points[n3] - {x}}, x: _neg(WB)})
    steps.append(Step("step4c", a, b4, "S3", "B1"))
    # step 5: b = (3+w; -1 on l-P, 0 on m-P, 1 elsewhere), a on the line through A in l-P and B in m-P
    b5 = mv((3, 1), {q: (-1, 0) if q in lp else ZERO if q in mp else ONE for q in range(13)})
    A, B = lp[0], mp[0]
    n = P.line_through(A, B)
    a = mv(W, {**{q: W for q in P.line_points[n] - {A, B}}, A: ONE, B: W})
    steps.append(Step("step5", a, b5, "S4", "S5"))
    return steps


def step_checks(M: L131Model, step: Step) -> list[VerificationRecord]:
    a_, b, s = step.a, step.b, vadd(step.a, step.b)
    anc = "adding roots with <a, b> in {w-1, wb-1} gives a root whose triflection the pair generates"
    Ta, Tb, Ts = triflection(a_, SIGNS), triflection(b, SIGNS), triflection(s, SIGNS)
    G = closure_group([Ta, Tb])
    pre = f"derive.{step.name}"
    out = [
        check(f"{pre}.a_root", "a is a root of L", True, M.is_root(a_), anc),
        check(f"{pre}.b_root", "b is a root of L", True, M.is_root(b), anc),
        check(f"{pre}.a_family", "a has the shape " + FAMILY_DESCRIPTIONS["line"], True,
              in_family(M.plane, a_, "line"), anc),
        check(f"{pre}.b_family", "b has the shape " + FAMILY_DESCRIPTIONS[step.b_family], True,
              in_family(M.plane, b, step.b_family), anc),
        check(f"{pre}.ip", "<a, b> is w-1 or wb-1", True, ip(a_, b) in ((-1, 1), (-2, -1)), anc),
        check(f"{pre}.sum_root", "a+b is a root of L", True, M.is_root(s), anc),
        check(f"{pre}.closure_order", "order of the group generated by the two triflections", 24, G.order, anc),
        check(f"{pre}.sum_in_closure", "the triflection of a+b lies in that group", True, Ts in G, anc),
        check(f"{pre}.sum_family", "a+b has the shape " + FAMILY_DESCRIPTIONS[step.out_family], True,
              in_family(M.plane, s, step.out_family), anc),
    ]
    if step.expected_sum is not None:
        out.append(check(f"{pre}.sum_exact", "a+b equals the stated root", step.expected_sum, s, anc))
    return out


def batch_one(M: L131Model) -> dict[tuple[int, int], EVec]:
    """r_ij = (2+theta; 0 on l_i-P, wb on l_j-P, -1 elsewhere) for ordered pairs of lines."""
    P = M.plane
    out = {}
    for i, j in itertools.permutations(range(13), 2):
        p = P.meet(i, j)
        co = {q: (-1, 0) for q in range(13)}
        for q in P.line_points[i] - {p}:
            co[q] = ZERO
        for q in P.line_points[j] - {p}:
            co[q] = WB
        out[i, j] = mv((3, 2), co)
    return out


def batch_two(M: L131Model) -> dict[tuple[int, int, int], EVec]:
    """(-2wb; -1 at the vertices of a triangle, 0 on its edges, wb elsewhere)."""
    P = M.plane
    out = {}
    for t in P.triangles():
        vert, edge = _triangle(P, set(t))
        out[t] = mv((2, 2), {q: (-1, 0) if q in vert else ZERO if q in edge else WB for q in range(13)})
    return out


def batch_checks(M: L131Model, b1: dict, b2: dict) -> list[VerificationRecord]:
    anc = "the 390 roots r with <r, rho> = theta and rho + r a root"
    P, rho = M.plane, M.rho
    out = [check("batches.sizes", "sizes of the two batches", (156, 234), (len(b1), len(b2)), anc)]
    allr = list(b1.values()) + list(b2.values())
    out.append(check("batches.distinct", "the 390 roots are pairwise distinct", 390, len(set(allr)), anc))
    for tag, batch, fam, sfam in (("one", b1, "B1", "S1"), ("two", b2, "S2", "S5")):
        rs = list(batch.values())
        out += [
            check(f"batches.{tag}.roots", "roots of L satisfying the congruences", len(rs),
                  sum(M.is_root(r) and M.satisfies_congruences(r) for r in rs), anc),
            check(f"batches.{tag}.ip_rho", "roots with <r, rho> = theta", len(rs),
                  sum(ip(r, rho) == THETA for r in rs), anc),
            check(f"batches.{tag}.rho_plus_r", "roots with rho + r a root of L", len(rs),
                  sum(M.is_root(vadd(rho, r)) for r in rs), anc),
            check(f"batches.{tag}.family", "roots of shape " + FAMILY_DESCRIPTIONS[fam], len(rs),
                  sum(in_family(P, r, fam) for r in rs), anc),
            check(f"batches.{tag}.rho_plus_r_family", "rho + r of shape " + FAMILY_DESCRIPTIONS[sfam],
                  len(rs), sum(in_family(P, vadd(rho, r), sfam) for r in rs), anc),
        ]
    # rho + r_ij = (-1+w; 1 on l_i-P, -w on l_j-P, 0 elsewhere)
    exact = 0
    for (i, j), r in b1.items():
        p = P.meet(i, j)
        e = mv((-1, 1), {**{q: ONE for q in P.line_points[i] - {p}}, **{q: _neg(W) for q in P.line_points[j] - {p}}})
        exact += vadd(rho, r) == e
    out.append(check("batches.one.rho_plus_r_exact", "rho + r_ij = (-1+w; 1 on l_i-P, -w on l_j-P, 0)",
                     156, exact, anc))
    return out


def span_checks(M: L131Model, b1: dict, b2: dict) -> list[VerificationRecord]:
    anc = "differences of the 390 roots span rho-perp"
    P, L, rho = M.plane, M.lattice, M.rho
    delta = {(i, j): vscale(_neg(W), vsub(b1[i, j], b1[j, i])) for i, j in b1}

    def chi(i, j):
        p = P.meet(i, j)
        return mv(ZERO, {**{q: ONE for q in P.line_points[i] - {p}},
                         **{q: (-1, 0) for q in P.line_points[j] - {p}}})

    out = [
        check("span.delta.shape", "delta_ij = -w(r_ij - r_ji) is (0; 1 on l_i-P, -1 on l_j-P, 0)", 156,
              sum(delta[k] == chi(*k) for k in delta), anc),
        check("span.delta.norm", "norms of delta_ij", (6,), tuple(sorted({norm(d) for d in delta.values()})), anc),
        check("span.delta.chain", "<delta_ij, delta_jk> over distinct i, j, k", ((-3, 0),),
              tuple(sorted({ip(delta[i, j], delta[j, k]) for i, j, k in itertools.permutations(range(13), 3)})),
              anc),
        check("span.delta.disjoint", "<delta_ij, delta_kl> over distinct i, j, k, l", ((0, 0),),
              tuple(sorted({ip(delta[i, j], delta[k, l])
                            for i, j, k, l in itertools.permutations(range(13), 4)})), anc),
    ]
    general = [t for t in itertools.permutations(range(13), 3)
               if not P.line_points[t[0]] & P.line_points[t[1]] & P.line_points[t[2]]]
    strict = sum(1 for i, j, k in general
                 if any(c % 3 for c in ip(vsub(b1[i, j], b1[j, k]), delta[i, k])))
    out.append(check("span.strict", "general line triples with <r_ij - r_jk, delta_ik> outside 3E",
                     len(general), strict, anc))
    r1 = list(b1.values())
    r2 = list(b2.values())
    N = HermitianLattice.from_generators([vsub(r, r1[0]) for r in r1[1:]], SIGNS, "N")
    X = orth_complement(L, [mv(ONE), rho], name="X")
    full = HermitianLattice.from_generators([vsub(r, r1[0]) for r in r1[1:] + r2], SIGNS)
    perp = orth_complement(L, [rho], name="rho-perp")
    out += [
        check("span.N.rank", "rank of the span N of first-batch differences", 12, N.rank, anc),
        check("span.N_equals_X", "N = {(0; x) in L : sum x = 0}", True, N.same_module(X), anc),
        check("span.full_rank", "rank of the span of all differences", 13, full.rank, anc),
        check("span.full_equals_perp", "all differences span rho-perp in L", True, full.same_module(perp), anc),
    ]
    return out


def root_derivation(M: L131Model) -> list[VerificationRecord]:
    out = []
    for st in derivation_steps(M):
        out += step_checks(M, st)
    b1, b2 = batch_one(M), batch_two(M)
    out += batch_checks(M, b1, b2)
    out += span_checks(M, b1, b2)
    out += sixth_root_suite(M, b1, b2)
    return out


# ---------------------------------------------------------------------------
# sixth roots of unity from pairs of triflections

PRIMITIVE_SIXTH = ((0, -1), (1, 1))  # -w and -wb


def scalar_multiple(v: ScaledEVector, rho: Sequence[Pair]) -> Pair | None:
    """z with v = z rho when v is a unit multiple of rho."""
    if v.denom != 1:
        return None
    for u in UNIT_PAIRS:
        if vscale(u, rho) == v.entries:
            return u
    return None


def sixth_root(M: L131Model, r: Sequence[Pair], r_first: bool = True) -> Pair | None:
    """Image of rho under T_r then T_{rho+r} (or the other order), as a unit scalar."""
    Tr = triflection(r, SIGNS)
    Ts = triflection(vadd(M.rho, r), SIGNS)
    first, second = (Tr, Ts) if r_first else (Ts, Tr)
    return scalar_multiple(apply(apply(M.rho, first), second), M.rho)


def sixth_root_checks(M: L131Model, r: Sequence[Pair], tag: str) -> list[VerificationRecord]:
    anc = "two triflections compose to multiply rho by a primitive 6th root of unity"
    z = sixth_root(M, r)
    zeta_ok = z in PRIMITIVE_SIXTH
    units = [sixth_root_scaled(M, r, u) for u in UNIT_PAIRS]
    pre = f"sixth.{tag}"
    return [
        check(f"{pre}.hypotheses", "<r, rho> = theta, r a root, rho + r a root", True,
              ip(r, M.rho) == THETA and M.is_root(r) and M.is_root(vadd(M.rho, r)), anc),
        check(f"{pre}.primitive", "rho T_r T_(rho+r) is z rho with z^3 = -1 and z != -1", True, zeta_ok, anc),
        check(f"{pre}.unit_multiples", "the same z for the six unit multiples of r", True,
              all(u == z for u in units), anc),
        check(f"{pre}.other_order", "rho T_(rho+r) T_r equals (2+w) rho + 2w r, not a multiple of rho",
              (vadd(vscale((2, 1), M.rho), vscale((0, 2), r)), False),
              (reverse_image(M, r), sixth_root(M, r, r_first=False) is not None), anc),
    ]


def reverse_image(M: L131Model, r: Sequence[Pair]) -> EVec | None:
    """rho T_(rho+r) T_r as an integral vector."""
    v = apply(apply(M.rho, triflection(vadd(M.rho, r), SIGNS)), triflection(r, SIGNS))
    return v.entries if v.denom == 1 else None


def sixth_root_scaled(M: L131Model, r: Sequence[Pair], u: Pair) -> Pair | None:
    ur = vscale(u, r)
    Tr = triflection(ur, SIGNS)
    Ts = triflection(vscale(u, vadd(M.rho, r)), SIGNS)
    return scalar_multiple(apply(apply(M.rho, Tr), Ts), M.rho)


def sixth_root_suite(M: L131Model, b1: dict | None = None, b2: dict | None = None) -> list[VerificationRecord]:
    b1 = b1 if b1 is not None else batch_one(M)
    b2 = b2 if b2 is not None else batch_two(M)
    out = sixth_root_checks(M, M.point_roots[0], "point_root")
    out += sixth_root_checks(M, next(iter(b1.values())), "batch_one")
    out += sixth_root_checks(M, next(iter(b2.values())), "batch_two")
    return out
