"""The projective plane P^2(F3), its collineation group and incidence graph.

Points and lines are normalised triples over F3 (first nonzero coordinate 1),
sorted lexicographically.  In the incidence graph the 13 points are nodes
0..12 (black) and the 13 lines are nodes 13..25 (white).
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .codes import Code
from .fields import F3

BLACK, WHITE = 0, 1
Perm = tuple[int, ...]


def _normalize(v: Sequence[int]) -> tuple[int, int, int]:
    v = tuple(x % 3 for x in v)
    lead = next(x for x in v if x)
    inv = 1 if lead == 1 else 2
    return tuple((inv * x) % 3 for x in v)


def projective_points() -> list[tuple[int, int, int]]:
    pts = {_normalize(v) for v in itertools.product(range(3), repeat=3) if any(v)}
    return sorted(pts)


class Plane:
    """P^2(F3) with fixed point and line orderings."""

    def __init__(self):
        self.points = projective_points()
        self.lines = projective_points()  # dual coordinates
        self.point_index = {p: i for i, p in enumerate(self.points)}
        self.line_index = {l: i for i, l in enumerate(self.lines)}
        inc = np.zeros((13, 13), dtype=np.int8)
        for i, p in enumerate(self.points):
            for j, l in enumerate(self.lines):
                if sum(a * b for a, b in zip(p, l)) % 3 == 0:
                    inc[i, j] = 1
        self.incidence = inc  # rows: points, columns: lines
        self.line_points = [frozenset(np.flatnonzero(inc[:, j]).tolist()) for j in range(13)]
        self.point_lines = [frozenset(np.flatnonzero(inc[i, :]).tolist()) for i in range(13)]
        self._line_of_set = {s: j for j, s in enumerate(self.line_points)}

    def incident(self, p: int, l: int) -> bool:
        return bool(self.incidence[p, l])

    def line_through(self, p: int, q: int) -> int:
        (l,) = self.point_lines[p] & self.point_lines[q]
        return l

    def meet(self, l: int, m: int) -> int:
        (p,) = self.line_points[l] & self.line_points[m]
        return p

    def line_vector(self, l: int) -> tuple[int, ...]:
        """Characteristic vector of a line in F3^13."""
        return tuple(1 if i in self.line_points[l] else 0 for i in range(13))

    def collinear(self, pts: Sequence[int]) -> bool:
        return any(set(pts) <= self.line_points[l] for l in range(13))

    def check_axioms(self) -> bool:
        ok = all(len(s) == 4 for s in self.line_points) and all(len(s) == 4 for s in self.point_lines)
        ok &= all(len(self.line_points[a] & self.line_points[b]) == 1 for a in range(13) for b in range(a))
        ok &= all(len(self.point_lines[a] & self.point_lines[b]) == 1 for a in range(13) for b in range(a))
        return bool(ok)

    def line_image(self, perm: Perm) -> Perm:
        """Permutation of lines induced by a collineation given on points."""
        return tuple(self._line_of_set[frozenset(perm[p] for p in self.line_points[l])] for l in range(13))

    def matrix_perm(self, M: Sequence[Sequence[int]]) -> Perm:
        """Point permutation p -> p M of an invertible 3x3 matrix over F3."""
        out = []
        for p in self.points:
            img = tuple(sum(p[k] * M[k][j] for k in range(3)) % 3 for j in range(3))
            out.append(self.point_index[_normalize(img)])
        return tuple(out)

    def triangles(self) -> list[tuple[int, int, int]]:
        return [t for t in itertools.combinations(range(13), 3) if not self.collinear(t)]

    def general_position_quadruples(self) -> Iterator[tuple[int, int, int, int]]:
        for q in itertools.combinations(range(13), 4):
            if not any(self.collinear(t) for t in itertools.combinations(q, 3)):
                yield q


# ---------------------------------------------------------------------------
# permutation groups

def compose(p: Perm, q: Perm) -> Perm:
    """Apply p, then q."""
    return tuple(q[i] for i in p)


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


@dataclass
class PermGroup:
    gens: tuple[Perm, ...]
    degree: int
    cap: int = 10**6

    @cached_property
    def elements(self) -> list[Perm]:
        ident = tuple(range(self.degree))
        seen = {ident}
        out = [ident]
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens:
                    y = compose(x, g)
                    if y not in seen:
                        seen.add(y)
                        out.append(y)
                        nxt.append(y)
                        if len(seen) > self.cap:
                            raise RuntimeError(f"permutation group exceeds {self.cap} elements")
            frontier = nxt
        return out

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return tuple(p) in self.element_set

    def orbit(self, x: int) -> set[int]:
        orb = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for g in self.gens:
                    z = g[y]
                    if z not in orb:
                        orb.add(z)
                        nxt.append(z)
            frontier = nxt
        return orb


# one monomial matrix and one transvection
L33_GENERATORS = (
    ((0, 1, 0), (0, 0, 1), (2, 0, 0)),
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
)
L33_ORDER = 5616


def l33_group(plane: Plane) -> PermGroup:
    G = PermGroup(tuple(plane.matrix_perm(M) for M in L33_GENERATORS), 13)
    if G.order != L33_ORDER:
        raise AssertionError(f"generators give a group of order {G.order}, not {L33_ORDER}")
    return G


# ---------------------------------------------------------------------------
# graphs

@dataclass
class ColoredGraph:
    colors: tuple[int, ...]
    adj: tuple[int, ...]  # bitmasks
    labels: tuple[str, ...] = field(default=())

    @property
    def n(self) -> int:
        return len(self.colors)

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return [v for v in range(self.n) if self.adj[u] >> v & 1]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.adjacent(u, v)]

    def is_bipartite_by_color(self) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v in self.edges())


def incidence_graph(plane: Plane) -> ColoredGraph:
    adj = [0] * 26
    for p in range(13):
        for l in range(13):
            if plane.incident(p, l):
                adj[p] |= 1 << (13 + l)
                adj[13 + l] |= 1 << p
    labels = tuple(f"P{i}" for i in range(13)) + tuple(f"L{j}" for j in range(13))
    return ColoredGraph(tuple([BLACK] * 13 + [WHITE] * 13), tuple(adj), labels)


def y_diagram(arm: int = 5, center_color: int = BLACK) -> ColoredGraph:
    """The tree Y_{arm,arm,arm}: node 0 is the centre, arm a is 1+arm*a .. arm*(a+1)."""
    n = 1 + 3 * arm
    adj = [0] * n
    colors = [0] * n
    colors[0] = center_color
    for a in range(3):
        prev = 0
        for k in range(arm):
            u = 1 + arm * a + k
            adj[u] |= 1 << prev
            adj[prev] |= 1 << u
            colors[u] = center_color ^ ((k + 1) & 1)
            prev = u
    labels = ("c",) + tuple(f"{'abc'[a]}{k + 1}" for a in range(3) for k in range(arm))
    return ColoredGraph(tuple(colors), tuple(adj), labels)


def y_arms(arm: int = 5) -> list[list[int]]:
    return [[1 + arm * a + k for k in range(arm)] for a in range(3)]


def induced_embeddings(pattern: ColoredGraph, host: ColoredGraph) -> list[tuple[int, ...]]:
    """All injective color-preserving maps of a tree preserving adjacency and non-adjacency."""
    n = pattern.n
    order = [0]
    seen = {0}
    i = 0
    while i < len(order):
        for v in pattern.neighbors(order[i]):
            if v not in seen:
                seen.add(v)
                order.append(v)
        i += 1
    if len(order) != n:
        raise ValueError("pattern graph must be connected")
    parent = [-1] * n
    for k in range(1, n):
        u = order[k]
        parent[k] = next(w for w in order[:k] if pattern.adjacent(u, w))
        if sum(1 for w in order[:k] if pattern.adjacent(u, w)) != 1:
            raise ValueError("pattern graph must be a tree")
    nbrs = [host.neighbors(x) for x in range(host.n)]
    out: list[tuple[int, ...]] = []
    img = [-1] * n

    def rec(k: int, used: int) -> None:
        if k == n:
            out.append(tuple(img))
            return
        u = order[k]
        col = pattern.colors[u]
        if k:
            px = img[parent[k]]
            allowed = 1 << px
            cands = nbrs[px]
        else:
            allowed = 0
            cands = range(host.n)
        for x in cands:
            # in a tree only the parent is adjacent among the placed nodes
            if used >> x & 1 or host.colors[x] != col or host.adj[x] & used != allowed:
                continue
            img[u] = x
            rec(k + 1, used | 1 << x)
        img[u] = -1

    rec(0, 0)
    return sorted(out)


def graph_automorphisms(plane: Plane, group: PermGroup) -> np.ndarray:
    """Node permutations of the incidence graph for every element of the group."""
    rows = []
    for p in group.elements:
        lp = plane.line_image(p)
        rows.append(list(p) + [13 + x for x in lp])
    return np.array(rows, dtype=np.int16)


def orbit_of_sets(sets: Sequence[frozenset], node_perms: np.ndarray) -> set[frozenset]:
    s0 = sorted(sets[0])
    return {frozenset(node_perms[k, s0].tolist()) for k in range(node_perms.shape[0])}


# ---------------------------------------------------------------------------
# path and cycle facts in the incidence graph

def induced_paths(g: ColoredGraph, length: int) -> list[tuple[int, ...]]:
    """Induced paths on ``length`` nodes, each listed once (first node < last node)."""
    out = []
    closed = [g.adj[v] | 1 << v for v in range(g.n)]
    path: list[int] = []

    def rec(blocked: int) -> None:
        last = path[-1]
        if len(path) == length:
            if path[0] < last:
                out.append(tuple(path))
            return
        cands = g.adj[last] & ~blocked
        while cands:
            low = cands & -cands
            x = low.bit_length() - 1
            cands ^= low
            path.append(x)
            # every node but the new end is now closed off
            rec(blocked | closed[last] | 1 << x)
            path.pop()

    for s in range(g.n):
        path.append(s)
        rec(1 << s)
        path.pop()
    return out


def _induced_is_path(g: ColoredGraph, nodes: Sequence[int]) -> bool:
    mask = 0
    for v in nodes:
        mask |= 1 << v
    degs = sorted(bin(g.adj[v] & mask).count("1") for v in nodes)
    k = len(nodes)
    if k == 1:
        return degs == [0]
    if degs != [1, 1] + [2] * (k - 2):
        return False
    # connected: grow from one node
    start = nodes[0]
    reach = 1 << start
    frontier = reach
    while frontier:
        nb = 0
        f = frontier
        while f:
            low = f & -f
            nb |= g.adj[low.bit_length() - 1]
            f ^= low
        nb &= mask & ~reach
        reach |= nb
        frontier = nb
    return reach == mask


@dataclass
class PathFacts:
    paths: int
    unique_extensions: int
    complement_is_path: int
    counterexample: tuple | None


def cycle_extension_facts(g: ColoredGraph, length: int = 11, tail: int = 4) -> PathFacts:
    """For every induced path: count induced-cycle completions and test the leftover nodes."""
    paths = induced_paths(g, length)
    closed = [g.adj[v] | 1 << v for v in range(g.n)]
    uniq = comp_ok = 0
    bad = None
    for P in paths:
        interior = 0
        for v in P[1:-1]:
            interior |= closed[v]
        pmask = 0
        for v in P:
            pmask |= 1 << v
        cands = g.adj[P[0]] & g.adj[P[-1]] & ~interior & ~pmask
        cnt = bin(cands).count("1")
        if cnt != 1:
            bad = bad or ("extensions", P, cnt)
            continue
        uniq += 1
        cmask = pmask | cands
        nb = cmask
        for v in range(g.n):
            if cmask >> v & 1:
                nb |= g.adj[v]
        rest = [v for v in range(g.n) if not (nb >> v & 1)]
        if len(rest) == tail and _induced_is_path(g, rest):
            comp_ok += 1
        else:
            bad = bad or ("complement", P, tuple(rest))
    return PathFacts(len(paths), uniq, comp_ok, bad)


def find_extension(node_perms: np.ndarray, src: Sequence[int], dst: Sequence[int]) -> int | None:
    """Index of a group element mapping src[i] to dst[i] for all i, if any."""
    hits = np.all(node_perms[:, list(src)] == np.array(dst, dtype=node_perms.dtype), axis=1)
    idx = np.flatnonzero(hits)
    return int(idx[0]) if idx.size else None


def line_difference_code(plane: Plane) -> Code:
    rows = []
    for a in range(13):
        for b in range(a + 1, 13):
            rows.append(tuple((x - y) % 3 for x, y in zip(plane.line_vector(a), plane.line_vector(b))))
    return Code.of(F3, rows, 13, "C")


def line_code(plane: Plane) -> Code:
    return Code.of(F3, [plane.line_vector(l) for l in range(13)], 13, "lines")


# ---------------------------------------------------------------------------
# named families of codewords in C and C^perp

Word = tuple[int, ...]


def _chi(plane: Plane, pts) -> list[int]:
    return [1 if i in pts else 0 for i in range(13)]


def _word(v: Sequence[int]) -> Word:
    return tuple(x % 3 for x in v)


def sign_shape(w: Sequence[int]) -> tuple[int, int]:
    """(number of +1 entries, number of -1 entries) of an F3 word."""
    return sum(1 for x in w if x % 3 == 1), sum(1 for x in w if x % 3 == 2)


def general_line_triples(plane: Plane) -> list[tuple[int, int, int]]:
    return [t for t in itertools.combinations(range(13), 3)
            if not plane.line_points[t[0]] & plane.line_points[t[1]] & plane.line_points[t[2]]]


def vertices_and_edges(plane: Plane, lines: Sequence[int]) -> tuple[set[int], set[int]]:
    """Points on two of three general lines, and points on exactly one."""
    cnt = Counter(p for l in lines for p in plane.line_points[l])
    return {p for p, c in cnt.items() if c == 2}, {p for p, c in cnt.items() if c == 1}


def c_families(plane: Plane) -> dict[str, set[Word]]:
    """Elements of C described through lines, keyed by description."""
    L = [plane.line_vector(l) for l in range(13)]
    ones = [1] * 13
    fam: dict[str, set[Word]] = {"zero": {(0,) * 13}}
    fam["difference of lines"] = {_word(a - b for a, b in zip(L[i], L[j]))
                                  for i in range(13) for j in range(13) if i != j}
    fam["affine plane"] = {_word(s * (o - x) for o, x in zip(ones, L[i])) for i in range(13) for s in (1, -1)}
    fam["sum of 3 general lines"] = {_word(s * (L[a][k] + L[b][k] + L[c][k]) for k in range(13))
                                     for a, b, c in general_line_triples(plane) for s in (1, -1)}
    conc = set()
    for p in range(13):
        ls = sorted(plane.point_lines[p])
        for pos in itertools.combinations(ls, 2):
            neg = [l for l in ls if l not in pos]
            conc.add(_word(L[pos[0]][k] + L[pos[1]][k] - L[neg[0]][k] - L[neg[1]][k] for k in range(13)))
    fam["two minus two concurrent lines"] = conc
    return fam


def cperp_sum_one_families(plane: Plane) -> dict[str, set[Word]]:
    """Elements of C^perp with coordinate sum 1, keyed by description."""
    L = [plane.line_vector(l) for l in range(13)]
    fam: dict[str, set[Word]] = {"line": {tuple(v) for v in L}}
    fam["sum of two lines negated"] = {_word(-(L[i][k] + L[j][k]) for k in range(13))
                                       for i in range(13) for j in range(i + 1, 13)}
    a, b = set(), set()
    for t in general_line_triples(plane):
        vert, edge = vertices_and_edges(plane, t)
        a.add(_word(-1 if p in vert else 0 if p in edge else 1 for p in range(13)))
        b.add(_word(0 if p in vert else -1 if p in edge else 1 for p in range(13)))
    fam["-1 on vertices, 0 on edges"] = a
    fam["0 on vertices, -1 on edges"] = b
    fam["-1 on l1-l2, 0 on l2-l1"] = {
        _word(-1 if L[i][p] and not L[j][p] else 0 if L[j][p] and not L[i][p] else 1 for p in range(13))
        for i in range(13) for j in range(13) if i != j}
    fam["line minus the rest"] = {_word(1 if x else -1 for x in L[i]) for i in range(13)}
    fam["all ones"] = {(1,) * 13}
    return fam


def shape_census(words: Iterable[Sequence[int]], merge_sign: bool = False) -> dict[tuple[int, int], int]:
    """Count words by sign shape; with merge_sign, w and -w share the key (min, max)."""
    cnt: Counter = Counter()
    for w in words:
        s = sign_shape(w)
        cnt[tuple(sorted(s)) if merge_sign else s] += 1
    return dict(sorted(cnt.items()))
