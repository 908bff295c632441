"""Linear algebra over F3 and F4, and spinning vectors under permutation groups.

F3 elements are 0, 1, 2.  F4 elements are encoded ``c0 + 2*c1`` for
``c0 + c1*v`` with v^2 = v + 1, so addition is XOR.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

F4_MUL = (
    (0, 0, 0, 0),
    (0, 1, 2, 3),
    (0, 2, 3, 1),
    (0, 3, 1, 2),
)
F4_INV = (None, 1, 3, 2)
F4_CONJ = (0, 1, 3, 2)  # x -> x^2


class Field:
    """Arithmetic for one of the two small fields."""

    def __init__(self, name: str):
        if name not in ("F3", "F4"):
            raise ValueError(f"unknown field {name!r}")
        self.name = name
        self.q = 3 if name == "F3" else 4

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)

    def elements(self) -> range:
        return range(self.q)

    def add(self, x: int, y: int) -> int:
        return (x + y) % 3 if self.q == 3 else x ^ y

    def neg(self, x: int) -> int:
        return (-x) % 3 if self.q == 3 else x

    def sub(self, x: int, y: int) -> int:
        return (x - y) % 3 if self.q == 3 else x ^ y

    def mul(self, x: int, y: int) -> int:
        return (x * y) % 3 if self.q == 3 else F4_MUL[x][y]

    def inv(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"inverse of 0 in {self.name}")
        return x if self.q == 3 else F4_INV[x]

    def conj(self, x: int) -> int:
        return x if self.q == 3 else F4_CONJ[x]

    def dot(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Standard bilinear form over F3, Hermitian form sum x_i y_i^2 over F4."""
        s = 0
        for a, b in zip(x, y):
            if a and b:
                s = self.add(s, self.mul(a, self.conj(b)))
        return s


F3 = Field("F3")
F4 = Field("F4")


def get_field(name: str | Field) -> Field:
    if isinstance(name, Field):
        return name
    return F3 if name == "F3" else F4


@dataclass(frozen=True)
class FMatrix:
    field: Field
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    @classmethod
    def of(cls, field: str | Field, rows: Sequence[Sequence[int]], ncols: int | None = None) -> FMatrix:
        f = get_field(field)
        rs = tuple(tuple(int(x) % f.q if f.q == 3 else int(x) for x in r) for r in rows)
        n = ncols if ncols is not None else (len(rs[0]) if rs else 0)
        for r in rs:
            if len(r) != n:
                raise ValueError("ragged matrix")
            if any(x < 0 or x >= f.q for x in r):
                raise ValueError(f"entry outside {f.name}")
        return cls(f, rs, n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def rref(self) -> tuple[list[list[int]], list[int]]:
        f = self.field
        A = [list(r) for r in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, len(A)) if A[i][c]), None)
            if p is None:
                continue
            A[p], A[r] = A[r], A[p]
            inv = f.inv(A[r][c])
            A[r] = [f.mul(inv, x) for x in A[r]]
            for i in range(len(A)):
                if i != r and A[i][c]:
                    k = A[i][c]
                    A[i] = [f.sub(x, f.mul(k, y)) for x, y in zip(A[i], A[r])]
            pivots.append(c)
            r += 1
        return A[:r], pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def row_space(self) -> FMatrix:
        rows, _ = self.rref()
        return FMatrix(self.field, tuple(tuple(r) for r in rows), self.ncols)

    def kernel(self) -> FMatrix:
        """Basis of {x : sum_j A_ij x_j = 0 for all i} (plain bilinear pairing)."""
        f = self.field
        rows, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in pivots]
        basis = []
        for fc in free:
            x = [0] * self.ncols
            x[fc] = 1
            for r, pc in zip(rows, pivots):
                x[pc] = f.neg(r[fc])
            basis.append(tuple(x))
        return FMatrix(f, tuple(basis), self.ncols)


def in_span(basis_rref: list[list[int]], pivots: list[int], v: Sequence[int], f: Field) -> bool:
    w = list(v)
    for r, c in zip(basis_rref, pivots):
        if w[c]:
            k = w[c]
            w = [f.sub(x, f.mul(k, y)) for x, y in zip(w, r)]
    return not any(w)


def apply_perm(perm: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """Move coordinate i to position perm[i]."""
    out = [0] * len(v)
    for i, x in enumerate(v):
        out[perm[i]] = x
    return tuple(out)


def spin(seeds: Sequence[Sequence[int]], gens: Sequence[Sequence[int]], field: str | Field = "F3") -> FMatrix:
    """Smallest subspace containing the seeds and closed under the permutations."""
    f = get_field(field)
    n = len(gens[0]) if gens else (len(seeds[0]) if seeds else 0)
    basis: list[list[int]] = []
    pivots: list[int] = []
    queue: list[tuple[int, ...]] = []

    def add(v: Sequence[int]) -> None:
        w = list(v)
        for r, c in zip(basis, pivots):
            if w[c]:
                k = w[c]
                w = [f.sub(x, f.mul(k, y)) for x, y in zip(w, r)]
        c = next((i for i, x in enumerate(w) if x), None)
        if c is None:
            return
        inv = f.inv(w[c])
        w = [f.mul(inv, x) for x in w]
        basis.append(w)
        pivots.append(c)
        queue.append(tuple(v))

    for s in seeds:
        add(s)
    while queue:
        v = queue.pop()
        for g in gens:
            add(apply_perm(g, v))
    return FMatrix(f, tuple(tuple(r) for r in basis), n).row_space() if basis else FMatrix(f, (), n)


# ---------------------------------------------------------------------------
# bitsliced F3 vectors for the exhaustive invariant-subspace scan
#
# A vector is a pair (ones, twos) of bitmasks over the coordinates.

def pack_f3(v: Sequence[int]) -> tuple[int, int]:
    ones = twos = 0
    for i, x in enumerate(v):
        if x % 3 == 1:
            ones |= 1 << i
        elif x % 3 == 2:
            twos |= 1 << i
    return ones, twos


def unpack_f3(x: tuple[int, int], n: int) -> tuple[int, ...]:
    o, t = x
    return tuple(1 if (o >> i) & 1 else 2 if (t >> i) & 1 else 0 for i in range(n))


def perm_table(perm: Sequence[int]) -> list[int]:
    """Lookup table mapping every bitmask to its image under the permutation."""
    n = len(perm)
    table = [0] * (1 << n)
    for i in range(n):
        bit = 1 << i
        img = 1 << perm[i]
        for m in range(bit, 1 << (i + 1)):
            table[m] = table[m - bit] | img
    return table


class PackedSpinner:
    """Repeated spins of F3 vectors under a fixed set of coordinate permutations."""

    def __init__(self, gens: Sequence[Sequence[int]]):
        self.n = len(gens[0])
        self.tables = [perm_table(g) for g in gens]

    def dimension(self, seeds: Sequence[tuple[int, int]], stop_at: int | None = None) -> int:
        tables = self.tables
        basis: dict[int, tuple[int, int]] = {}
        queue: list[tuple[int, int]] = []

        def add(o: int, t: int) -> None:
            while o | t:
                low = (o | t) & -(o | t)
                b = basis.get(low)
                if b is None:
                    if t & low:  # scale by 2 so the pivot is 1
                        o, t = t, o
                    basis[low] = (o, t)
                    queue.append((o, t))
                    return
                bo, bt = b
                if t & low:  # v + b
                    ao, at = o, t
                else:  # v - b == v + (-b)
                    ao, at = o, t
                    bo, bt = bt, bo
                za = ~(ao | at)
                zb = ~(bo | bt)
                o = (ao & zb) | (za & bo) | (at & bt)
                t = (at & zb) | (za & bt) | (ao & bo)

        for s in seeds:
            add(*s)
        while queue:
            if stop_at is not None and len(basis) >= stop_at:
                break
            o, t = queue.pop()
            for tab in tables:
                add(tab[o], tab[t])
        return len(basis)
