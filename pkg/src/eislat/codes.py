"""Linear codes over F3 and F4: duals, weight census, and the standard codes.

F4 symbols use the encoding of :mod:`eislat.fields` (0, 1, v, v^2 are
0, 1, 2, 3).  Duals over F3 use the standard bilinear form and over F4 the
Hermitian form sum x_i y_i^2.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .fields import F4_CONJ, Field, FMatrix, get_field, in_span

MAX_ENUM_DIMENSION = 12


class CodeSelfCheckError(AssertionError):
    pass


@dataclass(frozen=True)
class Code:
    field: Field
    generator: tuple[tuple[int, ...], ...]
    length: int
    name: str = ""

    @classmethod
    def of(cls, field: str | Field, rows: Sequence[Sequence[int]], length: int | None = None,
           name: str = "") -> Code:
        f = get_field(field)
        n = length if length is not None else len(rows[0])
        m = FMatrix.of(f, rows, n).row_space()
        return cls(f, m.rows, n, name)

    @property
    def dimension(self) -> int:
        return len(self.generator)

    @property
    def size(self) -> int:
        return self.field.q ** self.dimension

    @cached_property
    def _rref(self):
        return FMatrix(self.field, self.generator, self.length).rref()

    def __contains__(self, v: Sequence[int]) -> bool:
        rows, piv = self._rref
        return in_span(rows, piv, v, self.field)

    def codewords(self) -> Iterator[tuple[int, ...]]:
        if self.dimension > MAX_ENUM_DIMENSION:
            raise ValueError(f"refusing to enumerate a code of dimension {self.dimension}")
        f = self.field
        for coeffs in itertools.product(range(f.q), repeat=self.dimension):
            w = [0] * self.length
            for c, g in zip(coeffs, self.generator):
                if c:
                    w = [f.add(x, f.mul(c, y)) for x, y in zip(w, g)]
            yield tuple(w)

    def dual(self) -> Code:
        f = self.field
        ker = FMatrix(f, self.generator, self.length).kernel() if self.generator else None
        if ker is None:
            rows = [tuple(1 if i == j else 0 for j in range(self.length)) for i in range(self.length)]
        else:
            rows = list(ker.rows)
        if f.q == 4:  # Hermitian dual = conjugate of the bilinear dual
            rows = [tuple(F4_CONJ[x] for x in r) for r in rows]
        if not rows:
            return Code(f, (), self.length, f"{self.name}^perp")
        return Code.of(f, rows, self.length, f"{self.name}^perp")

    def same_code(self, other: Code) -> bool:
        return self.field == other.field and self.length == other.length and self.generator == other.generator

    def is_self_orthogonal(self) -> bool:
        return all(self.field.dot(x, y) == 0 for x in self.generator for y in self.generator)

    def is_self_dual(self) -> bool:
        return 2 * self.dimension == self.length and self.is_self_orthogonal()

    def weight_census(self) -> dict[int, int]:
        cnt = Counter(sum(1 for x in w if x) for w in self.codewords())
        return {k: cnt.get(k, 0) for k in range(self.length + 1)}

    def min_weight(self) -> int:
        ws = [w for w, c in self.weight_census().items() if c and w > 0]
        return min(ws) if ws else 0


def zero_code(field: str, length: int) -> Code:
    return Code(get_field(field), (), length, "zero")


# the image of w in F4 is 2 in the encoding; its square is 3
_V = 2

TETRACODE_ROWS = ((0, 1, 1, 1), (1, 0, 1, 2))
HEXACODE_ROWS = (
    (1, 0, 0, 1, _V, _V),
    (0, 1, 0, _V, 1, _V),
    (0, 0, 1, _V, _V, 1),
)
GOLAY_ROWS = (
    (1, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1),
    (0, 1, 0, 0, 0, 0, 1, 0, 1, 2, 2, 1),
    (0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 2, 2),
    (0, 0, 0, 1, 0, 0, 1, 2, 1, 0, 1, 2),
    (0, 0, 0, 0, 1, 0, 1, 2, 2, 1, 0, 1),
    (0, 0, 0, 0, 0, 1, 1, 1, 2, 2, 1, 0),
)


def self_check(code: Code, length: int, dimension: int, min_weight: int) -> Code:
    """Verify the defining parameters of a built-in code (self-dual [n, k, d])."""
    if code.length != length or code.dimension != dimension:
        raise CodeSelfCheckError(f"{code.name}: expected [{length},{dimension}], got [{code.length},{code.dimension}]")
    if not code.is_self_dual():
        raise CodeSelfCheckError(f"{code.name}: not self-dual")
    mw = code.min_weight()
    if mw != min_weight:
        raise CodeSelfCheckError(f"{code.name}: minimum weight {mw}, expected {min_weight}")
    return code


def tetracode(rows=None) -> Code:
    return self_check(Code.of("F3", rows or TETRACODE_ROWS, 4, "tetracode"), 4, 2, 3)


def hexacode(rows=None) -> Code:
    return self_check(Code.of("F4", rows or HEXACODE_ROWS, 6, "hexacode"), 6, 3, 4)


def ternary_golay(rows=None) -> Code:
    return self_check(Code.of("F3", rows or GOLAY_ROWS, 12, "ternary Golay"), 12, 6, 6)


def standard_codes() -> dict[str, Code]:
    return {"tetracode": tetracode(), "hexacode": hexacode(), "golay": ternary_golay()}


STANDARD_CENSUS = {
    "tetracode": {0: 1, 3: 8},
    "hexacode": {0: 1, 4: 45, 6: 18},
    "golay": {0: 1, 6: 264, 9: 440, 12: 24},
}


def standard_code_checks():
    """Verification records for the three built-in self-dual codes."""
    from .report import check
    out = []
    builders = {"tetracode": tetracode, "hexacode": hexacode, "golay": ternary_golay}
    for name, build in builders.items():
        anc = f"the {name} is self-dual with the stated minimum weight"
        try:
            code = build()
        except CodeSelfCheckError as exc:
            out.append(check(f"codes.{name}.self_check", "built-in generator passes its self-check",
                             "ok", str(exc), anc))
            continue
        out.append(check(f"codes.{name}.self_check", "built-in generator passes its self-check", "ok", "ok", anc))
        census = {w: c for w, c in code.weight_census().items() if c}
        out.append(check(f"codes.{name}.census", "nonzero weight counts", STANDARD_CENSUS[name], census, anc))
        out.append(check(f"codes.{name}.dual", "dual code equals the code", True, code.dual().same_code(code), anc))
    return out
