"""Exact arithmetic in the Eisenstein integers E = Z[w], w^2 + w + 1 = 0.

Elements are stored as ``a + b*w`` with Python integers.  The residue maps
to F3 = E/thetaE and F4 = E/2E live here too; F4 elements are encoded as
integers ``c0 + 2*c1`` meaning ``c0 + c1*v`` where v is the image of w.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable

# Values of magnitude above this are treated as overflow.  Every in-scope
# computation stays many orders of magnitude below it.
INT_LIMIT = 2**62


class EisensteinOverflowError(OverflowError):
    pass


def _check(n: int) -> int:
    if -INT_LIMIT <= n <= INT_LIMIT:
        return n
    raise EisensteinOverflowError(f"coefficient {n} exceeds the 62-bit limit")


class EisensteinInt:
    """The element ``a + b*w`` of Z[w]."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        object.__setattr__(self, "a", _check(int(a)))
        object.__setattr__(self, "b", _check(int(b)))

    def __setattr__(self, name, value):
        raise AttributeError("EisensteinInt is immutable")

    @classmethod
    def coerce(cls, x) -> EisensteinInt:
        if isinstance(x, EisensteinInt):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, tuple) and len(x) == 2:
            return cls(*x)
        raise TypeError(f"cannot interpret {x!r} as an Eisenstein integer")

    def pair(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __repr__(self) -> str:
        return f"EisensteinInt({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        w = "w" if abs(self.b) == 1 else f"{abs(self.b)}w"
        if self.a == 0:
            return ("-" if self.b < 0 else "") + w
        return f"{self.a}{'-' if self.b < 0 else '+'}{w}"

    def __eq__(self, other) -> bool:
        try:
            o = EisensteinInt.coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def __add__(self, other) -> EisensteinInt:
        o = EisensteinInt.coerce(other)
        return EisensteinInt(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other) -> EisensteinInt:
        o = EisensteinInt.coerce(other)
        return EisensteinInt(self.a - o.a, self.b - o.b)

    def __rsub__(self, other) -> EisensteinInt:
        return EisensteinInt.coerce(other) - self

    def __neg__(self) -> EisensteinInt:
        return EisensteinInt(-self.a, -self.b)

    def __mul__(self, other) -> EisensteinInt:
        o = EisensteinInt.coerce(other)
        return EisensteinInt(*emul(self.pair(), o.pair()))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> EisensteinInt:
        if k < 0:
            raise ValueError("negative powers are not ring elements")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def conj(self) -> EisensteinInt:
        return EisensteinInt(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def divmod(self, other) -> tuple[EisensteinInt, EisensteinInt]:
        q, r = edivmod(self.pair(), EisensteinInt.coerce(other).pair())
        return EisensteinInt(*q), EisensteinInt(*r)

    def __floordiv__(self, other) -> EisensteinInt:
        return self.divmod(other)[0]

    def __mod__(self, other) -> EisensteinInt:
        return self.divmod(other)[1]

    def divides(self, other) -> bool:
        """True when self | other."""
        o = EisensteinInt.coerce(other)
        if not self:
            return not o
        return exact_quotient(o.pair(), self.pair()) is not None

    def exact_div(self, other) -> EisensteinInt:
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError(f"{self} is not divisible by {other}")
        return q

    def is_unit(self) -> bool:
        return self.norm() == 1

    def canonical(self) -> EisensteinInt:
        return EisensteinInt(*canonical_associate(self.pair()))

    def mod_theta(self) -> int:
        return mod_theta(self.pair())

    def mod_two(self) -> int:
        return mod_two(self.pair())

    def to_complex(self) -> complex:
        return complex(self.a - self.b / 2, self.b * 3**0.5 / 2)


# --- pair-level kernels (used in the inner loops of the linear algebra) ---

Pair = tuple[int, int]


def emul(x: Pair, y: Pair) -> Pair:
    a, b = x
    c, d = y
    bd = b * d
    return (_check(a * c - bd), _check(a * d + b * c - bd))


def econj(x: Pair) -> Pair:
    return (x[0] - x[1], -x[1])


def enorm(x: Pair) -> int:
    a, b = x
    return a * a - a * b + b * b


def _round_half_toward_zero(num: int, den: int) -> int:
    # den > 0
    q, r = divmod(num, den)
    twice = 2 * r
    if twice > den or (twice == den and q < 0):
        q += 1
    return q


def edivmod(x: Pair, y: Pair) -> tuple[Pair, Pair]:
    """Euclidean division: x = q*y + r with norm(r) < norm(y).

    Both rational coordinates of x/y are rounded to the nearest integer, ties
    toward zero.
    """
    n = enorm(y)
    if n == 0:
        raise ZeroDivisionError("Eisenstein division by zero")
    s, t = emul(x, econj(y))
    q = (_round_half_toward_zero(s, n), _round_half_toward_zero(t, n))
    qy = emul(q, y)
    return q, (x[0] - qy[0], x[1] - qy[1])


def reduce_mod(x: Pair, y: Pair) -> Pair:
    """Canonical representative of x modulo yE.

    Coordinates of x/y are rounded half-up, which is translation invariant,
    so two elements of the same residue class get the same representative.
    """
    n = enorm(y)
    s, t = emul(x, econj(y))
    q = ((2 * s + n) // (2 * n), (2 * t + n) // (2 * n))
    qy = emul(q, y)
    return (x[0] - qy[0], x[1] - qy[1])


UNIT_PAIRS: tuple[Pair, ...] = ((1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1))


def canonical_associate(x: Pair) -> Pair:
    """The unit multiple of x maximising (a, b) lexicographically."""
    if x == (0, 0):
        return x
    return max(emul(u, x) for u in UNIT_PAIRS)


def unit_to_canonical(x: Pair) -> Pair:
    """The unit u with u*x == canonical_associate(x)."""
    best = max(UNIT_PAIRS, key=lambda u: emul(u, x))
    return best


def unit_inverse(u: Pair) -> Pair:
    return econj(u)


def exact_quotient(x: Pair, y: Pair) -> Pair | None:
    """x / y when y divides x, else None."""
    n = enorm(y)
    s, t = emul(x, econj(y))
    if s % n or t % n:
        return None
    return (s // n, t // n)


def egcd(x: Pair, y: Pair) -> Pair:
    while y != (0, 0):
        x, y = y, edivmod(x, y)[1]
    return canonical_associate(x)


def mod_theta(x: Pair) -> int:
    """Image in F3 = E/thetaE; w maps to 1."""
    return (x[0] + x[1]) % 3


def mod_two(x: Pair) -> int:
    """Image in F4 = E/2E encoded as c0 + 2*c1 (v = image of w is 2)."""
    return (x[0] % 2) + 2 * (x[1] % 2)


def divisible_by_theta(x: Pair) -> bool:
    return (x[0] + x[1]) % 3 == 0


def to_q(x: Pair) -> tuple[Fraction, Fraction]:
    return (Fraction(x[0]), Fraction(x[1]))


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)
OMEGA_BAR = EisensteinInt(-1, -1)
THETA = EisensteinInt(1, 2)
THETA_BAR = EisensteinInt(-1, -2)


def units() -> list[EisensteinInt]:
    """The six units +-1, +-w, +-w^2."""
    return [EisensteinInt(*u) for u in UNIT_PAIRS]


def cube_roots_of_unity() -> list[EisensteinInt]:
    return [ONE, OMEGA, OMEGA_BAR]


def residues(x) -> tuple[int, int]:
    """(image in F3, image in F4) of an Eisenstein integer."""
    p = EisensteinInt.coerce(x).pair()
    return mod_theta(p), mod_two(p)


def parse(text: str) -> EisensteinInt:
    """Parse strings such as ``"3"``, ``"-w"``, ``"2-3w"``, ``"theta"``."""
    s = text.replace(" ", "").replace("ω", "w")
    named = {"theta": THETA, "-theta": -THETA, "thetabar": THETA_BAR, "wbar": OMEGA_BAR, "-wbar": -OMEGA_BAR}
    if s in named:
        return named[s]
    a = b = 0
    i = 0
    terms: list[str] = []
    while i < len(s):
        j = i + 1
        while j < len(s) and s[j] not in "+-":
            j += 1
        terms.append(s[i:j])
        i = j
    for t in terms:
        if t.endswith("w"):
            c = t[:-1]
            b += int(c + "1") if c in ("", "+", "-") else int(c)
        else:
            a += int(t)
    return EisensteinInt(a, b)


def as_pairs(xs: Iterable) -> tuple[Pair, ...]:
    return tuple(EisensteinInt.coerce(x).pair() for x in xs)
