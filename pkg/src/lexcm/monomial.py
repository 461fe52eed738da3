"""Squarefree monomials of fixed degree under the lex order x1 > x2 > ... > xn.

A squarefree monomial is identified with its support, the strictly
increasing tuple of variable indices.  Comparing two supports entrywise,
the monomial whose first differing index is smaller is lex-greater.
"""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from itertools import combinations

from lexcm.errors import InvalidInputError

MAX_VARIABLES = 64


class Ordering(enum.Enum):
    GREATER = 1
    EQUAL = 0
    LESS = -1


@functools.total_ordering
@dataclass(frozen=True)
class SqfMonomial:
    """Squarefree monomial ``x_{s1} x_{s2} ... x_{sk}`` in ``n`` variables."""

    n: int
    support: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VARIABLES:
            raise InvalidInputError(f"n must lie in [1, {MAX_VARIABLES}], got {self.n}")
        support = tuple(self.support)
        object.__setattr__(self, "support", support)
        if not support:
            raise InvalidInputError("a monomial needs at least one variable")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise InvalidInputError(f"support must be strictly increasing: {support}")
        if support[0] < 1 or support[-1] > self.n:
            raise InvalidInputError(f"support {support} not inside [1, {self.n}]")

    @property
    def degree(self) -> int:
        return len(self.support)

    @property
    def mask(self) -> int:
        """Bitmask with bit ``j - 1`` set for every variable ``x_j``."""
        m = 0
        for j in self.support:
            m |= 1 << (j - 1)
        return m

    def __lt__(self, other: SqfMonomial) -> bool:
        return lex_compare(self, other) is Ordering.LESS

    def __str__(self) -> str:
        return "".join(f"x{j}" for j in self.support)


def lex_compare(a: SqfMonomial, b: SqfMonomial) -> Ordering:
    if a.n != b.n or a.degree != b.degree:
        raise InvalidInputError(
            f"cannot compare {a} (n={a.n}, d={a.degree}) with {b} (n={b.n}, d={b.degree})"
        )
    for x, y in zip(a.support, b.support):
        if x != y:
            return Ordering.GREATER if x < y else Ordering.LESS
    return Ordering.EQUAL


def enumerate_md(n: int, d: int) -> list[SqfMonomial]:
    """All squarefree monomials of degree ``d`` in ``n`` variables, lex-descending."""
    if not 1 <= d <= n:
        raise InvalidInputError(f"need 1 <= d <= n, got n={n}, d={d}")
    # combinations() emits supports in ascending tuple order, i.e. descending lex
    return [SqfMonomial(n, c) for c in combinations(range(1, n + 1), d)]


def parse_monomial(text: str, n: int) -> SqfMonomial:
    """Parse a comma-separated ascending index list such as ``"1,3"``."""
    parts = [p.strip() for p in text.split(",")]
    try:
        support = tuple(int(p) for p in parts)
    except ValueError:
        raise InvalidInputError(f"malformed monomial {text!r}") from None
    return SqfMonomial(n, support)


@dataclass(frozen=True)
class LexSegmentInstance:
    """A squarefree lexsegment ``L(u, v)`` in degree ``d >= 2``."""

    n: int
    d: int
    u: SqfMonomial
    v: SqfMonomial

    def __post_init__(self) -> None:
        if self.d < 2:
            raise InvalidInputError(f"degree must be at least 2, got {self.d}")
        for name, m in (("u", self.u), ("v", self.v)):
            if m.n != self.n:
                raise InvalidInputError(f"{name} lives in {m.n} variables, expected {self.n}")
            if m.degree != self.d:
                raise InvalidInputError(f"{name}={m} has degree {m.degree}, expected {self.d}")
        if lex_compare(self.u, self.v) is Ordering.LESS:
            raise InvalidInputError(f"u={self.u} is lex-smaller than v={self.v}")

    @classmethod
    def from_supports(cls, n: int, u: tuple[int, ...] | list[int], v: tuple[int, ...] | list[int]) -> LexSegmentInstance:
        mu, mv = SqfMonomial(n, tuple(u)), SqfMonomial(n, tuple(v))
        return cls(n, mu.degree, mu, mv)

    @property
    def leading_index(self) -> int:
        return self.u.support[0]

    def __str__(self) -> str:
        return f"L({self.u}, {self.v}) in n={self.n}"


def lexsegment(inst: LexSegmentInstance) -> list[SqfMonomial]:
    """The monomials ``w`` of degree ``d`` with ``u >= w >= v``, lex-descending."""
    if lex_compare(inst.u, inst.v) is Ordering.LESS:
        raise InvalidInputError(f"u={inst.u} is lex-smaller than v={inst.v}")
    u, v = inst.u.support, inst.v.support
    return [SqfMonomial(inst.n, c) for c in combinations(range(1, inst.n + 1), inst.d) if u <= c <= v]
