"""Reduced simplicial homology ranks over GF(p) or Q.

The augmented chain complex is used throughout: the vertices map onto
the empty face, so the irrelevant complex has ``beta_-1 = 1`` and every
other complex has ``beta_-1 = 0``.  Ranks are computed exactly by
reducing sparse boundary columns (dicts of row index to entry).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from lexcm.errors import InvalidInputError
from lexcm.simplicial import SimplicialComplex, f_vector, vertices_of


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Coefficient field: GF(p) for a prime ``p``, or the rationals when ``p`` is None."""

    p: int | None = 2

    def __post_init__(self) -> None:
        if self.p is not None and not _is_prime(self.p):
            raise InvalidInputError(f"{self.p} is not prime")

    @classmethod
    def parse(cls, text: str | int) -> FieldSpec:
        if isinstance(text, int):
            return cls(text)
        text = text.strip()
        if text.upper() == "Q":
            return cls(None)
        try:
            return cls(int(text))
        except ValueError:
            raise InvalidInputError(f"field must be a prime or 'Q', got {text!r}") from None

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"GF({self.p})"

    def __str__(self) -> str:
        return "Q" if self.p is None else str(self.p)


GF2 = FieldSpec(2)
GF3 = FieldSpec(3)
QQ = FieldSpec(None)


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers; ``ranks[k]`` is beta_{k-1}."""

    ranks: tuple[int, ...]
    field: FieldSpec

    def __getitem__(self, i: int) -> int:
        """beta_i for ``i >= -1``; zero above the top dimension."""
        if i < -1:
            raise IndexError(i)
        k = i + 1
        return self.ranks[k] if k < len(self.ranks) else 0

    @property
    def top(self) -> int:
        return len(self.ranks) - 2

    def reduced_euler(self) -> int:
        return sum((-1) ** (k - 1) * b for k, b in enumerate(self.ranks))

    def is_acyclic(self) -> bool:
        return not any(self.ranks)


def _faces_by_size(facets: tuple[int, ...]) -> list[list[int]]:
    faces: set[int] = set()
    for f in facets:
        sub = f
        while True:
            faces.add(sub)
            if sub == 0:
                break
            sub = (sub - 1) & f
    top = max(f.bit_count() for f in facets)
    layers: list[list[int]] = [[] for _ in range(top + 1)]
    for f in faces:
        layers[f.bit_count()].append(f)
    for layer in layers:
        layer.sort(key=vertices_of)
    return layers


def _boundary_columns(layers: list[list[int]], i: int) -> list[dict[int, int]]:
    """Column j of the i-th boundary map as {row index: +-1}."""
    rows = {f: r for r, f in enumerate(layers[i])}  # (i-1)-faces have i vertices
    cols = []
    for face in layers[i + 1]:
        col = {}
        sign = 1
        rest = face
        while rest:
            low = rest & -rest
            col[rows[face & ~low]] = sign
            sign = -sign
            rest &= ~low
        cols.append(col)
    return cols


def boundary_matrix(c: SimplicialComplex, i: int, field: FieldSpec = QQ) -> list[list[int]]:
    """Matrix of the i-th boundary map, rows indexed by (i-1)-faces, columns by i-faces.

    Faces in each dimension are listed in lexicographic order of their sorted
    vertex tuples.  Entries are integers, reduced into ``[0, p)`` for GF(p).
    """
    if not c.facets:
        raise InvalidInputError("the void complex has no chain complex")
    if not -1 <= i <= c.dim:
        raise InvalidInputError(f"boundary index {i} outside [-1, {c.dim}]")
    layers = _faces_by_size(c.facets)
    if i == -1:
        return []  # zero rows: the empty face maps to the zero space
    cols = _boundary_columns(layers, i)
    mat = [[0] * len(cols) for _ in layers[i]]
    for j, col in enumerate(cols):
        for r, s in col.items():
            mat[r][j] = s if field.p is None else s % field.p
    return mat


def _rank_gf2(cols: list[dict[int, int]]) -> int:
    basis: dict[int, int] = {}
    for col in cols:
        v = 0
        for r, x in col.items():
            if x % 2:
                v |= 1 << r
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def _rank_mod_p(cols: list[dict[int, int]], p: int) -> int:
    """Column reduction over GF(p); pivots are normalised to 1."""
    pivots: dict[int, dict[int, int]] = {}
    for col in cols:
        v = {r: x % p for r, x in col.items() if x % p}
        while v:
            top = max(v)
            piv = pivots.get(top)
            if piv is None:
                inv = pow(v[top], -1, p)
                pivots[top] = {r: (x * inv) % p for r, x in v.items()}
                break
            f = v[top]
            for r, x in piv.items():
                y = (v.get(r, 0) - f * x) % p
                if y:
                    v[r] = y
                else:
                    v.pop(r, None)
    return len(pivots)


def _rank_rational(cols: list[dict[int, int]]) -> int:
    """Fraction-free column reduction over Z, exact for the rank over Q.

    Each elimination step cross-multiplies and then divides the column by
    the gcd of its entries, which keeps the integers small.
    """
    pivots: dict[int, dict[int, int]] = {}
    for col in cols:
        v = {r: x for r, x in col.items() if x}
        while v:
            top = max(v)
            piv = pivots.get(top)
            if piv is None:
                pivots[top] = v
                break
            a, b = v[top], piv[top]
            w = {r: b * x for r, x in v.items()}
            for r, x in piv.items():
                y = w.get(r, 0) - a * x
                if y:
                    w[r] = y
                else:
                    w.pop(r, None)
            g = 0
            for x in w.values():
                g = gcd(g, x)
            v = {r: x // g for r, x in w.items()} if g > 1 else w
    return len(pivots)


def _columns_of(rows: list[list[int]]) -> list[dict[int, int]]:
    return [{r: row[j] for r, row in enumerate(rows) if row[j]} for j in range(len(rows[0]))]


def _rank_cols(cols: list[dict[int, int]], p: int | None) -> int:
    if p is None:
        return _rank_rational(cols)
    if p == 2:
        return _rank_gf2(cols)
    return _rank_mod_p(cols, p)


def matrix_rank(rows: list[list[int]], field: FieldSpec) -> int:
    if not rows or not rows[0]:
        return 0
    return _rank_cols(_columns_of(rows), field.p)


def _compress(facets: tuple[int, ...]) -> tuple[int, ...]:
    # order-preserving relabel onto 1..k; homology only depends on the pattern
    used = 0
    for f in facets:
        used |= f
    pos = {}
    k = 0
    j = 0
    while used >> j:
        if used >> j & 1:
            pos[j] = k
            k += 1
        j += 1
    out = []
    for f in facets:
        g = 0
        for j, t in pos.items():
            if f >> j & 1:
                g |= 1 << t
        out.append(g)
    return tuple(sorted(out))


@lru_cache(maxsize=200_000)
def _betti_cached(facets: tuple[int, ...], p: int | None) -> tuple[int, ...]:
    layers = _faces_by_size(facets)
    top = len(layers) - 2  # dimension
    ranks = [0] * (top + 3)  # ranks[i + 1] = rank of boundary map i, for i in -1..top+1
    for i in range(0, top + 1):
        ranks[i + 1] = _rank_cols(_boundary_columns(layers, i), p)
    betti = []
    for i in range(-1, top + 1):
        f_i = len(layers[i + 1])
        betti.append(f_i - ranks[i + 1] - ranks[i + 2])
    return tuple(betti)


def reduced_betti(c: SimplicialComplex, field: FieldSpec = GF2) -> BettiVector:
    if not c.facets:
        raise InvalidInputError("reduced homology of the void complex is not defined here")
    return BettiVector(_betti_cached(_compress(c.facets), field.p), field)


def euler_characteristic_check(c: SimplicialComplex, field: FieldSpec = GF2) -> bool:
    """Alternating sum of Betti numbers equals the reduced Euler characteristic."""
    if not c.facets:
        return True
    fv = f_vector(c)
    chi = sum((-1) ** (k - 1) * f for k, f in enumerate(fv))
    return reduced_betti(c, field).reduced_euler() == chi


def boundary_squares_to_zero(c: SimplicialComplex) -> bool:
    """Check that every composite of consecutive boundary maps vanishes over Z."""
    if not c.facets:
        return True
    layers = _faces_by_size(c.facets)
    for i in range(1, len(layers) - 1):
        lower = _boundary_columns(layers, i - 1)
        for col in _boundary_columns(layers, i):
            image: dict[int, int] = {}
            for r, s in col.items():
                for q, t in lower[r].items():
                    image[q] = image.get(q, 0) + s * t
            if any(image.values()):
                return False
    return True
