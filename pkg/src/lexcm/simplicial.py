"""Facet-based simplicial complexes on the ground set [n].

Faces are bitmasks: bit ``j - 1`` stands for vertex ``j``.  A complex is
stored by its inclusion-maximal faces only, in a canonical order, so two
complexes compare equal exactly when they have the same faces.

Three kinds are distinguished:

* ``void``: no faces at all, not even the empty set;
* ``irrelevant``: only the empty face, the identity for :func:`join`;
* ``proper``: everything else.
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from functools import cached_property

from lexcm.errors import InvalidInputError
from lexcm.monomial import MAX_VARIABLES, SqfMonomial

# brute-force subset enumeration is only attempted up to this ground set size
MAX_ENUMERATION_N = 20


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for j in vertices:
        m |= 1 << (j - 1)
    return m


def vertices_of(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def submasks(mask: int) -> Iterable[int]:
    """Every subset of ``mask``, including ``mask`` itself and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _maximal(masks: Iterable[int]) -> list[int]:
    # larger sets first, so a set can only be contained in one already kept
    keep: list[int] = []
    for m in sorted(set(masks), key=lambda x: -x.bit_count()):
        if not any(m & k == m for k in keep):
            keep.append(m)
    return keep


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    facets: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VARIABLES:
            raise InvalidInputError(f"ground set size must lie in [0, {MAX_VARIABLES}], got {self.n}")
        full = (1 << self.n) - 1
        for f in self.facets:
            if f < 0 or f & ~full:
                raise InvalidInputError(f"facet {vertices_of(f)} not inside [1, {self.n}]")
        canon = tuple(sorted(_maximal(self.facets), key=vertices_of))
        object.__setattr__(self, "facets", canon)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]]) -> SimplicialComplex:
        facets = list(facets)
        for f in facets:
            f = list(f)
            if len(set(f)) != len(f):
                raise InvalidInputError(f"repeated vertex in facet {f}")
            if any(not 1 <= j <= n for j in f):
                raise InvalidInputError(f"facet {f} not inside [1, {n}]")
        return cls(n, tuple(mask_of(f) for f in facets))

    @classmethod
    def void(cls, n: int = 0) -> SimplicialComplex:
        return cls(n, ())

    @classmethod
    def irrelevant(cls, n: int = 0) -> SimplicialComplex:
        return cls(n, (0,))

    @classmethod
    def simplex(cls, vertices: Iterable[int], n: int | None = None) -> SimplicialComplex:
        """Full simplex on ``vertices``; the irrelevant complex when empty."""
        vertices = tuple(vertices)
        if n is None:
            n = max(vertices, default=0)
        return cls.from_facets(n, [vertices])

    # -- basic data ---------------------------------------------------------

    @property
    def kind(self) -> str:
        if not self.facets:
            return "void"
        if self.facets == (0,):
            return "irrelevant"
        return "proper"

    @property
    def dim(self) -> int:
        if not self.facets:
            raise InvalidInputError("the void complex has no dimension")
        return max(f.bit_count() for f in self.facets) - 1

    @cached_property
    def vertex_mask(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    @property
    def vertices(self) -> tuple[int, ...]:
        return vertices_of(self.vertex_mask)

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            if f in out:
                continue
            out.update(submasks(f))
        return frozenset(out)

    def has_face(self, face: int) -> bool:
        return any(face & f == face for f in self.facets)

    def facet_lists(self) -> list[list[int]]:
        return [list(vertices_of(f)) for f in self.facets]

    def to_json(self) -> str:
        """Facets as a JSON array of sorted integer arrays, sorted lexicographically."""
        return json.dumps(self.facet_lists(), separators=(",", ":"))

    def __repr__(self) -> str:
        if self.kind == "void":
            return f"SimplicialComplex(n={self.n}, void)"
        body = ",".join("{" + ",".join(map(str, f)) + "}" for f in self.facet_lists())
        return f"SimplicialComplex(n={self.n}, <{body}>)"


def _as_mask(face: int | Iterable[int]) -> int:
    return face if isinstance(face, int) else mask_of(face)


def stanley_reisner(n: int, generators: Iterable[SqfMonomial | Iterable[int]]) -> SimplicialComplex:
    """Complex whose faces are the subsets of [n] containing no generator support."""
    if not 0 <= n <= MAX_ENUMERATION_N:
        raise InvalidInputError(f"subset enumeration is limited to n <= {MAX_ENUMERATION_N}, got {n}")
    gens = []
    for g in generators:
        support = g.support if isinstance(g, SqfMonomial) else tuple(g)
        if any(not 1 <= j <= n for j in support):
            raise InvalidInputError(f"generator support {support} not inside [1, {n}]")
        gens.append(mask_of(support))
    gens = _maximal_free(gens)
    bits = [1 << j for j in range(n)]

    def is_face(m: int) -> bool:
        for g in gens:
            if m & g == g:
                return False
        return True

    facets = []
    for m in range(1 << n):
        if not is_face(m):
            continue
        if all(m & b or not is_face(m | b) for b in bits):
            facets.append(m)
    return SimplicialComplex(n, tuple(facets))


def _maximal_free(gens: list[int]) -> list[int]:
    # only inclusion-minimal generators matter for face membership
    keep: list[int] = []
    for g in sorted(set(gens), key=int.bit_count):
        if not any(k & g == k for k in keep):
            keep.append(g)
    return keep


def link(c: SimplicialComplex, face: int | Iterable[int]) -> SimplicialComplex:
    f = _as_mask(face)
    containing = [F & ~f for F in c.facets if F & f == f]
    if not containing:
        raise InvalidInputError(f"{vertices_of(f)} is not a face of {c!r}")
    return SimplicialComplex(c.n, tuple(containing))


def join(a: SimplicialComplex, b: SimplicialComplex) -> SimplicialComplex:
    if a.vertex_mask & b.vertex_mask:
        raise InvalidInputError(f"join factors share vertices {vertices_of(a.vertex_mask & b.vertex_mask)}")
    n = max(a.n, b.n)
    return SimplicialComplex(n, tuple(x | y for x in a.facets for y in b.facets))


def relabel(c: SimplicialComplex, mapping: Mapping[int, int], n: int | None = None) -> SimplicialComplex:
    """Rename vertices through ``mapping``; vertices it omits keep their label."""
    used = c.vertices
    images = [mapping.get(j, j) for j in used]
    if len(set(images)) != len(images):
        raise InvalidInputError("relabelling map is not injective on the vertices")
    if n is None:
        n = max(c.n, max(images, default=0))
    table = dict(zip(used, images))
    return SimplicialComplex.from_facets(n, ([table[j] for j in vertices_of(f)] for f in c.facets))


def is_pure(c: SimplicialComplex) -> bool:
    if not c.facets:
        raise InvalidInputError("purity of the void complex is undefined")
    return len({f.bit_count() for f in c.facets}) == 1


def is_connected(c: SimplicialComplex) -> bool:
    if c.kind != "proper":
        raise InvalidInputError(f"connectivity of the {c.kind} complex is undefined")
    # merge facets sharing a vertex; connected iff one block remains
    blocks: list[int] = []
    for f in c.facets:
        merged = f
        rest = []
        for b in blocks:
            if b & merged:
                merged |= b
            else:
                rest.append(b)
        rest.append(merged)
        blocks = rest
    return len(blocks) == 1


def f_vector(c: SimplicialComplex) -> list[int]:
    """Face counts ``(f_-1, f_0, ..., f_dim)``; empty for the void complex."""
    if not c.facets:
        return []
    counts = [0] * (c.dim + 2)
    for face in c.faces:
        counts[face.bit_count()] += 1
    return counts


def minimal_nonfaces(c: SimplicialComplex) -> list[int]:
    """Inclusion-minimal subsets of [n] that are not faces, as masks."""
    if c.n > MAX_ENUMERATION_N:
        raise InvalidInputError(f"subset enumeration is limited to n <= {MAX_ENUMERATION_N}")
    faces = c.faces
    out = []
    for m in range(1 << c.n):
        if m in faces:
            continue
        rest = m
        ok = True
        while rest:
            low = rest & -rest
            if m & ~low not in faces:
                ok = False
                break
            rest &= ~low
        if ok:
            out.append(m)
    return sorted(out, key=vertices_of)


def is_flag(c: SimplicialComplex) -> bool:
    if not c.facets:
        raise InvalidInputError("the void complex has no Stanley-Reisner ideal to inspect")
    return all(m.bit_count() <= 2 for m in minimal_nonfaces(c))


def faces_of_size(c: SimplicialComplex, k: int) -> list[int]:
    return sorted((f for f in c.faces if f.bit_count() == k), key=vertices_of)
