"""Cohen-Macaulay, Buchsbaum, CM_t, S2 and shellability verdicts.

Two independent routes produce a :class:`ClassificationReport`:

* the *oracle* (:func:`classify_oracle`) works from first principles:
  reduced homology of every link (Reisner's criterion), link connectivity
  and an exhaustive shelling search;
* the *fast* route (:func:`classify_fast`) never touches homology.  It
  splits the lexsegment complex as a join of a simplex on ``[i-1]`` with
  the complex of the same segment in the variables ``x_i..x_n`` and reads
  every verdict off purity and connectivity of the second factor.

:func:`classify_pattern` is a third route for degree 2 which decides the
non-CM levels from the explicit ``(u, v)`` pattern pairs instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Union

from lexcm.errors import InvalidInputError
from lexcm.homology import GF2, FieldSpec, reduced_betti
from lexcm.monomial import LexSegmentInstance, lexsegment
from lexcm.simplicial import (
    SimplicialComplex,
    is_connected,
    is_flag,
    is_pure,
    link,
    relabel,
    stanley_reisner,
)

BUDGET_EXCEEDED = "search-budget-exceeded"
NO_LEVEL = "none"
DEFAULT_BUDGET = 10**6

Level = Union[int, str]


# -- oracle side --------------------------------------------------------------


def reisner_profile(c: SimplicialComplex, field: FieldSpec = GF2) -> dict[int, bool]:
    """Map each face F to whether lk(F) has no reduced homology below its dimension.

    ``lk(G)`` inside ``lk(F)`` is ``lk(F | G)`` in ``c``, so ``lk(F)`` is
    Cohen-Macaulay exactly when every face containing ``F`` maps to True.
    """
    if not c.facets:
        raise InvalidInputError("the void complex has no links")
    out = {}
    for face in c.faces:
        lk = link(c, face)
        top = lk.dim
        betti = reduced_betti(lk, field)
        out[face] = all(betti[j] == 0 for j in range(-1, top))
    return out


def is_cm_reisner(c: SimplicialComplex, field: FieldSpec = GF2) -> bool:
    return all(reisner_profile(c, field).values())


def is_cm_t(c: SimplicialComplex, t: int, field: FieldSpec = GF2) -> bool:
    """Pure, and every link of a face with at least ``t`` vertices is CM."""
    if t < 0:
        raise InvalidInputError(f"t must be non-negative, got {t}")
    if not is_pure(c):
        return False
    # the faces containing some F with |F| >= t are exactly the faces with |F| >= t
    return all(ok for face, ok in reisner_profile(c, field).items() if face.bit_count() >= t)


def strict_cm_level(c: SimplicialComplex, field: FieldSpec = GF2) -> Level:
    """Smallest ``t`` in ``[0, dim + 1]`` with ``c`` CM_t, or ``"none"``."""
    if not is_pure(c):
        return NO_LEVEL
    profile = reisner_profile(c, field)
    bad = [face.bit_count() for face, ok in profile.items() if not ok]
    level = max(bad) + 1 if bad else 0
    return level if level <= c.dim + 1 else NO_LEVEL


def _connected_links(c: SimplicialComplex, keep) -> bool:
    for face in c.faces:
        lk = link(c, face)
        if keep(lk.dim) and not is_connected(lk):
            return False
    return True


def is_s2(c: SimplicialComplex) -> bool:
    """Pure with connected links in every dimension of at least 1."""
    return is_pure(c) and _connected_links(c, lambda k: k >= 1)


def has_connected_onedim_links(c: SimplicialComplex) -> bool:
    """Pure, and every one-dimensional link is connected."""
    return is_pure(c) and _connected_links(c, lambda k: k == 1)


def _admissible(facet: int, placed: list[int]) -> bool:
    # <facet> meets <placed> in a pure subcomplex of codimension one in facet
    size = facet.bit_count() - 1
    meets = {facet & g for g in placed}
    ridges = [m for m in meets if m.bit_count() == size]
    if not ridges:
        return False
    return all(any(m & r == m for r in ridges) for m in meets)


def _ridge_connected(facets: tuple[int, ...]) -> bool:
    size = facets[0].bit_count() - 1
    seen = {0}
    stack = [0]
    while stack:
        a = stack.pop()
        for b in range(len(facets)):
            if b not in seen and (facets[a] & facets[b]).bit_count() == size:
                seen.add(b)
                stack.append(b)
    return len(seen) == len(facets)


def is_shellable(c: SimplicialComplex, budget: int = DEFAULT_BUDGET) -> bool | str:
    """Backtracking search for a shelling order of a pure complex.

    Whether a facet can come next depends only on the *set* of facets
    already placed, so failed sets are memoised.  Before searching, every
    link of dimension at least 1 must be ridge-connected (a necessary
    condition, since links of shellable complexes are shellable).  Returns
    ``"search-budget-exceeded"`` when more than ``budget`` placements
    are tried.
    """
    if c.kind != "proper":
        raise InvalidInputError(f"shellability is only decided for proper complexes, got {c.kind}")
    if not is_pure(c):
        raise InvalidInputError("only pure shellability is supported")
    facets = c.facets
    m = len(facets)
    if m == 1 or facets[0].bit_count() == 1:
        return True
    # links of a shellable complex are shellable, hence ridge-connected
    for face in c.faces:
        lk = link(c, face)
        if lk.dim >= 1 and not _ridge_connected(lk.facets):
            return False
    full = (1 << m) - 1
    dead: set[int] = set()
    nodes = 0

    def extend(state: int, placed: list[int]) -> bool:
        nonlocal nodes
        if state == full:
            return True
        if state in dead:
            return False
        for k in range(m):
            if state >> k & 1:
                continue
            if not _admissible(facets[k], placed):
                continue
            nodes += 1
            if nodes > budget:
                raise _BudgetExhausted
            placed.append(facets[k])
            if extend(state | 1 << k, placed):
                return True
            placed.pop()
        dead.add(state)
        return False

    try:
        for first in range(m):
            nodes += 1
            if extend(1 << first, [facets[first]]):
                return True
    except _BudgetExhausted:
        return BUDGET_EXCEEDED
    return False


class _BudgetExhausted(Exception):
    pass


# -- lexsegment decomposition ----------------------------------------------------


def lexsegment_complex(inst: LexSegmentInstance) -> SimplicialComplex:
    return stanley_reisner(inst.n, lexsegment(inst))


def join_decompose_lexsegment(
    inst: LexSegmentInstance,
) -> tuple[SimplicialComplex, SimplicialComplex, int]:
    """Split the complex as (simplex on [i-1]) * (complex of L(u, v) over x_i..x_n).

    The second factor is returned relabelled onto ``1..n-i+1``.
    """
    i = inst.leading_index
    first = SimplicialComplex.simplex(range(1, i), n=i - 1)
    shift = i - 1
    gens = [[j - shift for j in w.support] for w in lexsegment(inst)]
    second = stanley_reisner(inst.n - shift, gens)
    return first, second, i


def undo_shift(second: SimplicialComplex, i: int, n: int) -> SimplicialComplex:
    """Move the second join factor back onto the vertices ``i..n``."""
    return relabel(second, {j: j + i - 1 for j in second.vertices}, n=n)


# -- reports ---------------------------------------------------------------


REPORT_FIELDS = ("pure", "connected", "flag", "s2", "shellable", "cm", "buchsbaum", "strict_cm_level")


@dataclass(frozen=True)
class ClassificationReport:
    pure: bool
    connected: bool | None
    flag: bool
    s2: bool
    shellable: bool | str
    cm: bool
    buchsbaum: bool
    strict_cm_level: Level
    method: str
    field: FieldSpec = dc_field(default=GF2)

    def to_dict(self) -> dict:
        out = {k: getattr(self, k) for k in REPORT_FIELDS}
        if out["connected"] is None:
            del out["connected"]
        out["method"] = self.method
        out["field"] = str(self.field)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _flag_from_instance(inst: LexSegmentInstance) -> bool:
    # minimal non-faces are exactly the degree-d generators
    return inst.d == 2


def classify_oracle(
    inst: LexSegmentInstance, field: FieldSpec = GF2, budget: int = DEFAULT_BUDGET
) -> ClassificationReport:
    c = lexsegment_complex(inst)
    return classify_complex(c, field, budget, flag=is_flag(c))


def classify_complex(
    c: SimplicialComplex, field: FieldSpec = GF2, budget: int = DEFAULT_BUDGET, flag: bool | None = None
) -> ClassificationReport:
    """Oracle report for an arbitrary non-void complex."""
    pure = is_pure(c)
    level = strict_cm_level(c, field)
    if pure and c.kind == "proper":
        shellable = is_shellable(c, budget)
    else:
        shellable = pure
    return ClassificationReport(
        pure=pure,
        connected=is_connected(c) if c.kind == "proper" else None,
        flag=is_flag(c) if flag is None else flag,
        s2=is_s2(c),
        shellable=shellable,
        cm=level == 0,
        buchsbaum=level in (0, 1),
        strict_cm_level=level,
        method="oracle",
        field=field,
    )


def _fast_cm(second: SimplicialComplex, d: int) -> bool:
    if not is_pure(second):
        return False
    if d >= 3:
        return has_connected_onedim_links(second)
    # a zero-dimensional complex is CM however many points it has
    return second.dim == 0 or is_connected(second)


def _report(inst, pure, connected, cm, level, method) -> ClassificationReport:
    return ClassificationReport(
        pure=pure,
        connected=connected,
        flag=_flag_from_instance(inst),
        s2=cm,
        shellable=cm,
        cm=cm,
        buchsbaum=level in (0, 1),
        strict_cm_level=level,
        method=method,
        field=GF2,
    )


def classify_fast(inst: LexSegmentInstance) -> ClassificationReport:
    """Combinatorial classification; no homology is computed.

    CM holds iff the second join factor is CM, decided by purity plus
    connectivity of its one-dimensional links (degree >= 3) or of the
    factor itself (degree 2).  A pure non-CM complex is strictly CM_t
    with ``t`` its dimension, which equals ``i`` in degree 2.
    """
    first, second, i = join_decompose_lexsegment(inst)
    pure = is_pure(second)
    connected = i >= 2 or is_connected(second)
    cm = _fast_cm(second, inst.d)
    if cm:
        level: Level = 0
    elif pure:
        # dim(first * second) = (i - 2) + dim(second) + 1
        level = i - 1 + second.dim
    else:
        level = NO_LEVEL
    return _report(inst, pure, connected, cm, level, "fast")


def pattern_level(inst: LexSegmentInstance, bounds: str = "shifted") -> int | None:
    """Level ``t`` if ``(u, v)`` is one of the two degree-2 non-CM pattern pairs.

    The pairs are ``u = x_t x_{n-2}, v = x_{n-2} x_{n-1}`` and
    ``u = x_t x_{n-1}, v = x_{n-2} x_n``.  With ``bounds="literal"`` they
    are gated by ``n > 4`` and ``n > 3``; with ``"shifted"`` by
    ``n - t + 1 > 4`` and ``n - t + 1 > 3``, i.e. the same bounds applied
    to the number of variables of the second join factor.
    """
    if bounds not in ("literal", "shifted"):
        raise InvalidInputError(f"unknown bounds {bounds!r}")
    if inst.d != 2:
        return None
    n = inst.n
    t = inst.leading_index
    size = n if bounds == "literal" else n - t + 1
    u, v = inst.u.support, inst.v.support
    if u == (t, n - 2) and v == (n - 2, n - 1) and size > 4:
        return t
    if u == (t, n - 1) and v == (n - 2, n) and size > 3:
        return t
    return None


def classify_pattern(inst: LexSegmentInstance, bounds: str = "literal") -> ClassificationReport:
    """Fast report whose non-CM levels come from the explicit pattern pairs."""
    base = classify_fast(inst)
    if inst.d != 2 or base.cm:
        return _report(inst, base.pure, base.connected, base.cm, base.strict_cm_level, "pattern")
    t = pattern_level(inst, bounds)
    level: Level = NO_LEVEL if t is None else t
    pure = t is not None
    return _report(inst, pure, base.connected, False, level, "pattern")


# -- agreement -------------------------------------------------------------


@dataclass
class AgreementRecord:
    instance: LexSegmentInstance
    field: FieldSpec
    mismatches: list[str]
    fast: ClassificationReport
    oracle: ClassificationReport

    @property
    def agree(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "n": self.instance.n,
            "u": list(self.instance.u.support),
            "v": list(self.instance.v.support),
            "field": str(self.field),
            "mismatches": self.mismatches,
            "fast": self.fast.to_dict(),
            "oracle": self.oracle.to_dict(),
        }


def compare_reports(a: ClassificationReport, b: ClassificationReport) -> list[str]:
    return [k for k in REPORT_FIELDS if getattr(a, k) != getattr(b, k)]


def verify_instance(
    inst: LexSegmentInstance, field: FieldSpec = GF2, budget: int = DEFAULT_BUDGET
) -> AgreementRecord:
    fast = classify_fast(inst)
    oracle = classify_oracle(inst, field, budget)
    return AgreementRecord(inst, field, compare_reports(fast, oracle), fast, oracle)


__all__ = [
    "AgreementRecord",
    "BUDGET_EXCEEDED",
    "ClassificationReport",
    "NO_LEVEL",
    "classify_complex",
    "compare_reports",
    "classify_fast",
    "classify_oracle",
    "classify_pattern",
    "has_connected_onedim_links",
    "is_cm_reisner",
    "is_cm_t",
    "is_s2",
    "is_shellable",
    "join_decompose_lexsegment",
    "lexsegment_complex",
    "pattern_level",
    "reisner_profile",
    "strict_cm_level",
    "verify_instance",
]
