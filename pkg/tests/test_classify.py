import json
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

import lexcm.classify as classify
import lexcm.homology as homology
from lexcm import InvalidInputError, LexSegmentInstance, enumerate_md
from lexcm.classify import (
    BUDGET_EXCEEDED,
    NO_LEVEL,
    REPORT_FIELDS,
    classify_complex,
    classify_fast,
    classify_oracle,
    classify_pattern,
    has_connected_onedim_links,
    is_cm_reisner,
    is_cm_t,
    is_s2,
    is_shellable,
    join_decompose_lexsegment,
    lexsegment_complex,
    pattern_level,
    strict_cm_level,
    undo_shift,
    verify_instance,
)
from lexcm.homology import GF2, GF3, QQ
from lexcm.simplicial import SimplicialComplex, is_connected, is_pure, join, link, vertices_of

S = SimplicialComplex.from_facets
TWO_EDGES = S(4, [[1, 2], [3, 4]])
TWO_TETRAHEDRA = S(7, [[1, 2, 3, 4], [1, 5, 6, 7]])
PATH = S(4, [[1, 2], [2, 3], [3, 4]])


def inst(n, u, v):
    return LexSegmentInstance.from_supports(n, u, v)


@st.composite
def complexes(draw, max_n=6, pure=False):
    n = draw(st.integers(1, max_n))
    if pure:
        k = draw(st.integers(1, n))
        pool = list(combinations(range(1, n + 1), k))
        facets = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=7, unique=True))
    else:
        facets = draw(st.lists(st.sets(st.integers(1, n), min_size=1), min_size=1, max_size=6))
    return S(n, facets)


def cm_by_literal_links(c, field=GF2):
    """Reisner's criterion spelled out link by link, without the profile shortcut."""
    for face in c.faces:
        lk = link(c, face)
        b = homology.reduced_betti(lk, field)
        if any(b[j] for j in range(-1, lk.dim)):
            return False
    return True


# -- Reisner, CM_t, strict level ------------------------------------------------------


def test_is_cm_reisner_examples():
    assert is_cm_reisner(SimplicialComplex.simplex([1, 2, 3]))
    assert not is_cm_reisner(TWO_EDGES)
    assert is_cm_reisner(SimplicialComplex.irrelevant())
    assert is_cm_reisner(lexsegment_complex(inst(4, (1, 2), (1, 2))))


def test_segment_x1x2_to_x1x4_is_impure():
    c = lexsegment_complex(inst(4, (1, 2), (1, 4)))
    assert c.facet_lists() == [[1], [2, 3, 4]]
    assert not is_cm_reisner(c)
    assert not classify_fast(inst(4, (1, 2), (1, 4))).cm


def test_is_cm_t_examples():
    assert is_cm_t(TWO_EDGES, 1)
    assert not is_cm_t(TWO_EDGES, 0)
    for t in range(5):
        assert not is_cm_t(S(4, [[1], [2, 3, 4]]), t)
        assert is_cm_t(SimplicialComplex.simplex([1, 2, 3]), t)
    with pytest.raises(InvalidInputError):
        is_cm_t(TWO_EDGES, -1)


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_cm_t_matches_link_definition(c):
    for t in range(c.dim + 2):
        literal = is_pure(c) and all(
            cm_by_literal_links(link(c, f)) for f in c.faces if f.bit_count() >= t
        )
        assert is_cm_t(c, t) == literal
    assert is_cm_reisner(c) == cm_by_literal_links(c)


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_cm_t_monotone(c):
    values = [is_cm_t(c, t) for t in range(c.dim + 3)]
    assert values == sorted(values)
    level = strict_cm_level(c)
    if level == NO_LEVEL:
        assert not any(values)
    else:
        assert values.index(True) == level


def test_strict_level_examples():
    assert strict_cm_level(SimplicialComplex.simplex([1, 2, 3])) == 0
    assert strict_cm_level(TWO_EDGES) == 1
    second = S(6, [[2, 3], [4, 6], [5, 6]])
    assert strict_cm_level(join(S(1, [[1]]), second)) == 2
    assert strict_cm_level(S(4, [[1], [2, 3, 4]])) == NO_LEVEL


def test_pure_complex_is_cm_in_its_dimension():
    for c in (TWO_EDGES, TWO_TETRAHEDRA, S(6, [[1, 2, 3], [4, 5, 6]])):
        assert is_cm_t(c, c.dim)


# -- S2 and one-dimensional links ----------------------------------------------------


def test_s2_examples():
    assert not is_s2(TWO_TETRAHEDRA)
    assert is_s2(SimplicialComplex.simplex([1, 2, 3, 4]))
    assert not is_s2(S(5, [[1, 2], [3, 5], [4, 5]]))
    assert not is_connected(link(TWO_TETRAHEDRA, [1])) and link(TWO_TETRAHEDRA, [1]).dim == 2


def test_onedim_links_examples():
    assert has_connected_onedim_links(TWO_TETRAHEDRA)
    assert has_connected_onedim_links(SimplicialComplex.simplex([1, 2, 3]))
    cone = join(S(5, [[3]]), S(5, [[1, 2], [4, 5]]))
    assert link(cone, [3]) == S(5, [[1, 2], [4, 5]])
    assert not has_connected_onedim_links(cone)


def test_onedim_link_obstruction_in_degree_three():
    # the link of [n] minus {1, 2, d+1, d+2} is <{1,2},{d+1,d+2}>
    c = lexsegment_complex(inst(5, (1, 3, 4), (2, 3, 5)))
    assert is_pure(c)
    assert link(c, [3]) == S(5, [[1, 2], [4, 5]])
    assert not has_connected_onedim_links(c)
    assert not is_cm_reisner(c)


@settings(max_examples=80, deadline=None)
@given(complexes())
def test_property_implications(c):
    shell = is_shellable(c) if is_pure(c) and c.kind == "proper" else False
    if shell is True:
        assert is_cm_reisner(c, QQ) and is_cm_reisner(c, GF2)
    if is_cm_reisner(c):
        assert is_s2(c)
    if is_s2(c):
        assert has_connected_onedim_links(c) and is_pure(c)


# -- shellability -----------------------------------------------------------


def brute_shellable(c):
    facets = [frozenset(vertices_of(f)) for f in c.facets]

    def faces_of(s):
        return {frozenset(x) for k in range(len(s) + 1) for x in combinations(sorted(s), k)}

    for order in permutations(facets):
        ok = True
        for j in range(1, len(order)):
            inter = set()
            for g in order[:j]:
                inter |= faces_of(order[j] & g)
            maximal = [x for x in inter if not any(x < y for y in inter)]
            if any(len(x) != len(order[j]) - 1 for x in maximal):
                ok = False
                break
        if ok:
            return True
    return False


def test_shellable_examples():
    assert is_shellable(SimplicialComplex.simplex([1, 2, 3, 4])) is True
    assert is_shellable(PATH) is True
    assert is_shellable(TWO_EDGES) is False
    assert is_shellable(S(3, [[1], [2], [3]])) is True
    with pytest.raises(InvalidInputError):
        is_shellable(S(4, [[1], [2, 3, 4]]))
    with pytest.raises(InvalidInputError):
        is_shellable(SimplicialComplex.irrelevant())


def test_path_order_is_a_shelling():
    assert brute_shellable(PATH)
    placed = [PATH.facets[0]]
    for f in PATH.facets[1:]:
        assert classify._admissible(f, placed)
        placed.append(f)


@settings(max_examples=120, deadline=None)
@given(complexes(pure=True))
def test_shellable_matches_permutation_search(c):
    if len(c.facets) > 6:
        return
    assert is_shellable(c) == brute_shellable(c)


def test_budget_exhaustion_is_reported():
    # boundary of the octahedron: shellable, but not in a single search step
    octahedron = S(6, [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 2, 5],
                       [2, 3, 6], [3, 4, 6], [4, 5, 6], [2, 5, 6]])
    assert is_shellable(octahedron, budget=1) == BUDGET_EXCEEDED
    assert is_shellable(octahedron) is True


# -- decomposition -----------------------------------------------------------


def test_decompose_examples():
    first, second, i = join_decompose_lexsegment(inst(5, (1, 3), (3, 4)))
    assert i == 1 and first.kind == "irrelevant"
    assert second == lexsegment_complex(inst(5, (1, 3), (3, 4)))
    first, second, i = join_decompose_lexsegment(inst(6, (2, 4), (4, 5)))
    assert i == 2 and first == SimplicialComplex.simplex([1])
    assert second.facet_lists() == [[1, 2], [3, 5], [4, 5]]


@pytest.mark.parametrize("d", [2, 3])
def test_decomposition_reconstructs_complex(d):
    for n in range(d, 8):
        md = enumerate_md(n, d)
        for a in range(len(md)):
            for b in range(a, len(md)):
                x = LexSegmentInstance(n, d, md[a], md[b])
                first, second, i = join_decompose_lexsegment(x)
                assert join(first, undo_shift(second, i, n)) == lexsegment_complex(x)
                assert is_pure(second) == is_pure(lexsegment_complex(x))


# -- reports -------------------------------------------------------------


def test_oracle_reports():
    r = classify_oracle(inst(4, (1, 3), (2, 4)))
    assert (r.pure, r.connected, r.flag, r.cm, r.buchsbaum, r.strict_cm_level) == (True, False, True, False, True, 1)
    r = classify_oracle(inst(5, (1, 3), (3, 4)))
    assert (r.buchsbaum, r.cm, r.strict_cm_level) == (True, False, 1)
    r = classify_oracle(inst(4, (1, 2), (1, 2)))
    assert r.cm and r.shellable is True and r.s2


def test_fast_reports():
    assert classify_fast(inst(5, (1, 3), (3, 4))).strict_cm_level == 1
    assert classify_fast(inst(6, (2, 4), (4, 5))).strict_cm_level == 2
    assert classify_oracle(inst(6, (2, 4), (4, 5))).strict_cm_level == 2


def test_full_m2_segment_is_points_and_cm():
    x = inst(4, (1, 2), (3, 4))
    c = lexsegment_complex(x)
    assert c.facet_lists() == [[1], [2], [3], [4]]
    assert not is_connected(c)
    oracle, fast = classify_oracle(x), classify_fast(x)
    assert oracle.cm and oracle.strict_cm_level == 0
    assert fast == classify_fast(x) and not verify_instance(x).mismatches


def test_fast_path_never_touches_homology(monkeypatch):
    def boom(*a, **k):
        raise AssertionError("homology used on the fast path")

    monkeypatch.setattr(classify, "reduced_betti", boom)
    monkeypatch.setattr(homology, "reduced_betti", boom)
    monkeypatch.setattr(homology, "_betti_cached", boom)
    for n in range(3, 7):
        for d in (2, 3):
            md = enumerate_md(n, d)
            for a in range(0, len(md), 2):
                classify_fast(LexSegmentInstance(n, d, md[a], md[-1]))
                classify_pattern(LexSegmentInstance(n, d, md[a], md[-1]))
    with pytest.raises(AssertionError):
        classify_oracle(inst(4, (1, 3), (2, 4)))


def test_pattern_bounds():
    assert pattern_level(inst(5, (1, 3), (3, 4))) == 1
    assert pattern_level(inst(4, (1, 3), (2, 4))) == 1
    assert pattern_level(inst(5, (2, 3), (3, 4)), "literal") == 2
    assert pattern_level(inst(5, (2, 3), (3, 4)), "shifted") is None
    assert pattern_level(inst(6, (2, 4), (4, 5)), "shifted") == 2
    assert pattern_level(inst(4, (2, 3), (2, 4)), "literal") == 2
    assert pattern_level(inst(4, (2, 3), (2, 4)), "shifted") is None
    assert pattern_level(inst(5, (1, 2, 3), (1, 2, 3))) is None
    with pytest.raises(InvalidInputError):
        pattern_level(inst(5, (1, 3), (3, 4)), "other")


def test_pattern_report_literal_bound_mismatch():
    x = inst(5, (2, 3), (3, 4))
    assert classify_pattern(x).strict_cm_level == 2
    assert classify_oracle(x).strict_cm_level == NO_LEVEL
    assert classify_pattern(x, bounds="shifted").strict_cm_level == NO_LEVEL


def test_report_json_key_order():
    r = classify_oracle(inst(4, (1, 3), (2, 4)))
    keys = list(json.loads(r.to_json()))
    assert keys == list(REPORT_FIELDS) + ["method", "field"]
    no_conn = classify_complex(SimplicialComplex.irrelevant())
    assert "connected" not in no_conn.to_dict() and no_conn.cm


@pytest.mark.parametrize("field", [GF2, GF3, QQ])
def test_report_invariants_over_fields(field):
    for n in range(2, 7):
        md = enumerate_md(n, 2)
        for a in range(len(md)):
            for b in range(a, len(md)):
                r = classify_oracle(LexSegmentInstance(n, 2, md[a], md[b]), field)
                assert (r.strict_cm_level == 0) == r.cm
                assert (r.strict_cm_level == 1) == (r.buchsbaum and not r.cm)
                assert not r.s2 or r.pure
                assert not r.cm or r.s2
