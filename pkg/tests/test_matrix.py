import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from twwchi.graph import complete, edgeless
from twwchi.matrix import (
    STAR,
    Corner,
    Division,
    TriMatrix,
    ZoneKind,
    adjacency_matrix,
    classify,
    contract,
    count_mixed_zones,
    find_almost_mixed_minor,
    find_corner,
    find_mixed_minor,
    find_spanning_corner,
    horizontal_deletion,
    is_almost_mixed_minor,
    is_corner,
    is_mixed,
    is_mixed_minor,
    merge_to_mixed_minor,
    vertical_deletion,
    zone_kinds,
)

S = STAR


def tri_matrices(max_side=4, star=True):
    vals = st.sampled_from((0, 1, S) if star else (0, 1))
    return st.integers(1, max_side).flatmap(
        lambda r: st.integers(1, max_side).flatmap(
            lambda c: st.lists(st.lists(vals, min_size=c, max_size=c), min_size=r, max_size=r)
        )
    ).map(TriMatrix.of)


def brute_mixed(m: TriMatrix) -> bool:
    """Mixed means neither all rows constant nor all columns constant (or a * in a 2x2+ zone)."""
    if m.rows >= 2 and m.cols >= 2 and m.has_star():
        return True
    rows_const = all(len(set(r)) == 1 for r in m.data)
    cols_const = all(len(set(c)) == 1 for c in zip(*m.data))
    return not rows_const and not cols_const


def test_adjacency_matrix_small(c5):
    assert adjacency_matrix(complete(2)).data == ((S, 1), (1, S))
    assert adjacency_matrix(edgeless(2)).data == ((S, 0), (0, S))
    m = adjacency_matrix(c5)
    ones = {(r, c) for r in range(5) for c in range(5) if m[r, c] == 1}
    edges = {(0, 1), (0, 2), (1, 4), (2, 3), (3, 4)}
    assert ones == edges | {(v, u) for u, v in edges}


@pytest.mark.parametrize(
    "rows,kind",
    [
        (((0, 1), (0, 0)), ZoneKind.MIXED),
        (((0, 0), (1, 1)), ZoneKind.HORIZONTAL),
        (((0, 1), (0, 1)), ZoneKind.VERTICAL),
        (((1, 1), (1, 1)), ZoneKind.CONSTANT),
        (((S, 0), (0, S)), ZoneKind.MIXED),
        (((S, 1, 0),), ZoneKind.VERTICAL),
    ],
)
def test_classify_examples(rows, kind):
    assert classify(TriMatrix.of(rows)) is kind


@given(tri_matrices())
def test_classify_matches_definition(m):
    assert is_mixed(m) == brute_mixed(m)


def test_corner_examples(c5):
    assert find_corner(TriMatrix.of(((0, 1), (0, 0)))) == Corner(0, 1, 0, 1)
    assert find_corner(TriMatrix.of(((1, 1), (1, 1)))) is None
    m = adjacency_matrix(c5)
    assert is_corner(m, Corner(0, 1, 3, 4))
    assert find_corner(m) is not None


@given(tri_matrices())
def test_corner_iff_mixed(m):
    c = find_corner(m)
    assert (c is not None) == is_mixed(m)
    if c is not None:
        assert is_corner(m, c)


FOUR = TriMatrix.of(((0, 1, 0, 1), (0, 0, 0, 0), (0, 1, 0, 1), (0, 0, 0, 0)))
TWO = Division.from_bounds((0, 2, 4), (0, 2, 4))


def test_spanning_corner_fixture():
    assert count_mixed_zones(FOUR, TWO) == 4
    c = find_spanning_corner(FOUR, TWO)
    assert is_corner(FOUR, c)
    assert c.r1 in (0, 1) and c.r2 in (2, 3) and c.c1 in (0, 1) and c.c2 in (2, 3)


def test_spanning_corner_rejects_constant_zones():
    with pytest.raises(ValueError):
        find_spanning_corner(TriMatrix.of([[1] * 4] * 4), TWO)


@given(st.integers(0, 3 ** 16 - 1), st.integers(2, 2), st.integers(2, 2))
def test_spanning_corner_property(code, a, b):
    vals = [(code // 3 ** i) % 3 for i in range(16)]
    m = TriMatrix.of([vals[4 * r : 4 * r + 4] for r in range(4)])
    d = Division.from_bounds((0, a, 4), (0, b, 4))
    if count_mixed_zones(m, d) != 4:
        return
    c = find_spanning_corner(m, d)
    assert is_corner(m, c) and c.r1 < a <= c.r2 and c.c1 < b <= c.c2


def test_contract_examples(s52, s52_parts):
    m = TriMatrix.of(((0, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0)))
    out = contract(m, TWO)
    assert sum(v == 1 for r in out.data for v in r) == 1
    ident = Division.from_bounds(range(6), range(6))
    x = adjacency_matrix(s52)
    b = s52_parts.bounds()
    q = contract(x, Division.from_bounds(b, b))
    assert q.data == tuple(tuple(S if i == j else 1 for j in range(4)) for i in range(4))
    assert contract(adjacency_matrix(s52).submatrix(range(5), range(5)), ident) == x.submatrix(range(5), range(5))


def test_deletion_examples():
    one = Division.from_bounds((0, 2), (0, 2))
    assert horizontal_deletion(TriMatrix.of(((0, 0), (1, 1))), one).data == ((0, 0), (0, 0))
    v = TriMatrix.of(((0, 1), (0, 1)))
    assert horizontal_deletion(v, one) == v
    assert vertical_deletion(v, one).data == ((0, 0), (0, 0))
    m = TriMatrix.of(((0, 0, 1, 1), (1, 1, 1, 1), (0, 1, 0, 0), (0, 1, 0, 0)))
    out = horizontal_deletion(m, TWO)
    assert out.data == ((0, 0, 1, 1), (0, 0, 1, 1), (0, 1, 0, 0), (0, 1, 0, 0))
    with pytest.raises(ValueError):
        horizontal_deletion(FOUR, TWO)


def test_mixed_minor_examples(c5):
    assert find_mixed_minor(TriMatrix.of([[1] * 4] * 4), 2) is None
    assert find_mixed_minor(FOUR, 2) == TWO
    m = adjacency_matrix(c5)
    found = find_mixed_minor(m, 2)
    brute = any(
        is_mixed_minor(m, Division.from_bounds((0, a, 5), (0, b, 5))) for a in range(1, 5) for b in range(1, 5)
    )
    assert (found is not None) == brute


@given(graphs(max_n=5))
def test_almost_mixed_trivial_cases(g):
    assert find_almost_mixed_minor(g, 1) is not None
    if g.n < 6:
        assert find_almost_mixed_minor(g, 3) is None


def _brute_amf(g, d):
    for cuts in itertools.combinations(range(1, g.n), d - 1):
        b = (0, *cuts, g.n)
        if is_almost_mixed_minor(g, Division.from_bounds(b, b)):
            return True
    return False


@given(graphs(max_n=7), st.integers(2, 3))
def test_almost_mixed_search_matches_brute_force(g, d):
    assert (find_almost_mixed_minor(g, d) is not None) == _brute_amf(g, d)


@given(graphs(min_n=4, max_n=8))
def test_merge_to_mixed_minor(g):
    div = find_almost_mixed_minor(g, 2)
    if div is None:
        return
    merged = merge_to_mixed_minor(div, g)
    assert merged.shape == (1, 1)
    assert is_mixed_minor(g, merged)
    if g.n >= 4:
        div4 = find_almost_mixed_minor(g, 4)
        if div4 is not None:
            assert is_mixed_minor(g, merge_to_mixed_minor(div4, g))


def test_count_mixed_zones_s52(s52, s52_parts):
    b = s52_parts.bounds()
    d = Division.from_bounds(b, b)
    kinds = zone_kinds(adjacency_matrix(s52), d)
    assert count_mixed_zones(s52, d) == sum(k is ZoneKind.MIXED for row in kinds for k in row)


def test_division_text_roundtrip():
    d = Division.parse("rows=0-1,2-4;cols=0-2,3-4")
    assert d.format() == "rows=0-1,2-4;cols=0-2,3-4"
    assert d.shape == (2, 2)
    with pytest.raises(ValueError):
        Division.parse("rows=0-1")


def test_complete_and_edgeless_are_2amf():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(2, 7)
        g = complete(n) if rng.random() < 0.2 else edgeless(n)
        assert find_almost_mixed_minor(g, 2) is None
