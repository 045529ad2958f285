import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import B, C, D, graphs
from twwchi import amf, oracles, rmp
from twwchi.graph import Interval, OrderedGraph, complete, cotree_graph, edgeless, gnp, is_proper, random_cotree, shift2


def test_cograph_coloring_examples():
    assert amf.color_cograph(complete(5)).palette_size == 5
    assert amf.color_cograph(edgeless(5)).palette_size == 1
    with pytest.raises(amf.NotCographError):
        amf.color_cograph(OrderedGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)]))


@given(st.integers(1, 40), st.integers(0, 2**30))
def test_cograph_coloring_is_optimal(n, seed):
    g = cotree_graph(random_cotree(n, random.Random(seed)))
    c = amf.color_cograph(g)
    assert is_proper(g, c.colors)
    assert c.palette_size == oracles.clique_number(g)
    if n <= 12:
        assert c.palette_size == oracles.chromatic_number(g)


@given(graphs(max_n=8))
def test_is_cograph_matches_p4_oracle(g):
    assert amf.is_cograph(g) == (not oracles.has_induced_p4(g))


def test_endpoint_split(c5):
    assert amf.split_by_endpoints(c5) == {"00": [], "01": [D], "10": [C], "11": [B]}
    assert amf.split_by_endpoints(edgeless(5))["00"] == [1, 2, 3]
    assert amf.split_by_endpoints(complete(5))["11"] == [1, 2, 3]


def test_module_interval_frame_is_bipartite():
    g = complete(4)
    f = amf.strip_local_module_edges(g, Interval(0, 4))
    assert f.is_module and f.k == 2
    h = f.h
    assert all((u < 2) != (v < 2) for u, v in h.edges())


def test_frame_without_modules():
    g = gnp(7, 0.5, 3)
    f = amf.strip_local_module_edges(g, Interval(0, 7))
    assert f.h.edge_set() <= g.edge_set()


def test_mixed_pair_graph_constant_zones():
    g = complete(5)
    f = amf.strip_local_module_edges(g, Interval(1, 4))
    r, cols = amf.mixed_pair_graph(g, f)
    assert r.num_edges() == 0 and set(cols) == {0}


def _frames(seed, n=9):
    rng = random.Random(seed)
    g = gnp(n, rng.random(), rng.randrange(1 << 30))
    lo = rng.randrange(0, n - 1)
    hi = rng.randrange(lo + 2, n + 1)
    f = amf.strip_local_module_edges(g, Interval(lo, hi))
    amf.mixed_pair_graph(g, f)
    return g, f


@settings(max_examples=80)
@given(st.integers(0, 2**30))
def test_arrow_split_covers_class_edges(seed):
    g, f = _frames(seed)
    if f.is_module:
        return
    for c in set(f.classes):
        cls = [m for m in range(f.k) if f.classes[m] == c]
        fwd, bwd = amf.arrow_split(f, cls)
        verts = [v - f.interval.lo for v in f.module_vertices(cls)]
        want = {(u, v) for u, v in f.h.edges() if u in verts and v in verts}
        assert fwd.edge_set() | bwd.edge_set() == want


@settings(max_examples=80)
@given(st.integers(0, 2**30))
def test_pieces_are_rmps(seed):
    g, f = _frames(seed)
    if f.is_module:
        return
    amf.classify_left_right(g, f.interval, f)
    for c in set(f.classes):
        cls = [m for m in range(f.k) if f.classes[m] == c]
        for arrow in amf.ARROWS:
            for side in amf.SIDES:
                piece = amf.build_rmp_piece(f, cls, arrow, side)
                if piece.modules:
                    assert rmp.validate_rmp(piece.graph, piece.rmp).ok


def test_left_right_tags_at_the_ends():
    g = gnp(8, 0.5, 11)
    f = amf.strip_local_module_edges(g, Interval(0, 5))
    assert set(amf.classify_left_right(g, f.interval, f)[1:]) <= {"right"}
    f = amf.strip_local_module_edges(g, Interval(3, 8))
    assert set(amf.classify_left_right(g, f.interval, f)[1:]) <= {"left"}


def test_s52_tags_have_distinguishers():
    g = shift2(5)
    for lo, hi in [(1, 3), (3, 6), (6, 10), (2, 8)]:
        i = Interval(lo, hi)
        f = amf.strip_local_module_edges(g, i)
        if f.is_module:
            continue
        tags = amf.classify_left_right(g, i, f)
        for m in range(1, f.k):
            a, b = f.modules[m - 1].hi - 1, f.modules[m].lo
            diff = g.adj[a] ^ g.adj[b]
            side = diff & ((1 << lo) - 1) if tags[m] == "left" else diff >> hi
            assert side


def test_c5_with_oracle_ordering(c5):
    inst, order = amf.amf_instance_from_oracle(c5)
    assert inst.d == 3
    c, rep = amf.color_amf(inst, strict=True, check_claims=True)
    assert is_proper(inst.graph, c.colors)
    assert c.palette_size >= oracles.chromatic_number(c5)
    assert not rep.as_dict()["claim_failures"]


def test_two_amf_cograph_uses_omega_colors():
    rng = random.Random(2)
    done = 0
    while done < 10:
        g = amf.random_2amf_cograph(rng, rng.randint(1, 20))
        if g is None:
            continue
        c, _ = amf.color_amf(amf.AmfInstance(g, 2).certify(), strict=True)
        assert c.palette_size == oracles.clique_number(g)
        done += 1


@settings(max_examples=25)
@given(graphs(min_n=3, max_n=7))
def test_random_graphs_at_minimal_d(g):
    inst, _ = amf.amf_instance_from_oracle(g)
    c, rep = amf.color_amf(inst, strict=True, check_claims=True)
    assert is_proper(inst.graph, c.colors)
    assert c.palette_size >= oracles.chromatic_number(g)


def test_strict_mode_needs_certificate(c5):
    with pytest.raises(amf.MissingCertificate):
        amf.color_amf(amf.AmfInstance(c5, 3), strict=True)
    with pytest.raises(amf.MissingCertificate):
        amf.AmfInstance(c5, 2).certify()
    assert amf.AmfInstance(c5, 3).certify().certificate


def test_wrong_d_is_reported(c5):
    # the 5-cycle in its own order is not 2-almost mixed free
    with pytest.raises(amf.NotCographError):
        amf.color_amf(c5, 2)
    with pytest.raises(ValueError):
        amf.color_amf(c5, 1)


def test_reduction_claim_is_vacuous_below_three():
    piece = amf.RmpPiece(complete(1), rmp.RMPartition(((0,),)), [0], [0])
    assert amf.check_reduction_claim(piece, 2)["skipped"] == "vacuous"
    assert amf.check_2d_claim(amf.RmpPiece(OrderedGraph.empty(0), None, [], []), 3)["vacuous"]
