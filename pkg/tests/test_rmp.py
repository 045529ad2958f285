import itertools
import random
from math import comb

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from twwchi import oracles, rmp
from twwchi.graph import Coloring, complete, edgeless, is_proper, shift_vertices
from twwchi.matrix import Division, is_almost_mixed_minor
from twwchi.rmp import RMPartition
from twwchi.suites import random_rmp_instance


def idx(*pairs):
    where = {p: i for i, p in enumerate(shift_vertices(5))}
    return tuple(where[p] for p in pairs)


def test_s52_partition(s52, s52_parts):
    assert s52_parts.parts == ((0,), idx((1, 3), (2, 3)), idx((1, 4), (2, 4), (3, 4)), tuple(range(6, 10)))
    assert rmp.validate_rmp(s52, s52_parts).ok
    assert rmp.quotient(s52, s52_parts) == complete(4)


def test_singletons_and_unstable_part():
    g = complete(3)
    assert rmp.validate_rmp(g, RMPartition.singletons(3)).ok
    assert rmp.quotient(g, RMPartition.singletons(3)) == g
    bad = rmp.validate_rmp(complete(2), RMPartition(((0, 1),)))
    assert not bad.ok and bad.violation == (0, 0, 0)
    assert rmp.quotient(edgeless(4), RMPartition(((0, 1), (2, 3)))) == edgeless(2)


def test_right_module_violation():
    # vertex 2 sees 0 but not 1, so part {0, 1} is split
    from twwchi.graph import OrderedGraph

    g = OrderedGraph.from_edges(3, [(0, 2)])
    chk = rmp.validate_rmp(g, RMPartition(((0, 1), (2,))))
    assert not chk.ok and chk.violation == (0, 1, 2)


def test_partition_errors(s52):
    with pytest.raises(rmp.RmpError):
        rmp.validate_rmp(s52, RMPartition(((0, 1), (1, 2))))
    with pytest.raises(rmp.RmpError):
        rmp.validate_rmp(s52, RMPartition(((0, 1),)))
    with pytest.raises(ValueError):
        RMPartition.parse("0-2,1-4")


def test_transversal_minors_of_s52(s52, s52_parts):
    full = [(i, part) for i, part in enumerate(s52_parts.parts)]
    assert rmp.transversal_minor(s52, s52_parts, full) == rmp.quotient(s52, s52_parts)
    path = rmp.transversal_minor(s52, s52_parts, [(0, idx((1, 2))), (1, idx((2, 3))), (2, idx((3, 4))), (3, idx((4, 5)))])
    assert path.edge_set() == {(0, 1), (1, 2), (2, 3)}
    seen = {m.adj for _, m in rmp.transversal_minors(s52, s52_parts)}
    assert len(seen) == 2 ** comb(4, 2)


def test_transversals_are_forests(s52, s52_parts):
    from twwchi.graph import induced_subgraph

    count = 0
    for t in rmp.transversals(s52_parts):
        h = induced_subgraph(s52, list(t))
        f = nx.empty_graph(4)
        f.add_edges_from(h.edges())
        assert nx.is_forest(f)
        count += 1
    assert count == 1 * 2 * 3 * 4


def test_transversal_minor_errors(s52, s52_parts):
    for bad in ([], [(1, (1,)), (0, (0,))], [(0, ())], [(0, (1,))], [(9, (0,))]):
        with pytest.raises(rmp.RmpError):
            rmp.transversal_minor(s52, s52_parts, bad)


def test_lift(s52, s52_parts):
    c = rmp.lift_quotient_coloring(s52, s52_parts, Coloring((0, 1, 2, 3)))
    assert is_proper(s52, c.colors) and c.palette_size == 4
    g = complete(3)
    assert rmp.lift_quotient_coloring(g, RMPartition.singletons(3), Coloring((2, 0, 1))).colors == (2, 0, 1)
    with pytest.raises(rmp.RmpError):
        rmp.lift_quotient_coloring(s52, s52_parts, Coloring((0, 0, 1, 2)))


@given(st.integers(1, 14), st.integers(0, 2**30))
def test_lift_random(n, seed):
    g, p = random_rmp_instance(random.Random(seed), n)
    assert rmp.validate_rmp(g, p).ok
    q = rmp.quotient(g, p)
    _, qc = oracles.exact_chromatic_number(q)
    assert is_proper(g, rmp.lift_quotient_coloring(g, p, qc).colors)


def test_phi_values():
    assert rmp.phi_h(1, 5) == 1
    assert rmp.phi_h(2, 2) == 3
    assert rmp.phi_h(3, 2) == 7
    assert rmp.phi_amf(7, 1) == 0
    assert rmp.phi_amf(2, 2) == 2
    with pytest.raises(ValueError):
        rmp.phi_amf(0, 2)


def test_phi_amf_power_form():
    for w in range(1, 11):
        for d in range(1, 11):
            assert rmp.phi_amf(w, d) - 1 <= w ** (d - 1)
            assert rmp.phi_amf(w, d) <= w**d


@pytest.mark.xfail(strict=True, reason="the recurrence outgrows the binomial closed form at (w, d) = (3, 3)")
def test_phi_amf_binomial_form():
    assert rmp.phi_amf(3, 3) - 1 <= comb(3 + 3 - 2, 3 - 1)


def test_phi_amf_binomial_form_where_it_holds():
    assert all(rmp.phi_amf_binomial_holds(w, d) for w in range(1, 11) for d in range(1, 3))
    assert all(rmp.phi_amf_binomial_holds(w, 3) for w in (1, 2))
    assert all(rmp.phi_amf_binomial_holds(1, d) for d in range(1, 11))
    assert not rmp.phi_amf_binomial_holds(3, 3) and not rmp.phi_amf_binomial_holds(2, 4)


def _brute_pair_amf(g, p, d):
    vb = p.bounds()
    for cuts in itertools.combinations(range(1, p.k), d - 1):
        b = [vb[x] for x in (0, *cuts, p.k)]
        if is_almost_mixed_minor(g, Division.from_bounds(b, b)):
            return False
    return True


def test_pair_amf_examples(s52, s52_parts):
    res = rmp.is_pair_amf(s52, s52_parts, 4)
    assert res.free == _brute_pair_amf(s52, s52_parts, 4)
    assert not rmp.is_pair_amf(s52, s52_parts, 1).free
    assert rmp.is_pair_amf(s52, s52_parts, 5).vacuous


@given(st.integers(1, 10), st.integers(1, 4), st.integers(0, 2**30))
def test_pair_amf_matches_brute_force(n, d, seed):
    g, p = random_rmp_instance(random.Random(seed), n)
    assert rmp.is_pair_amf(g, p, d).free == _brute_pair_amf(g, p, d)


def test_quotient_bound_examples():
    rep = rmp.check_amf_quotient_bound(edgeless(3), RMPartition.singletons(3), 2)
    assert rep["omega_quotient"] == 1 and rep["bound_holds"]


@given(st.integers(1, 10), st.integers(2, 3), st.integers(0, 2**30))
def test_quotient_bound_random(n, d, seed):
    g, p = random_rmp_instance(random.Random(seed), n, max_part=2)
    if rmp.is_pair_amf(g, p, d).free:
        rep = rmp.check_amf_quotient_bound(g, p, d)
        assert rep["omega_quotient"] <= min(rep["phi"], rep["power"])
    else:
        with pytest.raises(rmp.RmpError):
            rmp.check_amf_quotient_bound(g, p, d)


def test_induced_rmp(s52, s52_parts):
    h, q = rmp.induced_rmp(s52, s52_parts, [0, 1, 3, 6])
    assert q.parts == ((0,), (1,), (2,), (3,))
    assert rmp.validate_rmp(h, q).ok
