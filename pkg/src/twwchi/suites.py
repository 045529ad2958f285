"""Lemma verification suites shared by the CLI and the test-suite.

A suite is a pair ``(cases, check)``: ``cases(max_n, samples, seed)`` lists
small picklable case descriptions and ``check(case)`` returns None on success
or a short failure message.  Random cases carry their own seed so any case
can be replayed on its own.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from . import amf, delayed, matrix, mixext, oracles, rmp, subst
from .graph import Coloring, OrderedGraph, greedy_coloring, gnp, induced_subgraph
from .matrix import Division, TriMatrix

Case = tuple
Check = Callable[[Case], "str | None"]


# ---------------------------------------------------------------- case helpers


def _graph_cases(max_n: int, samples: int, seed: int, exhaustive_cap: int, sample_cap: int) -> list[Case]:
    cases: list[Case] = []
    for n in range(1, min(max_n, exhaustive_cap) + 1):
        cases += [("mask", n, mask) for mask in range(1 << (n * (n - 1) // 2))]
    rng = random.Random(seed)
    top = min(max_n, sample_cap)
    for _ in range(samples):
        cases.append(("gnp", rng.randint(1, top), rng.random(), rng.randrange(1 << 30)))
    return cases


def _graph_of(case: Case) -> OrderedGraph:
    if case[0] == "mask":
        return oracles.graph_from_mask(case[1], case[2])
    _, n, p, s = case
    return gnp(n, p, s)


def _matrix_of(rows: int, cols: int, code: int, base: int) -> TriMatrix:
    vals = []
    for _ in range(rows * cols):
        vals.append(code % base)
        code //= base
    return TriMatrix.of([vals[r * cols : (r + 1) * cols] for r in range(rows)])


def random_rmp_instance(rng: random.Random, n: int, max_part: int = 3) -> tuple[OrderedGraph, rmp.RMPartition]:
    """Random graph built around a random ordered RMP: stable parts, each later
    vertex sees all or none of every earlier part."""
    sizes = []
    left = n
    while left:
        s = rng.randint(1, min(max_part, left))
        sizes.append(s)
        left -= s
    parts, start = [], 0
    for s in sizes:
        parts.append(tuple(range(start, start + s)))
        start += s
    p = rmp.RMPartition(tuple(parts))
    density = rng.random()
    edges = []
    for j, pj in enumerate(parts):
        for i in range(j):
            for v in pj:
                if rng.random() < density:
                    edges += [(u, v) for u in parts[i]]
    return OrderedGraph.from_edges(n, edges), p


# ---------------------------------------------------------------- suites


def roundtrip_cases(max_n, samples, seed):
    return _graph_cases(max_n, samples, seed, 6, 30)


def roundtrip_check(case):
    g = _graph_of(case)
    t, ng = delayed.build_delayed_tree(g, verify=True)
    if delayed.realize_delayed(t, ng) != g:
        return "realization differs from the input"
    return None


def corner_cases(max_n, samples, seed):
    top = min(max_n, 3)
    return [(r, c, code) for r in range(1, top + 1) for c in range(1, top + 1) for code in range(3 ** (r * c))]


def corner_check(case):
    m = _matrix_of(*case, 3)
    c = matrix.find_corner(m)
    if matrix.is_mixed(m) != (c is not None):
        return "mixedness and corner presence disagree"
    if c is not None and not matrix.is_corner(m, c):
        return "returned corner is not mixed"
    return None


def _square_cases(max_n, samples, seed):
    size = max(2, min(max_n, 4))
    return [(size, code) for code in range(1 << (size * size))]


def _two_divisions(size: int) -> list[Division]:
    return [Division.from_bounds((0, a, size), (0, b, size)) for a in range(1, size) for b in range(1, size)]


def contract_check(case):
    size, code = case
    m = _matrix_of(size, size, code, 2)
    src = matrix.is_mixed(m)
    for d in _two_divisions(size):
        if matrix.is_mixed(matrix.contract(m, d)) and not src:
            return f"contraction mixed but source not, division {d.format()}"
    return None


def delete_check(case):
    size, code = case
    m = _matrix_of(size, size, code, 2)
    src = matrix.is_mixed(m)
    for d in _two_divisions(size):
        if any(k is matrix.ZoneKind.MIXED for row in matrix.zone_kinds(m, d) for k in row):
            continue
        for fn in (matrix.horizontal_deletion, matrix.vertical_deletion):
            if matrix.is_mixed(fn(m, d)) and not src:
                return f"{fn.__name__} mixed but source not, division {d.format()}"
    return None


def fourcorner_cases(max_n, samples, seed):
    cases: list[Case] = [("bin", 4, code) for code in range(1 << 16)]
    rng = random.Random(seed)
    for _ in range(samples):
        size = rng.randint(4, max(4, min(max_n, 6)))
        cases.append(("tri", size, rng.randrange(3 ** (size * size))))
    return cases


def fourcorner_check(case):
    kind, size, code = case
    m = _matrix_of(size, size, code, 2 if kind == "bin" else 3)
    for a in range(2, size - 1):
        for b in range(2, size - 1):
            d = Division.from_bounds((0, a, size), (0, b, size))
            if not all(matrix.is_mixed(matrix.zone(m, d, i, j)) for i, j in d.zones()):
                continue
            c = matrix.find_spanning_corner(m, d)
            if not matrix.is_corner(m, c):
                return f"spanning corner not mixed for {d.format()}"
            if not (c.r1 < a <= c.r2 and c.c1 < b <= c.c2):
                return f"corner does not meet all four zones for {d.format()}"
    return None


def oddeven_cases(max_n, samples, seed):
    return _graph_cases(max_n, samples, seed, 6, 20)


def oddeven_check(case):
    g = _graph_of(case)
    t, ng = delayed.build_delayed_tree(g)
    odd, even = delayed.odd_even_split(t, ng)
    go, ge = delayed.realize_delayed(t, odd), delayed.realize_delayed(t, even)
    if go.edge_set() & ge.edge_set() or go.edge_set() | ge.edge_set() != g.edge_set():
        return "odd and even sides do not partition the edges"
    for parity, side in ((1, go), (0, ge)):
        st = delayed.delayed_to_subst_trees(t, delayed.restrict_to_parity(t, ng, parity), parity)
        if subst.realize_subst(st) != side:
            return f"substitution tree for parity {parity} realizes a different graph"
    return None


def _tree_cases(max_n, samples, seed):
    rng = random.Random(seed)
    return [(rng.randint(1, max(1, min(max_n, 20))), rng.randrange(1 << 30)) for _ in range(samples)]


def depth_check(case):
    leaves, s = case
    rng = random.Random(s)
    t = subst.random_subst_tree(rng, leaves, p=rng.random())
    info = subst.depth_info(t)
    wit = subst.clique_witness(t)
    g = subst.realize_subst(t)
    if len(wit) != info.tree_depth + 1:
        return "witness size differs from depth + 1"
    if any(not g.has_edge(u, v) for u, v in combinations(wit, 2)):
        return "witness is not a clique"
    if subst.omega_dp(t)[t.root] < info.tree_depth + 1:
        return "clique number below depth + 1"
    return None


def inddec_check(case):
    leaves, s = case
    rng = random.Random(s)
    t = subst.random_subst_tree(rng, leaves, p=rng.random(), independent=True)
    pal = {x: greedy_coloring(t.graphs[x]) for x, kids in enumerate(t.children) if kids}
    c = subst.color_independent(t, pal)
    bound = (subst.depth_info(t).tree_depth + 1) * max((max(v) + 1 for v in pal.values()), default=1)
    if c.palette_size > bound:
        return f"palette {c.palette_size} above (depth+1) * node palette = {bound}"
    return None


def subst_cases(max_n, samples, seed):
    rng = random.Random(seed)
    return [(kind, rng.randint(1, max(1, min(max_n, 30))), rng.randrange(1 << 30)) for kind in ("cograph", "tree") for _ in range(samples)]


def subst_check(case):
    kind, n, s = case
    rng = random.Random(s)
    if kind == "cograph":
        from .graph import random_cotree

        t = subst.cotree_to_subst(random_cotree(n, rng))
        c, rep = subst.color_substitution(t, subst.graph_base(t, lambda h: amf.color_cograph(h).colors), k=1)
        if c.palette_size > rep.omega**5:
            return f"palette {c.palette_size} above omega^5"
        return None
    t = subst.random_subst_tree(rng, n, p=rng.random())
    subst.color_substitution(t, subst.graph_base(t, greedy_coloring))
    return None


def rmp_cases(max_n, samples, seed):
    rng = random.Random(seed)
    return [("fixture",)] + [("random", rng.randint(1, max(1, min(max_n, 12))), rng.randrange(1 << 30)) for _ in range(samples)]


def rmp_check(case):
    if case[0] == "fixture":
        from .graph import shift2, shift2_parts

        g = shift2(5)
        p = rmp.RMPartition.from_intervals(shift2_parts(5))
        if not rmp.validate_rmp(g, p).ok:
            return "shift graph partition rejected"
        if rmp.quotient(g, p).num_edges() != 6:
            return "shift graph quotient is not K4"
        for t in rmp.transversals(p):
            h = induced_subgraph(g, list(t))
            if h.num_edges() >= h.n or _has_cycle(h):
                return f"transversal {t} is not a forest"
        found = {m.adj for _, m in rmp.transversal_minors(g, p)}
        if len(found) != 64:
            return f"only {len(found)} of 64 four-vertex graphs are transversal minors"
        return None
    _, n, s = case
    g, p = random_rmp_instance(random.Random(s), n)
    if not rmp.validate_rmp(g, p).ok:
        return "constructed RMP rejected"
    q = rmp.quotient(g, p)
    if q != rmp.transversal_minor(g, p, list(enumerate(p.parts))):
        return "quotient differs from the full transversal minor"
    rmp.lift_quotient_coloring(g, p, Coloring(tuple(greedy_coloring(q))))
    return None


def _has_cycle(h: OrderedGraph) -> bool:
    from .graph import components

    return any(
        sum(h.degree(v) for v in range(h.n) if c >> v & 1) // 2 >= c.bit_count() for c in components(h)
    )


def amfquotient_cases(max_n, samples, seed):
    rng = random.Random(seed)
    return [(rng.randint(1, max(1, min(max_n, 10))), rng.choice((2, 3)), rng.randrange(1 << 30)) for _ in range(samples)]


def amfquotient_check(case):
    n, d, s = case
    rng = random.Random(s)
    g, p = random_rmp_instance(rng, n, max_part=2)
    if not rmp.is_pair_amf(g, p, d).free:
        return None
    rmp.check_amf_quotient_bound(g, p, d)
    return None


def claim_cases(max_n, samples, seed):
    rng = random.Random(seed)
    return [(rng.randint(3, max(3, min(max_n, 8))), rng.random(), rng.randrange(1 << 30)) for _ in range(samples)]


def _claims(case, which: str):
    n, p, s = case
    g = gnp(n, p, s)
    inst, _ = amf.amf_instance_from_oracle(g)
    inst = amf.AmfInstance(inst.graph, max(3, inst.d), True)
    _, rep = amf.color_amf(inst, check_claims=True)
    bad = [c for c in rep.claims if c["claim"] == which and (c.get("failures") or c.get("free") is False)]
    return f"{len(bad)} falsified {which} checks" if bad else None


def reduction_check(case):
    return _claims(case, "reduction")


def twodclaim_check(case):
    return _claims(case, "twod")


def mixedext_cases(max_n, samples, seed):
    rng = random.Random(seed)
    return [(rng.randint(1, max(1, min(max_n, 20))), rng.random(), rng.randrange(1 << 30)) for _ in range(samples)]


def mixedext_check(case):
    g = gnp(*case)
    ok, where = mixext.check_greedy_certificate(g)
    if not ok:
        return f"greedy certificate fails at parts {where}"
    mixext.color_mixed_extension(g)
    return None


def minparams_cases(max_n, samples, seed):
    return [("mask", n, mask) for n in range(1, min(max_n, 5) + 1) for mask in range(1 << (n * (n - 1) // 2))]


def minparams_check(case):
    g = _graph_of(case)
    a, _ = oracles.min_amf(g)
    m, _ = oracles.min_mixed_free(g)
    if not m <= a <= 2 * m:
        return f"min_mixed_free={m}, min_amf={a} break the inequalities"
    if a == 2 and oracles.has_induced_p4(g):
        return "2-almost mixed free graph with an induced P4"
    return None


SUITES: dict[str, tuple[Callable[..., list[Case]], Check]] = {
    "roundtrip": (roundtrip_cases, roundtrip_check),
    "corner": (corner_cases, corner_check),
    "contract": (_square_cases, contract_check),
    "delete": (_square_cases, delete_check),
    "fourcorner": (fourcorner_cases, fourcorner_check),
    "oddeven": (oddeven_cases, oddeven_check),
    "depth": (_tree_cases, depth_check),
    "inddec": (_tree_cases, inddec_check),
    "subst": (subst_cases, subst_check),
    "rmp": (rmp_cases, rmp_check),
    "amfquotient": (amfquotient_cases, amfquotient_check),
    "reduction": (claim_cases, reduction_check),
    "twodclaim": (claim_cases, twodclaim_check),
    "mixedext": (mixedext_cases, mixedext_check),
    "minparams": (minparams_cases, minparams_check),
}


@dataclass
class SuiteResult:
    suite: str
    cases: int
    failures: list[tuple[Case, str]]

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self, limit: int = 10) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "failed": len(self.failures),
            "passed": self.passed,
            "first_failures": [{"case": list(c), "message": m} for c, m in self.failures[:limit]],
        }


def _guarded(args: tuple[str, Case]) -> str | None:
    name, case = args
    try:
        return SUITES[name][1](case)
    except Exception as exc:  # a crash is a failure of that case, not of the run
        return f"{type(exc).__name__}: {exc}"


def run_suite(name: str, max_n: int, samples: int, seed: int, jobs: int = 1) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    cases = SUITES[name][0](max_n, samples, seed)
    work: Iterable[tuple[str, Case]] = [(name, c) for c in cases]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_guarded, work, chunksize=max(1, len(cases) // (jobs * 8))))
    else:
        results = [_guarded(w) for w in work]
    fails = [(c, msg) for c, msg in zip(cases, results) if msg is not None]
    return SuiteResult(name, len(cases), fails)


__all__ = ["SUITES", "SuiteResult", "run_suite", "random_rmp_instance"]
