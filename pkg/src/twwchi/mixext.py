"""Mixed subgraphs of ordered graphs and the coloring of mixed extensions.

``Mix(G, P)`` keeps only the edges between two intervals of ``P`` whose zone
in the adjacency matrix is mixed.  Cutting the order greedily into shortest
intervals that each hold a maximum clique makes every cross edge among the
non-final intervals a mixed-zone edge, so a coloring of the mixed subgraph
times a coloring of the intervals colors all but the last interval.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .graph import (
    Coloring,
    IntervalPartition,
    OrderedGraph,
    bits,
    degeneracy_order,
    dense_labels,
    induced_subgraph,
    interval_mask,
    is_proper,
)
from .matrix import graph_zone_oracle
from .oracles import CHROMATIC_LIMIT, clique_number, exact_chromatic_number

InnerColorer = Callable[[OrderedGraph], Sequence[int]]


def mixed_pairs(g: OrderedGraph, p: IntervalPartition) -> set[tuple[int, int]]:
    """Pairs ``s < t`` of part indices whose zone is mixed."""
    mixed = graph_zone_oracle(g)
    parts = p.parts
    return {
        (s, t)
        for s in range(len(parts))
        for t in range(s + 1, len(parts))
        if mixed(parts[s].lo, parts[s].hi, parts[t].lo, parts[t].hi)
    }


def mixed_subgraph(g: OrderedGraph, p: IntervalPartition) -> OrderedGraph:
    if p.lo != 0 or p.hi != g.n:
        raise ValueError("partition must cover the vertex set")
    parts = p.parts
    rows = [0] * g.n
    for s, t in mixed_pairs(g, p):
        mt = parts[t].mask
        for v in parts[s]:
            e = g.adj[v] & mt
            rows[v] |= e
            for u in bits(e):
                rows[u] |= 1 << v
    return OrderedGraph._trusted(g.n, tuple(rows))


def _has_clique(g: OrderedGraph, lo: int, hi: int, size: int) -> bool:
    return clique_number(induced_subgraph(g, range(lo, hi))) >= size


def greedy_omega_intervals(g: OrderedGraph) -> IntervalPartition:
    """Shortest successive intervals holding a maximum clique; leftovers form the last part."""
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    w = clique_number(g)
    bounds = [0]
    s = 0
    while s < g.n:
        for e in range(s + 1, g.n + 1):
            if _has_clique(g, s, e, w):
                break
        else:
            e = g.n
        bounds.append(e)
        s = e
    return IntervalPartition(tuple(bounds))


def check_greedy_certificate(g: OrderedGraph, p: IntervalPartition | None = None) -> tuple[bool, tuple[int, int] | None]:
    """Every edge between non-final parts ``s < t`` lies in a mixed zone.

    Also checks that each non-final part holds a maximum clique and its proper
    prefix does not.  Returns (ok, offending pair or None).
    """
    if p is None:
        p = greedy_omega_intervals(g)
    w = clique_number(g)
    parts = p.parts
    k = len(parts)
    for s in range(k - 1):
        iv = parts[s]
        if not _has_clique(g, iv.lo, iv.hi, w) or _has_clique(g, iv.lo, iv.hi - 1, w):
            return False, (s, s)
    mixed = graph_zone_oracle(g)
    for s in range(k - 1):
        for t in range(s + 1, k - 1):
            a, b = parts[s], parts[t]
            joined = any(g.adj[v] & b.mask for v in a)
            if joined and not mixed(a.lo, a.hi, b.lo, b.hi):
                return False, (s, t)
    return True, None


def default_inner(h: OrderedGraph) -> list[int]:
    """Exact coloring when affordable, otherwise smallest-last greedy."""
    if h.n <= CHROMATIC_LIMIT:
        return list(exact_chromatic_number(h)[1].colors)
    order, _ = degeneracy_order(h)
    from .graph import greedy_coloring

    return greedy_coloring(h, order)


@dataclass
class MixReport:
    levels: list[dict] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"levels": self.levels}


class _MixColorer:
    def __init__(self, g: OrderedGraph, inner: InnerColorer):
        self.g = g
        self.inner = inner
        self.memo: dict[int, tuple[dict[int, int], int]] = {}
        self.report = MixReport()

    def color(self, mask: int) -> tuple[dict[int, int], int]:
        """Coloring of ``g[mask]`` keyed by vertex, and its palette size."""
        if mask in self.memo:
            return self.memo[mask]
        verts = list(bits(mask))
        sub = induced_subgraph(self.g, verts)
        if not verts:
            res: tuple[dict[int, int], int] = ({}, 0)
        elif sub.num_edges() == 0:
            res = ({v: 0 for v in verts}, 1)
        else:
            res = self._split(verts, sub)
        self.memo[mask] = res
        return res

    def _part_coloring(self, verts: list[int], complete: bool) -> tuple[dict[int, int], int, int]:
        """Color one interval; a complete one gets its last vertex a fresh color.

        Returns (coloring, palette, recursive palette used).
        """
        if complete:
            inner, pal = self.color(_mask(verts[:-1]))
            out = dict(inner)
            out[verts[-1]] = pal
            return out, pal + 1, pal
        inner, pal = self.color(_mask(verts))
        return dict(inner), pal, pal

    def _split(self, verts: list[int], sub: OrderedGraph) -> tuple[dict[int, int], int]:
        p = greedy_omega_intervals(sub)
        parts = p.parts
        k = len(parts)
        w = clique_number(sub)
        last_complete = _has_clique(sub, parts[-1].lo, parts[-1].hi, w)
        c = 0
        inside: dict[int, int] = {}
        for s in range(k - 1):
            local = [verts[v] for v in parts[s]]
            cols, _, rec = self._part_coloring(local, True)
            c = max(c, rec)
            inside.update(cols)
        out: dict[int, int] = {}
        f = 0
        offset = 0
        if k > 1:
            head = parts[k - 2].hi
            head_graph = induced_subgraph(sub, range(head))
            mix = mixed_subgraph(head_graph, IntervalPartition(p.bounds[: k]))
            cross = list(self.inner(mix))
            if not is_proper(mix, cross):
                raise ValueError("inner coloring of the mixed subgraph is not proper")
            if mix.num_edges() < _cross_edges(head_graph, parts[: k - 1]):
                raise AssertionError("a cross edge between non-final parts is not in a mixed zone")
            f = len(set(cross))
            labels = dense_labels((inside[verts[v]], cross[v]) for v in range(head))
            for v, lab in zip(range(head), labels):
                out[verts[v]] = lab
            offset = max(labels) + 1
        last = [verts[v] for v in parts[-1]]
        cols, last_pal, rec = self._part_coloring(last, last_complete)
        c = max(c, rec)
        for v, col in cols.items():
            out[v] = offset + col
        palette = offset + last_pal
        bound = (c + 1) * f + c + 1
        if palette > bound:
            raise AssertionError(f"palette {palette} exceeds (c+1)f+c+1 = {bound}")
        self.report.levels.append(
            {"n": len(verts), "omega": w, "parts": k, "last_complete": last_complete, "c": c, "f": f, "palette": palette, "bound": bound}
        )
        return out, palette


def _mask(vs: Sequence[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _cross_edges(g: OrderedGraph, parts) -> int:
    count = 0
    for a in parts:
        rest = interval_mask(a.hi, parts[-1].hi)
        for v in a:
            count += (g.adj[v] & rest).bit_count()
    return count


def color_mixed_extension(g: OrderedGraph, inner: InnerColorer | None = None) -> tuple[Coloring, MixReport]:
    """Recursive coloring on the clique number through greedy maximum-clique intervals."""
    if g.n == 0:
        return Coloring(()), MixReport()
    colorer = _MixColorer(g, inner or default_inner)
    cols, _ = colorer.color(g.full_mask)
    c = Coloring(tuple(cols[v] for v in range(g.n))).dense()
    if not is_proper(g, c.colors):
        raise AssertionError("mixed extension coloring is not proper")
    return c, colorer.report


def mix_degeneracy_report(g: OrderedGraph, samples: int, seed: int = 0) -> dict:
    """Degeneracy of mixed subgraphs under random interval partitions (reported only)."""
    rng = random.Random(seed)
    degs = []
    for _ in range(samples):
        cuts = sorted(rng.sample(range(1, g.n), rng.randint(0, g.n - 1))) if g.n > 1 else []
        p = IntervalPartition((0, *cuts, g.n))
        degs.append(degeneracy_order(mixed_subgraph(g, p))[1])
    return {"samples": samples, "max_degeneracy": max(degs, default=0), "mean_degeneracy": sum(degs) / len(degs) if degs else 0.0}
