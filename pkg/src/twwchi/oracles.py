"""Exact brute-force ground truth for small graphs.

Nothing here is clever beyond bitset pruning; sizes are capped so that an
oracle never silently degrades into a heuristic.
"""
from __future__ import annotations

import random
from itertools import combinations, permutations
from typing import Iterator

from .graph import Coloring, OrderedGraph, bits
from .matrix import find_almost_mixed_minor, find_mixed_minor

CHROMATIC_LIMIT = 25
CLIQUE_LIMIT = 40
ORDERING_LIMIT = 8
EXHAUSTIVE_LIMIT = 7


class OracleLimitError(ValueError):
    pass


def exact_clique_number(g: OrderedGraph) -> tuple[int, list[int]]:
    """Maximum clique by Bron-Kerbosch with pivoting."""
    if g.n > CLIQUE_LIMIT:
        raise OracleLimitError(f"clique oracle capped at n={CLIQUE_LIMIT}")
    best: list[int] = []

    def bk(r: list[int], p: int, x: int) -> None:
        nonlocal best
        if not p and not x:
            if len(r) > len(best):
                best = list(r)
            return
        if len(r) + p.bit_count() <= len(best):
            return
        pivot = max(bits(p | x), key=lambda u: (g.adj[u] & p).bit_count())
        for v in bits(p & ~g.adj[pivot]):
            r.append(v)
            bk(r, p & g.adj[v], x & g.adj[v])
            r.pop()
            p &= ~(1 << v)
            x |= 1 << v

    if g.n:
        bk([], g.full_mask, 0)
    return len(best), sorted(best)


def clique_number(g: OrderedGraph) -> int:
    return exact_clique_number(g)[0]


def _dsatur_greedy(g: OrderedGraph) -> list[int]:
    colors = [-1] * g.n
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if colors[u] < 0),
            key=lambda u: (len({colors[w] for w in bits(g.adj[u]) if colors[w] >= 0}), g.degree(u)),
        )
        used = {colors[w] for w in bits(g.adj[v])}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


def exact_chromatic_number(g: OrderedGraph) -> tuple[int, Coloring]:
    """Chromatic number by DSATUR branch and bound, with an optimal coloring."""
    if g.n > CHROMATIC_LIMIT:
        raise OracleLimitError(f"chromatic oracle capped at n={CHROMATIC_LIMIT}")
    if g.n == 0:
        return 0, Coloring(())
    best = _dsatur_greedy(g)
    best_k = max(best) + 1
    lower, clique = exact_clique_number(g)
    if best_k == lower:
        return best_k, Coloring(tuple(best))
    colors = [-1] * g.n
    # pre-color the clique with distinct colors; breaks color symmetry
    for i, v in enumerate(clique):
        colors[v] = i

    def search(used: int) -> bool:
        nonlocal best, best_k
        pick, pick_key = -1, None
        for u in range(g.n):
            if colors[u] < 0:
                sat = len({colors[w] for w in bits(g.adj[u]) if colors[w] >= 0})
                key = (sat, g.degree(u))
                if pick_key is None or key > pick_key:
                    pick, pick_key = u, key
        if pick < 0:
            best, best_k = list(colors), used
            return best_k == lower
        forbidden = {colors[w] for w in bits(g.adj[pick])}
        for c in range(min(used + 1, best_k - 1)):
            if c in forbidden:
                continue
            colors[pick] = c
            if search(max(used, c + 1)):
                return True
            colors[pick] = -1
            if best_k <= max(used, lower):
                return True
        return False

    search(len(clique))
    return best_k, Coloring(tuple(best))


def chromatic_number(g: OrderedGraph) -> int:
    return exact_chromatic_number(g)[0]


def has_induced_p4(g: OrderedGraph) -> bool:
    """Brute force over all 4-vertex subsets."""
    for quad in combinations(range(g.n), 4):
        degs = sorted((g.adj[v] & sum(1 << u for u in quad)).bit_count() for v in quad)
        if degs == [1, 1, 2, 2]:
            sub_edges = sum(degs) // 2
            if sub_edges == 3:
                return True
    return False


def is_prime(g: OrderedGraph) -> bool:
    """No module of size strictly between 1 and n."""
    full = g.full_mask
    for u, v in combinations(range(g.n), 2):
        m = (1 << u) | (1 << v)
        while True:
            grow = 0
            for y in bits(full & ~m):
                seen = g.adj[y] & m
                if seen and seen != m:
                    grow |= 1 << y
            if not grow:
                break
            m |= grow
        if m != full:
            return False
    return True


def _orderings(n: int) -> Iterator[tuple[int, ...]]:
    """All orderings up to reversal (first element below last)."""
    for perm in permutations(range(n)):
        if n < 2 or perm[0] < perm[-1]:
            yield perm


def min_amf(g: OrderedGraph) -> tuple[int, tuple[int, ...]]:
    """Least d >= 2 such that some vertex ordering has no d-almost mixed minor."""
    if g.n > ORDERING_LIMIT:
        raise OracleLimitError(f"ordering search capped at n={ORDERING_LIMIT}")
    d = 2
    while True:
        for order in _orderings(g.n):
            if find_almost_mixed_minor(g.permuted(order), d) is None:
                return d, order
        d += 1


def min_mixed_free(g: OrderedGraph) -> tuple[int, tuple[int, ...]]:
    """Least d >= 1 such that some vertex ordering has no d-mixed minor."""
    if g.n > ORDERING_LIMIT:
        raise OracleLimitError(f"ordering search capped at n={ORDERING_LIMIT}")
    d = 1
    while True:
        for order in _orderings(g.n):
            if find_mixed_minor(g.permuted(order), d) is None:
                return d, order
        d += 1


def graph_from_mask(n: int, mask: int) -> OrderedGraph:
    pairs = list(combinations(range(n), 2))
    return OrderedGraph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])


def enumerate_graphs(n: int, mode: str = "exhaustive", seed: int = 0, count: int = 0) -> Iterator[OrderedGraph]:
    """All labelled graphs on n vertices (bitmask order), or a seeded sample."""
    m = n * (n - 1) // 2
    if mode == "exhaustive":
        if n > EXHAUSTIVE_LIMIT:
            raise OracleLimitError(f"exhaustive enumeration capped at n={EXHAUSTIVE_LIMIT}")
        for mask in range(1 << m):
            yield graph_from_mask(n, mask)
    elif mode == "sample":
        rng = random.Random(seed)
        for _ in range(count):
            yield graph_from_mask(n, rng.getrandbits(m) if m else 0)
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")


__all__ = [
    "OracleLimitError",
    "exact_clique_number",
    "clique_number",
    "exact_chromatic_number",
    "chromatic_number",
    "has_induced_p4",
    "is_prime",
    "min_amf",
    "min_mixed_free",
    "enumerate_graphs",
    "graph_from_mask",
]
