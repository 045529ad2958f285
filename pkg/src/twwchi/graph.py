"""Ordered graphs, intervals, colorings and small-graph generators.

Vertices are ``0..n-1`` and the vertex order is always the index order.
Adjacency is stored as one Python int per vertex used as a bitset, which
keeps module and zone tests to a handful of mask operations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def interval_mask(lo: int, hi: int) -> int:
    return ((1 << (hi - lo)) - 1) << lo


@dataclass(frozen=True)
class OrderedGraph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise ValueError(f"self-loop at {v}")
            if row & ~full:
                raise ValueError(f"neighbour of {v} out of range")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "OrderedGraph":
        if n < 0:
            raise ValueError("negative vertex count")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    @classmethod
    def _trusted(cls, n: int, adj: tuple[int, ...]) -> "OrderedGraph":
        # skips the symmetry scan; callers build adj from an already valid graph
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def empty(cls, n: int) -> "OrderedGraph":
        return cls(n, (0,) * n)

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges())

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def complement(self) -> "OrderedGraph":
        full = self.full_mask
        return OrderedGraph._trusted(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def permuted(self, order: Sequence[int]) -> "OrderedGraph":
        """Copy whose vertex ``i`` is the old vertex ``order[i]``."""
        return induced_subgraph(self, order, require_sorted=False)

    def reversed(self) -> "OrderedGraph":
        return self.permuted(range(self.n - 1, -1, -1))

    def is_connected(self) -> bool:
        return self.n <= 1 or len(components(self)) == 1


def induced_subgraph(g: OrderedGraph, vs: Sequence[int], *, require_sorted: bool = True) -> OrderedGraph:
    """Graph induced on ``vs``; vertex ``i`` of the result is ``vs[i]``."""
    vs = list(vs)
    pos: dict[int, int] = {}
    for i, v in enumerate(vs):
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
        if v in pos:
            raise ValueError(f"vertex {v} listed twice")
        if require_sorted and i and vs[i - 1] > v:
            raise ValueError("vertex subset must be listed in increasing order")
        pos[v] = i
    rows = []
    for v in vs:
        row = 0
        for u in bits(g.adj[v]):
            j = pos.get(u)
            if j is not None:
                row |= 1 << j
        rows.append(row)
    return OrderedGraph._trusted(len(vs), tuple(rows))


def mask_of(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def components(g: OrderedGraph, mask: int | None = None) -> list[int]:
    """Connected components of ``g[mask]`` as bitmasks, ordered by least vertex."""
    rest = g.full_mask if mask is None else mask
    out = []
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            nxt &= rest & ~comp
            comp |= nxt
            frontier = nxt
        out.append(comp)
        rest &= ~comp
    return out


def is_module(g: OrderedGraph, xs: Iterable[int]) -> bool:
    """True iff every vertex outside ``xs`` sees all or none of ``xs``."""
    xm = mask_of(xs)
    if not xm:
        raise ValueError("module candidate must be nonempty")
    if xm >> g.n:
        raise ValueError("vertex out of range")
    return is_module_mask(g, xm, g.full_mask & ~xm)


def is_module_mask(g: OrderedGraph, xm: int, outside: int) -> bool:
    for y in bits(outside):
        seen = g.adj[y] & xm
        if seen and seen != xm:
            return False
    return True


def is_module_wrt(g: OrderedGraph, xs: Iterable[int], ys: Iterable[int]) -> bool:
    """True iff ``xs`` is a module of the graph induced on ``xs ∪ ys``."""
    xm, ym = mask_of(xs), mask_of(ys)
    if not xm or not ym:
        raise ValueError("both sets must be nonempty")
    if xm & ym:
        raise ValueError("sets overlap")
    if (xm | ym) >> g.n:
        raise ValueError("vertex out of range")
    return is_module_mask(g, xm, ym)


def edge_union_cover(g: OrderedGraph, parts: Sequence[OrderedGraph]) -> bool:
    for p in parts:
        if p.n != g.n:
            raise ValueError("all parts must share the vertex count of g")
    union = [0] * g.n
    for p in parts:
        for v in range(g.n):
            union[v] |= p.adj[v]
    return tuple(union) == g.adj


# ---------------------------------------------------------------- intervals


@dataclass(frozen=True, order=True)
class Interval:
    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not 0 <= self.lo < self.hi:
            raise ValueError(f"bad interval [{self.lo}, {self.hi})")

    def __len__(self) -> int:
        return self.hi - self.lo

    def __iter__(self) -> Iterator[int]:
        return iter(range(self.lo, self.hi))

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and self.lo <= v < self.hi

    @property
    def mask(self) -> int:
        return interval_mask(self.lo, self.hi)


@dataclass(frozen=True)
class IntervalPartition:
    """Consecutive parts given by ``bounds = (lo, c1, ..., hi)``."""

    bounds: tuple[int, ...]

    def __post_init__(self) -> None:
        b = self.bounds
        if len(b) < 2:
            raise ValueError("partition needs at least one part")
        if any(x >= y for x, y in zip(b, b[1:])):
            raise ValueError(f"bounds must be strictly increasing: {b}")

    @classmethod
    def from_parts(cls, parts: Sequence[Interval]) -> "IntervalPartition":
        bounds = [parts[0].lo]
        for p in parts:
            if p.lo != bounds[-1]:
                raise ValueError("parts are not consecutive")
            bounds.append(p.hi)
        return cls(tuple(bounds))

    @classmethod
    def from_sizes(cls, sizes: Sequence[int], start: int = 0) -> "IntervalPartition":
        bounds = [start]
        for s in sizes:
            bounds.append(bounds[-1] + s)
        return cls(tuple(bounds))

    @classmethod
    def singletons(cls, n: int) -> "IntervalPartition":
        return cls(tuple(range(n + 1)))

    @classmethod
    def parse(cls, text: str) -> "IntervalPartition":
        """Parse the literal ``0-0,1-2,3-5`` (inclusive ranges)."""
        parts = []
        for chunk in text.strip().split(","):
            a, _, b = chunk.strip().partition("-")
            lo, hi = int(a), int(b if b else a)
            parts.append(Interval(lo, hi + 1))
        return cls.from_parts(parts)

    def format(self) -> str:
        return ",".join(f"{p.lo}-{p.hi - 1}" for p in self.parts)

    @property
    def parts(self) -> list[Interval]:
        return [Interval(a, b) for a, b in zip(self.bounds, self.bounds[1:])]

    @property
    def cuts(self) -> tuple[int, ...]:
        return self.bounds[1:-1]

    @property
    def lo(self) -> int:
        return self.bounds[0]

    @property
    def hi(self) -> int:
        return self.bounds[-1]

    def __len__(self) -> int:
        return len(self.bounds) - 1

    def part_of(self) -> list[int]:
        """Part index of every covered position, offset by ``lo``."""
        out = []
        for i, p in enumerate(self.parts):
            out.extend([i] * len(p))
        return out

    def refines(self, other: "IntervalPartition") -> bool:
        return (self.lo, self.hi) == (other.lo, other.hi) and set(other.bounds) <= set(self.bounds)


# ---------------------------------------------------------------- colorings


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(c < 0 for c in self.colors):
            raise ValueError("color indices must be nonnegative")

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    @property
    def palette_size(self) -> int:
        return len(set(self.colors))

    def dense(self) -> "Coloring":
        """Relabel colors to ``0..palette-1`` by first occurrence."""
        return Coloring(tuple(dense_labels(self.colors)))

    def shifted(self, offset: int) -> "Coloring":
        return Coloring(tuple(c + offset for c in self.colors))


def dense_labels(values: Iterable) -> list[int]:
    index: dict = {}
    return [index.setdefault(v, len(index)) for v in values]


def is_proper(g: OrderedGraph, colors: Sequence[int]) -> bool:
    if len(colors) != g.n:
        return False
    return all(colors[u] != colors[v] for u, v in g.edges())


def verify_coloring(g: OrderedGraph, c: Coloring) -> bool:
    return is_proper(g, c.colors)


def product_coloring(c1: Coloring, c2: Coloring) -> Coloring:
    if len(c1) != len(c2):
        raise ValueError("colorings have different lengths")
    return Coloring(tuple(dense_labels(zip(c1.colors, c2.colors))))


def greedy_coloring(g: OrderedGraph, order: Sequence[int] | None = None) -> list[int]:
    colors = [-1] * g.n
    for v in order if order is not None else range(g.n):
        used = {colors[u] for u in bits(g.adj[v]) if colors[u] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return colors


def degeneracy_order(g: OrderedGraph) -> tuple[list[int], int]:
    """Smallest-last order (reverse of the removal sequence) and the degeneracy."""
    alive = g.full_mask
    removed = []
    degen = 0
    while alive:
        best = min(bits(alive), key=lambda v: (g.adj[v] & alive).bit_count())
        degen = max(degen, (g.adj[best] & alive).bit_count())
        removed.append(best)
        alive &= ~(1 << best)
    return removed[::-1], degen


def degeneracy_coloring(g: OrderedGraph) -> list[int]:
    order, _ = degeneracy_order(g)
    return greedy_coloring(g, order)


# ---------------------------------------------------------------- generators


def shift_vertices(n: int) -> list[tuple[int, int]]:
    """Pairs ``(i, j)``, ``1 <= i < j <= n``, sorted by ``(j, i)``."""
    return [(i, j) for j in range(2, n + 1) for i in range(1, j)]


def shift2(n: int) -> OrderedGraph:
    if n < 1:
        raise ValueError("shift2 needs n >= 1")
    verts = shift_vertices(n)
    index = {p: k for k, p in enumerate(verts)}
    edges = [(index[(i, j)], index[(j, k)]) for (i, j) in verts for k in range(j + 1, n + 1)]
    return OrderedGraph.from_edges(len(verts), edges)


def shift2_parts(n: int) -> IntervalPartition:
    """The parts ``V_j = {(i, j)}`` for ``j = 2..n`` as consecutive intervals."""
    return IntervalPartition.from_sizes([j - 1 for j in range(2, n + 1)])


def cycle(n: int) -> OrderedGraph:
    """Cycle ``0-2-3-...-(n-1)-1-0``; for n=5 this is the pentagon A..E used throughout."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    seq = [0] + list(range(2, n)) + [1]
    return OrderedGraph.from_edges(n, [(seq[i], seq[(i + 1) % n]) for i in range(n)])


def path(n: int) -> OrderedGraph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return OrderedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> OrderedGraph:
    if n < 1:
        raise ValueError("complete needs n >= 1")
    return OrderedGraph.from_edges(n, combinations(range(n), 2))


def edgeless(n: int) -> OrderedGraph:
    if n < 1:
        raise ValueError("edgeless needs n >= 1")
    return OrderedGraph.empty(n)


def gnp(n: int, p: float, seed: int = 0) -> OrderedGraph:
    if n < 1 or not 0.0 <= p <= 1.0:
        raise ValueError("gnp needs n >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    return OrderedGraph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_cotree(n: int, rng: random.Random):
    """Random binary cotree: a leaf is ``None``, an inner node ``(join, left, right)``."""
    if n == 1:
        return None
    k = rng.randint(1, n - 1)
    return (rng.random() < 0.5, random_cotree(k, rng), random_cotree(n - k, rng))


def cotree_size(t) -> int:
    return 1 if t is None else cotree_size(t[1]) + cotree_size(t[2])


def cotree_graph(t) -> OrderedGraph:
    """Cograph of a binary cotree with leaves numbered left to right."""
    edges: list[tuple[int, int]] = []

    def walk(node, start: int) -> int:
        if node is None:
            return start + 1
        join, left, right = node
        mid = walk(left, start)
        end = walk(right, mid)
        if join:
            edges.extend((u, v) for u in range(start, mid) for v in range(mid, end))
        return end

    n = walk(t, 0)
    return OrderedGraph.from_edges(n, edges)


def random_cograph(n: int, seed: int = 0) -> OrderedGraph:
    """Random cograph whose vertex order is the left-to-right leaf order of its cotree."""
    if n < 1:
        raise ValueError("random_cograph needs n >= 1")
    return cotree_graph(random_cotree(n, random.Random(seed)))


FAMILIES = {
    "shift2": (shift2, (int,)),
    "cycle": (cycle, (int,)),
    "path": (path, (int,)),
    "complete": (complete, (int,)),
    "edgeless": (edgeless, (int,)),
    "gnp": (gnp, (int, float, int)),
    "random_cograph": (random_cograph, (int, int)),
}


def generate(family: str, *params) -> OrderedGraph:
    try:
        fn, types = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown graph family {family!r}") from None
    if not 1 <= len(params) <= len(types):
        raise ValueError(f"{family} takes up to {len(types)} parameters")
    try:
        args = [t(p) for t, p in zip(types, params)]
    except (TypeError, ValueError):
        raise ValueError(f"bad parameters for {family}: {params}") from None
    return fn(*args)


# ---------------------------------------------------------------- text format


def format_graph(g: OrderedGraph) -> str:
    lines = [f"{g.n} {g.num_edges()}"]
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> OrderedGraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("header line must be 'N M'")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise ValueError(f"expected {m} edge lines, found {len(body)}")
    edges = []
    for r in body:
        if len(r) != 2:
            raise ValueError(f"bad edge line {' '.join(r)!r}")
        u, v = int(r[0]), int(r[1])
        if not 0 <= u < v < n:
            raise ValueError(f"edge line must satisfy 0 <= u < v < N: {u} {v}")
        edges.append((u, v))
    if len(set(edges)) != len(edges):
        raise ValueError("duplicate edge")
    return OrderedGraph.from_edges(n, edges)
