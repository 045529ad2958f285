"""Substitution tree decompositions and their colorings.

A :class:`SubstTree` is a rooted tree whose internal nodes carry a graph on
their children; its realization joins two leaves when the children of their
closest common ancestor lying above them are adjacent in that ancestor's
graph.  Leaves are numbered in left-to-right order and that numbering is the
vertex order of the realization.

Depth convention: a node counts towards the depth of its descendants when it
is not isolated in its parent's graph.  The root has no parent graph and is
never counted.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Sequence

from .graph import Coloring, OrderedGraph, bits, dense_labels, gnp, is_proper

BaseColor = Callable[[int, Sequence[int]], Sequence[int]]
"""``base(node, child_positions)`` colors the node graph induced on those children."""


@dataclass(frozen=True)
class SubstTree:
    children: tuple[tuple[int, ...], ...]
    graphs: tuple[OrderedGraph | None, ...]
    root: int = 0

    def __post_init__(self) -> None:
        if len(self.children) != len(self.graphs):
            raise ValueError("children and graphs must have one entry per node")
        seen = set()
        stack = [self.root]
        while stack:
            x = stack.pop()
            if x in seen:
                raise ValueError("tree has a cycle or a shared node")
            seen.add(x)
            kids = self.children[x]
            g = self.graphs[x]
            if kids:
                if g is None or g.n != len(kids):
                    raise ValueError(f"node {x}: graph size must equal its child count")
            elif g is not None and g.n:
                raise ValueError(f"leaf {x} carries a graph")
            stack.extend(kids)
        if len(seen) != len(self.children):
            raise ValueError("unreachable nodes")

    @classmethod
    def from_nested(cls, spec) -> "SubstTree":
        """Build from ``None`` (a leaf) or ``(graph, [subtree, ...])``."""
        children: list[tuple[int, ...]] = []
        graphs: list[OrderedGraph | None] = []

        def walk(s) -> int:
            x = len(children)
            children.append(())
            graphs.append(None)
            if s is not None:
                g, subs = s
                children[x] = tuple(walk(c) for c in subs)
                graphs[x] = g
            return x

        walk(spec)
        return cls(tuple(children), tuple(graphs))

    @property
    def size(self) -> int:
        return len(self.children)

    def is_leaf(self, x: int) -> bool:
        return not self.children[x]

    @cached_property
    def parent(self) -> tuple[int | None, ...]:
        par: list[int | None] = [None] * self.size
        for x, kids in enumerate(self.children):
            for c in kids:
                par[c] = x
        return tuple(par)

    @cached_property
    def preorder(self) -> tuple[int, ...]:
        out = []
        stack = [self.root]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(reversed(self.children[x]))
        return tuple(out)

    @cached_property
    def leaves(self) -> tuple[int, ...]:
        """Leaf node ids in left-to-right order; position = realization vertex."""
        return tuple(x for x in self.preorder if not self.children[x])

    @cached_property
    def vertex_of(self) -> dict[int, int]:
        return {x: i for i, x in enumerate(self.leaves)}

    @cached_property
    def leaf_mask(self) -> tuple[int, ...]:
        masks = [0] * self.size
        for x in reversed(self.preorder):
            if not self.children[x]:
                masks[x] = 1 << self.vertex_of[x]
            else:
                m = 0
                for c in self.children[x]:
                    m |= masks[c]
                masks[x] = m
        return tuple(masks)

    @cached_property
    def position(self) -> tuple[int, ...]:
        """Index of each node among its parent's children (-1 for the root)."""
        pos = [-1] * self.size
        for kids in self.children:
            for i, c in enumerate(kids):
                pos[c] = i
        return tuple(pos)

    def first_leaf(self, x: int) -> int:
        while self.children[x]:
            x = self.children[x][0]
        return x

    @property
    def n(self) -> int:
        return len(self.leaves)


def realize_subst(t: SubstTree) -> OrderedGraph:
    rows = [0] * t.n
    masks = t.leaf_mask
    for z, kids in enumerate(t.children):
        g = t.graphs[z]
        if not kids or g is None:
            continue
        for a, b in g.edges():
            ma, mb = masks[kids[a]], masks[kids[b]]
            for v in bits(ma):
                rows[v] |= mb
            for v in bits(mb):
                rows[v] |= ma
    return OrderedGraph(t.n, tuple(rows))


def is_independent(t: SubstTree) -> bool:
    for z, kids in enumerate(t.children):
        if not kids:
            continue
        for a, b in t.graphs[z].edges():
            if t.children[kids[a]] and t.children[kids[b]]:
                return False
    return True


@dataclass(frozen=True)
class DepthInfo:
    isolated: tuple[bool, ...]
    depth: tuple[int, ...]
    tree_depth: int


def node_is_isolated(t: SubstTree, x: int) -> bool:
    """Isolated in the parent's graph; the root counts as isolated."""
    p = t.parent[x]
    if p is None:
        return True
    return t.graphs[p].adj[t.position[x]] == 0


def depth_info(t: SubstTree) -> DepthInfo:
    iso = tuple(node_is_isolated(t, x) for x in range(t.size))
    depth = [0] * t.size
    for x in t.preorder:
        for c in t.children[x]:
            depth[c] = depth[x] + (0 if iso[x] else 1)
    tree_depth = max(depth[x] for x in t.leaves)
    return DepthInfo(iso, tuple(depth), tree_depth)


def clique_witness(t: SubstTree) -> list[int]:
    """``depth + 1`` realization vertices forming a clique."""
    info = depth_info(t)
    x = max(t.leaves, key=lambda v: (info.depth[v], -t.vertex_of[v]))
    out = [t.vertex_of[x]]
    y = t.parent[x]
    while y is not None:
        z = t.parent[y]
        if z is not None and not info.isolated[y]:
            row = t.graphs[z].adj[t.position[y]]
            w = t.children[z][(row & -row).bit_length() - 1]
            out.append(t.vertex_of[t.first_leaf(w)])
        y = z
    return sorted(out)


def max_weight_clique(g: OrderedGraph, weights: Sequence[int]) -> tuple[int, list[int]]:
    """Exact maximum-weight clique by branch and bound over bitsets."""
    best_w = 0
    best: list[int] = []
    order = sorted(range(g.n), key=lambda v: -weights[v])

    def expand(cand: int, cur: list[int], cur_w: int) -> None:
        nonlocal best_w, best
        if not cand:
            if cur_w > best_w:
                best_w, best = cur_w, list(cur)
            return
        bound = cur_w + sum(weights[v] for v in bits(cand))
        if bound <= best_w:
            return
        for v in order:
            if not cand >> v & 1:
                continue
            cur.append(v)
            expand(cand & g.adj[v], cur, cur_w + weights[v])
            cur.pop()
            cand &= ~(1 << v)
            bound -= weights[v]
            if bound <= best_w:
                return
        if cur_w > best_w:
            best_w, best = cur_w, list(cur)

    expand(g.full_mask, [], 0)
    return best_w, sorted(best)


def omega_dp(t: SubstTree) -> list[int]:
    """Clique number of the realization of every subtree."""
    om = [1] * t.size
    for x in reversed(t.preorder):
        kids = t.children[x]
        if kids:
            om[x] = max_weight_clique(t.graphs[x], [om[c] for c in kids])[0]
    return om


# ---------------------------------------------------------------- colorings


class ColoringError(ValueError):
    pass


def palette_base(palettes: dict[int, Sequence[int]]) -> BaseColor:
    """Base coloring that restricts one fixed coloring per node graph."""

    def base(x: int, positions: Sequence[int]) -> list[int]:
        pal = palettes[x]
        return dense_labels(pal[i] for i in positions)

    return base


def graph_base(t: SubstTree, colorer: Callable[[OrderedGraph], Sequence[int]]) -> BaseColor:
    """Base coloring that runs ``colorer`` on each requested induced node graph."""
    from .graph import induced_subgraph

    def base(x: int, positions: Sequence[int]) -> list[int]:
        return list(colorer(induced_subgraph(t.graphs[x], sorted(positions))))

    return base


def _check_base(t: SubstTree, x: int, positions: Sequence[int], colors: Sequence[int]) -> None:
    from .graph import induced_subgraph

    sub = induced_subgraph(t.graphs[x], sorted(positions))
    if not is_proper(sub, list(colors)):
        raise ColoringError(f"base coloring of node {x} is not proper")


def color_independent(t: SubstTree, palettes: dict[int, Sequence[int]]) -> Coloring:
    """Color by (depth, color of the leaf inside its parent's graph)."""
    if not is_independent(t):
        raise ColoringError("tree is not independent")
    for x, kids in enumerate(t.children):
        if kids:
            _check_base(t, x, range(len(kids)), palettes[x])
    info = depth_info(t)
    pairs = []
    for v in t.leaves:
        p = t.parent[v]
        pairs.append((info.depth[v], 0 if p is None else palettes[p][t.position[v]]))
    c = Coloring(tuple(dense_labels(pairs)))
    if not is_proper(realize_subst(t), c.colors):
        raise ColoringError("independent coloring is not proper")
    return c


@dataclass
class SubstReport:
    palette: int
    omega: int
    depth: int
    k: int

    @property
    def budget(self) -> int:
        return self.omega ** (2 * self.k + 3)

    def as_dict(self) -> dict:
        return {"palette": self.palette, "omega": self.omega, "depth": self.depth, "k": self.k, "budget": self.budget}


class _SubstColorer:
    def __init__(self, t: SubstTree, base: BaseColor, check_base: bool):
        self.t = t
        self.base_fn = base
        self.check_base = check_base
        self.omega = omega_dp(t)
        sub = [0] * t.size
        for x in reversed(t.preorder):
            best = 0
            g = t.graphs[x]
            for i, c in enumerate(t.children[x]):
                if t.children[c]:
                    best = max(best, (1 if g.adj[i] else 0) + sub[c])
            sub[x] = best
        self.sub_depth = sub

    def base(self, x: int, positions: Sequence[int]) -> list[int]:
        cols = list(self.base_fn(x, positions))
        if self.check_base:
            _check_base(self.t, x, positions, cols)
        return cols

    def color(self, x: int, positions: Sequence[int] | None = None) -> dict[int, int]:
        t = self.t
        kids = t.children[x]
        if not kids:
            return {t.vertex_of[x]: 0}
        if positions is None:
            positions = range(len(kids))
        g = t.graphs[x]
        pmask = 0
        for i in positions:
            pmask |= 1 << i
        out: dict[int, int] = {}
        non = []
        for i in positions:
            if g.adj[i] & pmask:
                non.append(i)
            else:
                # no edges leave this child's subtree: palette is reused
                out.update(self.color(kids[i]))
        if non:
            out.update(self._connected(x, non))
        return out

    def _omega_of(self, x: int, positions: Sequence[int]) -> int:
        from .graph import induced_subgraph

        kids = self.t.children[x]
        sub = induced_subgraph(self.t.graphs[x], list(positions))
        return max_weight_clique(sub, [self.omega[kids[i]] for i in positions])[0]

    def _connected(self, x: int, non: list[int]) -> dict[int, int]:
        t = self.t
        kids = t.children[x]
        depth = max((1 + self.sub_depth[kids[i]]) if t.children[kids[i]] else 0 for i in non)
        if depth == 0:
            cols = self.base(x, non)
            return {t.vertex_of[kids[i]]: c for i, c in zip(non, cols)}
        om = self._omega_of(x, non)
        if depth == 1:
            small = [i for i in non if self.omega[kids[i]] ** 2 <= om]
            large = [i for i in non if self.omega[kids[i]] ** 2 > om]
            out: dict[int, int] = {}
            offset = 0
            for part in (small, large):
                if not part:
                    continue
                outer = self.base(x, part)
                pairs = {}
                for i, oc in zip(part, outer):
                    for v, ic in self.color(kids[i]).items():
                        pairs[v] = (oc, ic)
                offset = _merge_dense(out, pairs, offset)
            return out
        return self._heavy(x, non, om)

    def _heavy(self, x: int, non: list[int], om: int) -> dict[int, int]:
        # heavy nodes: realization clique number above om/2; they form a subtree at x
        t = self.t
        heavy_kids: dict[int, list[int]] = {}
        tips: list[int] = []
        stack = [(x, list(non))]
        while stack:
            y, pos = stack.pop()
            heavy_kids[y] = pos
            for i in pos:
                c = t.children[y][i]
                if t.children[c] and 2 * self.omega[c] > om:
                    stack.append((c, list(range(len(t.children[c])))))
                else:
                    tips.append(c)
        # independent coloring of the heavy tree with the tips as its leaves
        palettes = {y: dict(zip(pos, self.base(y, pos))) for y, pos in heavy_kids.items()}
        hdepth = {x: 0}
        h_color: dict[int, tuple[int, int]] = {}
        for y in _preorder_subset(t, x, heavy_kids):
            pos = heavy_kids[y]
            pm = _pos_mask(pos)
            g = t.graphs[y]
            below = hdepth[y]
            if y != x:
                p = t.parent[y]
                below += bool(t.graphs[p].adj[t.position[y]] & _pos_mask(heavy_kids[p]))
            for i in pos:
                c = t.children[y][i]
                if c in heavy_kids:
                    if any(t.children[y][j] in heavy_kids for j in bits(g.adj[i] & pm)):
                        raise AssertionError("heavy tree is not independent")
                    hdepth[c] = below
                else:
                    h_color[c] = (below, palettes[y][i])
        h_dense = dict(zip(h_color, dense_labels(h_color.values())))
        buckets: dict[int, list[int]] = {}
        for c in tips:
            j = 1
            while self.omega[c] << (j + 1) <= om:
                j += 1
            buckets.setdefault(j, []).append(c)
        out: dict[int, int] = {}
        offset = 0
        for j in sorted(buckets):
            pairs = {}
            for c in buckets[j]:
                for v, ic in self.color(c).items():
                    pairs[v] = (h_dense[c], ic)
            offset = _merge_dense(out, pairs, offset)
        return out


def _pos_mask(pos: Sequence[int]) -> int:
    m = 0
    for i in pos:
        m |= 1 << i
    return m


def _preorder_subset(t: SubstTree, x: int, keep: dict[int, list[int]]) -> list[int]:
    out = []
    stack = [x]
    while stack:
        y = stack.pop()
        out.append(y)
        stack.extend(c for c in reversed(t.children[y]) if c in keep)
    return out


def _merge_dense(out: dict[int, int], pairs: dict[int, tuple], offset: int) -> int:
    labels = dense_labels(pairs.values())
    for v, lab in zip(pairs, labels):
        out[v] = offset + lab
    return offset + (max(labels) + 1 if labels else 0)


def color_substitution(t: SubstTree, base: BaseColor, k: int = 1, *, check_base: bool = True) -> tuple[Coloring, SubstReport]:
    """Recursive coloring of a substitution realization.

    Connected pieces of depth 0 take the base coloring, depth 1 splits the
    children by whether their clique number squared fits under the total,
    deeper pieces color the heavy subtree independently and combine it with
    recursive colorings of the light subtrees in dyadic clique-number buckets.
    """
    colorer = _SubstColorer(t, base, check_base)
    colors = colorer.color(t.root)
    c = Coloring(tuple(colors[v] for v in range(t.n))).dense()
    if not is_proper(realize_subst(t), c.colors):
        raise ColoringError("substitution coloring is not proper")
    report = SubstReport(c.palette_size, colorer.omega[t.root], depth_info(t).tree_depth, k)
    return c, report


# ---------------------------------------------------------------- generators and io


def random_subst_tree(rng: random.Random, leaves: int, p: float = 0.5, max_children: int = 4, independent: bool = False) -> SubstTree:
    """Random tree with ``leaves`` leaves and G(n, p) node graphs."""

    def build(m: int):
        if m == 1:
            return None
        k = rng.randint(2, min(max_children, m))
        cuts = sorted(rng.sample(range(1, m), k - 1))
        sizes = [b - a for a, b in zip([0, *cuts], [*cuts, m])]
        subs = [build(s) for s in sizes]
        g = gnp(k, p, rng.randrange(1 << 30))
        if independent:
            internal = [i for i, s in enumerate(sizes) if s > 1]
            rows = list(g.adj)
            for a in internal:
                for b in internal:
                    rows[a] &= ~(1 << b)
            g = OrderedGraph(k, tuple(rows))
        return (g, subs)

    return SubstTree.from_nested(build(leaves))


def cotree_to_subst(cotree) -> SubstTree:
    """Binary cotree ``(join, left, right)`` as a tree with two-vertex node graphs."""
    k2 = OrderedGraph.from_edges(2, [(0, 1)])
    e2 = OrderedGraph.empty(2)

    def conv(node):
        if node is None:
            return None
        join, left, right = node
        return (k2 if join else e2, [conv(left), conv(right)])

    return SubstTree.from_nested(conv(cotree))


def tree_to_json(t: SubstTree) -> list[dict]:
    info = depth_info(t)
    masks = t.leaf_mask
    out = []
    for x in t.preorder:
        m = masks[x]
        lo = (m & -m).bit_length() - 1
        kids = t.children[x]
        g = t.graphs[x]
        out.append(
            {
                "id": x,
                "depth": info.depth[x],
                "lo": lo,
                "hi": m.bit_length(),
                "parent": t.parent[x],
                "children": list(kids),
                "g_edges": [[kids[a], kids[b]] for a, b in g.edges()] if kids else [],
            }
        )
    return out


def dump_tree(t: SubstTree) -> str:
    return json.dumps(tree_to_json(t), separators=(",", ":"))
