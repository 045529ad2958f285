"""Canonical delayed decomposition trees.

Levels are interval partitions refined part by part: a singleton stays put,
a module is halved, and any other interval breaks into its local modules
(maximal runs of vertices with the same neighbours outside the interval).
The last all-singletons level is kept twice so every leaf hangs below a
one-child parent.  Each node carries a graph on its grandchildren joining
cousins whose intervals are fully joined in the input graph.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable

from .graph import Interval, IntervalPartition, OrderedGraph, interval_mask, is_module_mask
from .subst import SubstTree

SplitRule = Callable[[int, int], int]


def midpoint_split(lo: int, hi: int) -> int:
    """Cut of a module interval ``[lo, hi)``: first half gets the ceiling."""
    return (lo + hi + 1) // 2


def first_vertex_split(lo: int, hi: int) -> int:
    return lo + 1


SPLIT_RULES: dict[str, SplitRule] = {"midpoint": midpoint_split, "first": first_vertex_split}


def local_module_partition(g: OrderedGraph, i: Interval, split: str = "midpoint") -> IntervalPartition:
    if len(i) == 1:
        return IntervalPartition((i.lo, i.hi))
    im = i.mask
    outside = g.full_mask & ~im
    if is_module_mask(g, im, outside):
        return IntervalPartition((i.lo, SPLIT_RULES[split](i.lo, i.hi), i.hi))
    bounds = [i.lo]
    prev = g.adj[i.lo] & outside
    for v in range(i.lo + 1, i.hi):
        cur = g.adj[v] & outside
        if cur != prev:
            bounds.append(v)
        prev = cur
    bounds.append(i.hi)
    return IntervalPartition(tuple(bounds))


@dataclass
class Node:
    id: int
    depth: int
    lo: int
    hi: int
    parent: int | None
    children: list[int] = field(default_factory=list)

    @property
    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)

    @property
    def mask(self) -> int:
        return interval_mask(self.lo, self.hi)


@dataclass
class DelayedTree:
    n: int
    nodes: list[Node]
    levels: list[list[int]]
    split: str = "midpoint"

    @property
    def root(self) -> Node:
        return self.nodes[0]

    @property
    def k(self) -> int:
        return len(self.levels) - 1

    def grandchildren(self, x: int) -> list[int]:
        return [gc for c in self.nodes[x].children for gc in self.nodes[c].children]

    def level_partition(self, depth: int) -> IntervalPartition:
        nodes = [self.nodes[x] for x in self.levels[depth]]
        return IntervalPartition((nodes[0].lo, *(x.hi for x in nodes)))

    def leaves(self) -> list[int]:
        return [x.id for x in self.nodes if not x.children]


NodeGraphs = dict[int, OrderedGraph]
"""Per node id, a graph whose vertex ``i`` is ``tree.grandchildren(x)[i]``."""


def build_delayed_tree(g: OrderedGraph, split: str = "midpoint", verify: bool = False) -> tuple[DelayedTree, NodeGraphs]:
    if g.n < 1:
        raise ValueError("graph must have at least one vertex")
    if split not in SPLIT_RULES:
        raise ValueError(f"unknown split rule {split!r}")
    nodes = [Node(0, 0, 0, g.n, None)]
    levels = [[0]]
    while True:
        cur = levels[-1]
        nxt = []
        for x in cur:
            node = nodes[x]
            for p in local_module_partition(g, node.interval, split).parts:
                child = Node(len(nodes), node.depth + 1, p.lo, p.hi, x)
                nodes.append(child)
                node.children.append(child.id)
                nxt.append(child.id)
        levels.append(nxt)
        if all(nodes[x].hi - nodes[x].lo == 1 for x in cur):
            # nxt repeats the singleton level
            break
    tree = DelayedTree(g.n, nodes, levels, split)
    return tree, node_graphs(g, tree, verify=verify)


def node_graphs(g: OrderedGraph, t: DelayedTree, verify: bool = False) -> NodeGraphs:
    out: NodeGraphs = {}
    for x in t.nodes:
        gcs = t.grandchildren(x.id)
        rows = [0] * len(gcs)
        for a, ya in enumerate(gcs):
            na = t.nodes[ya]
            for b in range(a + 1, len(gcs)):
                nb = t.nodes[gcs[b]]
                if na.parent == nb.parent:
                    continue
                joined = g.adj[na.lo] >> nb.lo & 1
                if verify:
                    mb = nb.mask
                    for v in range(na.lo, na.hi):
                        seen = g.adj[v] & mb
                        if seen and seen != mb:
                            raise AssertionError(f"cousins {ya}, {gcs[b]} are not modules of each other")
                        if bool(seen) != bool(joined):
                            raise AssertionError(f"cousins {ya}, {gcs[b]} are neither joined nor anti-joined")
                if joined:
                    rows[a] |= 1 << b
                    rows[b] |= 1 << a
        out[x.id] = OrderedGraph._trusted(len(gcs), tuple(rows))
    return out


def realize_delayed(t: DelayedTree, ng: NodeGraphs) -> OrderedGraph:
    for leaf in t.leaves():
        p = t.nodes[leaf].parent
        if p is not None and len(t.nodes[p].children) != 1:
            raise ValueError(f"parent of leaf {leaf} has more than one child")
    rows = [0] * t.n
    for x in t.nodes:
        g = ng.get(x.id)
        if g is None or not g.n:
            continue
        gcs = t.grandchildren(x.id)
        if g.n != len(gcs):
            raise ValueError(f"graph at node {x.id} does not match its grandchildren")
        for a, b in g.edges():
            na, nb = t.nodes[gcs[a]], t.nodes[gcs[b]]
            if na.parent == nb.parent:
                continue
            ma, mb = na.mask, nb.mask
            for v in range(na.lo, na.hi):
                rows[v] |= mb
            for v in range(nb.lo, nb.hi):
                rows[v] |= ma
    return OrderedGraph(t.n, tuple(rows))


def restrict_to_parity(t: DelayedTree, ng: NodeGraphs, parity: int) -> NodeGraphs:
    return {x: (g if t.nodes[x].depth % 2 == parity else OrderedGraph.empty(g.n)) for x, g in ng.items()}


def odd_even_split(t: DelayedTree, ng: NodeGraphs) -> tuple[NodeGraphs, NodeGraphs]:
    """(odd-depth graphs kept, even-depth graphs kept); each side edgeless elsewhere."""
    return restrict_to_parity(t, ng, 1), restrict_to_parity(t, ng, 0)


def delayed_to_subst_trees(t: DelayedTree, ng: NodeGraphs, parity: int) -> SubstTree:
    """Substitution tree realizing the same graph as a parity-restricted delayed tree.

    Kept nodes are those whose depth has the given parity; each one's children
    become its former grandchildren and singleton intervals become leaves.  For
    odd parity a synthetic edgeless root collects the depth-1 nodes.
    """
    return delayed_to_subst_with_origin(t, ng, parity)[0]


def delayed_to_subst_with_origin(t: DelayedTree, ng: NodeGraphs, parity: int) -> tuple[SubstTree, list[int | None]]:
    """As :func:`delayed_to_subst_trees`, plus the delayed node behind each tree node.

    The synthetic odd root maps to None.
    """
    if parity not in (0, 1):
        raise ValueError("parity must be 0 (even) or 1 (odd)")
    for x, g in ng.items():
        if t.nodes[x].depth % 2 != parity and g.num_edges():
            raise ValueError(f"node {x} has edges but depth parity {t.nodes[x].depth % 2}")
    origin: list[int | None] = []

    # ids are handed out in the same preorder SubstTree.from_nested uses
    def build(x: int):
        origin.append(x)
        node = t.nodes[x]
        if node.hi - node.lo == 1:
            return None
        return (ng[x], [build(y) for y in t.grandchildren(x)])

    if parity == 0:
        return SubstTree.from_nested(build(0)), origin
    origin.append(None)
    top = t.root.children
    return SubstTree.from_nested((OrderedGraph.empty(len(top)), [build(c) for c in top])), origin


def tree_to_json(t: DelayedTree, ng: NodeGraphs) -> list[dict]:
    out = []
    for x in t.nodes:
        gcs = t.grandchildren(x.id)
        g = ng.get(x.id)
        edges = [[gcs[a], gcs[b]] for a, b in g.edges()] if g is not None else []
        out.append(
            {
                "id": x.id,
                "depth": x.depth,
                "lo": x.lo,
                "hi": x.hi,
                "parent": x.parent,
                "children": list(x.children),
                "g_edges": edges,
            }
        )
    return out


def dump_tree(t: DelayedTree, ng: NodeGraphs) -> str:
    return json.dumps(tree_to_json(t, ng), indent=None, separators=(",", ":"))
