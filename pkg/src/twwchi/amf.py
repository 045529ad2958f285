"""Coloring graphs given with a d-almost mixed free vertex ordering.

The recursion follows the induction on d.  For d = 2 the graph is a cograph
and is colored optimally.  For larger d the two endpoints are peeled off and
the interior is split by adjacency to them; each class is a module once the
endpoints are put back, so it is decomposed with a delayed tree.  Every node
graph of that tree is colored through the stripped graph ``H`` of its
interval: local modules are grouped along a coloring of the mixed-pair graph,
each group is split into its two arrow orientations, each orientation into
right and left local modules, and each resulting right module partition is
colored by lifting a recursive (d-1) coloring of its quotient.  The node
colorings are finally combined by the odd/even substitution colorings.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .delayed import build_delayed_tree, delayed_to_subst_with_origin, local_module_partition, restrict_to_parity
from .graph import (
    Coloring,
    Interval,
    OrderedGraph,
    bits,
    components,
    degeneracy_coloring,
    dense_labels,
    induced_subgraph,
    interval_mask,
    is_module_mask,
    is_proper,
)
from .matrix import find_almost_mixed_minor, graph_zone_oracle
from .rmp import RMPartition, is_pair_amf, lift_quotient_coloring, quotient, subset_choices, transversal_minor, validate_rmp
from .subst import color_substitution, palette_base

log = logging.getLogger(__name__)

ARROWS = ("->", "<-")
SIDES = ("right", "left")


class NotCographError(ValueError):
    pass


class ClaimFailure(AssertionError):
    pass


class MissingCertificate(ValueError):
    pass


# ---------------------------------------------------------------- cographs


def color_cograph(g: OrderedGraph) -> Coloring:
    """Optimal coloring of a P4-free graph by cotree recursion.

    Components reuse one palette, co-components get disjoint palettes.
    """
    colors = [0] * g.n
    co = g.complement()

    def rec(mask: int, offset: int) -> int:
        if mask & (mask - 1) == 0:
            colors[mask.bit_length() - 1] = offset
            return 1
        comps = components(g, mask)
        if len(comps) > 1:
            return max(rec(c, offset) for c in comps)
        cocomps = components(co, mask)
        if len(cocomps) == 1:
            raise NotCographError("graph has an induced P4")
        used = 0
        for c in cocomps:
            used += rec(c, offset + used)
        return used

    if g.n:
        rec(g.full_mask, 0)
    return Coloring(tuple(colors))


def is_cograph(g: OrderedGraph) -> bool:
    try:
        color_cograph(g)
    except NotCographError:
        return False
    return True


# ---------------------------------------------------------------- endpoint split


def split_by_endpoints(g: OrderedGraph) -> dict[str, list[int]]:
    """Interior vertices keyed by ``"ab"``: a = adjacent to the first vertex, b = to the last."""
    if g.n < 2:
        raise ValueError("endpoint split needs at least two vertices")
    first, last = g.adj[0], g.adj[g.n - 1]
    out: dict[str, list[int]] = {"00": [], "01": [], "10": [], "11": []}
    for v in range(1, g.n - 1):
        out[f"{first >> v & 1}{last >> v & 1}"].append(v)
    return out


# ---------------------------------------------------------------- local module frames


@dataclass
class LocalModuleFrame:
    g: OrderedGraph
    interval: Interval
    modules: list[Interval]
    is_module: bool
    h: OrderedGraph
    """Stripped graph; its vertex ``i`` is ``interval.lo + i``."""
    mixed: OrderedGraph | None = None
    classes: list[int] | None = None
    tags: list[str] | None = None

    @property
    def k(self) -> int:
        return len(self.modules)

    def module_vertices(self, mods: Sequence[int]) -> list[int]:
        return [v for i in mods for v in self.modules[i]]


def strip_local_module_edges(g: OrderedGraph, i: Interval, split: str = "midpoint") -> LocalModuleFrame:
    """Local modules of ``i`` and ``G[i]`` without the edges inside them."""
    if not (0 <= i.lo and i.hi <= g.n):
        raise ValueError("interval out of range")
    outside = g.full_mask & ~i.mask
    is_mod = len(i) > 1 and is_module_mask(g, i.mask, outside)
    modules = local_module_partition(g, i, split).parts
    rows = [0] * len(i)
    for m in modules:
        inside = m.mask
        for v in m:
            rows[v - i.lo] = ((g.adj[v] & i.mask & ~inside) >> i.lo)
    return LocalModuleFrame(g, i, list(modules), is_mod, OrderedGraph._trusted(len(i), tuple(rows)))


def mixed_pair_graph(g: OrderedGraph, frame: LocalModuleFrame) -> tuple[OrderedGraph, list[int]]:
    """Graph on local modules joining mixed pairs, and its degeneracy greedy coloring."""
    mixed = graph_zone_oracle(g)
    mods = frame.modules
    rows = [0] * frame.k
    for a in range(frame.k):
        for b in range(a + 1, frame.k):
            if mixed(mods[a].lo, mods[a].hi, mods[b].lo, mods[b].hi):
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    r = OrderedGraph._trusted(frame.k, tuple(rows))
    cols = degeneracy_coloring(r)
    frame.mixed, frame.classes = r, cols
    return r, cols


def _arrow(frame: LocalModuleFrame, a: int, b: int) -> bool:
    """Module ``a`` is a module of ``H`` restricted to modules ``a`` and ``b``."""
    lo = frame.interval.lo
    ma = frame.modules[a].mask >> lo
    return all((frame.h.adj[v - lo] & ma) in (0, ma) for v in frame.modules[b])


def arrow_split(frame: LocalModuleFrame, cls: Sequence[int]) -> tuple[OrderedGraph, OrderedGraph]:
    """Edges of ``H`` among the class split by orientation; both graphs live on the interval."""
    lo = frame.interval.lo
    fwd = [0] * len(frame.interval)
    bwd = [0] * len(frame.interval)
    cls = sorted(cls)
    for x, a in enumerate(cls):
        for b in cls[x + 1 :]:
            right, left = _arrow(frame, a, b), _arrow(frame, b, a)
            if not (right or left):
                raise ValueError(f"local modules {a} and {b} form a mixed pair")
            mb = frame.modules[b].mask >> lo
            for v in frame.modules[a]:
                e = frame.h.adj[v - lo] & mb
                if not e:
                    continue
                for u in bits(e):
                    if right:
                        fwd[v - lo] |= 1 << u
                        fwd[u] |= 1 << (v - lo)
                    if left:
                        bwd[v - lo] |= 1 << u
                        bwd[u] |= 1 << (v - lo)
    n = len(frame.interval)
    return OrderedGraph._trusted(n, tuple(fwd)), OrderedGraph._trusted(n, tuple(bwd))


def classify_left_right(g: OrderedGraph, i: Interval, frame: LocalModuleFrame) -> list[str]:
    """Tag each local module after the first as left or right by its distinguisher."""
    left_mask = interval_mask(0, i.lo)
    right_mask = interval_mask(i.hi, g.n)
    tags = ["neglected"]
    for m in range(1, frame.k):
        a, b = frame.modules[m - 1].hi - 1, frame.modules[m].lo
        diff = g.adj[a] ^ g.adj[b]
        if diff & left_mask:
            tags.append("left")
        else:
            if not diff & right_mask:
                raise AssertionError(f"local modules {m - 1} and {m} are not distinguished outside the interval")
            tags.append("right")
    frame.tags = tags
    return tags


def mirror_frame(frame: LocalModuleFrame) -> LocalModuleFrame:
    """The same frame seen in the reversed vertex order."""
    n = frame.g.n
    i = frame.interval
    f = strip_local_module_edges(frame.g.reversed(), Interval(n - i.hi, n - i.lo))
    if [len(m) for m in f.modules] != [len(m) for m in reversed(frame.modules)]:
        raise AssertionError("local modules are not reversal invariant")
    return f


@dataclass
class RmpPiece:
    graph: OrderedGraph
    rmp: RMPartition | None
    """None for an empty piece."""
    vertices: list[int]
    """Ambient vertex behind each piece vertex."""
    modules: list[int]


def build_rmp_piece(frame: LocalModuleFrame, cls: Sequence[int], orientation: str, side: str) -> RmpPiece:
    """Restriction of the oriented split graph to the class modules with the given tag.

    ``<-`` is handled as ``->`` in the reversed order, with local modules, tags
    and vertices mirrored back afterwards.
    """
    if orientation not in ARROWS or side not in SIDES:
        raise ValueError("bad orientation or side")
    if orientation == "<-":
        mf = mirror_frame(frame)
        k = frame.k
        piece = build_rmp_piece(mf, [k - 1 - m for m in cls], "->", side)
        n = frame.g.n
        return RmpPiece(piece.graph, piece.rmp, [n - 1 - v for v in piece.vertices], [k - 1 - m for m in piece.modules])
    if frame.tags is None:
        classify_left_right(frame.g, frame.interval, frame)
    mods = sorted(m for m in cls if frame.tags[m] == side)
    if not mods:
        return RmpPiece(OrderedGraph.empty(0), None, [], [])
    fwd, _ = arrow_split(frame, mods)
    lo = frame.interval.lo
    verts = frame.module_vertices(mods)
    graph = induced_subgraph(fwd, [v - lo for v in verts])
    sizes = [len(frame.modules[m]) for m in mods]
    parts, start = [], 0
    for s in sizes:
        parts.append(tuple(range(start, start + s)))
        start += s
    rmp = RMPartition(tuple(parts))
    check = validate_rmp(graph, rmp)
    if not check.ok:
        raise AssertionError(f"piece is not an RMP: {check.reason} at {check.violation}")
    return RmpPiece(graph, rmp, verts, mods)


# ---------------------------------------------------------------- claim checks


def check_reduction_claim(piece: RmpPiece, d: int, *, limit: int = 4096, seed: int = 0) -> dict:
    """Every transversal minor of the piece has no (d-1)-almost mixed minor."""
    report = {"claim": "reduction", "d": d, "parts": len(piece.modules), "checked": 0, "exhaustive": True, "failures": []}
    if d - 1 < 2 or not piece.modules:
        report["skipped"] = "vacuous" if d - 1 < 2 else "empty"
        return report
    parts = piece.rmp.parts
    options = [[()] + subset_choices(p) for p in parts]
    total = 1
    for o in options:
        total *= len(o)
    if total - 1 <= limit:
        picks = list(product(*options))
    else:
        report["exhaustive"] = False
        rng = random.Random(seed)
        picks = [tuple(o[-1] for o in options)]
        picks += [tuple(rng.choice(o) for o in options) for _ in range(limit - 1)]
        log.info("reduction claim sampled %d of %d choices", limit, total - 1)
    seen = set()
    for pick in picks:
        chosen = [(i, w) for i, w in enumerate(pick) if w]
        if not chosen:
            continue
        q = transversal_minor(piece.graph, piece.rmp, chosen)
        if q.adj in seen:
            continue
        seen.add(q.adj)
        report["checked"] += 1
        if find_almost_mixed_minor(q, d - 1) is not None:
            report["failures"].append([[i, list(w)] for i, w in chosen])
    report["distinct_minors"] = len(seen)
    return report


def check_2d_claim(piece: RmpPiece, d: int) -> dict:
    """The piece with its module partition is 2d-almost mixed free."""
    if not piece.modules:
        return {"claim": "twod", "d": d, "free": True, "vacuous": True, "witness": None}
    res = is_pair_amf(piece.graph, piece.rmp, 2 * d)
    return {"claim": "twod", "d": d, **res.as_dict()}


# ---------------------------------------------------------------- main pipeline


@dataclass
class AmfInstance:
    graph: OrderedGraph
    d: int
    certificate: bool | None = None
    """True once an exhaustive search found no d-almost mixed minor."""

    def certify(self) -> "AmfInstance":
        div = find_almost_mixed_minor(self.graph, self.d)
        if div is not None:
            raise MissingCertificate(f"ordering has a {self.d}-almost mixed minor {div.format()}")
        self.certificate = True
        return self


@dataclass
class AmfReport:
    d: int
    n: int
    levels: list[dict] = field(default_factory=list)
    claims: list[dict] = field(default_factory=list)
    peels: int = 0
    quotient_calls: int = 0
    total_palette: int = 0
    omega: int | None = None

    def as_dict(self) -> dict:
        fails = [c for c in self.claims if c.get("failures") or c.get("free") is False]
        return {
            "d": self.d,
            "n": self.n,
            "levels": self.levels,
            "peels": self.peels,
            "quotient_calls": self.quotient_calls,
            "claims_checked": len(self.claims),
            "claim_failures": fails,
            "total_palette": self.total_palette,
            "omega": self.omega,
            "proper": True,
        }


class _AmfColorer:
    def __init__(self, check_claims: bool, strict: bool, claim_limit: int, seed: int):
        self.check_claims = check_claims
        self.strict = strict
        self.claim_limit = claim_limit
        self.seed = seed
        self.report: AmfReport | None = None

    def color(self, g: OrderedGraph, d: int, depth: int = 0) -> list[int]:
        if g.n == 0:
            return []
        if d <= 2:
            return list(color_cograph(g).colors)
        if g.n <= 2:
            return [0, 1][: g.n] if g.num_edges() else [0] * g.n
        self.report.peels += 1
        out = [0] * g.n
        out[0], out[-1] = 0, 1
        offset = 2
        for key, cls in split_by_endpoints(g).items():
            if not cls:
                continue
            sub = induced_subgraph(g, cls)
            cols = self.color_module(sub, d, depth)
            for v, c in zip(cls, cols):
                out[v] = offset + c
            offset += max(cols) + 1
        return out

    def color_module(self, g: OrderedGraph, d: int, depth: int) -> list[int]:
        tree, ng = build_delayed_tree(g)
        palettes: dict[int, list[int]] = {}
        for x in tree.nodes:
            hcols, info = self.color_interval(g, x.interval, d, depth)
            lo = x.lo
            pal = [hcols[tree.nodes[y].lo - lo] for y in tree.grandchildren(x.id)]
            if not is_proper(ng[x.id], pal):
                raise AssertionError(f"node graph coloring at {x.id} is not proper")
            palettes[x.id] = pal
            info.update({"d": d, "depth": depth, "node": x.id, "palette": len(set(pal)) if pal else 0})
            self.report.levels.append(info)
        sides = []
        for parity in (1, 0):
            st, origin = delayed_to_subst_with_origin(tree, restrict_to_parity(tree, ng, parity), parity)
            pal = {}
            for sid, kids in enumerate(st.children):
                if kids:
                    src = origin[sid]
                    pal[sid] = [0] * len(kids) if src is None else palettes[src]
            c, _ = color_substitution(st, palette_base(pal))
            sides.append(c.colors)
        cols = dense_labels(zip(*sides))
        if not is_proper(g, cols):
            raise AssertionError("module class coloring is not proper")
        return cols

    def color_interval(self, g: OrderedGraph, i: Interval, d: int, depth: int) -> tuple[list[int], dict]:
        """Proper coloring of the stripped graph of ``i`` (index = vertex - i.lo)."""
        frame = strip_local_module_edges(g, i)
        info = {"lo": i.lo, "hi": i.hi, "k_local_modules": frame.k, "mixed_pair_classes": 0}
        if len(i) == 1:
            return [0], info
        if frame.is_module:
            half = frame.modules[0]
            return [0 if v < half.hi else 1 for v in i], info
        _, rcols = mixed_pair_graph(g, frame)
        classify_left_right(g, i, frame)
        mirrored = mirror_frame(frame)
        classify_left_right(mirrored.g, mirrored.interval, mirrored)
        info["mixed_pair_classes"] = max(rcols) + 1
        out = [0] * len(i)
        offset = 0
        for c in range(max(rcols) + 1):
            cls = [m for m in range(frame.k) if rcols[m] == c]
            fwd = self.color_oriented(frame, cls, d, depth)
            k = frame.k
            bwd_m = self.color_oriented(mirrored, [k - 1 - m for m in cls], d, depth)
            n = g.n
            bwd = {n - 1 - v: col for v, col in bwd_m.items()}
            verts = frame.module_vertices(cls)
            labels = dense_labels((fwd[v], bwd[v]) for v in verts)
            for v, lab in zip(verts, labels):
                out[v - i.lo] = offset + lab
            offset += max(labels) + 1
        if not is_proper(frame.h, out):
            raise AssertionError(f"stripped graph coloring of [{i.lo}, {i.hi}) is not proper")
        return out, info

    def color_oriented(self, frame: LocalModuleFrame, cls: list[int], d: int, depth: int) -> dict[int, int]:
        """Coloring of the forward split graph of a class: first module, right piece, left piece."""
        out: dict[int, int] = {}
        offset = 0
        if 0 in cls:
            for v in frame.modules[0]:
                out[v] = 0
            offset = 1
        for side in SIDES:
            piece = build_rmp_piece(frame, cls, "->", side)
            if not piece.modules:
                continue
            if self.check_claims:
                self.run_claims(piece, d)
            q = quotient(piece.graph, piece.rmp)
            self.report.quotient_calls += 1
            qc = Coloring(tuple(self.color(q, d - 1, depth + 1)))
            lifted = lift_quotient_coloring(piece.graph, piece.rmp, qc)
            for v, col in zip(piece.vertices, lifted.colors):
                out[v] = offset + col
            offset += qc.palette_size
        return out

    def run_claims(self, piece: RmpPiece, d: int) -> None:
        reports = [check_reduction_claim(piece, d, limit=self.claim_limit, seed=self.seed), check_2d_claim(piece, d)]
        self.report.claims.extend(reports)
        for r in reports:
            if r.get("failures") or r.get("free") is False:
                if self.strict:
                    raise ClaimFailure(f"claim falsified: {r}")
                log.warning("claim falsified: %s", r)


def color_amf(
    inst: AmfInstance | OrderedGraph,
    d: int | None = None,
    *,
    strict: bool = False,
    check_claims: bool = False,
    claim_limit: int = 4096,
    seed: int = 0,
) -> tuple[Coloring, AmfReport]:
    """Proper coloring of a graph whose vertex order is d-almost mixed free."""
    if isinstance(inst, OrderedGraph):
        if d is None:
            raise ValueError("d is required with a bare graph")
        inst = AmfInstance(inst, d)
    g, d = inst.graph, inst.d
    if d < 2:
        raise ValueError("d must be >= 2")
    if strict and not inst.certificate:
        raise MissingCertificate("strict mode needs a certified instance (call certify())")
    colorer = _AmfColorer(check_claims, strict, claim_limit, seed)
    colorer.report = AmfReport(d, g.n)
    cols = colorer.color(g, d)
    c = Coloring(tuple(cols)).dense()
    if not is_proper(g, c.colors):
        raise AssertionError("amf coloring is not proper")
    rep = colorer.report
    rep.total_palette = c.palette_size
    if g.n <= 40:
        from .oracles import clique_number

        rep.omega = clique_number(g)
        if rep.omega > 1:
            log.info("palette %d against omega^(d^d) = %d", c.palette_size, rep.omega ** (d**d))
    return c, rep


def amf_instance_from_oracle(g: OrderedGraph) -> tuple[AmfInstance, tuple[int, ...]]:
    """Reorder ``g`` by a brute-forced minimal almost mixed free ordering (n <= 8)."""
    from .oracles import min_amf

    d, order = min_amf(g)
    return AmfInstance(g.permuted(order), d, True), order


def random_2amf_cograph(rng: random.Random, n: int, attempts: int = 200) -> OrderedGraph | None:
    """A random cograph in a verified 2-almost mixed free ordering, or None.

    Random child swaps of a random cotree are tried until the leaf order has
    no 2-almost mixed minor.
    """
    from .graph import cotree_graph, random_cotree

    def flip(t):
        if t is None:
            return None
        join, a, b = t
        a, b = flip(a), flip(b)
        return (join, b, a) if rng.random() < 0.5 else (join, a, b)

    tree = random_cotree(n, rng)
    for _ in range(attempts):
        g = cotree_graph(flip(tree))
        if find_almost_mixed_minor(g, 2) is None:
            return g
    return None
