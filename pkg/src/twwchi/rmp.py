"""Right module partitions, their quotients and transversal minors.

A right module partition (RMP) is a sequence of stable sets ``V_1..V_k``
such that every earlier part is a module with respect to every later one.
Coloring the quotient and copying each part's color onto its vertices gives
a proper coloring of the graph, so the interesting quantity is how large a
clique the quotient can hold.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Iterator, Sequence

from .graph import Coloring, IntervalPartition, OrderedGraph, induced_subgraph, is_proper, mask_of
from .matrix import graph_zone_oracle


class RmpError(ValueError):
    pass


@dataclass(frozen=True)
class RMPartition:
    parts: tuple[tuple[int, ...], ...]
    ordered: bool = True

    def __post_init__(self) -> None:
        if not self.parts or any(not p for p in self.parts):
            raise RmpError("parts must be nonempty")
        if self.ordered:
            flat = [v for p in self.parts for v in p]
            if flat != list(range(flat[0], flat[0] + len(flat))):
                raise RmpError("ordered parts must be consecutive intervals in order")

    @classmethod
    def from_intervals(cls, p: IntervalPartition) -> "RMPartition":
        return cls(tuple(tuple(iv) for iv in p.parts))

    @classmethod
    def parse(cls, text: str) -> "RMPartition":
        return cls.from_intervals(IntervalPartition.parse(text))

    @classmethod
    def singletons(cls, n: int) -> "RMPartition":
        return cls(tuple((v,) for v in range(n)))

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def masks(self) -> list[int]:
        return [mask_of(p) for p in self.parts]

    def bounds(self) -> tuple[int, ...]:
        if not self.ordered:
            raise RmpError("bounds only exist for ordered partitions")
        return (self.parts[0][0], *(p[-1] + 1 for p in self.parts))

    def format(self) -> str:
        return ",".join(f"{p[0]}-{p[-1]}" if self.ordered else "+".join(map(str, p)) for p in self.parts)

    def part_of(self, n: int) -> list[int]:
        out = [-1] * n
        for i, p in enumerate(self.parts):
            for v in p:
                out[v] = i
        return out


@dataclass(frozen=True)
class RmpCheck:
    ok: bool
    violation: tuple[int, int, int] | None = None
    reason: str = ""

    def as_dict(self) -> dict:
        return {"ok": self.ok, "violation": list(self.violation) if self.violation else None, "reason": self.reason}


def _check_partition(g: OrderedGraph, p: RMPartition) -> None:
    seen = 0
    for part in p.parts:
        for v in part:
            if not 0 <= v < g.n:
                raise RmpError(f"vertex {v} out of range")
            if seen >> v & 1:
                raise RmpError(f"vertex {v} in two parts")
            seen |= 1 << v
    if seen != g.full_mask:
        raise RmpError("parts do not cover every vertex")


def validate_rmp(g: OrderedGraph, p: RMPartition) -> RmpCheck:
    """Check stability of each part and the right-module condition.

    A violation is ``(i, j, v)``: for a stability failure ``i == j`` and ``v``
    has a neighbour in its own part; otherwise ``v`` in part ``j`` splits part
    ``i < j``.
    """
    _check_partition(g, p)
    masks = p.masks
    for i, part in enumerate(p.parts):
        for v in part:
            if g.adj[v] & masks[i]:
                return RmpCheck(False, (i, i, v), "part is not stable")
    for j in range(p.k):
        for v in p.parts[j]:
            row = g.adj[v]
            for i in range(j):
                seen = row & masks[i]
                if seen and seen != masks[i]:
                    return RmpCheck(False, (i, j, v), "earlier part is not a module with respect to a later one")
    return RmpCheck(True)


def _require_rmp(g: OrderedGraph, p: RMPartition) -> None:
    check = validate_rmp(g, p)
    if not check.ok:
        raise RmpError(f"invalid RMP: {check.reason} at {check.violation}")


def _contract(g: OrderedGraph, sets: Sequence[int]) -> OrderedGraph:
    reach = []
    for m in sets:
        r = 0
        for v in range(g.n):
            if m >> v & 1:
                r |= g.adj[v]
        reach.append(r)
    rows = [0] * len(sets)
    for a in range(len(sets)):
        for b in range(a + 1, len(sets)):
            if reach[a] & sets[b]:
                rows[a] |= 1 << b
                rows[b] |= 1 << a
    return OrderedGraph._trusted(len(sets), tuple(rows))


def quotient(g: OrderedGraph, p: RMPartition) -> OrderedGraph:
    """One vertex per part; two parts adjacent iff some edge runs between them."""
    _require_rmp(g, p)
    return _contract(g, p.masks)


def transversal_minor(g: OrderedGraph, p: RMPartition, chosen: Sequence[tuple[int, Sequence[int]]]) -> OrderedGraph:
    """Contract chosen nonempty subsets ``W`` of parts, given as ``(part index, W)`` in index order."""
    if not chosen:
        raise RmpError("at least one part must be chosen")
    sets = []
    last = -1
    for idx, w in chosen:
        if idx <= last:
            raise RmpError("part indices must be strictly increasing")
        if not 0 <= idx < p.k:
            raise RmpError(f"part index {idx} out of range")
        if not w:
            raise RmpError(f"empty subset for part {idx}")
        m = mask_of(w)
        if m & ~mask_of(p.parts[idx]):
            raise RmpError(f"subset for part {idx} leaves the part")
        sets.append(m)
        last = idx
    return _contract(g, sets)


def subset_choices(part: Sequence[int]) -> list[tuple[int, ...]]:
    return [c for r in range(1, len(part) + 1) for c in combinations(part, r)]


def transversal_minors(g: OrderedGraph, p: RMPartition, parts: Sequence[int] | None = None) -> Iterator[tuple[tuple, OrderedGraph]]:
    """Every transversal minor using exactly the given parts (default: all)."""
    idx = list(range(p.k)) if parts is None else list(parts)
    options = [subset_choices(p.parts[i]) for i in idx]
    for pick in product(*options):
        chosen = tuple(zip(idx, pick))
        yield chosen, transversal_minor(g, p, chosen)


def transversals(p: RMPartition) -> Iterator[tuple[int, ...]]:
    """One vertex from each part, in part order."""
    return product(*p.parts)


def lift_quotient_coloring(g: OrderedGraph, p: RMPartition, qc: Coloring) -> Coloring:
    q = quotient(g, p)
    if len(qc) != q.n or not is_proper(q, qc.colors):
        raise RmpError("quotient coloring is not proper")
    part = p.part_of(g.n)
    c = Coloring(tuple(qc[part[v]] for v in range(g.n)))
    if not is_proper(g, c.colors):
        raise RmpError("lifted coloring is not proper")
    return c


# ---------------------------------------------------------------- clique bounds


@lru_cache(maxsize=None)
def phi_h(w: int, h: int) -> int:
    """Quotient clique bound for RMPs whose transversal minors avoid a fixed h-vertex graph."""
    if w < 1 or h < 1:
        raise ValueError("w and h must be >= 1")
    if w == 1 or h == 1:
        return 1
    return phi_h(w - 1, h) * (phi_h(w, h - 1) + 1) + 1


@lru_cache(maxsize=None)
def phi_amf(w: int, d: int) -> int:
    """Quotient clique bound for d-almost mixed free RMPs."""
    if w < 1 or d < 1:
        raise ValueError("w and d must be >= 1")
    if d == 1:
        value = 0
    elif w == 1:
        value = 1
    else:
        value = phi_amf(w - 1, d) + phi_amf(w, d - 1) + 1
    # the binomial form of this bound fails at (3, 3) and beyond; the power form holds
    assert value - 1 <= w ** (d - 1), (w, d, value)
    return value


def phi_amf_binomial_holds(w: int, d: int) -> bool:
    """Whether ``phi_amf(w, d) - 1 <= C(w + d - 2, d - 1)``."""
    return phi_amf(w, d) - 1 <= comb(w + d - 2, d - 1)


@dataclass(frozen=True)
class PairAmf:
    free: bool
    vacuous: bool
    witness: tuple[int, ...] | None = None
    """Part-index bounds of an all-mixed coarsening when not free."""

    def __bool__(self) -> bool:
        return self.free

    def as_dict(self) -> dict:
        return {"free": self.free, "vacuous": self.vacuous, "witness": list(self.witness) if self.witness else None}


def is_pair_amf(g: OrderedGraph, p: RMPartition, d: int) -> PairAmf:
    """True iff every coarsening into d consecutive groups has a non-mixed off-diagonal zone."""
    if d < 1:
        raise ValueError("d must be >= 1")
    if not p.ordered:
        raise RmpError("coarsenings need an ordered partition")
    _check_partition(g, p)
    if p.k < d:
        return PairAmf(True, True)
    vb = p.bounds()
    mixed = graph_zone_oracle(g)
    for cuts in combinations(range(1, p.k), d - 1):
        groups = (0, *cuts, p.k)
        b = [vb[x] for x in groups]
        if all(mixed(b[i], b[i + 1], b[j], b[j + 1]) for i in range(d) for j in range(d) if i != j):
            return PairAmf(False, False, groups)
    return PairAmf(True, False)


class BoundViolation(AssertionError):
    pass


def check_amf_quotient_bound(g: OrderedGraph, p: RMPartition, d: int) -> dict:
    from .oracles import clique_number

    pair = is_pair_amf(g, p, d)
    if not pair.free:
        raise RmpError(f"(G, P) is not {d}-almost mixed free")
    w = clique_number(g)
    wq = clique_number(quotient(g, p))
    phi = phi_amf(w, d)
    holds = wq <= phi and wq <= w**d
    report = {"omega_g": w, "omega_quotient": wq, "phi": phi, "power": w**d, "bound_holds": holds}
    if not holds:
        raise BoundViolation(f"quotient clique bound violated: {report}")
    return report


def induced_rmp(g: OrderedGraph, p: RMPartition, keep: Sequence[int]) -> tuple[OrderedGraph, RMPartition]:
    """Restriction of an ordered RMP to the vertex set ``keep`` (sorted); empty parts vanish."""
    keep = sorted(keep)
    pos = {v: i for i, v in enumerate(keep)}
    parts = [tuple(pos[v] for v in part if v in pos) for part in p.parts]
    return induced_subgraph(g, keep), RMPartition(tuple(x for x in parts if x), p.ordered)
