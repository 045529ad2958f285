"""01* matrices, zones, corners, divisions and (almost) mixed minors.

Entries are the ints 0, 1 and ``STAR`` (2), so the order ``0 < 1 < *`` used by
contraction is plain integer order.  Every minor search takes either a
:class:`TriMatrix` or an :class:`~twwchi.graph.OrderedGraph`; graphs are read
as their adjacency matrix with ``*`` on the diagonal and answered with bitset
zone tests instead of materialising the matrix.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterator, Sequence, Union

from .graph import IntervalPartition, OrderedGraph, interval_mask

STAR = 2
_SYMBOL = {0: "0", 1: "1", STAR: "*"}
_VALUE = {"0": 0, "1": 1, "*": STAR}


class ZoneKind(str, enum.Enum):
    CONSTANT = "constant"
    HORIZONTAL = "horizontal"
    VERTICAL = "vertical"
    MIXED = "mixed"


@dataclass(frozen=True)
class TriMatrix:
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.data:
            width = len(self.data[0])
            if any(len(r) != width for r in self.data):
                raise ValueError("matrix is not rectangular")
            if any(x not in _SYMBOL for r in self.data for x in r):
                raise ValueError("entries must be 0, 1 or *")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> "TriMatrix":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def parse(cls, text: str) -> "TriMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        try:
            return cls(tuple(tuple(_VALUE[ch] for ch in ln) for ln in lines))
        except KeyError as exc:
            raise ValueError(f"bad matrix symbol {exc}") from None

    def format(self) -> str:
        return "\n".join("".join(_SYMBOL[x] for x in r) for r in self.data) + "\n"

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def __getitem__(self, rc: tuple[int, int]) -> int:
        return self.data[rc[0]][rc[1]]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "TriMatrix":
        return TriMatrix(tuple(tuple(self.data[r][c] for c in cols) for r in rows))

    def zone(self, r0: int, r1: int, c0: int, c1: int) -> "TriMatrix":
        return TriMatrix(tuple(row[c0:c1] for row in self.data[r0:r1]))

    def transpose(self) -> "TriMatrix":
        return TriMatrix(tuple(zip(*self.data)))

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and self.data == tuple(zip(*self.data))

    def has_star(self) -> bool:
        return any(STAR in r for r in self.data)


def adjacency_matrix(g: OrderedGraph) -> TriMatrix:
    return TriMatrix(
        tuple(tuple(STAR if u == v else (g.adj[u] >> v) & 1 for v in range(g.n)) for u in range(g.n))
    )


def _kind_of_rows(rows: Sequence[Sequence[int]]) -> ZoneKind:
    if len(rows) >= 2 and len(rows[0]) >= 2 and any(STAR in r for r in rows):
        return ZoneKind.MIXED
    horizontal = all(len(set(r)) == 1 for r in rows)
    vertical = all(len(set(c)) == 1 for c in zip(*rows))
    if horizontal and vertical:
        return ZoneKind.CONSTANT
    if horizontal:
        return ZoneKind.HORIZONTAL
    if vertical:
        return ZoneKind.VERTICAL
    return ZoneKind.MIXED


def classify(m: TriMatrix) -> ZoneKind:
    if m.rows == 0 or m.cols == 0:
        raise ValueError("cannot classify an empty matrix")
    return _kind_of_rows(m.data)


def is_mixed(m: TriMatrix) -> bool:
    return classify(m) is ZoneKind.MIXED


# ---------------------------------------------------------------- zone oracles

ZoneOracle = Callable[[int, int, int, int], bool]
MatrixLike = Union[TriMatrix, OrderedGraph]


def graph_zone_oracle(g: OrderedGraph) -> ZoneOracle:
    """Mixedness of the zone ``rows [r0, r1) x cols [c0, c1)`` of the adjacency matrix."""
    adj = g.adj

    def mixed(r0: int, r1: int, c0: int, c1: int) -> bool:
        if r0 < c1 and c0 < r1:
            # the zone meets the diagonal, so it holds a *
            return r1 - r0 >= 2 and c1 - c0 >= 2
        cm = interval_mask(c0, c1)
        for r in range(r0, r1):
            x = adj[r] & cm
            if x and x != cm:
                break
        else:
            return False
        rm = interval_mask(r0, r1)
        for c in range(c0, c1):
            x = adj[c] & rm
            if x and x != rm:
                return True
        return False

    return mixed


def matrix_zone_oracle(m: TriMatrix) -> ZoneOracle:
    data = m.data

    def mixed(r0: int, r1: int, c0: int, c1: int) -> bool:
        return _kind_of_rows([row[c0:c1] for row in data[r0:r1]]) is ZoneKind.MIXED

    return mixed


def _oracle(m: MatrixLike) -> tuple[int, int, ZoneOracle, bool]:
    """(rows, cols, oracle, symmetric) for a matrix or a graph."""
    if isinstance(m, OrderedGraph):
        return m.n, m.n, graph_zone_oracle(m), True
    return m.rows, m.cols, matrix_zone_oracle(m), m.is_symmetric()


# ---------------------------------------------------------------- corners


@dataclass(frozen=True)
class Corner:
    r1: int
    r2: int
    c1: int
    c2: int

    @property
    def rows(self) -> tuple[int, int]:
        return (self.r1, self.r2)

    @property
    def cols(self) -> tuple[int, int]:
        return (self.c1, self.c2)


def is_corner(m: TriMatrix, c: Corner) -> bool:
    return c.r1 < c.r2 and c.c1 < c.c2 and is_mixed(m.submatrix(c.rows, c.cols))


def find_corner(m: TriMatrix) -> Corner | None:
    """Lexicographically first mixed 2x2 submatrix, or None when ``m`` is not mixed."""
    d = m.data
    for r1, r2 in combinations(range(m.rows), 2):
        a, b = d[r1], d[r2]
        for c1, c2 in combinations(range(m.cols), 2):
            x, y, z, w = a[c1], a[c2], b[c1], b[c2]
            if STAR in (x, y, z, w) or (x != y or z != w) and (x != z or y != w):
                return Corner(r1, r2, c1, c2)
    return None


# ---------------------------------------------------------------- divisions


@dataclass(frozen=True)
class Division:
    row_partition: IntervalPartition
    col_partition: IntervalPartition

    @classmethod
    def symmetric(cls, p: IntervalPartition) -> "Division":
        return cls(p, p)

    @classmethod
    def from_bounds(cls, rows: Sequence[int], cols: Sequence[int]) -> "Division":
        return cls(IntervalPartition(tuple(rows)), IntervalPartition(tuple(cols)))

    @classmethod
    def parse(cls, text: str) -> "Division":
        """Parse ``rows=0-1,2-4;cols=0-2,3-4``."""
        fields = dict(part.split("=", 1) for part in text.replace(" ", "").split(";"))
        try:
            return cls(IntervalPartition.parse(fields["rows"]), IntervalPartition.parse(fields["cols"]))
        except KeyError:
            raise ValueError("division needs rows= and cols=") from None

    def format(self) -> str:
        return f"rows={self.row_partition.format()};cols={self.col_partition.format()}"

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_partition), len(self.col_partition)

    @property
    def k(self) -> int:
        a, b = self.shape
        if a != b:
            raise ValueError("not a k-division: part counts differ")
        return a

    def is_symmetric(self) -> bool:
        return self.row_partition == self.col_partition

    def zone_bounds(self, i: int, j: int) -> tuple[int, int, int, int]:
        rb, cb = self.row_partition.bounds, self.col_partition.bounds
        return rb[i], rb[i + 1], cb[j], cb[j + 1]

    def zones(self) -> Iterator[tuple[int, int]]:
        a, b = self.shape
        for i in range(a):
            for j in range(b):
                yield i, j

    def covers(self, rows: int, cols: int) -> bool:
        r, c = self.row_partition, self.col_partition
        return (r.lo, r.hi, c.lo, c.hi) == (0, rows, 0, cols)


def zone(m: TriMatrix, d: Division, i: int, j: int) -> TriMatrix:
    return m.zone(*d.zone_bounds(i, j))


def _check_division(m: TriMatrix, d: Division) -> None:
    if not d.covers(m.rows, m.cols):
        raise ValueError("division does not cover the matrix")


def zone_kinds(m: TriMatrix, d: Division) -> list[list[ZoneKind]]:
    _check_division(m, d)
    a, b = d.shape
    return [[classify(zone(m, d, i, j)) for j in range(b)] for i in range(a)]


def count_mixed_zones(m: MatrixLike, d: Division) -> int:
    rows, cols, mixed, _ = _oracle(m)
    if not d.covers(rows, cols):
        raise ValueError("division does not cover the matrix")
    return sum(mixed(*d.zone_bounds(i, j)) for i, j in d.zones())


def is_mixed_minor(m: MatrixLike, d: Division) -> bool:
    rows, cols, mixed, _ = _oracle(m)
    return d.covers(rows, cols) and all(mixed(*d.zone_bounds(i, j)) for i, j in d.zones())


def is_almost_mixed_minor(m: MatrixLike, d: Division) -> bool:
    rows, cols, mixed, _ = _oracle(m)
    return d.covers(rows, cols) and d.shape[0] == d.shape[1] and all(
        mixed(*d.zone_bounds(i, j)) for i, j in d.zones() if i != j
    )


def find_spanning_corner(m: TriMatrix, d: Division) -> Corner:
    """Corner with one row in each row block and one column in each column block.

    ``d`` must be a 2x2 division whose blocks all have at least two lines and
    whose four zones are mixed.
    """
    _check_division(m, d)
    if d.shape != (2, 2):
        raise ValueError("need exactly two row blocks and two column blocks")
    (r0, rm, r1), (c0, cm, c1) = d.row_partition.bounds, d.col_partition.bounds
    if min(rm - r0, r1 - rm, cm - c0, c1 - cm) < 2:
        raise ValueError("every block needs at least two lines")
    if any(not is_mixed(zone(m, d, i, j)) for i, j in d.zones()):
        raise ValueError("all four zones must be mixed")
    data = m.data
    for r in range(r0, r1):
        for c in range(c0, c1):
            if data[r][c] == STAR:
                r2 = r0 if r >= rm else rm
                c2 = c0 if c >= cm else cm
                return Corner(min(r, r2), max(r, r2), min(c, c2), max(c, c2))
    # non-constant row r of the top-left zone, non-constant column c2 of the bottom-right zone
    r = next(r for r in range(r0, rm) if len(set(data[r][c0:cm])) > 1)
    c2 = next(c for c in range(cm, c1) if len({data[x][c] for x in range(rm, r1)}) > 1)
    e = data[r][c2]
    c = next(c for c in range(c0, cm) if data[r][c] != e)
    r2 = next(x for x in range(rm, r1) if data[x][c2] != e)
    return Corner(r, r2, c, c2)


def contract(m: TriMatrix, d: Division) -> TriMatrix:
    """One entry per zone: its maximum under ``0 < 1 < *``."""
    _check_division(m, d)
    a, b = d.shape
    return TriMatrix(
        tuple(tuple(max(max(r) for r in zone(m, d, i, j).data) for j in range(b)) for i in range(a))
    )


def _deletion(m: TriMatrix, d: Division, zeroed: ZoneKind) -> TriMatrix:
    _check_division(m, d)
    if m.has_star():
        raise ValueError("deletion is defined for *-free matrices")
    kinds = zone_kinds(m, d)
    if any(k is ZoneKind.MIXED for row in kinds for k in row):
        raise ValueError("deletion requires that no zone is mixed")
    out = [list(r) for r in m.data]
    for i, j in d.zones():
        if kinds[i][j] is zeroed:
            r0, r1, c0, c1 = d.zone_bounds(i, j)
            for r in range(r0, r1):
                out[r][c0:c1] = [0] * (c1 - c0)
    return TriMatrix.of(out)


def horizontal_deletion(m: TriMatrix, d: Division) -> TriMatrix:
    """Zero every zone that is horizontal but not constant."""
    return _deletion(m, d, ZoneKind.HORIZONTAL)


def vertical_deletion(m: TriMatrix, d: Division) -> TriMatrix:
    """Zero every zone that is vertical but not constant."""
    return _deletion(m, d, ZoneKind.VERTICAL)


# ---------------------------------------------------------------- minor search


def compositions(lo: int, hi: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All bound tuples splitting ``[lo, hi)`` into ``parts`` nonempty intervals, lexicographic."""
    if parts < 1 or hi - lo < parts:
        return
    for cuts in combinations(range(lo + 1, hi), parts - 1):
        yield (lo, *cuts, hi)


def _search_symmetric(n: int, d: int, mixed: ZoneOracle, almost: bool) -> tuple[int, ...] | None:
    bounds = [0]

    def extend(j: int) -> bool:
        # choose the end of block j (0-based); blocks 0..j-1 already fixed
        lo = bounds[-1]
        last = j == d - 1
        for hi in ([n] if last else range(lo + 1, n - (d - 1 - j) + 1)):
            if not almost and not mixed(lo, hi, lo, hi):
                continue
            ok = True
            for i in range(j):
                if not mixed(bounds[i], bounds[i + 1], lo, hi):
                    ok = False
                    break
            if not ok:
                continue
            bounds.append(hi)
            if last or extend(j + 1):
                return True
            bounds.pop()
        return False

    if d < 1 or n < d:
        return None
    return tuple(bounds) if extend(0) else None


def _search_general(rows: int, cols: int, d: int, mixed: ZoneOracle, almost: bool) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    for rb in compositions(0, rows, d):
        cb = [0]

        def extend(j: int) -> bool:
            lo = cb[-1]
            last = j == d - 1
            for hi in ([cols] if last else range(lo + 1, cols - (d - 1 - j) + 1)):
                if all(almost and i == j or mixed(rb[i], rb[i + 1], lo, hi) for i in range(d)):
                    cb.append(hi)
                    if last or extend(j + 1):
                        return True
                    cb.pop()
            return False

        if cols >= d and extend(0):
            return rb, tuple(cb)
    return None


def _greedy_bounds(n: int, d: int) -> tuple[int, ...]:
    return tuple(round(i * n / d) for i in range(d + 1))


def find_mixed_minor(m: MatrixLike, d: int, *, symmetric: bool = False, mode: str = "exhaustive") -> Division | None:
    """A d-division with every zone mixed, or None.

    In ``exhaustive`` mode None certifies that ``m`` is d-mixed free (over
    symmetric divisions only when ``symmetric`` is set).  ``greedy`` mode only
    tries the evenly spaced division and never certifies absence.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    rows, cols, mixed, is_sym = _oracle(m)
    if symmetric and not is_sym:
        raise ValueError("symmetric search needs a symmetric matrix")
    if mode == "greedy":
        if rows < d or cols < d:
            return None
        div = Division.from_bounds(_greedy_bounds(rows, d), _greedy_bounds(cols, d))
        return div if is_mixed_minor(m, div) else None
    if mode != "exhaustive":
        raise ValueError(f"unknown mode {mode!r}")
    if symmetric:
        b = _search_symmetric(rows, d, mixed, almost=False)
        return None if b is None else Division.from_bounds(b, b)
    found = _search_general(rows, cols, d, mixed, almost=False)
    return None if found is None else Division.from_bounds(*found)


def find_almost_mixed_minor(m: MatrixLike, d: int, *, symmetric: bool = True) -> Division | None:
    """A d-division whose off-diagonal zones are all mixed, or None (exhaustive).

    The default search ranges over symmetric divisions of a symmetric matrix.
    """
    if d < 1:
        raise ValueError("d must be >= 1")
    rows, cols, mixed, is_sym = _oracle(m)
    if symmetric:
        if not is_sym:
            raise ValueError("almost mixed minor search needs a symmetric matrix")
        b = _search_symmetric(rows, d, mixed, almost=True)
        return None if b is None else Division.from_bounds(b, b)
    found = _search_general(rows, cols, d, mixed, almost=True)
    return None if found is None else Division.from_bounds(*found)


def merge_to_mixed_minor(div: Division, m: MatrixLike) -> Division:
    """Turn a 2d-almost mixed minor into a d-mixed minor.

    The first d+1 row blocks and the last d+1 column blocks are merged; every
    new zone then contains an off-diagonal zone of the input.
    """
    if not is_almost_mixed_minor(m, div) or div.k % 2:
        raise ValueError("input must be a 2d-almost mixed minor with even block count")
    d = div.k // 2
    rb, cb = div.row_partition.bounds, div.col_partition.bounds
    rows = (rb[0],) + rb[d + 1 :]
    cols = cb[:d] + (cb[-1],)
    return Division.from_bounds(rows, cols)
