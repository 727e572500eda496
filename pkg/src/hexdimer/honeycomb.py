"""Toroidal honeycomb graph H_{m,n}.

Each fundamental cell (i, j) in Z_m x Z_n carries two white vertices (w1, w2)
and two black vertices (b1, b2). The graph is drawn as vertical zigzag chains
joined by horizontal rungs:

* chain A_i alternates w1 and b1 up column i,
* chain B_i alternates w2 and b2 up column i,
* type I rungs join w1(i,j)-b2(i,j) and w2(i,j)-b1(i+1,j),
* type II edges go up (white -> black): w1(i,j)-b1(i,j), w2(i,j)-b2(i,j+1),
* type III edges go down (white -> black): w2(i,j)-b2(i,j), w1(i,j)-b1(i,j-1).

With the cell Fourier convention (shift +1 in i -> z, shift +1 in j -> w)
this wiring reproduces the 2x2 block

    [[1/b + b/w, a], [a z, b + w/b]]

literally. The cell is 3 wide and sqrt(3) tall, so the torus has modulus
i n / (sqrt(3) m).

Homology offsets are the signed crossings of the two cut cycles: the rung
column between i = m-1 and i = 0, and the horizontal band between j = n-1 and
j = 0. They are recorded for the white -> black traversal of an edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, TextIO

W1, W2, B1, B2 = 0, 1, 2, 3
SUBLATTICES = ("w1", "w2", "b1", "b2")

TYPE_I, TYPE_II, TYPE_III = 0, 1, 2
TYPE_NAMES = ("I", "II", "III")

# Per-cell edge slots: (white sublattice, black sublattice, di, dj, type).
EDGE_SLOTS = (
    (W1, B2, 0, 0, TYPE_I),
    (W2, B1, 1, 0, TYPE_I),
    (W1, B1, 0, 0, TYPE_II),
    (W2, B2, 0, 1, TYPE_II),
    (W2, B2, 0, 0, TYPE_III),
    (W1, B1, 0, -1, TYPE_III),
)

# Heights in units of sqrt(3)/2, relative to 2j.
_HEIGHT = {W1: 0, W2: 1, B1: 1, B2: 0}

# 1x3 block of the reference matching: (j mod 3, edge slot). Two edges of
# each type; found by exhaustive search over H_{1,3} and frozen here.
REFERENCE_BLOCK = ((0, 0), (0, 1), (1, 2), (1, 4), (2, 2), (2, 4))


@dataclass(frozen=True)
class Vertex:
    cell: tuple[int, int]
    sublattice: str

    @property
    def color(self) -> str:
        return "white" if self.sublattice[0] == "w" else "black"


@dataclass(frozen=True)
class Edge:
    white: int
    black: int
    type: int
    offset: tuple[int, int]
    cell: tuple[int, int]
    slot: int


@dataclass(frozen=True)
class TorusGraph:
    m: int
    n: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    incidence: tuple[tuple[int, int, int], ...] = field(repr=False)

    @property
    def modulus(self) -> tuple[Fraction, str]:
        """Modulus as ``(n/m, "i/sqrt(3)")``, i.e. i*(n/m)/sqrt(3)."""
        return Fraction(self.n, self.m), "i/sqrt(3)"

    @property
    def rho(self) -> float:
        return self.n / (math.sqrt(3) * self.m)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def cell_index(self, i: int, j: int) -> int:
        return (i % self.m) * self.n + (j % self.n)

    def vertex_id(self, i: int, j: int, sub: int) -> int:
        return 4 * self.cell_index(i, j) + sub

    def edge_id(self, i: int, j: int, slot: int) -> int:
        return 6 * self.cell_index(i, j) + slot

    def is_white(self, v: int) -> bool:
        return v % 4 in (W1, W2)

    def whites(self) -> list[int]:
        return [v for v in range(len(self.vertices)) if self.is_white(v)]

    def blacks(self) -> list[int]:
        return [v for v in range(len(self.vertices)) if not self.is_white(v)]


@dataclass(frozen=True)
class DualPaths:
    """Dual cycles with the primal edges they cross and the crossing signs.

    Each entry is a tuple of ``(edge_id, sign)``; the sign is the
    contribution of a white -> black traversal to the flux through the cycle
    (rightward for vertical cycles, upward for horizontal ones).
    """

    horizontal: tuple[tuple[tuple[int, int], ...], ...]
    vertical: tuple[tuple[tuple[int, int], ...], ...]


def build(m: int, n: int) -> TorusGraph:
    if not (isinstance(m, int) and isinstance(n, int)) or m < 1 or n < 1:
        raise ValueError(f"m and n must be positive integers, got m={m!r}, n={n!r}")
    vertices = []
    for i in range(m):
        for j in range(n):
            for sub in range(4):
                vertices.append(Vertex((i, j), SUBLATTICES[sub]))
    edges = []
    incidence: list[list[int]] = [[-1, -1, -1] for _ in range(4 * m * n)]
    for i in range(m):
        for j in range(n):
            for slot, (ws, bs, di, dj, etype) in enumerate(EDGE_SLOTS):
                ib, jb = i + di, j + dj
                h = ib // m if di else 0
                v = jb // n if dj else 0
                white = 4 * (i * n + j) + ws
                black = 4 * ((ib % m) * n + (jb % n)) + bs
                eid = len(edges)
                edges.append(Edge(white, black, etype, (h, v), (i, j), slot))
                for vert in (white, black):
                    if incidence[vert][etype] != -1:
                        raise AssertionError("vertex has two edges of one type")
                    incidence[vert][etype] = eid
    return TorusGraph(
        m, n, tuple(vertices), tuple(edges), tuple(tuple(x) for x in incidence)
    )


def faces(g: TorusGraph) -> list[list[tuple[int, int]]]:
    """Hexagonal faces as closed walks ``[(edge_id, +1 | -1), ...]``.

    ``+1`` means the edge is traversed white -> black. Faces between A_i and
    B_i come first, then faces between B_i and A_{i+1}.
    """
    e = g.edge_id
    out = []
    for i in range(g.m):
        for j in range(g.n):
            # w1(j) b1(j) w1(j+1) b2(j+1) w2(j) b2(j)
            out.append([
                (e(i, j, 2), +1), (e(i, j + 1, 5), -1), (e(i, j + 1, 0), +1),
                (e(i, j, 3), -1), (e(i, j, 4), +1), (e(i, j, 0), -1),
            ])
    for i in range(g.m):
        for j in range(g.n):
            # w2(i,j) b1(i+1,j) w1(i+1,j+1) b1(i+1,j+1) w2(i,j+1) b2(i,j+1)
            out.append([
                (e(i, j, 1), +1), (e(i + 1, j + 1, 5), -1), (e(i + 1, j + 1, 2), +1),
                (e(i, j + 1, 1), -1), (e(i, j + 1, 4), +1), (e(i, j, 3), -1),
            ])
    return out


def dual_paths(g: TorusGraph) -> DualPaths:
    """The 2n horizontal bands and the 2m vertical rung columns.

    Band 2j crosses the type II edges w1(i,j)-b1(i,j) and the type III edges
    w2(i,j)-b2(i,j); band 2j+1 crosses w1(i,j+1)-b1(i,j) (III) and
    w2(i,j)-b2(i,j+1) (II). Type II edges cross upward (+1), type III
    downward (-1). Rung column 2i holds the w1-b2 rungs of column i and rung
    column 2i+1 the w2(i)-b1(i+1) rungs; every rung crosses rightward (+1).
    """
    horizontal = []
    for j in range(g.n):
        horizontal.append(tuple(
            x for i in range(g.m)
            for x in ((g.edge_id(i, j, 2), +1), (g.edge_id(i, j, 4), -1))
        ))
        horizontal.append(tuple(
            x for i in range(g.m)
            for x in ((g.edge_id(i, j + 1, 5), -1), (g.edge_id(i, j, 3), +1))
        ))
    vertical = []
    for i in range(g.m):
        for slot in (0, 1):
            vertical.append(tuple((g.edge_id(i, j, slot), +1) for j in range(g.n)))
    return DualPaths(tuple(horizontal), tuple(vertical))


def reference_matching(g: TorusGraph) -> frozenset[int]:
    """Balanced reference matching M0, periodic with period 3 in j."""
    if g.n % 3:
        raise ValueError(f"reference matching needs n divisible by 3, got n={g.n}")
    return frozenset(
        g.edge_id(i, j, slot)
        for i in range(g.m)
        for j in range(g.n)
        for jr, slot in REFERENCE_BLOCK
        if j % 3 == jr
    )


def vertex_height(g: TorusGraph, v: int) -> int:
    cell, sub = divmod(v, 4)
    return 2 * (cell % g.n) + _HEIGHT[sub]


def translate(g: TorusGraph, di: int, dj: int) -> list[int]:
    """Edge permutation induced by the cell shift (i, j) -> (i+di, j+dj)."""
    perm = []
    for edge in g.edges:
        i, j = edge.cell
        perm.append(g.edge_id(i + di, j + dj, edge.slot))
    return perm


def check_invariants(g: TorusGraph) -> None:
    """Raise AssertionError if any structural invariant of H_{m,n} fails."""
    m, n = g.m, g.n
    assert len(g.vertices) == 4 * m * n
    assert len(g.edges) == 6 * m * n
    assert sum(v.color == "white" for v in g.vertices) == 2 * m * n
    for t in range(3):
        assert sum(e.type == t for e in g.edges) == 2 * m * n
    degree = [0] * len(g.vertices)
    for e in g.edges:
        assert g.is_white(e.white) and not g.is_white(e.black)
        degree[e.white] += 1
        degree[e.black] += 1
        assert all(x in (-1, 0, 1) for x in e.offset)
    assert all(d == 3 for d in degree)
    for v, inc in enumerate(g.incidence):
        assert sorted(g.edges[x].type for x in inc) == [0, 1, 2]
        assert all(v in (g.edges[x].white, g.edges[x].black) for x in inc)
    cells: dict[tuple[int, int], list[str]] = {}
    for v in g.vertices:
        cells.setdefault(v.cell, []).append(v.color)
    assert all(sorted(c) == ["black", "black", "white", "white"] for c in cells.values())
    for face in faces(g):
        h = sum(s * g.edges[x].offset[0] for x, s in face)
        v = sum(s * g.edges[x].offset[1] for x, s in face)
        assert (h, v) == (0, 0)


def write_graph(g: TorusGraph, fh: TextIO) -> None:
    fh.write(f"{g.m} {g.n}\n")
    for eid, e in enumerate(g.edges):
        fh.write(f"{eid} {e.white} {e.black} {TYPE_NAMES[e.type]} {e.offset[0]} {e.offset[1]}\n")


def read_graph(lines: Iterable[str]) -> TorusGraph:
    """Parse the text format and rebuild the graph, checking it matches."""
    it = iter(lines)
    m, n = (int(x) for x in next(it).split())
    g = build(m, n)
    seen = 0
    for line in it:
        if not line.strip():
            continue
        eid, white, black, tname, h, v = line.split()
        e = g.edges[int(eid)]
        if (e.white, e.black, TYPE_NAMES[e.type], e.offset) != (
            int(white), int(black), tname, (int(h), int(v))
        ):
            raise ValueError(f"edge {eid} does not match H_{{{m},{n}}}")
        seen += 1
    if seen != len(g.edges):
        raise ValueError(f"expected {len(g.edges)} edges, found {seen}")
    return g
