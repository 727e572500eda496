"""Exhaustive perfect-matching enumeration and winding numbers.

This is the ground-truth oracle: everything computed analytically elsewhere
is checked against counts produced here on small tori.
"""

from __future__ import annotations

import csv
import io
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .honeycomb import TYPE_I, TYPE_II, TYPE_III, TorusGraph, reference_matching

DEFAULT_MAX_VERTICES = 96

Matching = frozenset  # of edge ids


class EnumerationCapError(RuntimeError):
    pass


@dataclass(frozen=True)
class Loop:
    edges: tuple[int, ...]  # alternating M, M0 edges, starting with an M edge
    homology: tuple[int, int]


@dataclass(frozen=True)
class LoopDecomposition:
    doubled_edges: frozenset[int]
    loops: tuple[Loop, ...]


@dataclass(frozen=True)
class EdgeTypeCounts:
    n_i: int
    n_ii: int
    n_iii: int

    @property
    def total(self) -> int:
        return self.n_i + self.n_ii + self.n_iii


@dataclass
class WindingTable:
    m: int
    n: int
    counts: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def support_bounds(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """Admissible ranges ``((k_lo, k_hi), (l_lo, l_hi))``."""
        return winding_support(self.m, self.n)

    def probabilities(self) -> dict[tuple[int, int], float]:
        total = self.total
        return {kl: c / total for kl, c in self.counts.items()}

    def mgf(self, alpha: float, beta: float) -> float:
        """sum C_{k,l} exp(-pi(alpha k + beta l)) / sum C_{k,l}, in mpmath."""
        import mpmath

        num = mpmath.fsum(
            c * mpmath.exp(-mpmath.pi * (alpha * k + beta * l))
            for (k, l), c in self.counts.items()
        )
        return float(num / self.total)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "l", "count"])
        for (k, l) in sorted(self.counts):
            w.writerow([k, l, self.counts[k, l]])
        return buf.getvalue()

    def to_json(self) -> str:
        def num(x: int):
            return x if abs(x) < 2**53 else str(x)

        entries = [
            {"k": k, "l": l, "count": num(self.counts[k, l])}
            for (k, l) in sorted(self.counts)
        ]
        return json.dumps(
            {"m": self.m, "n": self.n, "total": num(self.total), "entries": entries},
            indent=2,
        )

    @classmethod
    def from_csv(cls, m: int, n: int, text: str) -> "WindingTable":
        rows = csv.DictReader(io.StringIO(text))
        return cls(m, n, {(int(r["k"]), int(r["l"])): int(r["count"]) for r in rows})

    @classmethod
    def from_json(cls, text: str) -> "WindingTable":
        d = json.loads(text)
        table = cls(d["m"], d["n"], {
            (e["k"], e["l"]): int(e["count"]) for e in d["entries"]
        })
        if table.total != int(d["total"]):
            raise ValueError("total does not match entries")
        return table


def winding_support(m: int, n: int) -> tuple[tuple[int, int], tuple[int, int]]:
    # 0 <= N_I <= 2mn and |N_II - N_III| <= 2mn
    return (-(n // 3), 2 * n // 3), (-m, m)


def _check_cap(g: TorusGraph, max_vertices: int | None) -> None:
    cap = DEFAULT_MAX_VERTICES if max_vertices is None else max_vertices
    if g.num_vertices > cap:
        raise EnumerationCapError(
            f"H_{{{g.m},{g.n}}} has {g.num_vertices} vertices, above the "
            f"enumeration cap of {cap} (raise max_vertices to override)"
        )


def enumerate_matchings(
    g: TorusGraph, max_vertices: int | None = None
) -> Iterator[Matching]:
    """Yield every perfect matching once, in a deterministic order.

    Backtracking branches on the lowest-indexed uncovered vertex (either
    colour), trying its edges in type order I, II, III.
    """
    _check_cap(g, max_vertices)
    nv = g.num_vertices
    nbrs = []
    for v in range(nv):
        white = g.is_white(v)
        nbrs.append(tuple(
            (eid, g.edges[eid].black if white else g.edges[eid].white)
            for eid in g.incidence[v]
        ))
    covered = [False] * nv
    chosen: list[int] = []

    def extend(v: int) -> Iterator[Matching]:
        while v < nv and covered[v]:
            v += 1
        if v == nv:
            yield frozenset(chosen)
            return
        covered[v] = True
        for eid, u in nbrs[v]:
            if not covered[u]:
                covered[u] = True
                chosen.append(eid)
                yield from extend(v + 1)
                chosen.pop()
                covered[u] = False
        covered[v] = False

    yield from extend(0)


def count_matchings(g: TorusGraph, max_vertices: int | None = None) -> int:
    return sum(1 for _ in enumerate_matchings(g, max_vertices))


def is_perfect_matching(g: TorusGraph, M: Matching) -> bool:
    seen = Counter()
    for eid in M:
        e = g.edges[eid]
        seen[e.white] += 1
        seen[e.black] += 1
    return len(seen) == g.num_vertices and all(c == 1 for c in seen.values())


def edge_type_counts(g: TorusGraph, M: Matching) -> EdgeTypeCounts:
    c = Counter(g.edges[eid].type for eid in M)
    return EdgeTypeCounts(c[TYPE_I], c[TYPE_II], c[TYPE_III])


def superimpose(g: TorusGraph, M: Matching, M0: Matching) -> LoopDecomposition:
    """Oriented loops of M (-) M0.

    M edges are walked white -> black and M0 edges black -> white, so the
    homology class of a loop is the sum of the offsets of its M edges minus
    those of its M0 edges.
    """
    if not (is_perfect_matching(g, M) and is_perfect_matching(g, M0)):
        raise ValueError("both arguments must be perfect matchings of the graph")
    return _superimpose(g, M, M0)


def _superimpose(g: TorusGraph, M: Matching, M0: Matching) -> LoopDecomposition:
    edges = g.edges
    m_at = {edges[e].white: e for e in M}
    m0_at = {edges[e].black: e for e in M0}
    doubled = frozenset(M & M0)
    visited: set[int] = set()
    loops = []
    for start in sorted(m_at):
        if start in visited or m_at[start] in doubled:
            continue
        path = []
        h = v = 0
        w = start
        while True:
            visited.add(w)
            fwd = m_at[w]
            e = edges[fwd]
            bwd = m0_at[e.black]
            back = edges[bwd]
            path.append(fwd)
            path.append(bwd)
            h += e.offset[0] - back.offset[0]
            v += e.offset[1] - back.offset[1]
            w = back.white
            if w == start:
                break
        loops.append(Loop(tuple(path), (h, v)))
    return LoopDecomposition(doubled, tuple(loops))


def winding_by_loops(dec: LoopDecomposition) -> tuple[int, int]:
    return (
        sum(loop.homology[0] for loop in dec.loops),
        sum(loop.homology[1] for loop in dec.loops),
    )


def winding_by_counts(g: TorusGraph, M: Matching) -> tuple[int, int]:
    """Winding number from edge-type counts alone.

    2m k = N_I - 2mn/3 and 2n l = N_II - N_III. A non-integral result means
    the graph conventions are broken, so it raises instead of rounding.
    """
    if g.n % 3:
        raise ValueError(f"winding numbers need n divisible by 3, got n={g.n}")
    c = edge_type_counts(g, M)
    num_h = c.n_i - 2 * g.m * g.n // 3
    num_v = c.n_ii - c.n_iii
    if num_h % (2 * g.m) or num_v % (2 * g.n):
        raise AssertionError(
            f"edge counts {c} give non-integral winding on H_{{{g.m},{g.n}}}"
        )
    return num_h // (2 * g.m), num_v // (2 * g.n)


def brute_winding_table(g: TorusGraph, max_vertices: int | None = None) -> WindingTable:
    if g.n % 3:
        raise ValueError(f"winding tables need n divisible by 3, got n={g.n}")
    counts: Counter[tuple[int, int]] = Counter()
    m, n = g.m, g.n
    types = [e.type for e in g.edges]
    base = 2 * m * n // 3
    for M in enumerate_matchings(g, max_vertices):
        c = [0, 0, 0]
        for eid in M:
            c[types[eid]] += 1
        counts[(c[0] - base) // (2 * m), (c[1] - c[2]) // (2 * n)] += 1
    return WindingTable(m, n, dict(counts))


def check_winding_agreement(
    g: TorusGraph, max_vertices: int | None = None
) -> tuple[int, int]:
    """Compare both winding routes on every matching.

    Returns ``(matchings checked, disagreements)``.
    """
    M0 = reference_matching(g)
    checked = bad = 0
    for M in enumerate_matchings(g, max_vertices):
        checked += 1
        if winding_by_loops(_superimpose(g, M, M0)) != winding_by_counts(g, M):
            bad += 1
    return checked, bad
