"""Graphs as vector configurations, and brute-force forest and tree counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import GuardExceeded
from .linalg import QMatrix

EDGE_GUARD = 20


@dataclass(frozen=True)
class Graph:
    """Multigraph on vertices ``0..v-1``; self-loops and repeated edges allowed."""

    v: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = []
        for a, b in self.edges:
            if not (0 <= a < self.v and 0 <= b < self.v):
                raise ValueError(f"edge ({a}, {b}) has an endpoint outside [0, {self.v})")
            edges.append((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(edges))

    @property
    def e(self) -> int:
        return len(self.edges)


class _DisjointSets:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def components(G: Graph) -> list[list[int]]:
    ds = _DisjointSets(G.v)
    for a, b in G.edges:
        ds.union(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(G.v):
        groups.setdefault(ds.find(x), []).append(x)
    return sorted(groups.values())


def incidence_matrix(G: Graph, orientation: Sequence[bool] | None = None,
                     dropped: Sequence[int] | None = None) -> QMatrix:
    """Reduced incidence matrix: one column per edge, one row per kept vertex.

    Edge ``(u, w)`` with ``u < w`` runs from ``u`` to ``w``: ``-1`` in row ``u``,
    ``+1`` in row ``w``; a self-loop gives a zero column.  One vertex per
    connected component is removed, by default the smallest.  ``orientation[j]``
    set to ``True`` reverses edge ``j``; ``dropped`` overrides the removed
    vertices (one per component).
    """
    comps = components(G)
    if dropped is None:
        dropped = [c[0] for c in comps]
    else:
        dropped = list(dropped)
        for c in comps:
            if sum(1 for x in dropped if x in c) != 1:
                raise ValueError("dropped vertices must hit each component exactly once")
    keep = [x for x in range(G.v) if x not in set(dropped)]
    row_of = {x: i for i, x in enumerate(keep)}
    entries = [[0] * G.e for _ in keep]
    for j, (a, b) in enumerate(G.edges):
        if a == b:
            continue
        src, dst = (b, a) if orientation is not None and orientation[j] else (a, b)
        if src in row_of:
            entries[row_of[src]][j] = -1
        if dst in row_of:
            entries[row_of[dst]][j] = 1
    return QMatrix(len(keep), G.e, (x for r in entries for x in r))


def _acyclic_subsets(G: Graph) -> Iterator[int]:
    """Sizes of all edge subsets that contain no cycle."""
    if G.e > EDGE_GUARD:
        raise GuardExceeded("edges", G.e, EDGE_GUARD)
    for mask in range(1 << G.e):
        ds = _DisjointSets(G.v)
        ok = True
        for j in range(G.e):
            if mask >> j & 1 and not ds.union(*G.edges[j]):
                ok = False
                break
        if ok:
            yield mask.bit_count()


def count_forests(G: Graph) -> int:
    return sum(1 for _ in _acyclic_subsets(G))


def count_spanning_trees(G: Graph) -> int:
    """Spanning trees of each component combined (maximal spanning forests)."""
    target = G.v - len(components(G))
    return sum(1 for size in _acyclic_subsets(G) if size == target)


def is_connected(G: Graph) -> bool:
    return len(components(G)) <= 1
