"""Undirected simple graphs with stable integer vertex ids.

Vertex ids are never renamed: deleting vertices leaves the survivors'
ids untouched, so vertex sets recorded against one graph remain valid
against any of its subgraphs.  All values are immutable and all
operations are pure.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

VertexSet = frozenset[int]


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on non-negative integer ids.

    Edges are stored as (u, v) pairs with u < v; construction rejects
    self-loops and edges whose endpoints are missing from the vertex set.
    """

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                raise ValueError(f"edge ({u}, {v}) is not normalized")
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u}, {v}) has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> Graph:
        """Build a graph, normalizing edge orientation and adding endpoints."""
        es = frozenset(_norm(u, v) for u, v in edges)
        vs = frozenset(vertices) | frozenset(w for e in es for w in e)
        return cls(vs, es)

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(sorted(ns)) for v, ns in adj.items()}

    def neighbors(self, v: int) -> tuple[int, ...]:
        if v not in self.vertices:
            raise ValueError(f"unknown vertex id {v}")
        return self.adjacency[v]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edges

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def induced(self, keep: Iterable[int]) -> Graph:
        """Subgraph induced on `keep`; ids are preserved."""
        ks = frozenset(keep)
        if not ks <= self.vertices:
            raise ValueError("induced set contains unknown vertex ids")
        return Graph(ks, frozenset(e for e in self.edges if e[0] in ks and e[1] in ks))

    def without(self, drop: Iterable[int]) -> Graph:
        """Graph with `drop` deleted; ids of survivors are preserved."""
        ds = frozenset(drop)
        if not ds <= self.vertices:
            raise ValueError("deleted set contains unknown vertex ids")
        return self.induced(self.vertices - ds)


def _require_subset(g: Graph, s: frozenset[int]) -> None:
    if not s <= g.vertices:
        unknown = sorted(s - g.vertices)
        raise ValueError(f"unknown vertex ids {unknown}")


def connected_components(g: Graph) -> list[VertexSet]:
    """Maximal connected vertex sets, ordered by smallest member id."""
    seen: set[int] = set()
    out: list[VertexSet] = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def neighborhood(g: Graph, s: Iterable[int]) -> VertexSet:
    """All neighbors of `s` outside `s`."""
    ss = frozenset(s)
    _require_subset(g, ss)
    return frozenset(u for v in ss for u in g.adjacency[v]) - ss


def enumerate_connected_sets(g: Graph, size: int) -> list[VertexSet]:
    """All vertex sets of exactly `size` vertices inducing a connected subgraph.

    Sets are grown from each root vertex, extending only by neighbors with
    larger ids than the root; the exclusive-neighborhood rule makes every
    set appear exactly once.  Output order is deterministic.
    """
    if size < 1:
        raise ValueError("size must be >= 1")
    found: list[VertexSet] = []

    def extend(sub: list[int], ext: list[int], closed: frozenset[int], root: int) -> None:
        if len(sub) == size:
            found.append(frozenset(sub))
            return
        ext = list(ext)
        while ext:
            w = ext.pop(0)
            fresh = [u for u in g.adjacency[w] if u > root and u not in closed]
            extend(sub + [w], ext + fresh, closed | frozenset(g.adjacency[w]), root)

    for root in sorted(g.vertices):
        ext0 = [u for u in g.adjacency[root] if u > root]
        closed0 = frozenset((root,)) | frozenset(g.adjacency[root])
        extend([root], ext0, closed0, root)
    return found


@dataclass(frozen=True)
class COCInstance:
    """A graph, the component size limit ell, and the deletion budget k."""

    graph: Graph
    ell: int
    k: int

    def __post_init__(self) -> None:
        if self.ell < 1:
            raise ValueError("ell must be >= 1")
        if self.k < 0:
            raise ValueError("k must be >= 0")


def is_coc_solution(g: Graph, s: Iterable[int], ell: int) -> bool:
    """True iff every component of g minus `s` has at most `ell` vertices."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    ss = frozenset(s)
    _require_subset(g, ss)
    seen: set[int] = set(ss)
    for start in g.vertices:
        if start in seen:
            continue
        count = 1
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    count += 1
                    if count > ell:
                        return False
                    queue.append(w)
    return True
