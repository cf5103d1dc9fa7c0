"""Bipartite graphs, maximum matching, Hall violators, and twin graphs.

The matching algorithm is plain augmenting-path search with all scans in
ascending id order, so results are deterministic for a given input.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with disjoint sides; every edge is an (a, b) pair."""

    side_a: frozenset[int]
    side_b: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.side_a & self.side_b:
            raise ValueError("sides are not disjoint")
        for a, b in self.edges:
            if a not in self.side_a or b not in self.side_b:
                raise ValueError(f"edge ({a}, {b}) does not join side_a to side_b")

    @cached_property
    def adj_a(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {a: [] for a in self.side_a}
        for a, b in self.edges:
            adj[a].append(b)
        return {a: tuple(sorted(bs)) for a, bs in adj.items()}

    @cached_property
    def adj_b(self) -> dict[int, tuple[int, ...]]:
        adj: dict[int, list[int]] = {b: [] for b in self.side_b}
        for a, b in self.edges:
            adj[b].append(a)
        return {b: tuple(sorted(as_)) for b, as_ in adj.items()}

    def induced(self, keep_a: Iterable[int], keep_b: Iterable[int]) -> BipartiteGraph:
        ka, kb = frozenset(keep_a), frozenset(keep_b)
        if not ka <= self.side_a or not kb <= self.side_b:
            raise ValueError("induced sets contain unknown vertex ids")
        return BipartiteGraph(
            ka, kb, frozenset((a, b) for a, b in self.edges if a in ka and b in kb)
        )


@dataclass(frozen=True)
class Matching:
    """Set of edges, no two sharing an endpoint."""

    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        a_seen: set[int] = set()
        b_seen: set[int] = set()
        for a, b in self.edges:
            if a in a_seen or b in b_seen:
                raise ValueError("matching edges share an endpoint")
            a_seen.add(a)
            b_seen.add(b)

    @cached_property
    def a_to_b(self) -> dict[int, int]:
        return {a: b for a, b in self.edges}

    @cached_property
    def b_to_a(self) -> dict[int, int]:
        return {b: a for a, b in self.edges}

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class TwinGraph:
    """Bipartite graph where one side was replaced by weighted copies.

    `origin` maps each twin id back to the vertex it copies; twins keep
    the neighborhood of their origin.
    """

    graph: BipartiteGraph
    origin: Mapping[int, int]


def max_matching(g: BipartiteGraph) -> Matching:
    """A maximum-cardinality matching, deterministic given the input."""
    match_b: dict[int, int] = {}

    def augment(a: int, visited: set[int]) -> bool:
        for b in g.adj_a[a]:
            if b in visited:
                continue
            visited.add(b)
            if b not in match_b or augment(match_b[b], visited):
                match_b[b] = a
                return True
        return False

    for a in sorted(g.side_a):
        augment(a, set())
    return Matching(frozenset((a, b) for b, a in match_b.items()))


def build_twin_graph(g: BipartiteGraph, side: str, weights: Mapping[int, int]) -> TwinGraph:
    """Replace the chosen side by weight-many twins with identical neighborhoods.

    Twin ids are assigned consecutively above every existing id, scanning
    origins in ascending order, so the construction is deterministic.
    Weights must be >= 1 on the chosen side; a zero weight is an error
    because a zero-weight vertex would silently vanish.
    """
    if side not in ("a", "b"):
        raise ValueError("side must be 'a' or 'b'")
    chosen = g.side_a if side == "a" else g.side_b
    for v in chosen:
        w = weights.get(v)
        if w is None:
            raise ValueError(f"no weight for vertex {v}")
        if w < 1:
            raise ValueError(f"weight of vertex {v} must be >= 1, got {w}")
    all_ids = g.side_a | g.side_b
    next_id = max(all_ids) + 1 if all_ids else 0
    origin: dict[int, int] = {}
    twins: dict[int, list[int]] = {}
    for v in sorted(chosen):
        ids = list(range(next_id, next_id + weights[v]))
        next_id += weights[v]
        twins[v] = ids
        for t in ids:
            origin[t] = v
    twin_side = frozenset(origin)
    if side == "a":
        edges = frozenset((t, b) for a, b in g.edges for t in twins[a])
        graph = BipartiteGraph(twin_side, g.side_b, edges)
    else:
        edges = frozenset((a, t) for a, b in g.edges for t in twins[b])
        graph = BipartiteGraph(g.side_a, twin_side, edges)
    return TwinGraph(graph, origin)


def hall_violator(g: BipartiteGraph, q: int) -> frozenset[int] | None:
    """A nonempty X within side_a with |N(X)| < q|X|, or None if none exists.

    None means side_a has a q-expansion into side_b, witnessed by a matching
    saturating the q-fold twin of side_a.  When a violator exists it is read
    off the vertices reachable by alternating paths from unsaturated twins,
    which is the constructive half of the deficiency version of Hall's
    theorem.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if not g.side_a:
        return None
    tg = build_twin_graph(g, "a", {a: q for a in g.side_a})
    m = max_matching(tg.graph)
    unsaturated = [t for t in tg.graph.side_a if t not in m.a_to_b]
    if not unsaturated:
        return None
    reach_a: set[int] = set(unsaturated)
    reach_b: set[int] = set()
    frontier = list(unsaturated)
    while frontier:
        nxt: list[int] = []
        for t in frontier:
            for b in tg.graph.adj_a[t]:
                if b in reach_b:
                    continue
                reach_b.add(b)
                partner = m.b_to_a.get(b)
                if partner is not None and partner not in reach_a:
                    reach_a.add(partner)
                    nxt.append(partner)
        frontier = nxt
    violator = frozenset(tg.origin[t] for t in reach_a)
    # all q twins of a reached origin are reached, so |N(X)| = |reach_b| < q|X|
    assert len(reach_b) < q * len(violator)
    return violator
