"""Splitting-to-unsplitting rounding of item allocations.

A bipartite graph is read as customers (side_a) demanding value and items
(side_b) carrying capacity.  An edge weight function distributes item value
to customers; it may split one item across several customers.  This module
turns a feasible splitting distribution into an unsplitting one, in two
steps: cancel cycles in the positive-support graph so the support becomes a
forest, then give every item wholesale to its parent customer in that
forest.  Each customer loses at most W - 1 value where W is the largest
item capacity, and one chosen root customer loses nothing.

Edge weight functions are plain dicts; a missing edge carries weight zero.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .bipartite import BipartiteGraph

EdgeWeightFn = Mapping[tuple[int, int], int]


@dataclass(frozen=True)
class AllocationProblem:
    """Customers with demands (side_a) and items with capacities (side_b)."""

    graph: BipartiteGraph
    demand: Mapping[int, int]
    capacity: Mapping[int, int]

    def __post_init__(self) -> None:
        for a in self.graph.side_a:
            if self.demand.get(a, -1) < 0:
                raise ValueError(f"missing or negative demand for customer {a}")
        for b in self.graph.side_b:
            if self.capacity.get(b, -1) < 0:
                raise ValueError(f"missing or negative capacity for item {b}")


def allocated(g: BipartiteGraph, f: EdgeWeightFn, a: int) -> int:
    """Total value the weight function gives to customer `a`."""
    return sum(f.get((a, b), 0) for b in g.adj_a[a])


def load(g: BipartiteGraph, f: EdgeWeightFn, b: int) -> int:
    """Total value drawn from item `b`."""
    return sum(f.get((a, b), 0) for a in g.adj_b[b])


def satisfies_capacities(g: BipartiteGraph, capacity: Mapping[int, int], f: EdgeWeightFn) -> bool:
    return all(load(g, f, b) <= capacity[b] for b in g.side_b)


def satisfies_demands(g: BipartiteGraph, demand: Mapping[int, int], f: EdgeWeightFn) -> bool:
    return all(allocated(g, f, a) >= demand[a] for a in g.side_a)


def is_unsplitting(g: BipartiteGraph, f: EdgeWeightFn) -> bool:
    """True iff every item feeds at most one customer."""
    return all(sum(1 for a in g.adj_b[b] if f.get((a, b), 0) > 0) <= 1 for b in g.side_b)


def max_item_value(p: AllocationProblem) -> int:
    """Largest item capacity W; 1 for an item-free problem."""
    return max((p.capacity[b] for b in p.graph.side_b), default=1)


def _check_weight_fn(g: BipartiteGraph, f: EdgeWeightFn) -> None:
    for e, w in f.items():
        if e not in g.edges:
            raise ValueError(f"weight on non-edge {e}")
        if w < 0:
            raise ValueError(f"negative weight on edge {e}")


def _check_feasible(p: AllocationProblem, f: EdgeWeightFn) -> None:
    _check_weight_fn(p.graph, f)
    if not satisfies_capacities(p.graph, p.capacity, f):
        raise ValueError("weight function violates a capacity constraint")
    if not satisfies_demands(p.graph, p.demand, f):
        raise ValueError("weight function violates a demand constraint")


def _support_adjacency(g: BipartiteGraph, f: EdgeWeightFn) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in g.side_a | g.side_b}
    for (a, b), w in f.items():
        if w > 0:
            adj[a].append(b)
            adj[b].append(a)
    return {v: sorted(ns) for v, ns in adj.items()}


def _find_cycle(adj: dict[int, list[int]]) -> list[int] | None:
    """Vertices of some cycle in an undirected graph, or None if a forest."""
    visited: set[int] = set()
    for root in sorted(adj):
        if root in visited or not adj[root]:
            continue
        parent: dict[int, int | None] = {root: None}
        visited.add(root)
        path = [root]
        on_path = {root}
        stack: list[tuple[int, Iterator[int]]] = [(root, iter(adj[root]))]
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent[v]:
                    continue
                if w in on_path:
                    return path[path.index(w):]
                if w in visited:
                    continue
                parent[w] = v
                visited.add(w)
                path.append(w)
                on_path.add(w)
                stack.append((w, iter(adj[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                on_path.discard(path.pop())
    return None


def _edge_key(g: BipartiteGraph, u: int, v: int) -> tuple[int, int]:
    return (u, v) if u in g.side_a else (v, u)


def cancel_cycles(p: AllocationProblem, f: EdgeWeightFn) -> dict[tuple[int, int], int]:
    """Rebalance `f` until its positive support is a forest.

    Around any support cycle, the minimum weight c is subtracted from the
    odd-position edges (starting at a minimum-weight edge) and added to the
    even-position ones.  Every vertex keeps its incident weight sum exactly,
    so capacities and demands are untouched, and at least one edge drops to
    zero per round.  All arithmetic stays integral.
    """
    _check_feasible(p, f)
    g = p.graph
    cur = {e: w for e, w in f.items() if w > 0}
    while True:
        cycle = _find_cycle(_support_adjacency(g, cur))
        if cycle is None:
            break
        t = len(cycle)
        keys = [_edge_key(g, cycle[i], cycle[(i + 1) % t]) for i in range(t)]
        weights = [cur[k] for k in keys]
        c = min(weights)
        start = weights.index(c)
        for i in range(t):
            k = keys[(start + i) % t]
            cur[k] = cur[k] - c if i % 2 == 0 else cur[k] + c
        cur = {e: w for e, w in cur.items() if w > 0}
    return cur


def round_unsplitting(p: AllocationProblem, f: EdgeWeightFn, r: int) -> dict[tuple[int, int], int]:
    """Make a feasible distribution unsplitting, rooted at customer `r`.

    The support forest is rooted at `r` in its component and at the
    smallest-id customer elsewhere, so every edge-incident item has a
    customer parent; each item then goes wholesale to its parent.  The
    result respects capacities, gives every customer at least its demand
    minus (W - 1), and gives `r` its full demand.  Items with no positive
    incident weight stay unassigned.
    """
    if r not in p.graph.side_a:
        raise ValueError(f"root {r} is not a customer")
    _check_feasible(p, f)
    g = p.graph
    forest = cancel_cycles(p, f)
    adj = _support_adjacency(g, forest)

    parent: dict[int, int] = {}
    seen: set[int] = set()
    for start in sorted(adj):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        customers = [v for v in comp if v in g.side_a]
        if r in comp:
            root = r
        elif customers:
            root = min(customers)
        else:
            # no incident support edges; a lone item needs no parent
            continue
        level = {root}
        visited = {root}
        while level:
            nxt: set[int] = set()
            for v in level:
                for w in adj[v]:
                    if w not in visited:
                        visited.add(w)
                        parent[w] = v
                        nxt.add(w)
            level = nxt

    h: dict[tuple[int, int], int] = {}
    for b in g.side_b:
        pa = parent.get(b)
        if pa is not None:
            h[(pa, b)] = p.capacity[b]
    return h
