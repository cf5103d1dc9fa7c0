"""Seeded random instance generators for tests and batch verification."""

from __future__ import annotations

import random
from itertools import combinations

from .bipartite import BipartiteGraph
from .graphs import COCInstance, Graph


def erdos_renyi(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(range(n), edges)


def _clique(start: int, size: int) -> list[tuple[int, int]]:
    return [(start + i, start + j) for i, j in combinations(range(size), 2)]


def _star(start: int, leaves: int) -> list[tuple[int, int]]:
    return [(start, start + i) for i in range(1, leaves + 1)]


def _path(start: int, size: int) -> list[tuple[int, int]]:
    return [(start + i, start + i + 1) for i in range(size - 1)]


def _cycle(start: int, size: int) -> list[tuple[int, int]]:
    return _path(start, size) + [(start, start + size - 1)]


def disjoint_gadgets(rng: random.Random, max_total: int = 40) -> Graph:
    """Disjoint union of small cliques, stars, paths, and cycles."""
    edges: list[tuple[int, int]] = []
    used = 0
    for _ in range(rng.randint(1, 8)):
        kind = rng.choice(("clique", "star", "path", "cycle"))
        if kind == "clique":
            size = rng.randint(2, 5)
            block = _clique(used, size)
        elif kind == "star":
            size = rng.randint(2, 7)
            block = _star(used, size - 1)
        elif kind == "path":
            size = rng.randint(2, 7)
            block = _path(used, size)
        else:
            size = rng.randint(3, 6)
            block = _cycle(used, size)
        if used + size > max_total:
            break
        edges.extend(block)
        used += size
    if used == 0:
        used = 1
    return Graph.from_edges(range(used), edges)


def random_graph(rng: random.Random, max_n: int = 14, dense_cap: int = 15) -> Graph:
    """Mixed family: sparse and dense binomial graphs plus gadget unions."""
    family = rng.choice(("er", "er", "gadgets"))
    if family == "gadgets":
        return disjoint_gadgets(rng, max_total=max_n)
    n = rng.randint(1, max_n)
    if n > dense_cap:
        avg_deg = rng.uniform(1.0, 4.0)
        p = min(1.0, avg_deg / max(n - 1, 1))
    else:
        p = rng.uniform(0.1, 0.7)
    return erdos_renyi(rng, n, p)


def random_instance(
    rng: random.Random,
    max_n: int = 14,
    ells: tuple[int, ...] = (1, 2, 3),
    max_k: int = 4,
) -> COCInstance:
    g = random_graph(rng, max_n=max_n)
    return COCInstance(g, rng.choice(ells), rng.randint(1, max_k))


def random_bipartite(
    rng: random.Random, max_a: int = 5, max_b: int = 8, p: float = 0.5
) -> BipartiteGraph:
    na = rng.randint(1, max_a)
    nb = rng.randint(1, max_b)
    side_a = frozenset(range(na))
    side_b = frozenset(range(na, na + nb))
    edges = frozenset(
        (a, b) for a in side_a for b in side_b if rng.random() < p
    )
    return BipartiteGraph(side_a, side_b, edges)
