"""Exact decision solvers, used as ground truth in tests and verification."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .graphs import COCInstance, Graph, is_coc_solution


@dataclass(frozen=True)
class SolveOutcome:
    answer: bool
    witness: frozenset[int] | None
    nodes: int = 0


def brute_force_solve(inst: COCInstance, cap: int = 16) -> SolveOutcome:
    """Exact answer by trying all deletion sets of size at most k.

    Refuses graphs above `cap` vertices.  Subsets are scanned smallest
    first, then in lexicographic id order, so the witness is deterministic.
    """
    g = inst.graph
    if g.n > cap:
        raise ValueError(f"instance has {g.n} > {cap} vertices; brute force refused")
    order = sorted(g.vertices)
    for size in range(0, min(inst.k, g.n) + 1):
        for subset in combinations(order, size):
            s = frozenset(subset)
            if is_coc_solution(g, s, inst.ell):
                return SolveOutcome(True, s)
    return SolveOutcome(False, None)


def _branch_target(g: Graph, removed: frozenset[int], ell: int) -> frozenset[int] | None:
    """A connected set of ell + 1 vertices in g - removed, or None if all
    components already have at most ell vertices.

    The set is the first ell + 1 vertices visited by a BFS inside the first
    oversized component (components and neighbors in ascending id order);
    a BFS prefix is always connected.
    """
    seen: set[int] = set(removed)
    for start in sorted(g.vertices):
        if start in seen:
            continue
        visit = [start]
        seen.add(start)
        queue = deque([start])
        while queue and len(visit) <= ell:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    visit.append(w)
                    queue.append(w)
                    if len(visit) > ell:
                        break
        if len(visit) > ell:
            return frozenset(visit[: ell + 1])
    return None


def branching_solve(inst: COCInstance) -> SolveOutcome:
    """Exact answer by branching on a connected set of ell + 1 vertices.

    Some vertex of any such set must be deleted, giving ell + 1 branches
    per node and at most (ell + 1)^k branch nodes.  Branches are explored
    in ascending vertex order.
    """
    g, ell = inst.graph, inst.ell
    nodes = 0

    def rec(removed: frozenset[int], budget: int) -> frozenset[int] | None:
        nonlocal nodes
        target = _branch_target(g, removed, ell)
        if target is None:
            return removed
        if budget == 0:
            return None
        nodes += 1
        for v in sorted(target):
            got = rec(removed | {v}, budget - 1)
            if got is not None:
                return got
        return None

    witness = rec(frozenset(), inst.k)
    return SolveOutcome(witness is not None, witness, nodes)
