"""Expansion machinery on bipartite graphs.

A q-expansion of X into Y assigns every member of X at least q private
neighbors in Y.  The weighted variant gives items in Y integer capacities
and asks that every member of X be allocated at least q value.  The
functions here find such pairs (X, Y) with the extra guarantee that Y has
no neighbors outside X, and round weighted expansions into unsplitting
ones.  They are the engine behind the kernel's reduction rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .allocation import (
    AllocationProblem,
    EdgeWeightFn,
    allocated,
    round_unsplitting,
    satisfies_capacities,
)
from .bipartite import BipartiteGraph, build_twin_graph, hall_violator, max_matching


@dataclass(frozen=True)
class ExpansionPair:
    """Sets x (customers) and y (items) together with the witnessing assignment."""

    x: frozenset[int]
    y: frozenset[int]
    assignment: Mapping[tuple[int, int], int]


def _neighborhood_of_a(g: BipartiteGraph, aset: frozenset[int]) -> frozenset[int]:
    return frozenset(b for a in aset for b in g.adj_a[a])


def expansion_lemma(g: BipartiteGraph, q: int) -> ExpansionPair:
    """Nonempty X, Y with a q-expansion of X into Y and N(Y) inside X.

    Requires |B| >= q|A|, a nonempty A, and no isolated B-vertices.  Hall
    violators are deleted together with their neighborhoods until none is
    left; the final sides, which provably stay nonempty, carry a saturating
    matching in the q-fold twin that yields the expansion.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    if not g.side_a:
        raise ValueError("side_a must be nonempty")
    if any(not g.adj_b[b] for b in g.side_b):
        raise ValueError("side_b contains isolated vertices")
    if len(g.side_b) < q * len(g.side_a):
        raise ValueError("side_b is too small for a q-expansion")

    cur = g
    while True:
        viol = hall_violator(cur, q)
        if viol is None:
            break
        cur = cur.induced(cur.side_a - viol, cur.side_b - _neighborhood_of_a(cur, viol))
    assert cur.side_a and cur.side_b

    tg = build_twin_graph(cur, "a", {a: q for a in cur.side_a})
    m = max_matching(tg.graph)
    assert all(t in m.a_to_b for t in tg.graph.side_a)
    assignment = {(tg.origin[t], b): 1 for t, b in m.edges}
    return ExpansionPair(cur.side_a, cur.side_b, assignment)


def find_q_expansion_pair(g: BipartiteGraph, q: int) -> ExpansionPair | None:
    """Some pair (X, Y) with a q-expansion of X into Y and N(Y) inside X, if any.

    Unlike expansion_lemma this needs no size precondition.  Each round
    matches the q-fold twin of the A-side, keeps the A-vertices with q
    matched partners and those partners; if the partners still have outside
    neighbors, the graph is shrunk and the search repeats.  Either side
    running empty proves that no pair exists.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    cur = g
    while True:
        if not cur.side_a or not cur.side_b:
            return None
        tg = build_twin_graph(cur, "a", {a: q for a in cur.side_a})
        m = max_matching(tg.graph)
        partners: dict[int, list[int]] = {a: [] for a in cur.side_a}
        for t, b in m.edges:
            partners[tg.origin[t]].append(b)
        a_keep = frozenset(a for a, bs in partners.items() if len(bs) >= q)
        b_keep = frozenset(b for a in a_keep for b in partners[a])
        outside = frozenset(
            a for b in b_keep for a in cur.adj_b[b] if a not in a_keep
        )
        if not outside:
            if not a_keep:
                return None
            assignment = {
                (a, b): 1 for a in sorted(a_keep) for b in partners[a]
            }
            return ExpansionPair(a_keep, b_keep, assignment)
        dropped_nbrs = _neighborhood_of_a(cur, cur.side_a - a_keep)
        cur = cur.induced(a_keep, cur.side_b - dropped_nbrs)


def weighted_q_expansion_pair(
    g: BipartiteGraph, q: int, cap: Mapping[int, int]
) -> ExpansionPair | None:
    """Weighted counterpart of find_q_expansion_pair.

    Items are expanded into capacity-many twins, the unweighted search runs
    on the twin graph, and matched twins are folded back into per-edge
    weights.  Every member of the returned x is allocated at least q, item
    loads never exceed capacities, and N(y) stays inside x.
    """
    for b in g.side_b:
        if cap.get(b, 0) < 1:
            raise ValueError(f"capacity of item {b} must be >= 1")
    tg = build_twin_graph(g, "b", cap)
    sub = find_q_expansion_pair(tg.graph, q)
    if sub is None:
        return None
    assignment: dict[tuple[int, int], int] = {}
    for (a, t), w in sub.assignment.items():
        if w:
            key = (a, tg.origin[t])
            assignment[key] = assignment.get(key, 0) + w
    y = frozenset(tg.origin[t] for t in sub.y)
    return ExpansionPair(sub.x, y, assignment)


def strictify(
    g: BipartiteGraph,
    f: EdgeWeightFn,
    cap: Mapping[int, int],
    q: int,
    r: int | None = None,
) -> dict[tuple[int, int], int]:
    """Round a weighted q-expansion into an unsplitting one.

    With W the largest capacity, the result allocates at least q - W + 1 to
    every customer and at least q to the root r (default: the smallest-id
    customer), while staying within capacities.  Item values are handed out
    whole: every positive output weight equals the item's capacity.
    """
    if not g.side_a:
        raise ValueError("side_a must be nonempty")
    if not satisfies_capacities(g, cap, f):
        raise ValueError("input is not capacity-feasible")
    short = [a for a in g.side_a if allocated(g, f, a) < q]
    if short:
        raise ValueError(f"input allocates less than {q} to customers {sorted(short)}")
    root = min(g.side_a) if r is None else r
    if root not in g.side_a:
        raise ValueError(f"root {root} is not a customer")
    problem = AllocationProblem(g, {a: q for a in g.side_a}, dict(cap))
    return round_unsplitting(problem, f, root)


def weighted_expansion_lemma(
    g: BipartiteGraph, q: int, W: int, cap: Mapping[int, int]
) -> ExpansionPair:
    """Nonempty X, Y with an unsplitting W-strict weighted q-expansion.

    Preconditions: capacities lie in 1..W, their total is at least
    (q + W - 1) |A|, A is nonempty and B has no isolated vertices.  The
    pipeline runs the unweighted expansion_lemma at level q + W - 1 on the
    capacity twin graph, folds twins back, and rounds with strictify; the
    root keeps its full q + W - 1 allocation, every other member of X keeps
    at least q.
    """
    if q < 1 or W < 1:
        raise ValueError("q and W must be >= 1")
    if not g.side_a:
        raise ValueError("side_a must be nonempty")
    if any(not g.adj_b[b] for b in g.side_b):
        raise ValueError("side_b contains isolated vertices")
    for b in g.side_b:
        c = cap.get(b, 0)
        if not 1 <= c <= W:
            raise ValueError(f"capacity of item {b} must lie in 1..{W}")
    total = sum(cap[b] for b in g.side_b)
    if total < (q + W - 1) * len(g.side_a):
        raise ValueError("total capacity is too small")

    tg = build_twin_graph(g, "b", cap)
    pair = expansion_lemma(tg.graph, q + W - 1)
    x = pair.x
    y = frozenset(tg.origin[t] for t in pair.y)
    f: dict[tuple[int, int], int] = {}
    for (a, t), w in pair.assignment.items():
        if w:
            key = (a, tg.origin[t])
            f[key] = f.get(key, 0) + w
    sub = g.induced(x, y)
    h = strictify(sub, f, {b: cap[b] for b in y}, q + W - 1)
    return ExpansionPair(x, y, h)
