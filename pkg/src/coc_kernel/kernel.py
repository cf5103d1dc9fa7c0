"""The kernelization pipeline.

A reducible pair is a disjoint pair of vertex sets (X, Y) such that Y has
no neighbors outside X, every component of G[Y] has at most ell vertices,
and the bipartite component graph of X versus the components of G[Y]
(weighted by component size) carries a weighted (2*ell - 1)-expansion of
X.  Such a pair licenses deleting X u Y and charging |X| to the budget:
the witness partition packs X u Y into |X| disjoint connected sets of at
least ell + 1 vertices, one per member of X, so any solution pays at
least |X| there, and taking exactly X is never worse.

Pairs are found through the exact LP relaxation: an optimal solution is
probed for its 1-set and 0-set, with per-vertex re-solves when the first
probe fails.  Iterating reductions while the graph has at least
2 * ell * k vertices yields an equivalent instance with fewer than that,
or a proof that the instance has no solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .bipartite import BipartiteGraph
from .expansion import ExpansionPair, strictify, weighted_q_expansion_pair
from .graphs import (
    COCInstance,
    Graph,
    VertexSet,
    connected_components,
    neighborhood,
)
from .lp import LPInstance, build_coc_lp, ones_and_zeros, solve_lp, solve_with_fixed_one
from .solvers import brute_force_solve


@dataclass(frozen=True)
class ComponentGraph:
    """X versus the components of G[Y], weighted by component size.

    Each component is represented by a node whose id is the component's
    smallest member, which keeps node ids stable across rebuilds.
    """

    bipartite: BipartiteGraph
    component_of: Mapping[int, VertexSet]
    weight: Mapping[int, int]


@dataclass(frozen=True)
class ReduciblePair:
    x: VertexSet
    y: VertexSet
    expansion: ExpansionPair
    strict: bool = False
    strict_vertex: int | None = None


@dataclass(frozen=True)
class WitnessPartition:
    """One connected part per member of x, covering x u y."""

    parts: Mapping[int, VertexSet]


@dataclass(frozen=True)
class ReductionStep:
    x: VertexSet
    y: VertexSet
    budget_before: int
    budget_after: int
    lp_objective: Fraction


@dataclass(frozen=True)
class KernelResult:
    instance: COCInstance
    trace: tuple[ReductionStep, ...]
    verdict: str  # "reduced" or "trivial-no"


def trivial_no_instance(ell: int) -> COCInstance:
    """Canonical no-instance: a clique on ell + 1 vertices with budget 0."""
    vs = range(ell + 1)
    g = Graph.from_edges(vs, combinations(vs, 2))
    return COCInstance(g, ell, 0)


def drop_small_components(g: Graph, ell: int) -> Graph:
    """Delete every component with at most ell vertices.

    Safe: such components never need deletions, and removing them cannot
    change the answer for the rest of the graph.
    """
    keep = [c for c in connected_components(g) if len(c) > ell]
    return g.induced(frozenset().union(*keep) if keep else frozenset())


def build_component_graph(g: Graph, x: Iterable[int], y: Iterable[int]) -> ComponentGraph:
    xs, ys = frozenset(x), frozenset(y)
    if xs & ys:
        raise ValueError("x and y overlap")
    if not xs <= g.vertices or not ys <= g.vertices:
        raise ValueError("x or y contains unknown vertex ids")
    component_of: dict[int, VertexSet] = {}
    weight: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()
    for comp in connected_components(g.induced(ys)):
        node = min(comp)
        component_of[node] = comp
        weight[node] = len(comp)
        for xv in neighborhood(g, comp) & xs:
            edges.add((xv, node))
    bip = BipartiteGraph(xs, frozenset(component_of), frozenset(edges))
    return ComponentGraph(bip, component_of, weight)


def is_reducible_pair(g: Graph, ell: int, pair: ReduciblePair) -> bool:
    """Check all definitional conditions of a reducible pair, literally."""
    x, y = pair.x, pair.y
    if not x or not y or (x & y):
        return False
    if not x <= g.vertices or not y <= g.vertices:
        return False
    if not neighborhood(g, y) <= x:
        return False
    cg = build_component_graph(g, x, y)
    if any(w > ell for w in cg.weight.values()):
        return False
    exp = pair.expansion
    if exp.x != x or exp.y != frozenset(cg.component_of):
        return False
    load: dict[int, int] = {node: 0 for node in cg.component_of}
    alloc: dict[int, int] = {xv: 0 for xv in x}
    for (a, b), w in exp.assignment.items():
        if w < 0:
            return False
        if w == 0:
            continue
        if (a, b) not in cg.bipartite.edges:
            return False
        load[b] += w
        alloc[a] += w
    if any(load[node] > cg.weight[node] for node in cg.component_of):
        return False
    return all(alloc[xv] >= 2 * ell - 1 for xv in x)


def find_reducible_pair_in(
    inst: COCInstance, a: Iterable[int], b: Iterable[int]
) -> ReduciblePair | None:
    """A reducible pair with x inside `a` and y inside `b`, if one exists.

    Components of G[b] that are oversized or have neighbors outside `a`
    can never sit inside a reducible pair confined to (a, b), so they are
    discarded before the expansion search.
    """
    g, ell = inst.graph, inst.ell
    aset, bset = frozenset(a), frozenset(b)
    if aset & bset:
        raise ValueError("a and b overlap")
    usable: list[VertexSet] = [
        c
        for c in connected_components(g.induced(bset))
        if len(c) <= ell and neighborhood(g, c) <= aset
    ]
    if not aset or not usable:
        return None
    cg = build_component_graph(g, aset, frozenset().union(*usable))
    got = weighted_q_expansion_pair(cg.bipartite, 2 * ell - 1, cg.weight)
    if got is None:
        return None
    x = got.x
    y = frozenset().union(*(cg.component_of[node] for node in got.y))
    alloc: dict[int, int] = {xv: 0 for xv in x}
    for (xv, _), w in got.assignment.items():
        alloc[xv] += w
    strict_vertex = max(sorted(x), key=lambda xv: alloc[xv])
    pair = ReduciblePair(x, y, got, strict=True, strict_vertex=strict_vertex)
    assert is_reducible_pair(g, ell, pair)
    return pair


def witness_partition(inst: COCInstance, pair: ReduciblePair) -> WitnessPartition:
    """Pack x u y into one connected part of >= ell + 1 vertices per x-member.

    The pair's expansion is rounded to an unsplitting one, any component
    left unassigned is handed to its smallest neighbor, and each part is a
    member of x together with the components assigned to it.  For a strict
    pair the strict vertex's part has at least 2 * ell vertices.
    """
    g, ell = inst.graph, inst.ell
    if not is_reducible_pair(g, ell, pair):
        raise ValueError("not a reducible pair")
    cg = build_component_graph(g, pair.x, pair.y)
    q = 2 * ell - 1
    root = pair.strict_vertex if pair.strict else None
    h = strictify(cg.bipartite, dict(pair.expansion.assignment), cg.weight, q, root)
    owner: dict[int, int] = {}
    for (xv, node), w in h.items():
        if w > 0:
            owner[node] = xv
    for node in cg.component_of:
        if node not in owner:
            nbrs = cg.bipartite.adj_b[node]
            if not nbrs:
                raise ValueError(f"component node {node} has no neighbor in x")
            owner[node] = min(nbrs)
    parts: dict[int, VertexSet] = {}
    for xv in pair.x:
        members = frozenset((xv,)).union(
            *(cg.component_of[node] for node, ox in owner.items() if ox == xv)
        )
        parts[xv] = members
    sizes = sum(len(p) for p in parts.values())
    assert sizes == len(pair.x) + len(pair.y)
    assert all(len(p) >= ell + 1 for p in parts.values())
    if pair.strict and pair.strict_vertex is not None:
        assert len(parts[pair.strict_vertex]) >= 2 * ell
    return WitnessPartition(parts)


def apply_reduction(inst: COCInstance, pair: ReduciblePair) -> COCInstance:
    """Delete x u y and charge |x|; an overdrawn budget is a proven no."""
    if not is_reducible_pair(inst.graph, inst.ell, pair):
        raise ValueError("not a reducible pair")
    k2 = inst.k - len(pair.x)
    if k2 < 0:
        return trivial_no_instance(inst.ell)
    return COCInstance(inst.graph.without(pair.x | pair.y), inst.ell, k2)


def _find_pair_lp(inst: COCInstance) -> tuple[ReduciblePair | None, Fraction]:
    g = inst.graph
    lp = build_coc_lp(g, inst.ell)
    base = solve_lp(lp)
    ones, zeros = ones_and_zeros(base)
    if ones and zeros:
        pair = find_reducible_pair_in(inst, ones, zeros)
        if pair is not None:
            return pair, base.objective_value
    for v in sorted(g.vertices):
        probe = solve_with_fixed_one(lp, v)
        if probe.objective_value != base.objective_value:
            continue
        ones, zeros = ones_and_zeros(probe)
        if ones and zeros:
            pair = find_reducible_pair_in(inst, ones, zeros)
            if pair is not None:
                return pair, base.objective_value
    return None, base.objective_value


def find_reducible_pair_lp(inst: COCInstance) -> ReduciblePair | None:
    """LP-guided reducible pair search.

    Solve the LP, read off the 1-set and 0-set, and look for a pair inside
    them.  On failure, re-solve once per vertex with that variable fixed to
    1; whenever the optimum is unchanged, retry the pair search on the new
    1-set and 0-set.  Returns None when every probe fails, which (for
    graphs with at least 2 * ell * k vertices) certifies a no-instance.
    """
    pair, _ = _find_pair_lp(inst)
    return pair


def kernelize(inst: COCInstance) -> KernelResult:
    """Reduce to an equivalent instance with fewer than 2 * ell * k vertices.

    Components of at most ell vertices are dropped up front and after every
    reduction.  While the graph still has at least 2 * ell * k vertices the
    LP search must find a reducible pair; if it cannot, the instance is a
    proven no and the canonical trivial no-instance is returned.  For any
    input with k >= 1 the output has at most 2 * ell * k_original vertices.
    """
    ell = inst.ell
    g = inst.graph
    k = inst.k
    trace: list[ReductionStep] = []

    while True:
        g = drop_small_components(g, ell)
        if k == 0:
            if g.vertices:
                return KernelResult(trivial_no_instance(ell), tuple(trace), "trivial-no")
            return KernelResult(COCInstance(g, ell, 0), tuple(trace), "reduced")
        if g.n < 2 * ell * k:
            return KernelResult(COCInstance(g, ell, k), tuple(trace), "reduced")
        cur = COCInstance(g, ell, k)
        pair, objective = _find_pair_lp(cur)
        if pair is None:
            return KernelResult(trivial_no_instance(ell), tuple(trace), "trivial-no")
        k2 = k - len(pair.x)
        trace.append(ReductionStep(pair.x, pair.y, k, k2, objective))
        if k2 < 0:
            return KernelResult(trivial_no_instance(ell), tuple(trace), "trivial-no")
        g = g.without(pair.x | pair.y)
        k = k2


def lift_solution(result: KernelResult, kernel_witness: Iterable[int]) -> frozenset[int]:
    """Turn a solution of the reduced instance into one for the original.

    Only meaningful for a "reduced" verdict: the union of all reduced x
    sets joins the kernel's witness.
    """
    lifted = frozenset(kernel_witness)
    for step in result.trace:
        lifted |= step.x
    return lifted


def verify_kernel(original: COCInstance, result: KernelResult, cap: int = 16) -> bool:
    """Brute-force equivalence plus the size bound, for small originals.

    Refuses (raises) when the original exceeds `cap` vertices.  The size
    bound 2 * ell * k is checked against the original budget when k >= 1;
    for k = 0 no nonempty no-instance can meet the bound, so equivalence
    alone decides.
    """
    if original.graph.n > cap:
        raise ValueError(f"original has {original.graph.n} > {cap} vertices; refused")
    a = brute_force_solve(original, cap=cap).answer
    b = brute_force_solve(result.instance, cap=max(cap, result.instance.graph.n)).answer
    if a != b:
        return False
    if original.k >= 1:
        return result.instance.graph.n <= 2 * original.ell * original.k
    return True
