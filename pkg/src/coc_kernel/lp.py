"""Exact rational LP relaxation of the covering formulation.

The program has one [0, 1] variable per vertex, minimizes their sum, and
for every connected vertex set of a fixed size demands that the set's
variables sum to at least 1.  The pipeline compares optimal objective
values for *equality*, so everything here runs in exact Fraction
arithmetic; floating point could not certify that fixing a variable left
the optimum unchanged.

The solver is a revised simplex with Bland's pivoting rule applied to the
packing dual (one dual variable per covering constraint).  The dual keeps
the basis at |V| x |V| no matter how many constraints the instance has,
and the primal optimum is recovered from the simplex multipliers: at the
final basis each basic column pins an equality on the multiplier vector,
so the recovered point is a basic optimal solution of the covering
program.  Upper bounds x_v <= 1 need no rows because a single vertex at
value 1 already satisfies every covering constraint through it, hence no
basic optimal solution exceeds 1 anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import lcm
from typing import Mapping

from .graphs import Graph, enumerate_connected_sets

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LPInstance:
    """Covering LP data: variables, constraint sets, and 0/1 fixings."""

    variables: tuple[int, ...]
    constraints: tuple[frozenset[int], ...]
    fixed: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        vs = set(self.variables)
        if len(vs) != len(self.variables):
            raise ValueError("duplicate variables")
        for c in self.constraints:
            if not c <= vs:
                raise ValueError("constraint mentions unknown variables")
        for v, val in self.fixed.items():
            if v not in vs:
                raise ValueError(f"fixed value for unknown variable {v}")
            if val not in (0, 1):
                raise ValueError("variables may only be fixed to 0 or 1")


@dataclass(frozen=True)
class LPSolution:
    values: Mapping[int, Fraction]
    objective_value: Fraction


def build_coc_lp(g: Graph, ell: int) -> LPInstance:
    """One covering constraint per connected set of ell + 1 vertices."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    constraints = tuple(enumerate_connected_sets(g, ell + 1))
    return LPInstance(tuple(sorted(g.vertices)), constraints, {})


def solve_lp(inst: LPInstance) -> LPSolution:
    """An optimal basic solution in exact rationals, deterministic.

    Fixed variables are substituted away: ones satisfy (and remove) their
    constraints and contribute 1 to the objective, zeros drop out of their
    constraints.  A constraint emptied by zero-fixings makes the instance
    infeasible, which violates the caller's contract and raises.
    """
    ones = {v for v, val in inst.fixed.items() if val == 1}
    zeros = {v for v, val in inst.fixed.items() if val == 0}
    reduced: list[frozenset[int]] = []
    seen: set[frozenset[int]] = set()
    for c in inst.constraints:
        if c & ones:
            continue
        c2 = c - zeros
        if not c2:
            raise ValueError("infeasible: a constraint was emptied by zero-fixings")
        if c2 in seen:
            continue
        seen.add(c2)
        reduced.append(c2)

    values: dict[int, Fraction] = {v: Fraction(val) for v, val in inst.fixed.items()}
    values.update({v: _ZERO for v in inst.variables if v not in inst.fixed})
    if reduced:
        values.update(_solve_covering(reduced))
    objective = sum(values.values(), _ZERO)
    return LPSolution(values, objective)


def solve_with_fixed_one(inst: LPInstance, v: int) -> LPSolution:
    """Optimal solution subject to x_v = 1."""
    if v not in inst.variables:
        raise ValueError(f"unknown variable {v}")
    new_fixed = dict(inst.fixed)
    new_fixed[v] = 1
    return solve_lp(replace(inst, fixed=new_fixed))


def ones_and_zeros(sol: LPSolution) -> tuple[frozenset[int], frozenset[int]]:
    """Variables exactly at 1 and exactly at 0, by exact comparison."""
    one = frozenset(v for v, x in sol.values.items() if x == _ONE)
    zero = frozenset(v for v, x in sol.values.items() if x == _ZERO)
    return one, zero


def _solve_covering(constraints: list[frozenset[int]]) -> dict[int, Fraction]:
    """min sum(x) s.t. sum over each constraint >= 1, x >= 0, exactly.

    Runs Bland's-rule revised simplex on the packing dual
    max sum(y), A^T y <= 1, y >= 0, starting from the all-slack basis.
    Reduced-cost tests are done on an integer-rescaled multiplier vector,
    keeping the per-column pricing in plain integer arithmetic.
    """
    order = sorted(set(v for c in constraints for v in c))
    ridx = {v: i for i, v in enumerate(order)}
    n = len(order)
    m = len(constraints)
    cols = [tuple(sorted(ridx[v] for v in c)) for c in constraints]

    binv: list[list[Fraction]] = [
        [_ONE if i == j else _ZERO for j in range(n)] for i in range(n)
    ]
    basis = [m + i for i in range(n)]  # columns 0..m-1 are y's, then n slacks
    xb = [_ONE] * n

    while True:
        # multipliers pi = c_B B^-1; y-columns cost -1 (max turned into min)
        pi = [_ZERO] * n
        for i, bid in enumerate(basis):
            if bid < m:
                row = binv[i]
                for j in range(n):
                    pi[j] -= row[j]
        denom = lcm(*(p.denominator for p in pi)) if n else 1
        pin = [p.numerator * (denom // p.denominator) for p in pi]

        enter = -1
        for j in range(m):
            s = 0
            for i in cols[j]:
                s += pin[i]
            if s > -denom:  # reduced cost of y_j is negative
                enter = j
                break
        if enter < 0:
            for i in range(n):
                if pin[i] > 0:  # reduced cost of slack i is negative
                    enter = m + i
                    break
        if enter < 0:
            return {order[i]: -pi[i] for i in range(n)}

        if enter < m:
            rows = cols[enter]
            d = [sum((binv[i][j] for j in rows), _ZERO) for i in range(n)]
        else:
            j = enter - m
            d = [binv[i][j] for i in range(n)]

        leave = -1
        best: Fraction | None = None
        for i in range(n):
            if d[i] > 0:
                ratio = xb[i] / d[i]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise RuntimeError("packing dual unbounded; input is corrupt")

        piv = d[leave]
        binv[leave] = [val / piv for val in binv[leave]]
        xb[leave] = xb[leave] / piv
        row_l = binv[leave]
        xl = xb[leave]
        for i in range(n):
            if i != leave and d[i] != 0:
                di = d[i]
                row_i = binv[i]
                binv[i] = [row_i[j] - di * row_l[j] for j in range(n)]
                xb[i] = xb[i] - di * xl
        basis[leave] = enter
