"""Exact dynamic program for polynomially bounded total demand.

State (i, j, d): cheapest way to serve d units at client j plus all
demand of clients after j, using only facilities i and higher.  For each
facility we either leave it closed or pick how many units u it serves;
the Monge property guarantees those u units go to clients j, j+1, ...
greedily, which the kernel helpers evaluate in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Set, Tuple, Union

from .kernel import Amount, Flow, greedy_serve
from .model import INF, Cost, Instance, is_inf

DEFAULT_DEMAND_CAP = 10**6


class DemandCapExceeded(ValueError):
    """Total demand too large for the exact DP; use the FPTAS instead."""


@dataclass(frozen=True)
class Solution:
    """Open facilities plus a fractional assignment.

    assignment.entries maps (facility, client) to the fraction of the
    client's demand served there (exact rationals in [0, 1]);
    assignment.cost is the transport cost alone.
    """

    open: Set[int]
    assignment: Flow
    total_cost: Union[Amount, float]

    def recompute_cost(self, inst: Instance) -> Union[Amount, float]:
        total: Union[Amount, float] = sum(
            inst.facilities[i - 1].open_cost for i in self.open)
        for (i, j), x in self.assignment.entries.items():
            if x == 0:
                continue
            c = inst.cost(i, j)
            if is_inf(c):
                return INF
            total += c * inst.demand(j) * x
        return total


class ExactSolver:
    """Top-down memoized evaluation of the (i, j, d) recurrence.

    Each solve owns its memo table; separate solves are independent.
    """

    def __init__(self, inst: Instance, demand_cap: int = DEFAULT_DEMAND_CAP):
        if inst.total_demand > demand_cap:
            raise DemandCapExceeded(
                f"total demand {inst.total_demand} exceeds cap {demand_cap}; "
                "use the FPTAS for large demands")
        self.inst = inst
        # suffix_demand[j] = sum of demands of clients j+1..n (1-based j)
        self.suffix = [0] * (inst.n + 2)
        for j in range(inst.n - 1, 0, -1):
            self.suffix[j] = self.suffix[j + 1] + inst.demand(j + 1)
        self._memo: Dict[Tuple[int, int, int], Cost] = {}
        # best choice per state: None = leave facility i closed, else u
        self._choice: Dict[Tuple[int, int, int], Optional[int]] = {}

    def value(self, i: int, j: int, d: int) -> Cost:
        inst = self.inst
        if j == inst.n + 1:
            return 0
        if i == inst.m + 1:
            return INF if d + self.suffix[j] > 0 else 0
        key = (i, j, d)
        if key in self._memo:
            return self._memo[key]

        best = self.value(i + 1, j, d)
        best_u: Optional[int] = None
        f = inst.facilities[i - 1]
        u_max = min(f.capacity, d + self.suffix[j])
        for u in range(1, u_max + 1):
            serve = greedy_serve(inst, i, u, j, d)
            if is_inf(serve.transport_cost):
                continue
            tail = self.value(i + 1, serve.next_client, serve.demand_remaining)
            if is_inf(tail):
                continue
            cand = f.open_cost + serve.transport_cost + tail
            if cand < best:
                best = cand
                best_u = u
        self._memo[key] = best
        self._choice[key] = best_u
        return best

    def solve(self) -> Solution:
        inst = self.inst
        cost = self.value(1, 1, inst.demand(1))
        if is_inf(cost):
            return Solution(set(), Flow({}, INF), INF)

        open_facilities: Set[int] = set()
        entries: Dict[Tuple[int, int], Amount] = {}
        i, j, d = 1, 1, inst.demand(1)
        while i <= inst.m and j <= inst.n:
            u = self._choice.get((i, j, d))
            if u is not None:
                open_facilities.add(i)
                serve = greedy_serve(inst, i, u, j, d)
                ell = serve.next_client
                if ell == j:
                    units = {j: d - serve.demand_remaining}
                else:
                    units = {j: d}
                    for k in range(j + 1, min(ell, inst.n + 1)):
                        units[k] = inst.demand(k)
                    if ell <= inst.n:
                        units[ell] = inst.demand(ell) - serve.demand_remaining
                for k, amount in units.items():
                    if amount > 0:
                        entries[(i, k)] = Fraction(amount, inst.demand(k))
                j, d = ell, serve.demand_remaining
            i += 1
        flow = Flow(entries, cost - sum(inst.facilities[i - 1].open_cost
                                        for i in open_facilities))
        return Solution(open_facilities, flow, cost)


def dp_value(inst: Instance, i: int, j: int, d: int,
             demand_cap: int = DEFAULT_DEMAND_CAP) -> Cost:
    """Value C(i, j, d) of the exact recurrence (fresh memo table)."""
    return ExactSolver(inst, demand_cap).value(i, j, d)


def solve_exact(inst: Instance, demand_cap: int = DEFAULT_DEMAND_CAP) -> Solution:
    """Optimal solution via the exact DP; INF cost if infeasible."""
    return ExactSolver(inst, demand_cap).solve()
