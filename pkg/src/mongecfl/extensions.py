"""Release-date and deadline support.

With monotone release dates and deadlines the costs stay Monge and the
plain solvers apply; this module verifies that.  When only a split into
a release-free class and a monotone-release class is available, a
three-budget variant of the grid DP solves the instance: one budget for
opening costs and one transport budget per class, with each facility
serving the release-free class first.

The budget-vector recurrence is evaluated over the frontier of
non-dominated (budget vector, demand vector) pairs rather than a dense
grid-cubed table; the reachable values are identical and desk-scale
instances stay tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .exact import Solution
from .fptas import BudgetGrid, Rational, find_budget_bound
from .kernel import Amount, Flow
from .model import Infeasible, Instance, MongeWitness, check_monge_full, is_inf


@dataclass(frozen=True)
class WindowViolation:
    """An entry whose finiteness disagrees with the client's window."""

    i: int
    j: int
    reason: str


@dataclass(frozen=True)
class ClientPartition:
    """Clients split into a release-free class and a time-sensitive one.

    s1 holds clients with release date 1 (servable by every facility as
    far as releases go); s2 holds the rest, whose release dates must be
    nondecreasing in client index.
    """

    s1: Tuple[int, ...]
    s2: Tuple[int, ...]

    def __init__(self, s1, s2):
        object.__setattr__(self, "s1", tuple(s1))
        object.__setattr__(self, "s2", tuple(s2))

    def validate(self, inst: Instance) -> None:
        if sorted(self.s1 + self.s2) != list(range(1, inst.n + 1)):
            raise ValueError("partition must cover every client exactly once")
        if list(self.s1) != sorted(self.s1) or list(self.s2) != sorted(self.s2):
            raise ValueError("classes must list clients in increasing order")
        for j in self.s1:
            release = inst.clients[j - 1].release
            if release is not None and release != 1:
                raise ValueError(f"client {j} in the release-free class "
                                 f"has release date {release}")
        last = None
        for j in self.s2:
            release = inst.clients[j - 1].release or 1
            if last is not None and release < last:
                raise ValueError("release dates must be nondecreasing "
                                 "within the time-sensitive class")
            last = release


def check_windowed_monge(inst: Instance,
                         ) -> Optional[Union[MongeWitness, WindowViolation]]:
    """Verify Monge structure of a windowed instance; None means pass.

    Requires every client to carry monotone release dates and deadlines
    (otherwise the instance needs the two-class solver and a ValueError
    says so).  Checks that costs are infinite exactly outside the
    windows and that every all-finite quadruple satisfies the Monge
    inequality; together these imply the full Monge property, which is
    asserted as well.
    """
    releases = []
    deadlines = []
    for j, c in enumerate(inst.clients, start=1):
        if c.release is None or c.deadline is None:
            raise ValueError(f"client {j} lacks a release date or deadline")
        releases.append(c.release)
        deadlines.append(c.deadline)
    if releases != sorted(releases) or deadlines != sorted(deadlines):
        raise ValueError("release dates or deadlines are not nondecreasing; "
                         "use solve_two_class_fptas with a client partition")
    for i in range(1, inst.m + 1):
        for j in range(1, inst.n + 1):
            inside = releases[j - 1] <= i <= deadlines[j - 1]
            if inside and is_inf(inst.cost(i, j)):
                return WindowViolation(i, j, "infinite cost inside the window")
            if not inside and not is_inf(inst.cost(i, j)):
                return WindowViolation(i, j, "finite cost outside the window")
    for h in range(1, inst.m + 1):
        for i in range(h + 1, inst.m + 1):
            for j in range(1, inst.n + 1):
                for k in range(j + 1, inst.n + 1):
                    quad = (inst.cost(h, j), inst.cost(i, k),
                            inst.cost(h, k), inst.cost(i, j))
                    if any(is_inf(c) for c in quad):
                        continue
                    if quad[0] + quad[1] > quad[2] + quad[3]:
                        return MongeWitness(h, i, j, k,
                                            quad[0] + quad[1],
                                            quad[2] + quad[3])
    return check_monge_full(inst.costs)


def _class_serve(inst: Instance, i: int, members: Tuple[int, ...],
                 d_met: Amount, money: Fraction, cap: Amount,
                 ) -> Tuple[Amount, List[Tuple[int, Amount]]]:
    """Serve one class right-to-left on its own transport budget,
    sharing the facility capacity; mirrors the scalar serving rules."""
    residual: List[Amount] = [inst.demand(j) for j in members]
    left = d_met
    for idx in range(len(members) - 1, -1, -1):
        if left <= 0:
            break
        take = min(residual[idx], left)
        residual[idx] -= take
        left -= take
    total = Fraction(0)
    served: List[Tuple[int, Amount]] = []
    for idx in range(len(members) - 1, -1, -1):
        r = residual[idx]
        if r == 0:
            continue
        if cap <= 0:
            break
        c = inst.cost(i, members[idx])
        if is_inf(c):
            break
        amount = min(r, cap)
        if c > 0:
            amount = min(amount, money / c)
        if amount > 0:
            served.append((members[idx], Fraction(amount)))
            total += amount
            cap -= amount
            money -= c * amount
        if amount < r:
            break
    return total, served


def vector_demand_met(inst: Instance, partition: ClientPartition, i: int,
                      d_met: Tuple[Amount, Amount],
                      remaining: Tuple[int, int, int],
                      ) -> Tuple[Amount, Amount]:
    """Demand facility i meets per class given leftover budget vector
    (opening, class-1 transport, class-2 transport)."""
    total1, total2, _, _ = _vector_serve(inst, partition, i, d_met, remaining)
    return total1, total2


def _vector_serve(inst: Instance, partition: ClientPartition, i: int,
                  d_met: Tuple[Amount, Amount],
                  remaining: Tuple[int, int, int]):
    b0, b1, b2 = remaining
    if any(b < 0 for b in remaining) or any(d < 0 for d in d_met):
        raise ValueError("budgets and met demand must be nonnegative")
    f = inst.facilities[i - 1]
    if f.open_cost > b0:
        return Fraction(0), Fraction(0), [], []
    cap: Amount = f.capacity
    total1, served1 = _class_serve(inst, i, partition.s1, d_met[0],
                                   Fraction(b1), cap)
    total2, served2 = _class_serve(inst, i, partition.s2, d_met[1],
                                   Fraction(b2), cap - total1)
    return total1, total2, served1, served2


@dataclass
class _Entry:
    b0: int
    b1: int
    b2: int
    d1: Amount
    d2: Amount
    parent: Optional["_Entry"]
    facility: Optional[int]
    spend: Optional[Tuple[int, int, int]]
    schedule: Optional[Tuple[list, list]]

    @property
    def budget_sum(self) -> int:
        return self.b0 + self.b1 + self.b2

    def dominates(self, other: "_Entry") -> bool:
        return (self.b0 <= other.b0 and self.b1 <= other.b1
                and self.b2 <= other.b2 and self.d1 >= other.d1
                and self.d2 >= other.d2)


def _prune(entries: List[_Entry]) -> List[_Entry]:
    entries.sort(key=lambda e: (e.budget_sum, e.b0, e.b1, e.b2,
                                -e.d1, -e.d2))
    kept: List[_Entry] = []
    for e in entries:
        if not any(k.dominates(e) for k in kept):
            kept.append(e)
    return kept


@dataclass(frozen=True)
class TwoClassResult:
    solution: Solution
    grid_budget: int          # minimal b0+b1+b2 covering all demand
    budget_vector: Tuple[int, int, int]
    bound: int
    grid: BudgetGrid


def run_two_class_fptas(inst: Instance, partition: ClientPartition,
                        eps: Rational) -> TwoClassResult:
    """Three-budget grid DP over the non-dominated frontier."""
    partition.validate(inst)
    target1 = sum(inst.demand(j) for j in partition.s1)
    target2 = sum(inst.demand(j) for j in partition.s2)
    try:
        B = find_budget_bound(inst)
    except Infeasible:
        # The scalar bound DP serves strictly right to left and stops at
        # infinite entries, so a non-monotone release pattern can make it
        # miss feasible plans.  Fall back to the open-everything bound;
        # it is still an upper bound on the optimum, only looser.
        B = (sum(f.open_cost for f in inst.facilities)
             + sum(inst.cost(i, j) * inst.demand(j)
                   for i in range(1, inst.m + 1)
                   for j in range(1, inst.n + 1)
                   if not is_inf(inst.cost(i, j))))
        if B < 1:
            B = 1
    grid = BudgetGrid.for_instance(inst.m, B, eps)
    K = grid.K
    endpoint = (grid.size - 1) * K

    def covers(e: _Entry) -> bool:
        return e.d1 >= target1 and e.d2 >= target2

    frontier = [_Entry(0, 0, 0, Fraction(0), Fraction(0),
                       None, None, None, None)]
    best_cover: Optional[_Entry] = None
    for i in range(inst.m, 0, -1):
        open_spend = grid.round_up(inst.facilities[i - 1].open_cost)
        serve_all1 = sum(inst.cost(i, j) * inst.demand(j)
                         for j in partition.s1 if not is_inf(inst.cost(i, j)))
        serve_all2 = sum(inst.cost(i, j) * inst.demand(j)
                         for j in partition.s2 if not is_inf(inst.cost(i, j)))
        nxt: List[_Entry] = []
        for e in frontier:
            nxt.append(_Entry(e.b0, e.b1, e.b2, e.d1, e.d2,
                              e, None, None, None))
            if e.b0 + open_spend > endpoint:
                continue
            max1 = min(endpoint - e.b1, grid.round_up(serve_all1))
            max2 = min(endpoint - e.b2, grid.round_up(serve_all2))
            for s1 in range(0, max1 + 1, K):
                for s2 in range(0, max2 + 1, K):
                    spend = (open_spend, s1, s2)
                    t1, t2, sched1, sched2 = _vector_serve(
                        inst, partition, i, (e.d1, e.d2), spend)
                    if t1 + t2 == 0:
                        continue
                    nxt.append(_Entry(e.b0 + open_spend, e.b1 + s1,
                                      e.b2 + s2, e.d1 + t1, e.d2 + t2,
                                      e, i, spend, (sched1, sched2)))
        frontier = _prune(nxt)
        for e in frontier:
            if covers(e) and (best_cover is None
                              or (e.budget_sum, e.b0, e.b1, e.b2)
                              < (best_cover.budget_sum, best_cover.b0,
                                 best_cover.b1, best_cover.b2)):
                best_cover = e
        if best_cover is not None:
            frontier = [e for e in frontier
                        if e.budget_sum < best_cover.budget_sum
                        or e is best_cover]
    if best_cover is None:
        raise Infeasible("no feasible solution within the budget grid")

    open_facilities = set()
    entries: Dict[Tuple[int, int], Amount] = {}
    transport: Amount = Fraction(0)
    e: Optional[_Entry] = best_cover
    while e is not None:
        if e.facility is not None:
            open_facilities.add(e.facility)
            for sched in e.schedule:
                for j, amount in sched:
                    entries[(e.facility, j)] = (
                        entries.get((e.facility, j), Fraction(0))
                        + Fraction(amount, inst.demand(j)))
                    transport += inst.cost(e.facility, j) * amount
        e = e.parent
    opening = sum(inst.facilities[i - 1].open_cost for i in open_facilities)
    solution = Solution(open_facilities, Flow(entries, transport),
                        opening + transport)
    return TwoClassResult(solution, best_cover.budget_sum,
                          (best_cover.b0, best_cover.b1, best_cover.b2),
                          B, grid)


def solve_two_class_fptas(inst: Instance, partition: ClientPartition,
                          eps: Rational) -> Solution:
    """(1+eps)-style solution for two-class windowed instances."""
    return run_two_class_fptas(inst, partition, eps).solution
