"""Independent ground truth for desk-scale verification.

Exhaustive facility-subset enumeration on top of an exact min-cost
transportation solver (successive shortest paths with Bellman-Ford).
Deliberately shares no code with the greedy kernel and does not rely on
the Monge property; integral optima are exact because the transportation
polytope is integral for integral data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Tuple, Union

from .kernel import Amount, Flow
from .model import INF, Instance, is_inf

DEFAULT_ORACLE_DEMAND_CAP = 200


@dataclass(frozen=True)
class OracleResult:
    optimum: Union[Amount, float]
    best_open: Tuple[int, ...]
    best_flow: Flow


class _MinCostFlow:
    """Successive shortest path augmentation on a small network."""

    def __init__(self, num_nodes: int):
        self.graph: List[List[int]] = [[] for _ in range(num_nodes)]
        self.to: List[int] = []
        self.cap: List[int] = []
        self.cost: List[int] = []

    def add_edge(self, u: int, v: int, cap: int, cost: int) -> int:
        idx = len(self.to)
        self.graph[u].append(idx)
        self.to.append(v)
        self.cap.append(cap)
        self.cost.append(cost)
        self.graph[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(0)
        self.cost.append(-cost)
        return idx

    def run(self, s: int, t: int) -> Tuple[int, int]:
        """Returns (flow shipped, total cost) of a min-cost max-flow."""
        total_flow = 0
        total_cost = 0
        num_nodes = len(self.graph)
        while True:
            dist: List[Optional[int]] = [None] * num_nodes
            in_queue = [False] * num_nodes
            prev_edge: List[int] = [-1] * num_nodes
            dist[s] = 0
            queue = [s]
            in_queue[s] = True
            while queue:
                u = queue.pop(0)
                in_queue[u] = False
                for e in self.graph[u]:
                    if self.cap[e] <= 0:
                        continue
                    v = self.to[e]
                    nd = dist[u] + self.cost[e]
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        prev_edge[v] = e
                        if not in_queue[v]:
                            queue.append(v)
                            in_queue[v] = True
            if dist[t] is None:
                return total_flow, total_cost
            # bottleneck along the shortest path
            push = None
            v = t
            while v != s:
                e = prev_edge[v]
                push = self.cap[e] if push is None else min(push, self.cap[e])
                v = self.to[e ^ 1]
            v = t
            while v != s:
                e = prev_edge[v]
                self.cap[e] -= push
                self.cap[e ^ 1] += push
                v = self.to[e ^ 1]
            total_flow += push
            total_cost += push * dist[t]


def min_cost_assignment(inst: Instance, open_facilities: Iterable[int],
                        demand_cap: int = DEFAULT_ORACLE_DEMAND_CAP,
                        ) -> Tuple[Union[Amount, float], Flow]:
    """Exact cheapest transport serving all demand from the open set.

    Returns (cost, flow); cost INF with an empty flow if infeasible.
    Transport cost only, opening costs excluded.
    """
    if inst.total_demand > demand_cap:
        raise ValueError(f"total demand exceeds oracle cap {demand_cap}")
    opened = sorted(set(open_facilities))
    m, n = len(opened), inst.n
    demand = inst.total_demand
    # nodes: 0 source, 1..m facilities, m+1..m+n clients, m+n+1 sink
    net = _MinCostFlow(m + n + 2)
    edge_of: Dict[Tuple[int, int], int] = {}
    for a, i in enumerate(opened):
        net.add_edge(0, 1 + a, inst.facilities[i - 1].capacity, 0)
        for j in range(1, n + 1):
            c = inst.cost(i, j)
            if not is_inf(c):
                edge_of[(i, j)] = net.add_edge(1 + a, m + j, inst.demand(j), c)
    for j in range(1, n + 1):
        net.add_edge(m + j, m + n + 1, inst.demand(j), 0)
    shipped, cost = net.run(0, m + n + 1)
    if shipped < demand:
        return INF, Flow({}, INF)
    entries = {}
    for (i, j), e in edge_of.items():
        used = inst.demand(j) - net.cap[e]
        if used > 0:
            entries[(i, j)] = used
    return cost, Flow(entries, cost)


def brute_force_optimum(inst: Instance,
                        demand_cap: int = DEFAULT_ORACLE_DEMAND_CAP) -> OracleResult:
    """Minimum over all facility subsets of opening plus transport cost.

    Ties broken toward the lexicographically smallest subset.
    """
    if inst.m > 20:
        raise ValueError("too many facilities for exhaustive enumeration")
    best: Union[Amount, float] = INF
    best_open: Tuple[int, ...] = ()
    best_flow = Flow({}, INF)
    for mask in range(1 << inst.m):
        opened = tuple(i + 1 for i in range(inst.m) if mask >> i & 1)
        transport, flow = min_cost_assignment(inst, opened, demand_cap)
        if is_inf(transport):
            continue
        total = sum(inst.facilities[i - 1].open_cost for i in opened) + transport
        if total < best or (total == best and opened < best_open):
            best, best_open, best_flow = total, opened, flow
    return OracleResult(best, best_open, best_flow)
