"""Seeded random instance generators.

Monge cost matrices come from the cumulative construction
c[i][j] = row[i] + col[j] + sum of a nonnegative density over the
rectangle {p >= i} x {q <= j}; the rectangle term makes every Monge
quadruple difference a negated rectangle sum, hence nonpositive.
Staircase-infinity instances are produced through the lot-sizing
reduction, and windowed instances use additive costs inside monotone
release/deadline windows.
"""

from __future__ import annotations

import random
from typing import List, Tuple

from .model import INF, Client, Cost, Facility, Instance
from .reductions import LotSizingInstance, lot_sizing_to_cfl


def monge_cost_matrix(rng: random.Random, m: int, n: int,
                      max_cost: int) -> List[List[int]]:
    """Random all-finite Monge matrix with entries in [0, max_cost]."""
    row_part = max_cost // 3
    col_part = max_cost // 3
    rect_part = max_cost - row_part - col_part
    rows = [rng.randint(0, row_part) for _ in range(m)]
    cols = [rng.randint(0, col_part) for _ in range(n)]
    density = [[0] * n for _ in range(m)]
    budget = rect_part
    while budget > 0:
        amount = rng.randint(1, budget)
        density[rng.randrange(m)][rng.randrange(n)] += amount
        budget -= amount
    # suffix-rows / prefix-columns rectangle sums
    rect = [[0] * n for _ in range(m)]
    for i in range(m - 1, -1, -1):
        acc = 0
        for j in range(n):
            acc += density[i][j]
            rect[i][j] = acc + (rect[i + 1][j] if i + 1 < m else 0)
    return [[rows[i] + cols[j] + rect[i][j] for j in range(n)]
            for i in range(m)]


def random_monge_instance(rng: random.Random, m: int, n: int,
                          max_cost: int = 10, max_demand: int = 6,
                          max_open_cost: int = 20, max_capacity: int = 15,
                          feasible: bool = False) -> Instance:
    """Random Monge instance; with feasible=True, capacities are resampled
    until they can absorb the total demand."""
    costs = monge_cost_matrix(rng, m, n, max_cost)
    while True:
        clients = [Client(rng.randint(1, max_demand)) for _ in range(n)]
        total = sum(c.demand for c in clients)
        facilities = [Facility(rng.randint(0, max_open_cost),
                               rng.randint(1, max_capacity))
                      for _ in range(m)]
        if not feasible or sum(f.capacity for f in facilities) >= total:
            return Instance(facilities, clients, costs)


def random_lot_sizing(rng: random.Random, horizon: int,
                      max_cost: int = 10, max_demand: int = 6,
                      max_holding: int = 10, max_capacity: int = 15,
                      feasible: bool = False) -> LotSizingInstance:
    while True:
        orders = [(rng.randint(0, max_cost), rng.randint(0, max_capacity))
                  for _ in range(horizon)]
        demands = [(t, 0, rng.randint(0, max_demand))
                   for t in range(1, horizon + 1)]
        holding = [rng.randint(0, max_holding) for _ in range(horizon - 1)]
        if all(a == 0 for _, _, a in demands):
            continue
        ls = LotSizingInstance(horizon, orders, demands, holding)
        if not feasible or _lot_sizing_feasible(ls):
            return ls


def _lot_sizing_feasible(ls: LotSizingInstance) -> bool:
    # cumulative capacity up to each period must cover cumulative demand
    demand_at = [0] * (ls.horizon + 1)
    for t, _, a in ls.demands:
        demand_at[t] += a
    cap = need = 0
    for t in range(1, ls.horizon + 1):
        cap += ls.orders[t - 1][1]
        need += demand_at[t]
        if need > cap:
            return False
    return True


def random_staircase_instance(rng: random.Random, horizon: int,
                              **kwargs) -> Instance:
    """Monge instance with a staircase infinity pattern (via lot-sizing)."""
    return lot_sizing_to_cfl(random_lot_sizing(rng, horizon, **kwargs))


def random_windowed_instance(rng: random.Random, m: int, n: int,
                             max_cost: int = 10, max_demand: int = 6,
                             max_open_cost: int = 20, max_capacity: int = 15,
                             feasible: bool = False) -> Instance:
    """Monotone release/deadline windows; additive costs inside windows."""
    releases = sorted(rng.randint(1, m) for _ in range(n))
    deadlines = sorted(rng.randint(1, m) for _ in range(n))
    deadlines = [max(r, t) for r, t in zip(releases, deadlines)]
    half = max_cost // 2
    rows = [rng.randint(0, half) for _ in range(m)]
    cols = [rng.randint(0, max_cost - half) for _ in range(n)]
    costs: List[List[Cost]] = [
        [rows[i - 1] + cols[j - 1]
         if releases[j - 1] <= i <= deadlines[j - 1] else INF
         for j in range(1, n + 1)]
        for i in range(1, m + 1)]
    clients = [Client(rng.randint(1, max_demand), releases[j], deadlines[j])
               for j in range(n)]
    for _ in range(100):
        facilities = [Facility(rng.randint(0, max_open_cost),
                               rng.randint(1, max_capacity))
                      for _ in range(m)]
        inst = Instance(facilities, clients, costs)
        if not feasible or _windowed_feasible(inst):
            return inst
    # windows themselves may be too tight; redraw the whole instance
    return random_windowed_instance(rng, m, n, max_cost, max_demand,
                                    max_open_cost, max_capacity, feasible)


def _windowed_feasible(inst: Instance) -> bool:
    from .oracle import brute_force_optimum
    from .model import is_inf
    return not is_inf(brute_force_optimum(inst).optimum)


def random_two_class_instance(rng: random.Random, m: int, n: int,
                              max_cost: int = 6, max_demand: int = 3,
                              max_open_cost: int = 6, max_capacity: int = 8,
                              feasible: bool = False,
                              ) -> Tuple[Instance, Tuple[int, ...], Tuple[int, ...]]:
    """Instance plus an (s1, s2) split: s1 release-free, s2 with
    nondecreasing release dates; deadlines are open-ended."""
    classes = [rng.randint(1, 2) for _ in range(n)]
    if 2 in classes:
        s2_releases = sorted(rng.randint(1, m)
                             for _ in range(classes.count(2)))
    else:
        s2_releases = []
    half = max_cost // 2
    rows = [rng.randint(0, half) for _ in range(m)]
    cols = [rng.randint(0, max_cost - half) for _ in range(n)]
    releases = []
    it = iter(s2_releases)
    for cls in classes:
        releases.append(1 if cls == 1 else next(it))
    costs: List[List[Cost]] = [
        [rows[i - 1] + cols[j - 1] if i >= releases[j - 1] else INF
         for j in range(1, n + 1)]
        for i in range(1, m + 1)]
    clients = [Client(rng.randint(1, max_demand), releases[j], m)
               for j in range(n)]
    s1 = tuple(j + 1 for j, cls in enumerate(classes) if cls == 1)
    s2 = tuple(j + 1 for j, cls in enumerate(classes) if cls == 2)
    for _ in range(100):
        facilities = [Facility(rng.randint(0, max_open_cost),
                               rng.randint(1, max_capacity))
                      for _ in range(m)]
        inst = Instance(facilities, clients, costs)
        if not feasible or _windowed_feasible(inst):
            return inst, s1, s2
    return random_two_class_instance(rng, m, n, max_cost, max_demand,
                                     max_open_cost, max_capacity, feasible)
