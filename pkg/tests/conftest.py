"""Shared fixtures and independent helper oracles for the test suite."""

import itertools
import random

import pytest

from mongecfl.model import Client, Facility, Instance
from mongecfl.reductions import LotSizingInstance


@pytest.fixture
def ref1() -> Instance:
    """The canonical worked instance: optimum 11, open {1}."""
    return Instance(
        [Facility(3, 5), Facility(10, 5)],
        [Client(2), Client(3)],
        [[1, 2], [3, 1]],
    )


def lot_sizing_brute(ls: LotSizingInstance):
    """Direct lot-sizing optimum, independent of the reduction machinery.

    Enumerates order subsets; for each subset, demands are assigned in
    decreasing period order to the latest usable order with capacity
    left.  Prefix sums H make the cost of serving a period-p demand
    from a period-t order equal H(p) - H(t) with H nondecreasing, so
    pushing units onto the latest reachable orders is optimal for a
    fixed subset.  Returns the minimum total cost, or None if no
    subset is feasible.
    """
    T = ls.horizon
    demand_at = [0] * (T + 1)
    for t, _, a in ls.demands:
        demand_at[t] += a
    periods = [t for t in range(1, T + 1) if demand_at[t] > 0]
    usable = [t for t in range(1, T + 1) if ls.orders[t - 1][1] > 0]
    prefix = [0] * (T + 1)  # prefix[t] = holding cost from period 1 to t
    for t in range(2, T + 1):
        prefix[t] = prefix[t - 1] + ls.holding[t - 2]
    best = None
    for size in range(len(usable) + 1):
        for subset in itertools.combinations(usable, size):
            cap = {t: ls.orders[t - 1][1] for t in subset}
            cost = sum(ls.orders[t - 1][0] for t in subset)
            ok = True
            for p in sorted(periods, reverse=True):
                need = demand_at[p]
                for t in sorted(subset, reverse=True):
                    if t > p or need == 0:
                        continue
                    take = min(cap[t], need)
                    cap[t] -= take
                    need -= take
                    cost += take * (prefix[p] - prefix[t])
                if need > 0:
                    ok = False
                    break
            if ok and (best is None or cost < best):
                best = cost
    return best


def feasible_monge_instance(rng: random.Random, max_demand: int = 6,
                            max_m: int = 5, max_n: int = 5) -> Instance:
    """Random small feasible Monge instance for approximation tests."""
    from mongecfl.generate import random_monge_instance
    return random_monge_instance(rng, rng.randint(2, max_m),
                                 rng.randint(2, max_n),
                                 max_demand=max_demand, feasible=True)
