"""JSON file formats: instances, lot-sizing inputs, solutions.

Indices are implicit (1-based by list position).  Infinite costs are
the string "inf"; rationals serialize as strings "p/q" (plain "p" for
integers) so values cross the file boundary exactly.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Union

from .exact import Solution
from .model import INF, Client, Facility, Instance, is_inf
from .reductions import LotSizingInstance


def _cost_to_json(c) -> Union[int, str]:
    return "inf" if is_inf(c) else int(c)


def _cost_from_json(v):
    if v == "inf":
        return INF
    if isinstance(v, int):
        return v
    raise ValueError(f"cost entries must be integers or \"inf\", got {v!r}")


def instance_to_dict(inst: Instance) -> dict:
    facilities = [{"open_cost": f.open_cost, "capacity": f.capacity}
                  for f in inst.facilities]
    clients = []
    for c in inst.clients:
        entry: dict = {"demand": c.demand}
        if c.release is not None:
            entry["release"] = c.release
        if c.deadline is not None:
            entry["deadline"] = c.deadline
        clients.append(entry)
    costs = [[_cost_to_json(c) for c in row] for row in inst.costs]
    return {"facilities": facilities, "clients": clients, "costs": costs}


def instance_from_dict(data: dict) -> Instance:
    facilities = [Facility(f["open_cost"], f["capacity"])
                  for f in data["facilities"]]
    clients = [Client(c["demand"], c.get("release"), c.get("deadline"))
               for c in data["clients"]]
    costs = [[_cost_from_json(v) for v in row] for row in data["costs"]]
    return Instance(facilities, clients, costs)


def save_instance(inst: Instance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(inst), indent=1) + "\n",
                          encoding="utf-8")


def load_instance(path) -> Instance:
    return instance_from_dict(json.loads(Path(path).read_text("utf-8")))


def lot_sizing_from_dict(data: dict) -> LotSizingInstance:
    orders = [(o["cost"], o["capacity"]) for o in data["orders"]]
    demands = [(d["period"], d.get("item", 0), d["amount"])
               for d in data["demands"]]
    return LotSizingInstance(data["horizon"], orders, demands, data["holding"])


def lot_sizing_to_dict(ls: LotSizingInstance) -> dict:
    return {
        "horizon": ls.horizon,
        "orders": [{"cost": c, "capacity": u} for c, u in ls.orders],
        "demands": [{"period": t, "item": item, "amount": a}
                    for t, item, a in ls.demands],
        "holding": list(ls.holding),
    }


def load_lot_sizing(path) -> LotSizingInstance:
    return lot_sizing_from_dict(json.loads(Path(path).read_text("utf-8")))


def save_lot_sizing(ls: LotSizingInstance, path) -> None:
    Path(path).write_text(json.dumps(lot_sizing_to_dict(ls), indent=1) + "\n",
                          encoding="utf-8")


def _rational_str(x) -> str:
    return str(Fraction(x))


def solution_to_dict(solution: Solution) -> dict:
    assignment = [
        {"facility": i, "client": j, "fraction": _rational_str(x)}
        for (i, j), x in sorted(solution.assignment.entries.items())
        if x > 0
    ]
    return {
        "open": sorted(solution.open),
        "assignment": assignment,
        "cost": "inf" if is_inf(solution.total_cost)
                else _rational_str(solution.total_cost),
    }


def save_solution(solution: Solution, path) -> None:
    Path(path).write_text(json.dumps(solution_to_dict(solution), indent=1)
                          + "\n", encoding="utf-8")
