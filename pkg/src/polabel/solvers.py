"""Solver registry and side-configuration dispatch."""
from __future__ import annotations

from typing import Callable

from .foursided import solve_four_sided
from .geom import Instance, Port, Rect, Side, Site, Solution
from .onesided import OneSidedProblem, solve_one_sided, solve_two_sided_adjacent
from .threesided import solve_three_sided

Solver = Callable[..., "Solution | None"]


def turn(inst: Instance) -> Instance:
    """The instance turned a quarter clockwise: top ports go right, right go bottom.

    Ids are kept, so a solution of the turned instance maps back by its pairs.
    """
    b = inst.bounds
    sites = tuple(Site(s.y, -s.x, s.id) for s in inst.sites)
    # (x, y) -> (y, -x): a port's x becomes -y, its y becomes x
    ports = tuple(Port(Side((p.side + 1) % 4), -p.along if p.side.horizontal else p.along, p.id)
                  for p in inst.ports)
    return Instance(Rect(b.ymin, -b.xmax, b.ymax, -b.xmin), sites, ports)


def _one(inst: Instance, stats: dict | None = None) -> Solution:
    return solve_one_sided(OneSidedProblem.of(inst))


def _turned(inst: Instance, k: int, fn: Solver, stats: dict | None) -> Solution | None:
    work = inst
    for _ in range(k):
        work = turn(work)
    sol = fn(work, stats)
    return None if sol is None else Solution.from_pairs(inst, sol.pairs())


def solve_auto(inst: Instance, stats: dict | None = None) -> Solution | None:
    """Cheapest solver that handles the sides in use."""
    sides = inst.used_sides()
    if len(sides) <= 1:
        return _one(inst, stats)
    if len(sides) == 2 and (max(sides) - min(sides)) % 2 == 1:
        return solve_two_sided_adjacent(inst, stats)
    if len(sides) <= 3:
        # turn until the bottom side is free
        for k in range(4):
            if Side((Side.BOTTOM - k) % 4) not in sides:
                return _turned(inst, k, solve_three_sided, stats)
    return solve_four_sided(inst, stats)


SOLVERS: dict[str, Solver] = {
    "one": _one,
    "two": solve_two_sided_adjacent,
    "three": solve_three_sided,
    "four": solve_four_sided,
    "auto": solve_auto,
}

_DEFAULT_SIDES = {
    "one": (1, 0, 0, 0),
    "two": (1, 1, 0, 0),
    "three": (1, 1, 0, 1),
    "four": (1, 1, 1, 1),
    "auto": (1, 1, 1, 1),
}


def default_sides(name: str) -> tuple[int, int, int, int]:
    """Port shares (top, right, bottom, left) a registered solver is benchmarked on."""
    return _DEFAULT_SIDES[name]
