"""Three-sided labelling: ports on the left, top and right sides only.

A feasible labelling can be cut by a monotone curve that starts on the top
side, runs down to a grid node, turns right and then drops to the bottom side.
The part left of the curve is L-shaped, the part right of it is a Γ-shape
whose lower-left corner is a forbidden rectangle.  Grid nodes sit at the
centres of grid cells (half-integer coordinates), so the curve never touches a
site or a port.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .corridor import solve_corridor
from .geom import Instance, Leader, Port, Rect, Side, Site, Solution, WrongSideConfiguration


class GridNode(NamedTuple):
    x: Fraction
    y: Fraction


def _check_sides(inst: Instance) -> None:
    if any(p.side == Side.BOTTOM for p in inst.ports):
        raise WrongSideConfiguration("three-sided solver takes no bottom ports")


def _lines(inst: Instance) -> tuple[list[int], list[int]]:
    b = inst.bounds
    xs = {b.xmin, b.xmax} | {s.x for s in inst.sites}
    ys = {b.ymin, b.ymax} | {s.y for s in inst.sites}
    for p in inst.ports:
        (xs if p.side.horizontal else ys).add(p.along)
    return sorted(xs), sorted(ys)


def _mids(vals: list[int]) -> list[Fraction]:
    return [Fraction(a + c, 2) for a, c in zip(vals, vals[1:])]


def grid_nodes(inst: Instance) -> list[GridNode]:
    """Cell centres of the grid through every site and port, left to right, bottom to top."""
    xs, ys = _lines(inst)
    return [GridNode(x, y) for x in _mids(xs) for y in _mids(ys)]


@dataclass(frozen=True)
class Split:
    """A balanced cut: top at ``node.x``, down to ``node``, right to ``reach``, down."""

    node: GridNode
    reach: Fraction
    left_sites: frozenset[int]
    left_ports: frozenset[int]
    right_sites: frozenset[int]
    right_ports: frozenset[int]

    def forbidden(self, bounds: Rect) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """(xmin, ymin, xmax, ymax) of the corner the Γ-part may not enter."""
        return (self.node.x, Fraction(bounds.ymin), self.reach, self.node.y)


def _left_of(site: Site, node: GridNode, reach: Fraction) -> bool:
    return site.x < node.x or (site.x < reach and site.y < node.y)


def _make_split(inst: Instance, node: GridNode, reach: Fraction) -> Split:
    ls = frozenset(s.id for s in inst.sites if _left_of(s, node, reach))
    lp = frozenset(p.id for p in inst.ports
                   if p.side == Side.LEFT or (p.side == Side.TOP and p.along < node.x))
    return Split(node, reach, ls, lp,
                 frozenset(s.id for s in inst.sites) - ls, frozenset(p.id for p in inst.ports) - lp)


def balanced_split_at(inst: Instance, node: GridNode) -> Split | None:
    """The unique balanced cut through ``node``, or None.

    Moving the turn point right only ever adds sites to the left part, so the
    left count is strictly increasing over the distinct extensions and at most
    one of them balances.
    """
    _check_sides(inst)
    need = sum(1 for p in inst.ports if p.side == Side.LEFT or (p.side == Side.TOP and p.along < node.x))
    need -= sum(1 for s in inst.sites if s.x < node.x)
    below = sorted(s.x for s in inst.sites if s.x > node.x and s.y < node.y)
    if need < 0 or need > len(below):
        return None
    if need == 0:
        return _make_split(inst, node, node.x)
    xs, _ = _lines(inst)
    last = below[need - 1]
    nxt = xs[bisect_right(xs, last)]
    return _make_split(inst, node, Fraction(last + nxt, 2))


def extension_scan(inst: Instance, node: GridNode) -> list[Split]:
    """Every distinct balanced extension at ``node``, by trying each turn position."""
    xs, _ = _lines(inst)
    seen: dict[frozenset[int], Split] = {}
    for reach in [m for m in _mids(xs) if m >= node.x]:
        sp = _make_split(inst, node, reach)
        if len(sp.left_sites) == len(sp.left_ports):
            seen.setdefault(sp.left_sites, sp)
    return list(seen.values())


@dataclass(frozen=True)
class LState:
    """The part left of a split: left ports and the top ports before the cut."""

    inst: Instance
    split: Split


@dataclass(frozen=True)
class GammaState:
    """The part right of a split: right ports and the top ports after the cut."""

    inst: Instance
    split: Split


def region_obstacles(split: Split, bounds: Rect, part: str) -> list[Rect]:
    """Complement of one part, as rectangles in doubled coordinates.

    A leader of that part stays inside it iff it misses every open interior.
    """
    b = Rect(*(2 * v for v in bounds))
    gx, gy, r = int(2 * split.node.x), int(2 * split.node.y), int(2 * split.reach)
    if part == "L":
        out = [Rect(gx, gy, b.xmax, b.ymax), Rect(r, b.ymin, b.xmax, gy)]
    else:
        out = [Rect(b.xmin, b.ymin, gx, b.ymax), Rect(gx, b.ymin, r, gy)]
    return [o for o in out if o.xmin < o.xmax and o.ymin < o.ymax]


def doubled(inst: Instance, site_ids=None, port_ids=None) -> Instance:
    """The instance scaled by two, optionally restricted to some ids."""
    return Instance(
        Rect(*(2 * v for v in inst.bounds)),
        tuple(Site(2 * s.x, 2 * s.y, s.id) for s in inst.sites if site_ids is None or s.id in site_ids),
        tuple(Port(p.side, 2 * p.along, p.id) for p in inst.ports if port_ids is None or p.id in port_ids),
    )


def _solve_part(inst: Instance, split: Split, part: str) -> Solution | None:
    sites, ports = (split.left_sites, split.left_ports) if part == "L" else (split.right_sites, split.right_ports)
    sub = doubled(inst, sites, ports)
    sol = solve_corridor(sub, None, region_obstacles(split, inst.bounds, part))
    if sol is None:
        return None
    return Solution.from_pairs(inst, sol.pairs())


def solve_L(state: LState) -> Solution | None:
    return _solve_part(state.inst, state.split, "L")


def solve_Gamma(state: GammaState) -> Solution | None:
    return _solve_part(state.inst, state.split, "G")


def solve_split(inst: Instance, split: Split) -> Solution | None:
    """Both parts of a split solved independently and merged."""
    left = solve_L(LState(inst, split))
    if left is None:
        return None
    right = solve_Gamma(GammaState(inst, split))
    if right is None:
        return None
    return Solution(left.leaders + right.leaders)


def solve_three_sided(inst: Instance, stats: dict | None = None) -> Solution | None:
    """A crossing-free labelling for ports on left, top and right, or None."""
    _check_sides(inst)
    return solve_corridor(inst, stats)


def leaders_avoid(leaders: tuple[Leader, ...] | list[Leader], rect, bounds: Rect) -> bool:
    """No leader point lies in the open rectangle ``rect`` (any numeric type)."""
    x1, y1, x2, y2 = rect
    for ld in leaders:
        for (a, c) in ld.segments(bounds):
            if min(a.x, c.x) < x2 and max(a.x, c.x) > x1 and min(a.y, c.y) < y2 and max(a.y, c.y) > y1:
                return False
    return True


__all__ = [
    "GridNode", "Split", "LState", "GammaState", "grid_nodes", "balanced_split_at",
    "extension_scan", "solve_L", "solve_Gamma", "solve_split", "solve_three_sided",
    "region_obstacles", "doubled", "leaders_avoid",
]
