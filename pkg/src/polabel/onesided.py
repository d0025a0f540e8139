"""One-sided and adjacent two-sided labelling.

One-sided problems are solved in a common frame where the ports are on the
top side: points map to ``(u, v)`` with ``u`` the coordinate along the side
and ``v`` decreasing with the distance from it.  In that frame the lowest
site always has a port that leaves equally many sites and ports on each side
of its leader, which gives a constructive solution for any balanced input.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .corridor import one_sided_exact, solve_corridor, top_matching
from .geom import (
    Instance,
    Leader,
    Point,
    Port,
    Rect,
    Side,
    Site,
    Solution,
    WrongSideConfiguration,
    leader_for,
    leaders_cross,
)


class UnbalancedInput(ValueError):
    pass


def to_top_frame(side: Side, x: int, y: int) -> tuple[int, int]:
    if side == Side.TOP:
        return (x, y)
    if side == Side.BOTTOM:
        return (x, -y)
    if side == Side.LEFT:
        return (y, -x)
    return (y, x)


@dataclass(frozen=True)
class OneSidedProblem:
    """Sites in ``region`` and ports on one of its sides.

    ``pinned`` leaders are part of every solution (the constrained variant);
    their sites and ports must also be listed.
    """

    region: Rect
    side: Side
    sites: tuple[Site, ...]
    ports: tuple[Port, ...]
    pinned: tuple[Leader, ...] = ()

    def __post_init__(self) -> None:
        if any(p.side != self.side for p in self.ports):
            raise WrongSideConfiguration("one-sided problem with ports on several sides")

    @classmethod
    def of(cls, inst: Instance, pinned: Sequence[Leader] = ()) -> "OneSidedProblem":
        sides = inst.used_sides()
        if len(sides) > 1:
            raise WrongSideConfiguration(f"ports on {len(sides)} sides")
        side = next(iter(sides), Side.TOP)
        return cls(inst.bounds, side, inst.sites, inst.ports, tuple(pinned))

    def instance(self) -> Instance:
        return Instance(self.region, self.sites, self.ports)


def _framed(side: Side, sites, ports):
    fs = {to_top_frame(side, s.x, s.y): s for s in sites}
    fp = {p.along: p for p in ports}
    return fs, fp


def solve_one_sided(p: OneSidedProblem) -> Solution:
    """Always succeeds on balanced input."""
    if len(p.sites) != len(p.ports):
        raise UnbalancedInput(f"{len(p.sites)} sites, {len(p.ports)} ports")
    fs, fp = _framed(p.side, p.sites, p.ports)
    pairs = top_matching(list(fs), list(fp))
    return Solution(tuple(leader_for(fs[w], fp[x]) for w, x in pairs))


def solve_one_sided_constrained(p: OneSidedProblem) -> Solution | None:
    """A solution containing every pinned leader, or None.

    The free part is searched exactly: the site farthest from the side splits
    the rest into two independent strips for each balancing port it may use.
    """
    if len(p.sites) != len(p.ports):
        raise UnbalancedInput(f"{len(p.sites)} sites, {len(p.ports)} ports")
    pinned = list(p.pinned)
    for i in range(len(pinned)):
        for j in range(i + 1, len(pinned)):
            if leaders_cross(pinned[i], pinned[j], p.region):
                return None
    used_s = {ld.site.id for ld in pinned}
    used_p = {ld.port.id for ld in pinned}
    fs, fp = _framed(p.side, [s for s in p.sites if s.id not in used_s], [q for q in p.ports if q.id not in used_p])

    def allowed(w, x):
        ld = leader_for(fs[w], fp[x])
        return not any(leaders_cross(ld, other, p.region) for other in pinned)

    pairs = one_sided_exact(list(fs), list(fp), allowed)
    if pairs is None:
        return None
    return Solution(tuple(pinned) + tuple(leader_for(fs[w], fp[x]) for w, x in pairs))


@dataclass(frozen=True)
class LOneSided:
    """Top ports over an L-shaped region.

    The region is the bounding box of the sites and ports minus the block
    above and right of ``corner``; every port lies at or left of
    ``corner.x`` and sites right of it lie below ``corner.y``.
    """

    corner: Point
    sites: tuple[Site, ...]
    ports: tuple[Port, ...]


def reduce_L_one_sided(state: LOneSided) -> Solution:
    """Label an L-shaped top-port problem; always possible when balanced.

    Crossings among top-port leaders depend only on the relative order of the
    coordinates, so the protruding part can be solved as if pushed into the
    column; any one-sided solution of the bounding box already keeps out of
    the missing block.  A port exactly on the corner's vertical line first
    takes the topmost protruding site.
    """
    if len(state.sites) != len(state.ports):
        raise UnbalancedInput(f"{len(state.sites)} sites, {len(state.ports)} ports")
    cx, cy = state.corner
    if any(p.side != Side.TOP or p.along > cx for p in state.ports):
        raise WrongSideConfiguration("L-shaped problem expects top ports left of the corner")
    sites, ports = list(state.sites), list(state.ports)
    out: list[Leader] = []
    edge = [p for p in ports if p.along == cx]
    stick = [s for s in sites if s.x > cx]
    if edge and stick:
        top = max(stick, key=lambda s: s.y)
        out.append(leader_for(top, edge[0]))
        sites.remove(top)
        ports.remove(edge[0])
    fs, fp = _framed(Side.TOP, sites, ports)
    out.extend(leader_for(fs[w], fp[x]) for w, x in top_matching(list(fs), list(fp)))
    return Solution(tuple(out))


class GammaPocket(NamedTuple):
    """Sites of the open rectangle ``rect`` draining to left ports.

    The pocket's sites take the next left ports above ``rect.ymin`` in order;
    they can only do so inside the pocket if the last of them is below ``cap``.
    """

    rect: Rect
    cap: int


def gamma_one_sided_feasible(idx, pocket: GammaPocket) -> bool:
    from .rangeindex import What, count_in_rect

    r = pocket.rect
    c = count_in_rect(idx, r, What.SITES).sites
    if c == 0:
        return True
    lefts = [p.along for p in idx.by_side[Side.LEFT] if p.along > r.ymin]
    if c > len(lefts):
        return False
    return lefts[c - 1] < pocket.cap


def next_empty_rect_corner(a: Point, b: Point) -> Point:
    """Lower-left corner of the next empty rectangle: x from ``a``, y from ``b``."""
    return Point(a[0], b[1])


def _adjacent(sides) -> bool:
    if len(sides) < 2:
        return True
    a, b = sorted(sides)
    return len(sides) == 2 and (b - a) % 2 == 1


def solve_two_sided_adjacent(inst: Instance, stats: dict | None = None) -> Solution | None:
    """Ports on at most two adjacent sides."""
    sides = inst.used_sides()
    if not _adjacent(sides):
        raise WrongSideConfiguration(f"not two adjacent sides: {sorted(s.label for s in sides)}")
    return solve_corridor(inst, stats)
