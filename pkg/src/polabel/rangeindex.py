"""Range queries over sites and ports.

Counting uses a rank-space prefix table, so a query is four binary searches
and four lookups.  Slab arrays (sites strictly between two horizontal lines,
sorted by x) are built on first use and kept.
"""
from __future__ import annotations

import enum
from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .geom import Instance, Port, Rect, Side, Site


class What(enum.Enum):
    SITES = "sites"
    PORTS = "ports"
    BOTH = "both"


class Counts(NamedTuple):
    sites: int
    ports: int


class UnbalancedRegion(ValueError):
    pass


class _Prefix:
    """Strict-interior point counts for axis-parallel rectangles."""

    def __init__(self, pts):
        self.xs = sorted({p[0] for p in pts})
        self.ys = sorted({p[1] for p in pts})
        w, h = len(self.xs), len(self.ys)
        grid = [[0] * (h + 1) for _ in range(w + 1)]
        for x, y in pts:
            grid[bisect_left(self.xs, x) + 1][bisect_left(self.ys, y) + 1] += 1
        for i in range(1, w + 1):
            row, prev = grid[i], grid[i - 1]
            run = 0
            for j in range(1, h + 1):
                run += row[j]
                row[j] = prev[j] + run
        self.table = grid

    def count(self, x1, y1, x2, y2) -> int:
        i1, i2 = bisect_right(self.xs, x1), bisect_left(self.xs, x2)
        j1, j2 = bisect_right(self.ys, y1), bisect_left(self.ys, y2)
        if i2 <= i1 or j2 <= j1:
            return 0
        t = self.table
        return t[i2][j2] - t[i1][j2] - t[i2][j1] + t[i1][j1]


class RangeIndex:
    def __init__(self, inst: Instance):
        self.inst = inst
        self.sites = tuple(inst.sites)
        self._sites = _Prefix([(s.x, s.y) for s in inst.sites])
        self._ports = _Prefix([tuple(p.location(inst.bounds)) for p in inst.ports])
        self.by_side = {side: sorted(inst.ports_on(side), key=lambda p: p.along) for side in Side}
        self.slab = lru_cache(maxsize=None)(self._slab)

    def _slab(self, lo, hi) -> tuple[Site, ...]:
        """Sites with lo < y < hi in increasing x."""
        return tuple(sorted((s for s in self.sites if lo < s.y < hi), key=lambda s: s.x))

    def rightmost_in(self, lo, hi, xmax) -> Site | None:
        """Rightmost site of the slab (lo, hi) with x < xmax."""
        row = self.slab(lo, hi)
        k = bisect_left([s.x for s in row], xmax)
        return row[k - 1] if k else None


def count_in_rect(idx: RangeIndex, rect, what: What = What.BOTH) -> Counts:
    """Sites and port locations strictly inside ``rect`` = (xmin, ymin, xmax, ymax)."""
    x1, y1, x2, y2 = rect
    s = idx._sites.count(x1, y1, x2, y2) if what in (What.SITES, What.BOTH) else 0
    p = idx._ports.count(x1, y1, x2, y2) if what in (What.PORTS, What.BOTH) else 0
    return Counts(s, p)


@dataclass(frozen=True)
class LShape:
    """Left part of a three-sided cut above a left port.

    The region is ``y > floor`` and either ``x < node_x`` or ``x < reach`` with
    ``y < node_y``.  Its ports are the left ports above ``floor`` and the top
    ports left of ``node_x``.  ``floor`` at the bottom of the box stands for
    the dummy port in the lower-left corner.
    """

    node_x: object
    node_y: object
    reach: object
    floor: object

    def contains(self, x, y) -> bool:
        return y > self.floor and (x < self.node_x or (x < self.reach and y < self.node_y))


def region_sites(idx: RangeIndex, state: LShape) -> list[Site]:
    return [s for s in idx.sites if state.contains(s.x, s.y)]


def region_ports(idx: RangeIndex, state: LShape) -> tuple[list[Port], list[Port]]:
    """(left ports bottom-up, top ports left to right) of the subproblem."""
    lefts = [p for p in idx.by_side[Side.LEFT] if p.along > state.floor]
    tops = [p for p in idx.by_side[Side.TOP] if p.along < state.node_x]
    return lefts, tops


def find_balancing_site(idx: RangeIndex, state: LShape) -> Site | None:
    """Rightmost site of the subproblem, from at most two slab searches."""
    lefts, tops = region_ports(idx, state)
    n = 0
    if state.node_y > state.floor:
        n += count_in_rect(idx, (-_BIG, state.floor, state.reach, state.node_y), What.SITES).sites
        n += count_in_rect(idx, (-_BIG, state.node_y, state.node_x, _BIG), What.SITES).sites
    else:
        n += count_in_rect(idx, (-_BIG, state.floor, state.node_x, _BIG), What.SITES).sites
    if n != len(lefts) + len(tops):
        raise UnbalancedRegion(f"{n} sites against {len(lefts) + len(tops)} ports")
    cands = []
    if state.node_y > state.floor:
        cands.append(idx.rightmost_in(state.floor, state.node_y, state.reach))
        cands.append(idx.rightmost_in(state.node_y, _BIG, state.node_x))
    else:
        cands.append(idx.rightmost_in(state.floor, _BIG, state.node_x))
    cands = [c for c in cands if c is not None]
    return max(cands, key=lambda s: s.x) if cands else None


def matching_port_lookup(idx: RangeIndex, p: Site, state: LShape) -> Port | None:
    """Port for the rightmost site ``p`` that keeps both sides balanced.

    Prefers the lowest balancing left port; otherwise the balancing top port
    closest to ``p``.
    """
    lefts, tops = region_ports(idx, state)
    others = [s for s in region_sites(idx, state) if s != p]
    for k, port in enumerate(lefts):
        if port.along == p.y:
            continue
        below = sum(1 for s in others if s.y < port.along)
        if below == k:
            return port
    for k in range(len(tops) - 1, -1, -1):
        port = tops[k]
        if port.along == p.x:
            continue
        beyond = sum(1 for s in others if s.x > port.along and s.y > p.y)
        if beyond == len(tops) - 1 - k:
            return port
    return None


_BIG = 1 << 62


class CandidateRect(NamedTuple):
    rect: tuple  # (xmin, ymin, xmax, ymax)
    left: str  # what stops the left side: "site <id>" or "boundary"
    top: str


def candidate_rects(idx: RangeIndex, corner, bounds) -> list[CandidateRect]:
    """Maximal empty rectangles whose lower-right corner is ``corner``.

    They grow up and to the left inside ``bounds``; the sites up-left of the
    corner form a staircase and each step gives one rectangle.  Ordered from
    the tallest (narrowest) to the widest.
    """
    cx, cy = corner
    b = Rect(*bounds)
    if not (b.xmin < cx <= b.xmax and b.ymin <= cy < b.ymax):
        return []
    out = []
    top, top_by = b.ymax, "boundary"
    for s in sorted((s for s in idx.sites if b.xmin < s.x < cx and cy < s.y < b.ymax), key=lambda s: -s.x):
        if s.y < top:
            out.append(CandidateRect((s.x, cy, cx, top), f"site {s.id}", top_by))
            top, top_by = s.y, f"site {s.id}"
    out.append(CandidateRect((b.xmin, cy, cx, top), "boundary", top_by))
    return out
