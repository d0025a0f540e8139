"""Four-sided labelling and the leader-pair subproblems of the corridor walk.

A subproblem is fixed by two placed leaders: the latest leader on the
top/right bank and the latest on the left/bottom bank.  Everything still
unlabelled lies beyond both of them.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .corridor import SCALE, Corridor, remaining_rects, solve_corridor
from .geom import (
    Instance,
    Leader,
    Point,
    Port,
    Rect,
    Side,
    Site,
    Solution,
    check_xy_separable,
    leader_for,
    leaders_cross,
)

KIND = {Side.TOP: "T", Side.RIGHT: "R", Side.BOTTOM: "B", Side.LEFT: "L"}


class RecoveredBoundary(NamedTuple):
    p: Point
    q: Point
    rect: Rect  # spanned by p and q; may be a segment
    degenerate: bool


def _closest_1d(a0, a1, b0, b1):
    """Smallest pair (u, v), u in [a0, a1], v in [b0, b1], minimizing |u - v|."""
    if a1 < b0:
        return a1, b0
    if b1 < a0:
        return a0, b1
    t = max(a0, b0)
    return t, t


def recover_boundary(first: Leader, second: Leader, bounds: Rect | None = None) -> RecoveredBoundary:
    """Closest pair of points p on ``first`` and q on ``second``.

    Exact squared distances; ties go to the smallest y, then the smallest x
    (for p, then for q).
    """
    bounds = bounds or Rect(-(1 << 62), -(1 << 62), 1 << 62, 1 << 62)
    best = None
    for s in first.segments(bounds):
        for t in second.segments(bounds):
            sx0, sx1 = sorted((s[0].x, s[1].x))
            sy0, sy1 = sorted((s[0].y, s[1].y))
            tx0, tx1 = sorted((t[0].x, t[1].x))
            ty0, ty1 = sorted((t[0].y, t[1].y))
            px, qx = _closest_1d(sx0, sx1, tx0, tx1)
            py, qy = _closest_1d(sy0, sy1, ty0, ty1)
            key = ((px - qx) ** 2 + (py - qy) ** 2, py, px, qy, qx)
            if best is None or key < best:
                best = key
    _, py, px, qy, qx = best
    rect = Rect(min(px, qx), min(py, qy), max(px, qx), max(py, qy))
    return RecoveredBoundary(Point(px, py), Point(qx, qy), rect, rect.xmin == rect.xmax or rect.ymin == rect.ymax)


@dataclass(frozen=True)
class FourState:
    """Leader (a, b) on the top/right bank and leader (c, d) on the left/bottom bank."""

    a: Port
    b: Site
    c: Port
    d: Site

    def leaders(self) -> tuple[Leader, Leader]:
        return leader_for(self.b, self.a), leader_for(self.d, self.c)


class FourSided:
    """The corridor walk of one instance, addressable by leader-pair states."""

    def __init__(self, inst: Instance):
        self.inst = inst
        b = inst.bounds
        ports = {"T": [], "R": [], "B": [], "L": []}
        self._port = {}
        for p in inst.ports:
            k = KIND[p.side]
            ports[k].append(p.along * SCALE)
            self._port[(k, p.along * SCALE)] = p
        self._site = {(s.x * SCALE, s.y * SCALE): s for s in inst.sites}
        self.box = (b.xmin * SCALE, b.xmax * SCALE, b.ymin * SCALE, b.ymax * SCALE)
        self.walk = Corridor(list(self._site), ports, self.box)

    def encode(self, state: FourState):
        if state.a.side not in (Side.TOP, Side.RIGHT) or state.c.side not in (Side.LEFT, Side.BOTTOM):
            raise ValueError("first leader must end on top or right, second on left or bottom")
        return tuple((KIND[port.side], (site.x * SCALE, site.y * SCALE), port.along * SCALE)
                     for port, site in ((state.a, state.b), (state.c, state.d)))

    def decode(self, leaders) -> list[Leader]:
        return [leader_for(self._site[s], self._port[(k, a)]) for k, s, a in leaders]

    def remaining(self, state: FourState) -> tuple[list[Site], list[Port]]:
        """Sites and ports beyond both leaders of a state."""
        p, q = self.encode(state)
        sites = [self._site[w] for w in self.walk.S.members(self.walk.remaining(p, q))]
        ports = [self._port[(k, a)] for k, al in self.walk.remaining_ports(p, q).items() for a in al]
        return sites, ports

    def region(self, state: FourState) -> list[Rect]:
        """The unclaimed region beyond both leaders, as open rectangles clipped to B."""
        p, q = self.encode(state)
        x1, x2, y1, y2 = self.box
        out = []
        for r in remaining_rects(p, q):
            c = (max(r[0], x1), max(r[2], y1), min(r[1], x2), min(r[3], y2))
            if c[0] < c[2] and c[1] < c[3]:
                out.append(Rect(*(Fraction(v, SCALE) for v in c)))
        return out

    def solve_T(self, state: FourState) -> Solution | None:
        """Labels for everything beyond a state's two leaders, or None."""
        p, q = self.encode(state)
        if p[1] not in self.walk.S.bit or q[1] not in self.walk.S.bit:
            raise ValueError("state uses an unknown site")
        if self.walk.remaining(p, q).bit_count() != self.walk.nports(p, q):
            return None
        with _deep_recursion():
            if not self.walk.value(p, q):
                return None
            return Solution(tuple(self.decode(self.walk.leaders((p, q)))))


def solve_T(inst: Instance, state: FourState) -> Solution | None:
    return FourSided(inst).solve_T(state)


class _deep_recursion:
    def __enter__(self):
        self.limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(self.limit, 20000))

    def __exit__(self, *exc):
        sys.setrecursionlimit(self.limit)


def solve_four_sided(inst: Instance, stats: dict | None = None) -> Solution | None:
    """A crossing-free labelling for ports on any sides, or None.

    Feasibility is decided by the corridor walk.  Its witness is kept when
    some point splits it into four separable corner parts; otherwise it is
    rebuilt into one that splits, by port swaps and then an exact search.
    If the search runs out of budget the walk's witness is returned and
    ``stats["partitioned"]`` is False.
    """
    sol = solve_corridor(inst, stats)
    if sol is None:
        return None
    if partition_point(inst, sol) is None:
        sol = swap_repair(inst, sol) or partitioned_search(inst, sol) or sol
    if stats is not None:
        stats["partitioned"] = partition_point(inst, sol) is not None
    return sol


_QUADRANTS = (
    (Side.TOP, Side.RIGHT),
    (Side.RIGHT, Side.BOTTOM),
    (Side.BOTTOM, Side.LEFT),
    (Side.LEFT, Side.TOP),
)


def partition_point(inst: Instance, sol: Solution) -> tuple[Fraction, Fraction] | None:
    """A cell centre splitting B into four corner rectangles, each holding only
    sites of its two sides' kinds and separable by a monotone staircase."""
    b = inst.bounds
    xs = sorted({b.xmin, b.xmax} | {s.x for s in inst.sites})
    ys = sorted({b.ymin, b.ymax} | {s.y for s in inst.sites})
    for x in (Fraction(u + v, 2) for u, v in zip(xs, xs[1:])):
        for y in (Fraction(u + v, 2) for u, v in zip(ys, ys[1:])):
            if _splits(b, sol, x, y):
                return (x, y)
    return None


def _splits(b: Rect, sol: Solution, x, y) -> bool:
    for i, (ka, kb) in enumerate(_QUADRANTS):
        right = i in (0, 1)
        up = i in (0, 3)
        rect = Rect(x if right else b.xmin, y if up else b.ymin, b.xmax if right else x, b.ymax if up else y)
        inside = [ld for ld in sol.leaders if (ld.site.x > x) == right and (ld.site.y > y) == up]
        if any(ld.port.side not in (ka, kb) for ld in inside):
            return False
        if not check_xy_separable(rect, inside, ka, kb):
            return False
    return True


_TR = frozenset((Side.TOP, Side.RIGHT))
_BL = frozenset((Side.BOTTOM, Side.LEFT))
_TL = frozenset((Side.TOP, Side.LEFT))
_RB = frozenset((Side.RIGHT, Side.BOTTOM))


def kinds_clash(s: Site, ks: Side, u: Site, ku: Side) -> bool:
    """Whether two labelled sites rule out every split point.

    A labelling splits iff top/right sites can be cut from bottom/left sites
    by a descending staircase and top/left from right/bottom by an ascending
    one; both reduce to forbidden dominance pairs.
    """
    for (a, ka), (b, kb) in (((s, ks), (u, ku)), ((u, ku), (s, ks))):
        if ka in _TR and kb in _BL and a.x < b.x and a.y < b.y:
            return True
        if ka in _TL and kb in _RB and a.x > b.x and a.y < b.y:
            return True
    return False


def _clashes(leaders: list[Leader], i: int) -> int:
    a = leaders[i]
    return sum(1 for j, b in enumerate(leaders)
               if j != i and kinds_clash(a.site, a.port.side, b.site, b.port.side))


def swap_repair(inst: Instance, sol: Solution, rounds: int = 200) -> Solution | None:
    """Swap ports between two leaders while that removes clashing pairs and
    keeps the labelling crossing-free; a splitting Solution or None."""
    b = inst.bounds
    lds = list(sol.leaders)
    for _ in range(rounds):
        bad = [i for i in range(len(lds)) if _clashes(lds, i)]
        if not bad:
            return Solution(tuple(lds))
        best = None
        for i in bad:
            for j in range(len(lds)):
                if j == i or (j in bad and j < i):
                    continue
                before = _clashes(lds, i) + _clashes(lds, j)
                old = lds[i], lds[j]
                lds[i] = leader_for(old[0].site, old[1].port, b)
                lds[j] = leader_for(old[1].site, old[0].port, b)
                gain = before - _clashes(lds, i) - _clashes(lds, j)
                if gain > 0 and (best is None or gain > best[0]) and not _crosses_any(lds, (i, j), b):
                    best = (gain, i, j)
                lds[i], lds[j] = old
        if best is None:
            return None
        _, i, j = best
        lds[i], lds[j] = leader_for(lds[i].site, lds[j].port, b), leader_for(lds[j].site, lds[i].port, b)
    return None


def _crosses_any(lds: list[Leader], idx, bounds: Rect) -> bool:
    for i in idx:
        for j, other in enumerate(lds):
            if j != i and leaders_cross(lds[i], other, bounds):
                return True
    return False


class _OutOfBudget(Exception):
    pass


def _compatibility(inst: Instance, cands: list[Leader]) -> list[int]:
    """Bitmask per candidate leader of the candidates that can coexist with it:
    other site, other port, no shared point and no kind clash."""
    b = inst.bounds
    n = len(cands)
    if not n:
        return []
    boxes = np.array([[(min(p.x, q.x), min(p.y, q.y), max(p.x, q.x), max(p.y, q.y))
                       for p, q in ld.segments(b)] for ld in cands], dtype=np.int64)
    bad = np.zeros((n, n), dtype=bool)
    for i in (0, 1):
        for j in (0, 1):
            u, v = boxes[:, i, :], boxes[:, j, :]
            bad |= ((u[:, None, 0] <= v[None, :, 2]) & (v[None, :, 0] <= u[:, None, 2])
                    & (u[:, None, 1] <= v[None, :, 3]) & (v[None, :, 1] <= u[:, None, 3]))
    sx = np.array([ld.site.x for ld in cands])
    sy = np.array([ld.site.y for ld in cands])
    side = np.array([int(ld.port.side) for ld in cands])
    sid = np.array([ld.site.id for ld in cands])
    pid = np.array([ld.port.id for ld in cands])
    tr = np.isin(side, [int(k) for k in _TR])
    tl = np.isin(side, [int(k) for k in _TL])
    dom = (sx[:, None] < sx[None, :]) & (sy[:, None] < sy[None, :])  # row below-left of column
    rdom = (sx[:, None] > sx[None, :]) & (sy[:, None] < sy[None, :])  # row below-right of column
    clash = tr[:, None] & ~tr[None, :] & dom
    clash |= tl[:, None] & ~tl[None, :] & rdom
    bad |= clash | clash.T
    bad |= (sid[:, None] == sid[None, :]) | (pid[:, None] == pid[None, :])
    packed = np.packbits(~bad, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def partitioned_search(inst: Instance, hint: Solution | None = None, budget: int = 20_000) -> Solution | None:
    """Backtracking search over labellings that split at some point.

    With a ``hint`` the search first frees only the hint's clashing leaders
    and their nearest neighbours, keeping the rest fixed, and doubles the free
    set until everything is free.  Exact when the last round finishes; None
    when no such labelling exists or the rounds run out of nodes (``budget``
    each, ten times that for the last).
    """
    b = inst.bounds
    cands = [leader_for(s, p, b) for s in inst.sites for p in inst.ports
             if (s.x if p.side.horizontal else s.y) != p.along]
    ok = _compatibility(inst, cands)
    of_site: dict[int, int] = {}
    for i, ld in enumerate(cands):
        of_site[ld.site.id] = of_site.get(ld.site.id, 0) | (1 << i)
    full = (1 << len(cands)) - 1
    if hint is None:
        return _search(cands, ok, of_site, full, sorted(of_site), set(), budget)
    index = {(ld.site.id, ld.port.id): i for i, ld in enumerate(cands)}
    held = {ld.site.id: index[(ld.site.id, ld.port.id)] for ld in hint.leaders}
    lds = list(hint.leaders)
    bad = [lds[i].site for i in range(len(lds)) if _clashes(lds, i)]
    sites = sorted(inst.sites, key=lambda s: (min((max(abs(s.x - u.x), abs(s.y - u.y)) for u in bad), default=0), s.id))
    size = max(len(bad), 1)
    while True:
        size = min(size, len(sites))
        free = sorted(s.id for s in sites[:size])
        avail = full
        for s in sites[size:]:
            avail &= ok[held[s.id]]
        last = size == len(sites)
        found = _search(cands, ok, of_site, avail, free, set(held.values()), budget * (10 if last else 1))
        if found is not None:
            fixed = tuple(cands[held[s.id]] for s in sites[size:])
            return Solution(fixed + found.leaders)
        if last:
            return None
        size *= 2


def _search(cands, ok, of_site, avail, free, first, budget) -> Solution | None:
    chosen: list[int] = []
    nodes = 0

    def rec(avail, free):
        nonlocal nodes
        if not free:
            return True
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        opts = {s: avail & of_site[s] for s in free}
        if not _coverable(opts, cands):
            return False
        site = min(free, key=lambda s: (opts[s].bit_count(), s))
        rest = [s for s in free if s != site]
        idx = _bits(opts[site])
        idx.sort(key=lambda i: i not in first)
        for i in idx:
            chosen.append(i)
            if rec(avail & ok[i], rest):
                return True
            chosen.pop()
        return False

    try:
        found = rec(avail, free)
    except _OutOfBudget:
        return None
    return Solution(tuple(cands[i] for i in chosen)) if found else None


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


def _coverable(opts: dict, cands: list[Leader]) -> bool:
    """Every free site can get its own port among its options."""
    sites = list(opts)
    if any(not opts[s] for s in sites):
        return False
    port_ix: dict = {}
    rows, cols = [], []
    for i, s in enumerate(sites):
        for c in _bits(opts[s]):
            rows.append(i)
            cols.append(port_ix.setdefault(cands[c].port.id, len(port_ix)))
    if len(port_ix) < len(sites):
        return False
    m = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(sites), len(port_ix)))
    return bool((maximum_bipartite_matching(m, perm_type="column") >= 0).all())
