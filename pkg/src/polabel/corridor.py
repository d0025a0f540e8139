"""Corridor walk: exact feasibility and witnesses for po-leader instances.

Any crossing-free labelling can be split by a monotone corridor that runs from
the bottom-right corner to the top-left corner of the box, with top and right
leaders on one bank and left and bottom leaders on the other.  The walk grows
the two banks one leader at a time.  Consecutive bank leaders of the same kind
enclose a one-sided face; where a bank switches kind it closes off a corner
pocket, which is solved as a two-sided walk in its own sub-box with the bank
leaders as obstacles.

Leaders here are plain tuples ``(kind, (x, y), along)`` with kind one of
``"T" "R" "B" "L"``.  Callers scale coordinates by 4 so that the sentinel
leaders can sit strictly between grid lines.
"""
from __future__ import annotations

import sys
from bisect import bisect_left, bisect_right
from functools import lru_cache

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

INF = 1 << 60

# Signed axis maps (swap, sx, sy): (x, y) -> (sx*y, sy*x) if swap else (sx*x, sy*y).


def pmap(f, p):
    sw, sx, sy = f
    return (sx * p[1], sy * p[0]) if sw else (sx * p[0], sy * p[1])


def pinv(f):
    sw, sx, sy = f
    return (True, sy, sx) if sw else f


def rmap(f, r):
    a = pmap(f, (r[0], r[2]))
    b = pmap(f, (r[1], r[3]))
    return (min(a[0], b[0]), max(a[0], b[0]), min(a[1], b[1]), max(a[1], b[1]))


# Per kind: map into the top-port frame, whether old/new trade roles there,
# and the sign applied to the port coordinate.
CANON = {
    "T": ((False, 1, 1), False, 1),
    "L": ((True, -1, -1), False, -1),
    "R": ((True, 1, 1), True, 1),
    "B": ((False, -1, -1), True, -1),
}


def corner(ld):
    k, s, a = ld
    if k == "T":
        return (min(s[0], a), s[1])
    if k == "R":
        return (s[0], min(s[1], a))
    if k == "L":
        return (s[0], max(s[1], a))
    return (max(s[0], a), s[1])


def ahead(ld):
    """Open rectangles (x1, x2, y1, y2) still unclaimed past a bank leader."""
    k, s, a = ld
    if k == "T":
        return [(-INF, a, s[1], INF)]
    if k == "L":
        return [(-INF, s[0], a, INF)]
    if k == "R":
        return [(s[0], INF, a, INF), (-INF, s[0], min(s[1], a), INF)]
    return [(-INF, a, -INF, s[1]), (-INF, max(s[0], a), s[1], INF)]


def _clip(rects, box):
    out = []
    for r in rects:
        c = (max(r[0], box[0]), min(r[1], box[1]), max(r[2], box[2]), min(r[3], box[3]))
        if c[0] < c[1] and c[2] < c[3]:
            out.append(c)
    return out


def remaining_rects(p, q):
    k, m = corner(p), corner(q)
    if k[0] < m[0]:
        return (ahead(p) + _clip(ahead(q), (-INF, k[0], -INF, INF))
                + _clip(ahead(q), (-INF, INF, -INF, m[1])))
    return (ahead(q) + _clip(ahead(p), (-INF, INF, m[1], INF))
            + _clip(ahead(p), (k[0], INF, -INF, INF)))


def top_step(u, t, u2, t2):
    """Face between top leaders (u, t) and a later (u2, t2), in the top frame.

    Returns (face rects, y below which face sites are constrained, x bound those
    sites' ports must exceed, open port interval) or None if the step is invalid.
    """
    if not (max(u2[0], t2) < t and min(u2[0], t2) < min(u[0], t) and u2[1] > u[1]):
        return None
    face = [(t2, t, u2[1], INF)]
    if t > u[0]:
        face.append((u[0], t, u[1], u2[1]))
    return face, u2[1], max(u[0], u2[0]), (t2, t)


def segments(ld, box):
    k, s, a = ld
    if k == "T":
        b, e = (a, s[1]), (a, box[3])
    elif k == "B":
        b, e = (a, s[1]), (a, box[2])
    elif k == "L":
        b, e = (s[0], a), (box[0], a)
    else:
        b, e = (s[0], a), (box[1], a)
    return ((s, b), (b, e))


def _touch(a, b):
    (p1, p2), (q1, q2) = a, b
    return (min(p1[0], p2[0]) <= max(q1[0], q2[0]) and min(q1[0], q2[0]) <= max(p1[0], p2[0])
            and min(p1[1], p2[1]) <= max(q1[1], q2[1]) and min(q1[1], q2[1]) <= max(p1[1], p2[1]))


def _seg_in_rect(sg, r):
    (a, b) = sg
    return (min(a[0], b[0]) < r[1] and max(a[0], b[0]) > r[0]
            and min(a[1], b[1]) < r[3] and max(a[1], b[1]) > r[2])


def hits(ld, obstacles, box):
    for sg in segments(ld, box):
        for kind, o in obstacles:
            if kind == "seg":
                if _touch(sg, o):
                    return True
            elif _seg_in_rect(sg, o):
                return True
    return False


def _obstacle_meets(rects, obstacles):
    for kind, o in obstacles:
        for r in rects:
            if kind == "seg":
                if _seg_in_rect(o, r) or any(r[0] < p[0] < r[1] and r[2] < p[1] < r[3] for p in o):
                    return True
            elif o[0] < r[1] and o[1] > r[0] and o[2] < r[3] and o[3] > r[2]:
                return True
    return False


class SiteMasks:
    """Point set with subsets as int bitmasks; bit i is the i-th point by x."""

    def __init__(self, pts):
        self.pts = sorted(pts)
        self.xs = [p[0] for p in self.pts]
        self.bit = {p: 1 << i for i, p in enumerate(self.pts)}
        order = sorted(range(len(self.pts)), key=lambda i: self.pts[i][1])
        self.ys = [self.pts[i][1] for i in order]
        pre = [0]
        for i in order:
            pre.append(pre[-1] | (1 << i))
        self.ypre = pre
        self.all = pre[-1]

    def rect(self, r):
        lo = bisect_right(self.xs, r[0])
        hi = bisect_left(self.xs, r[1])
        if lo >= hi:
            return 0
        m = ((1 << hi) - 1) ^ ((1 << lo) - 1)
        return m & self.ypre[bisect_left(self.ys, r[3])] & ~self.ypre[bisect_right(self.ys, r[2])]

    def union(self, rects):
        m = 0
        for r in rects:
            m |= self.rect(r)
        return m

    def members(self, m):
        out = []
        while m:
            low = m & -m
            out.append(self.pts[low.bit_length() - 1])
            m ^= low
        return out


class RectCounts:
    """Vectorized open-rectangle site counts from a 2D prefix-sum table."""

    def __init__(self, pts):
        n = len(pts)
        self.xs = np.array(sorted(p[0] for p in pts), dtype=np.int64)
        self.ys = np.array(sorted(p[1] for p in pts), dtype=np.int64)
        grid = np.zeros((n + 1, n + 1), dtype=np.int32)
        if n:
            xi = np.searchsorted(self.xs, [p[0] for p in pts])
            yi = np.searchsorted(self.ys, [p[1] for p in pts])
            grid[xi + 1, yi + 1] = 1
        self.table = grid.cumsum(0).cumsum(1)

    def count(self, r):
        i1 = np.searchsorted(self.xs, r[0], "right")
        i2 = np.maximum(np.searchsorted(self.xs, r[1], "left"), i1)
        j1 = np.searchsorted(self.ys, r[2], "right")
        j2 = np.maximum(np.searchsorted(self.ys, r[3], "left"), j1)
        t = self.table
        return t[i2, j2] - t[i1, j2] - t[i2, j1] + t[i1, j1]


def _meet(r, s):
    return (np.maximum(r[0], s[0]), np.minimum(r[1], s[1]),
            np.maximum(r[2], s[2]), np.minimum(r[3], s[3]))


def _ahead_vec(K, a, sx, sy):
    if K == "T":
        return [(-INF, a, sy, INF)]
    if K == "L":
        return [(-INF, sx, a, INF)]
    if K == "R":
        return [(sx, INF, a, INF), (-INF, sx, np.minimum(sy, a), INF)]
    return [(-INF, a, -INF, sy), (-INF, np.maximum(sx, a), sy, INF)]


def _segment_boxes(K, a, sx, sy, box):
    """Closed bounding boxes (x1, x2, y1, y2) of both leader segments, vectorized."""
    x1, x2, y1, y2 = box
    if K == "T":
        return [(np.minimum(sx, a), np.maximum(sx, a), sy, sy), (a, a, sy, y2)]
    if K == "B":
        return [(np.minimum(sx, a), np.maximum(sx, a), sy, sy), (a, a, y1, sy)]
    if K == "L":
        return [(sx, sx, np.minimum(sy, a), np.maximum(sy, a)), (x1, sx, a, a)]
    return [(sx, sx, np.minimum(sy, a), np.maximum(sy, a)), (sx, x2, a, a)]


def clear_grid(K, ports, sites, obstacles, box):
    """Boolean (port x site) grid: leader avoids every obstacle and is not degenerate."""
    a = np.array(ports, dtype=np.int64)[:, None]
    sx = np.array([w[0] for w in sites], dtype=np.int64)[None, :]
    sy = np.array([w[1] for w in sites], dtype=np.int64)[None, :]
    ok = (sx != a) if K in "TB" else (sy != a)
    for sb in _segment_boxes(K, a, sx, sy, box):
        for kind, o in obstacles:
            if kind == "seg":
                (p1, p2) = o
                ox1, ox2 = min(p1[0], p2[0]), max(p1[0], p2[0])
                oy1, oy2 = min(p1[1], p2[1]), max(p1[1], p2[1])
                ok &= ~((sb[0] <= ox2) & (ox1 <= sb[1]) & (sb[2] <= oy2) & (oy1 <= sb[3]))
            else:
                ok &= ~((sb[0] < o[1]) & (sb[1] > o[0]) & (sb[2] < o[3]) & (sb[3] > o[2]))
    return ok


def perfectly_matchable(grids):
    """Whether the union of (port x site) grids admits a matching covering every site."""
    m = np.concatenate(grids, axis=0) if grids else np.zeros((0, 0), dtype=bool)
    if m.shape[1] == 0:
        return True
    if m.shape[0] < m.shape[1]:
        return False
    match = maximum_bipartite_matching(csr_matrix(m.T.astype(np.int8)), perm_type="column")
    return bool((match >= 0).all())


VECTOR_MIN = 48  # candidate grids smaller than this stay in plain Python
PRUNE_MIN = 6  # smaller remainders are cheaper to search than to pre-check


class Corridor:
    def __init__(self, sites, ports, box, pkinds=("T", "R"), qkinds=("L", "B"), obstacles=()):
        self.S = SiteMasks(sites)
        self._counts = None
        self.ports = {k: sorted(ports.get(k, ())) for k in "TRBL"}
        self.box = box
        self.pkinds, self.qkinds = frozenset(pkinds), frozenset(qkinds)
        self.obstacles = tuple(obstacles)
        x1, x2, y1, y2 = box
        self.p0 = ("R", (x2 + 2, y1 - 2), y1 - 1) if "R" in self.pkinds else ("T", (x2 + 1, y1 - 2), x2)
        self.q0 = ("B", (x2 + 3, y1 - 3), x2 + 1) if "B" in self.qkinds else ("L", (x2 + 1, y1 - 2), y1 - 1)
        self.p_end = ("T", (x1 - 2, y2 + 2), x1 - 1)
        self.q_end = ("L", (x1 - 3, y2 + 3), y2 + 1)
        self.sentinels = frozenset((self.p0, self.q0, self.p_end, self.q_end))
        self.memo: dict = {}
        self.pockets: dict = {}
        self._rem: dict = {}

    # -- bookkeeping -------------------------------------------------------

    def nports(self, p, q):
        P = self.ports
        if p[0] == "R":
            n = len(P["R"]) - bisect_right(P["R"], p[2]) + len(P["T"])
        else:
            n = bisect_left(P["T"], p[2])
        if q[0] == "B":
            n += bisect_left(P["B"], q[2]) + len(P["L"])
        else:
            n += len(P["L"]) - bisect_right(P["L"], q[2])
        return n

    def remaining(self, p, q):
        key = (p, q)
        m = self._rem.get(key)
        if m is None:
            bit = self.S.bit
            m = self.S.union(remaining_rects(p, q)) & ~(bit.get(p[1], 0) | bit.get(q[1], 0))
            self._rem[key] = m
        return m

    def remaining_ports(self, p, q):
        P = self.ports
        out = {}
        if p[0] == "R":
            out["R"] = P["R"][bisect_right(P["R"], p[2]):]
            out["T"] = P["T"]
        else:
            out["T"] = P["T"][:bisect_left(P["T"], p[2])]
        if q[0] == "B":
            out["B"] = P["B"][:bisect_left(P["B"], q[2])]
            out["L"] = P["L"]
        else:
            out["L"] = P["L"][bisect_right(P["L"], q[2]):]
        return out

    def _matchable(self, p, q, rem):
        """Necessary condition: remaining sites can be matched to remaining ports
        by leaders that avoid the obstacles and the two current bank leaders."""
        obstacles = list(self.obstacles)
        for ld in (p, q):
            if ld not in self.sentinels:
                obstacles.extend(("seg", sg) for sg in segments(ld, self.box))
        sites = self.S.members(rem)
        grids = [clear_grid(k, ports, sites, obstacles, self.box)
                 for k, ports in self.remaining_ports(p, q).items() if ports]
        return perfectly_matchable(grids)

    def memo_size(self):
        return len(self.memo) + sum(c.memo_size() for c, _, _ in filter(None, self.pockets.values()))

    # -- search ------------------------------------------------------------

    def feasible(self):
        if self.remaining(self.p0, self.q0).bit_count() != self.nports(self.p0, self.q0):
            return False
        return self.value(self.p0, self.q0)

    def _moves(self, p, q, side, rem):
        """Next bank leaders on one side that keep the remainder balanced.

        Yields (new leader, remainder mask after the move).
        """
        S = self.S
        k, m = corner(p), corner(q)
        if side == "P":
            me, first, second, end = p, "R", "T", self.p_end
            kinds = self.pkinds
        else:
            me, first, second, end = q, "B", "L", self.q_end
            kinds = self.qkinds
        if me == end:
            return
        for K in (first, second):
            if K not in kinds or (K == first and me[0] != first):
                continue
            ports = self.ports[K]
            if not ports:
                continue
            if K == "T":
                base = rem & S.rect((-INF, INF, m[1], INF))
            elif K == "R":
                base = rem & S.rect((-INF, m[0], m[1], INF))
            else:
                base = rem & S.rect((-INF, k[0], -INF, INF))
            if not base:
                continue
            sites = S.members(base)
            if len(sites) * len(ports) >= VECTOR_MIN:
                found = self._vector_moves(p, q, side, K, sites, k, m)
            else:
                found = ((K, s_, a) for a in ports for s_ in sites if self._corner_ok(side, K, s_, a, k, m))
            for new in found:
                np_, nq = (new, q) if side == "P" else (p, new)
                rem2 = self.remaining(np_, nq)
                if rem2.bit_count() == self.nports(np_, nq) and not rem2 & ~rem:
                    yield new, rem2
        np_, nq = (end, q) if side == "P" else (p, end)
        if corner(end)[0] < (m[0] if side == "P" else k[0]):
            rem2 = self.remaining(np_, nq)
            if rem2.bit_count() == self.nports(np_, nq) and not rem2 & ~rem:
                yield end, rem2

    def _length(self, ld):
        if ld in self.sentinels:
            return INF
        k, (x, y), a = ld
        x1, x2, y1, y2 = self.box
        if k == "T":
            return abs(x - a) + y2 - y
        if k == "B":
            return abs(x - a) + y - y1
        if k == "L":
            return abs(y - a) + x - x1
        return abs(y - a) + x2 - x

    @staticmethod
    def _corner_ok(side, K, s, a, k, m):
        if K == "T":
            return s[1] > m[1] and min(s[0], a) < m[0]
        if K == "R":
            return s[0] < m[0] and min(s[1], a) > m[1]
        if K == "L":
            return s[0] < k[0]
        return max(s[0], a) < k[0]

    def _vector_moves(self, p, q, side, K, sites, k, m):
        """Corner-order and balance filter over a whole port x site grid."""
        if self._counts is None:
            self._counts = RectCounts(self.S.pts)
        C = self._counts
        ports = self.ports[K]
        a = np.array(ports, dtype=np.int64)[:, None]
        sx = np.array([w[0] for w in sites], dtype=np.int64)[None, :]
        sy = np.array([w[1] for w in sites], dtype=np.int64)[None, :]
        idx = np.arange(len(ports))[:, None]
        P = self.ports
        if side == "P":
            if K == "T":
                ok = (sy > m[1]) & (np.minimum(sx, a) < m[0])
                kx = np.minimum(sx, a)
                target = idx
            else:
                ok = (sx < m[0]) & (np.minimum(sy, a) > m[1])
                kx = sx
                target = len(P["R"]) - idx - 1 + len(P["T"])
            fixed = self.nports(self.p_end, q)  # bank-Q share of the port count
            lowq = [r for r in _clip(ahead(q), (-INF, INF, -INF, m[1]))]
            zs = lowq + [(z[0], np.minimum(z[1], kx), max(z[2], m[1]), z[3]) for z in ahead(q)]
        else:
            if K == "L":
                ok = sx < k[0]
                my = np.maximum(sy, a)
                target = len(P["L"]) - idx - 1
            else:
                ok = np.maximum(sx, a) < k[0]
                my = sy
                target = idx + len(P["L"])
            fixed = self.nports(p, self.q_end)
            zs = ([(w[0], w[1], np.maximum(w[2], my), w[3]) for w in ahead(p)]
                  + [(max(w[0], k[0]), w[1], w[2], np.minimum(w[3], my)) for w in ahead(p)])
        target = target + fixed
        aheads = _ahead_vec(K, a, sx, sy)
        total = 0
        for r in aheads:
            total = total + C.count(r)
        for z in zs:
            total = total + C.count(z)
        for r in aheads:
            for z in zs:
                total = total - C.count(_meet(r, z))
        ok = ok & (total == target)
        ii, jj = np.nonzero(ok)
        return [(K, sites[j], ports[i]) for i, j in zip(ii.tolist(), jj.tolist())]

    def value(self, p, q):
        key = (p, q)
        if key in self.memo:
            return self.memo[key] is not False
        self.memo[key] = False
        if p == self.p_end and q == self.q_end:
            self.memo[key] = ("done",)
            return True
        rem = self.remaining(p, q)
        if rem.bit_count() >= PRUNE_MIN and not self._matchable(p, q, rem):
            return False
        for side in ("P", "Q"):
            me = p if side == "P" else q
            for new, rem2 in self._moves(p, q, side, rem):
                np_, nq = (new, q) if side == "P" else (p, new)
                if self.memo.get((np_, nq), True) is False or not self._leader_ok(new):
                    continue
                if new[0] == me[0]:
                    step = self._same_kind(me, new)
                    if step is None:
                        continue
                    fmask, face = step
                    if fmask & ~rem or fmask & rem2:
                        continue
                    if rem.bit_count() != rem2.bit_count() + fmask.bit_count() + (new not in self.sentinels):
                        continue
                    if not self._face_ok(face):
                        continue
                    if self.value(np_, nq):
                        self.memo[key] = (side, new, "face", face)
                        return True
                else:
                    if not self._switch_ok(me, new):
                        continue
                    pocket = rem & ~rem2 & ~self.S.bit.get(new[1], 0)
                    if not self.value(np_, nq):
                        continue
                    if self._pocket_ok(side, me, new, pocket):
                        self.memo[key] = (side, new, "pocket", (side, me, new))
                        return True
        return False

    def _leader_ok(self, new):
        return new in self.sentinels or not self.obstacles or not hits(new, self.obstacles, self.box)

    def _switch_ok(self, me, new):
        if new in self.sentinels or me in self.sentinels:
            return True
        c2, cm = corner(new), corner(me)
        if not (c2[0] < cm[0] and c2[1] > cm[1]):
            return False
        return not any(_touch(a, b) for a in segments(me, self.box) for b in segments(new, self.box))

    # -- faces -------------------------------------------------------------

    def _same_kind(self, old, new):
        K = old[0]
        perm, swap, sg = CANON[K]
        uo, ao = pmap(perm, old[1]), sg * old[2]
        un, an = pmap(perm, new[1]), sg * new[2]
        r = top_step(un, an, uo, ao) if swap else top_step(uo, ao, un, an)
        if r is None:
            return None
        rects, ycut, bound, (lo, hi) = r
        inv = pinv(perm)
        frame_rects = [rmap(inv, x) for x in rects]
        fmask = self.S.union(frame_rects)
        fports = [sg * a for a in self.ports[K] if lo < sg * a < hi]
        if fmask.bit_count() != len(fports):
            return None
        fsites = tuple(pmap(perm, s) for s in self.S.members(fmask))
        exact = bool(self.obstacles) and _obstacle_meets(frame_rects, self.obstacles)
        return fmask, (K, fsites, tuple(sorted(fports)), ycut, bound, exact)

    def _face_ok(self, face):
        K, fsites, fports, ycut, bound, exact = face
        if not exact:
            return face_greedy(fsites, fports, ycut, bound) is not None
        return self._face_exact(face) is not None

    def _face_exact(self, face):
        K, fsites, fports, ycut, bound, _ = face
        perm, _, sg = CANON[K]
        inv = pinv(perm)
        obstacles, box = self.obstacles, self.box

        @lru_cache(maxsize=None)
        def allowed(w, x):
            if not (w[1] > ycut or x > bound):
                return False
            return not hits((K, pmap(inv, w), sg * x), obstacles, box)

        return one_sided_exact(fsites, fports, allowed)

    def _face_leaders(self, face):
        K, fsites, fports, ycut, bound, exact = face
        pairs = self._face_exact(face) if exact else face_greedy(fsites, fports, ycut, bound)
        perm, _, sg = CANON[K]
        inv = pinv(perm)
        return [(K, pmap(inv, w), sg * x) for w, x in pairs]

    # -- pockets -----------------------------------------------------------

    def _pocket_ok(self, side, me, new, pocket_mask):
        key = (side, me, new)
        if key not in self.pockets:
            self.pockets[key] = self._build_pocket(side, me, new, pocket_mask)
        return self.pockets[key] is not False

    def _pocket_corner(self, side, me, new):
        """Inner corner of the pocket a kind switch cuts off, plus the notch
        between the two leaders as obstacles; corner None if both are sentinels."""
        start = me in (self.p0, self.q0)
        end = new in (self.p_end, self.q_end)
        if start and end:
            return None, []
        if side == "P":
            if start:
                return (new[2], new[1][1]), []
            if end:
                return (me[1][0], me[2]), []
            t2, uy, vx, r = new[2], new[1][1], me[1][0], me[2]
            if t2 < vx and uy > r:
                return (t2, r), [("rect", (t2, vx, r, uy))]
            if t2 > vx and uy < r:
                return (vx, uy), [("rect", (vx, t2, uy, r))]
            return (min(t2, vx), min(uy, r)), []
        if start:
            return (new[1][0], new[2]), []
        if end:
            return (me[2], me[1][1]), []
        sx, l2, b, wy = new[1][0], new[2], me[2], me[1][1]
        if sx > b and l2 < wy:
            return (sx, wy), [("rect", (b, sx, l2, wy))]
        if sx < b and l2 > wy:
            return (b, l2), [("rect", (sx, b, wy, l2))]
        return (max(sx, b), max(l2, wy)), []

    def _build_pocket(self, side, me, new, pocket_mask):
        """A sub-walk for the corner region cut off by a bank's kind switch.

        Returns None for an empty pocket, False if infeasible, else
        (walk, frame, side).
        """
        X1, X2, Y1, Y2 = self.box
        P = self.ports
        start = me in (self.p0, self.q0)
        end = new in (self.p_end, self.q_end)
        psites = self.S.members(pocket_mask)
        at, obstacles = self._pocket_corner(side, me, new)
        if side == "P":
            tops = [t for t in P["T"] if end or t > new[2]]
            rights = [r for r in P["R"] if start or r > me[2]]
        else:
            bots = [b for b in P["B"] if start or b < me[2]]
            lefts = [l for l in P["L"] if end or l < new[2]]
        if at is None:
            left = (tops or rights) if side == "P" else (bots or lefts)
            return None if not psites and not left else False
        if side == "P":
            box = (at[0], X2, at[1], Y2)
            frame = (False, -1, 1)
            ports = {"T": [-t for t in tops], "L": list(rights)}
        else:
            box = (X1, at[0], Y1, at[1])
            frame = (True, 1, -1)
            ports = {"T": list(lefts), "L": [-b for b in bots]}
        npt = len(ports["T"]) + len(ports["L"])
        if len(psites) != npt:
            return False
        for ld in (me, new):
            if ld not in self.sentinels:
                obstacles.extend(("seg", sg) for sg in segments(ld, self.box))
        obstacles.extend(self.obstacles)
        mapped = []
        for kind, o in obstacles:
            if kind == "seg":
                mapped.append(("seg", (pmap(frame, o[0]), pmap(frame, o[1]))))
            else:
                mapped.append(("rect", rmap(frame, o)))
        walk = Corridor([pmap(frame, s) for s in psites], ports, rmap(frame, box),
                        ("T",), ("L",), mapped)
        if walk.S.pts:
            # cheap necessary condition before the exact walk
            grids = [clear_grid(k, walk.ports[k], walk.S.pts, walk.obstacles, walk.box)
                     for k in ("T", "L") if walk.ports[k]]
            if not perfectly_matchable(grids):
                return False
        if walk.remaining(walk.p0, walk.q0).bit_count() != npt or not walk.value(walk.p0, walk.q0):
            return False
        return walk, frame, side

    # -- witness -----------------------------------------------------------

    def leaders(self, start=None):
        """Leaders of the witness below a true state (default: the root)."""
        out = []
        p, q = start or (self.p0, self.q0)
        while (p, q) != (self.p_end, self.q_end):
            side, new, what, data = self.memo[(p, q)]
            if new not in self.sentinels:
                out.append(new)
            if what == "face":
                out.extend(self._face_leaders(data))
            else:
                out.extend(self._pocket_leaders(data))
            p, q = (new, q) if side == "P" else (p, new)
        return out

    def _pocket_leaders(self, key):
        pk = self.pockets[key]
        if pk is None:
            return []
        walk, frame, pside = pk
        back = pinv(frame)
        out = []
        for k, s, a in walk.leaders():
            if pside == "P":
                kind, along = ("T", -a) if k == "T" else ("R", a)
            else:
                kind, along = ("L", a) if k == "T" else ("B", -a)
            out.append((kind, pmap(back, s), along))
        return out


def face_greedy(sites, ports, ycut, bound):
    """Match a top-frame face, or None.

    Sites below ``ycut`` may only use ports right of ``bound``.  Those sites
    are taken bottom-up, each on the rightmost port that balances what lies to
    its left; whatever is split off to the right is an unconstrained one-sided
    problem.
    """
    if len(sites) != len(ports):
        return None
    ports = sorted(ports)
    step = sorted((w for w in sites if w[1] < ycut), key=lambda w: w[1])
    alive = sorted(sites)
    hi = INF
    pairs = []
    for s in step:
        if s[0] > hi:
            continue
        alive.remove(s)
        # rightmost port q < hi, q > bound, with as many live sites as ports left of it
        xs = [w[0] for w in alive]
        best = None
        i = 0
        for j, x in enumerate(ports):
            if x >= hi:
                break
            while i < len(xs) and xs[i] < x:
                i += 1
            if x > bound and i == j:
                best = j
        if best is None:
            return None
        q = ports[best]
        pairs.append((s, q))
        right = [w for w in alive if w[0] > q]
        alive = [w for w in alive if w[0] < q]
        rports = [x for x in ports if q < x < hi]
        pairs.extend(top_matching(right, rports))
        ports = ports[:best]
        hi = q
    pairs.extend(top_matching(alive, ports))
    return pairs


def top_matching(sites, ports):
    """Crossing-free matching of sites to top ports in an unconstrained strip.

    Always exists for balanced input: peel off the lowest site onto a port that
    leaves equally many sites and ports on its left.
    """
    out = []
    work = [(sorted(sites), sorted(ports))]
    while work:
        ss, pp = work.pop()
        if not ss:
            continue
        s = min(ss, key=lambda w: w[1])
        rest = [w for w in ss if w != s]
        i = 0
        for j, x in enumerate(pp):
            while i < len(rest) and rest[i][0] < x:
                i += 1
            if i == j:
                break
        else:
            raise ValueError("unbalanced one-sided strip")
        out.append((s, pp[j]))
        work.append((rest[:i], pp[:j]))
        work.append((rest[i:], pp[j + 1:]))
    return out


def one_sided_exact(sites, ports, allowed):
    """Matching for top ports where only some leaders are allowed, or None.

    ``allowed(site, x)`` vets the leader from site to the port at x.  The lowest
    site's leader splits the rest into independent left and right strips.
    """
    ports = tuple(sorted(ports))
    sites = tuple(sorted(sites))

    @lru_cache(maxsize=None)
    def rec(lo, hi, ymin):
        ss = [w for w in sites if lo < w[0] < hi and w[1] > ymin]
        pp = [x for x in ports if lo < x < hi]
        if len(ss) != len(pp):
            return None
        if not ss:
            return ()
        s = min(ss, key=lambda w: w[1])
        xs = [w[0] for w in ss if w != s]  # ss is sorted by x
        k = 0
        for j, x in enumerate(pp):
            while k < len(xs) and xs[k] < x:
                k += 1
            if k != j or not allowed(s, x):
                continue
            left = rec(lo, x, s[1])
            if left is None:
                continue
            right = rec(x, hi, s[1])
            if right is not None:
                return ((s, x),) + left + right
        return None

    out = rec(-INF, INF, -INF)
    return None if out is None else list(out)


SCALE = 4


def solve_corridor(inst, stats=None, obstacles=(), blockers=()):
    """Exact solver for any side configuration; returns a Solution or None.

    ``obstacles`` are Rects whose open interior no leader may meet and
    ``blockers`` are fixed Leaders that no leader may touch.  The walk only
    finds labellings that a monotone corridor separates.  Without obstacles
    some feasible labelling always has that form; with obstacles it may not,
    so None is conclusive only for the unconstrained problem and for regions
    known to keep the property (the two parts of a three-sided cut).
    """
    from .geom import Solution, Side, leader_for

    kind_of = {Side.TOP: "T", Side.RIGHT: "R", Side.BOTTOM: "B", Side.LEFT: "L"}
    b = inst.bounds
    ports = {"T": [], "R": [], "B": [], "L": []}
    by_port = {}
    for p in inst.ports:
        k = kind_of[p.side]
        ports[k].append(p.along * SCALE)
        by_port[(k, p.along * SCALE)] = p
    by_site = {(s.x * SCALE, s.y * SCALE): s for s in inst.sites}
    box = (b.xmin * SCALE, b.xmax * SCALE, b.ymin * SCALE, b.ymax * SCALE)
    obst = [("rect", (r.xmin * SCALE, r.xmax * SCALE, r.ymin * SCALE, r.ymax * SCALE)) for r in obstacles]
    for ld in blockers:
        for a, c in ld.segments(b):
            obst.append(("seg", ((a.x * SCALE, a.y * SCALE), (c.x * SCALE, c.y * SCALE))))
    walk = Corridor(list(by_site), ports, box, obstacles=obst)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 20000))
    try:
        ok = walk.feasible()
        if stats is not None:
            stats["memo"] = walk.memo_size()
        if not ok:
            return None
        leaders = walk.leaders()
    finally:
        sys.setrecursionlimit(limit)
    return Solution(tuple(leader_for(by_site[s], by_port[(k, a)], b) for k, s, a in leaders))
