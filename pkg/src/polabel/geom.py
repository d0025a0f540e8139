"""Exact integer geometry for po-leaders.

Everything here works on integer coordinates only.  A po-leader is the
two-segment polyline site -> bend -> port where the segment at the port is
orthogonal to the port's side of the bounding box.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence


class Side(enum.IntEnum):
    TOP = 0
    RIGHT = 1
    BOTTOM = 2
    LEFT = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def parse(cls, text: str) -> "Side":
        key = text.strip().lower()
        for side in cls:
            if side.label == key or side.label[0] == key:
                return side
        raise ValueError(f"unknown side {text!r}")

    @property
    def horizontal(self) -> bool:
        """True for the sides whose ports are addressed by an x-coordinate."""
        return self in (Side.TOP, Side.BOTTOM)


class Point(NamedTuple):
    x: int
    y: int


class Rect(NamedTuple):
    xmin: int
    ymin: int
    xmax: int
    ymax: int

    def contains_open(self, x: int, y: int) -> bool:
        return self.xmin < x < self.xmax and self.ymin < y < self.ymax

    def corner(self, i: int) -> Point:
        """Corners c1..c4 in clockwise order starting top-right."""
        return (
            Point(self.xmax, self.ymax),
            Point(self.xmax, self.ymin),
            Point(self.xmin, self.ymin),
            Point(self.xmin, self.ymax),
        )[i - 1]


class Site(NamedTuple):
    x: int
    y: int
    id: int

    @property
    def point(self) -> Point:
        return Point(self.x, self.y)


class Port(NamedTuple):
    side: Side
    along: int
    id: int

    def location(self, bounds: Rect) -> Point:
        if self.side == Side.TOP:
            return Point(self.along, bounds.ymax)
        if self.side == Side.BOTTOM:
            return Point(self.along, bounds.ymin)
        if self.side == Side.LEFT:
            return Point(bounds.xmin, self.along)
        return Point(bounds.xmax, self.along)


class GeometryError(ValueError):
    pass


class AlignmentError(GeometryError):
    """Site lies on the line through a port orthogonal to the port's side."""


class WrongSideConfiguration(ValueError):
    """A solver was handed ports on sides it does not handle."""


@dataclass(frozen=True)
class Instance:
    bounds: Rect
    sites: tuple[Site, ...]
    ports: tuple[Port, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bounds", Rect(*self.bounds))
        object.__setattr__(self, "sites", tuple(Site(*s) for s in self.sites))
        object.__setattr__(self, "ports", tuple(Port(Side(p[0]), p[1], p[2]) for p in self.ports))

    @property
    def n(self) -> int:
        return len(self.sites)

    def ports_on(self, side: Side) -> list[Port]:
        """Ports of one side in clockwise order."""
        out = [p for p in self.ports if p.side == side]
        # clockwise: top left->right, right top->bottom, bottom right->left, left bottom->top
        out.sort(key=lambda p: p.along, reverse=side in (Side.RIGHT, Side.BOTTOM))
        return out

    @property
    def counts(self) -> tuple[int, int, int, int]:
        """(w, x, y, z): number of top, right, bottom, left ports."""
        c = [0, 0, 0, 0]
        for p in self.ports:
            c[p.side] += 1
        return tuple(c)  # type: ignore[return-value]

    def used_sides(self) -> frozenset[Side]:
        return frozenset(p.side for p in self.ports)

    def site_by_id(self, i: int) -> Site:
        for s in self.sites:
            if s.id == i:
                return s
        raise KeyError(i)

    def port_by_id(self, i: int) -> Port:
        for p in self.ports:
            if p.id == i:
                return p
        raise KeyError(i)

    def problems(self) -> list[str]:
        """Human-readable violations of the instance invariants."""
        out: list[str] = []
        b = self.bounds
        if not (b.xmin < b.xmax and b.ymin < b.ymax):
            out.append("degenerate bounds")
        if len(self.sites) != len(self.ports):
            out.append(f"unbalanced: {len(self.sites)} sites, {len(self.ports)} ports")
        for kind, items in (("site", self.sites), ("port", self.ports)):
            ids = [it.id for it in items]
            dup = sorted({i for i in ids if ids.count(i) > 1})
            if dup:
                out.append(f"duplicate {kind} ids {dup}")
        for s in self.sites:
            if not b.contains_open(s.x, s.y):
                out.append(f"site {s.id} not strictly inside bounds")
        for p in self.ports:
            lo, hi = (b.xmin, b.xmax) if p.side.horizontal else (b.ymin, b.ymax)
            if p.along in (lo, hi):
                out.append(f"corner port {p.id}: {p.side.label} side at {p.along}")
            elif not lo < p.along < hi:
                out.append(f"port {p.id} outside side {p.side.label}")
        xs: dict[int, list[str]] = {}
        ys: dict[int, list[str]] = {}
        for s in self.sites:
            xs.setdefault(s.x, []).append(f"site {s.id}")
            ys.setdefault(s.y, []).append(f"site {s.id}")
        for p in self.ports:
            (xs if p.side.horizontal else ys).setdefault(p.along, []).append(f"port {p.id}")
        for axis, table in (("x", xs), ("y", ys)):
            for value, who in sorted(table.items()):
                if len(who) > 1:
                    out.append(f"general position violated: {' and '.join(who)} share {axis}={value}")
        return out

    def validate(self) -> None:
        errs = self.problems()
        if errs:
            raise GeometryError("; ".join(errs))


class Leader(NamedTuple):
    port: Port
    site: Site
    bend: Point

    def polyline(self, bounds: Rect) -> tuple[Point, Point, Point]:
        return (self.site.point, self.bend, self.port.location(bounds))

    def segments(self, bounds: Rect) -> tuple[tuple[Point, Point], tuple[Point, Point]]:
        a, b, c = self.polyline(bounds)
        return ((a, b), (b, c))


_FAR = Rect(-(1 << 62), -(1 << 62), 1 << 62, 1 << 62)


def leader_for(site: Site, port: Port, bounds: Rect | None = None) -> Leader:
    if port.side.horizontal:
        if site.x == port.along:
            raise AlignmentError(f"site {site.id} is vertically aligned with port {port.id}")
        bend = Point(port.along, site.y)
    else:
        if site.y == port.along:
            raise AlignmentError(f"site {site.id} is horizontally aligned with port {port.id}")
        bend = Point(site.x, port.along)
    return Leader(port, site, bend)


def _seg_box(seg: tuple[Point, Point]) -> tuple[int, int, int, int]:
    (ax, ay), (bx, by) = seg
    return min(ax, bx), min(ay, by), max(ax, bx), max(ay, by)


def segments_meet(s: tuple[Point, Point], t: tuple[Point, Point]) -> bool:
    """Closed axis-parallel segments share a point."""
    a = _seg_box(s)
    b = _seg_box(t)
    return a[0] <= b[2] and b[0] <= a[2] and a[1] <= b[3] and b[1] <= a[3]


def segment_intersection(s: tuple[Point, Point], t: tuple[Point, Point]) -> Point | None:
    a = _seg_box(s)
    b = _seg_box(t)
    x0, y0 = max(a[0], b[0]), max(a[1], b[1])
    if x0 <= min(a[2], b[2]) and y0 <= min(a[3], b[3]):
        return Point(x0, y0)
    return None


def leaders_cross(a: Leader, b: Leader, bounds: Rect | None = None) -> bool:
    """True iff the two leaders share at least one point.

    Without bounds the port segments are treated as rays, which gives the same
    answer for two leaders of one instance.
    """
    bounds = bounds or _FAR
    return any(segments_meet(s, t) for s in a.segments(bounds) for t in b.segments(bounds))


def crossing_point(a: Leader, b: Leader, bounds: Rect) -> Point | None:
    for s in a.segments(bounds):
        for t in b.segments(bounds):
            p = segment_intersection(s, t)
            if p is not None:
                return p
    return None


@dataclass(frozen=True)
class Solution:
    leaders: tuple[Leader, ...] = ()

    @classmethod
    def from_pairs(cls, inst: Instance, pairs: Iterable[tuple[int, int]]) -> "Solution":
        """Build from (site_id, port_id) pairs."""
        sites = {s.id: s for s in inst.sites}
        ports = {p.id: p for p in inst.ports}
        return cls(tuple(leader_for(sites[s], ports[p]) for s, p in sorted(pairs)))

    def pairs(self) -> list[tuple[int, int]]:
        return sorted((ld.site.id, ld.port.id) for ld in self.leaders)

    def __len__(self) -> int:
        return len(self.leaders)


class Violation(NamedTuple):
    kind: str
    leaders: tuple[int, ...]
    detail: str


@dataclass
class VerificationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> list[str]:
        return [v.kind for v in self.violations]


CROSSING = "Crossing"
TOUCHING = "Touching"
OUT_OF_BOUNDS = "OutOfBounds"
NOT_MATCHING = "NotMatching"
BAD_BEND = "BadBend"


def _proper_cross(a: Leader, b: Leader, bounds: Rect) -> bool:
    """Interiors of two perpendicular segments cross at a point interior to both."""
    for s in a.segments(bounds):
        for t in b.segments(bounds):
            p = segment_intersection(s, t)
            if p is None:
                continue
            sa, sb = _seg_box(s), _seg_box(t)
            inner_s = (sa[0] < p.x < sa[2]) or (sa[1] < p.y < sa[3])
            inner_t = (sb[0] < p.x < sb[2]) or (sb[1] < p.y < sb[3])
            s_h = sa[1] == sa[3]
            t_h = sb[1] == sb[3]
            if inner_s and inner_t and s_h != t_h:
                return True
    return False


def verify_solution(inst: Instance, sol: Solution) -> VerificationReport:
    rep = VerificationReport()
    b = inst.bounds
    leaders = list(sol.leaders)
    site_ids = sorted(ld.site.id for ld in leaders)
    port_ids = sorted(ld.port.id for ld in leaders)
    if site_ids != sorted(s.id for s in inst.sites) or port_ids != sorted(p.id for p in inst.ports):
        rep.violations.append(Violation(NOT_MATCHING, (), "site or port ids do not form a perfect matching"))
    known_sites = set(inst.sites)
    known_ports = set(inst.ports)
    for i, ld in enumerate(leaders):
        if ld.site not in known_sites or ld.port not in known_ports:
            rep.violations.append(Violation(NOT_MATCHING, (i,), f"leader {i} uses an unknown site or port"))
            continue
        try:
            expect = leader_for(ld.site, ld.port)
        except AlignmentError as exc:
            rep.violations.append(Violation(BAD_BEND, (i,), str(exc)))
            continue
        if expect.bend != ld.bend:
            rep.violations.append(Violation(BAD_BEND, (i,), f"leader {i} bend {tuple(ld.bend)} != {tuple(expect.bend)}"))
            continue
        if not b.contains_open(ld.site.x, ld.site.y) or not b.contains_open(ld.bend.x, ld.bend.y):
            rep.violations.append(Violation(OUT_OF_BOUNDS, (i,), f"leader {i} leaves the interior of B"))
    for i in range(len(leaders)):
        for j in range(i + 1, len(leaders)):
            p = crossing_point(leaders[i], leaders[j], b)
            if p is None:
                continue
            kind = CROSSING if _proper_cross(leaders[i], leaders[j], b) else TOUCHING
            rep.violations.append(Violation(kind, (i, j), f"leaders {i} and {j} meet at ({p.x},{p.y})"))
    return rep


# corner of B adjacent to both sides -> mirror flags (flip x, flip y) taking it to top-right
_CORNER_FLIPS = {
    frozenset((Side.TOP, Side.RIGHT)): (False, False),
    frozenset((Side.TOP, Side.LEFT)): (True, False),
    frozenset((Side.BOTTOM, Side.RIGHT)): (False, True),
    frozenset((Side.BOTTOM, Side.LEFT)): (True, True),
}


def check_xy_separable(rect: Rect, leaders: Sequence[Leader], kind_a: Side, kind_b: Side) -> bool:
    """Whether a monotone staircase across ``rect`` puts every ``kind_a`` site on
    one closed side and every ``kind_b`` site on the other.

    The staircase joins the two corners of ``rect`` that are not the corner
    where the sides ``kind_a`` and ``kind_b`` meet.  After mirroring that
    corner to the top-right, top-kind sites must never lie right of and below
    a right-kind site; one left-to-right sweep checks it.
    """
    key = frozenset((Side(kind_a), Side(kind_b)))
    if key not in _CORNER_FLIPS:
        raise ValueError(f"{Side(kind_a).label} and {Side(kind_b).label} are not adjacent sides")
    fx, fy = _CORNER_FLIPS[key]
    r = Rect(*rect)
    pts = []
    for ld in leaders:
        s, side = ld.site, ld.port.side
        if side not in key:
            raise ValueError(f"leader of site {s.id} ends on side {side.label}")
        if not (r.xmin <= s.x <= r.xmax and r.ymin <= s.y <= r.ymax):
            raise ValueError(f"site {s.id} is outside the rectangle")
        vertical = side in (Side.TOP, Side.BOTTOM)
        pts.append((-s.x if fx else s.x, -s.y if fy else s.y, vertical))
    pts.sort()
    highest_side_site = None
    for x, y, vertical in pts:
        if not vertical:
            highest_side_site = y if highest_side_site is None else max(highest_side_site, y)
        elif highest_side_site is not None and highest_side_site > y:
            return False
    return True
