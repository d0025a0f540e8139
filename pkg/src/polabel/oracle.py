"""Brute-force feasibility by backtracking over all site-port matchings."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .geom import (
    AlignmentError,
    Instance,
    Leader,
    Rect,
    Solution,
    _seg_box,
    leader_for,
)

DEFAULT_CAP = 9


class TooLarge(ValueError):
    pass


@dataclass(frozen=True)
class OracleConstraint:
    """Extra restrictions for testing solver pieces in isolation.

    pinned: leaders that must appear as given.  obstacles: rectangles whose
    open interior no leader may meet.  site_ids / port_ids: when set, only
    these participate (the rest of the instance is ignored).
    """

    pinned: tuple[Leader, ...] = ()
    obstacles: tuple[Rect, ...] = ()
    site_ids: frozenset[int] | None = None
    port_ids: frozenset[int] | None = None
    blockers: tuple[Leader, ...] = field(default=())


def _boxes(ld: Leader, bounds: Rect) -> tuple[tuple[int, int, int, int], ...]:
    return tuple(_seg_box(s) for s in ld.segments(bounds))


def _meet(a, b) -> bool:
    for s in a:
        for t in b:
            if s[0] <= t[2] and t[0] <= s[2] and s[1] <= t[3] and t[1] <= s[3]:
                return True
    return False


def _hits_open(boxes, r: Rect) -> bool:
    for s in boxes:
        if s[0] < r.xmax and r.xmin < s[2] and s[1] < r.ymax and r.ymin < s[3]:
            return True
    return False


def _search(inst: Instance, c: OracleConstraint, cap: int) -> Iterator[list[Leader]]:
    b = inst.bounds
    pinned_sites = {ld.site.id for ld in c.pinned}
    pinned_ports = {ld.port.id for ld in c.pinned}
    sites = [s for s in inst.sites if (c.site_ids is None or s.id in c.site_ids) and s.id not in pinned_sites]
    ports = [p for p in inst.ports if (c.port_ids is None or p.id in c.port_ids) and p.id not in pinned_ports]
    if len(sites) > cap:
        raise TooLarge(f"{len(sites)} free sites exceed the oracle cap {cap}")
    if len(sites) != len(ports):
        return
    fixed = [_boxes(ld, b) for ld in c.pinned] + [_boxes(ld, b) for ld in c.blockers]
    for i in range(len(fixed)):
        for j in range(i + 1, len(fixed)):
            if _meet(fixed[i], fixed[j]):
                return
    for ld in c.pinned:
        if any(_hits_open(_boxes(ld, b), r) for r in c.obstacles):
            return
    sites.sort(key=lambda s: s.x)
    # candidate leaders per site that survive the fixed constraints
    cands: list[list[tuple[int, Leader, tuple]]] = []
    for s in sites:
        row = []
        for j, p in enumerate(ports):
            try:
                ld = leader_for(s, p)
            except AlignmentError:
                continue
            bx = _boxes(ld, b)
            if any(_meet(bx, f) for f in fixed):
                continue
            if any(_hits_open(bx, r) for r in c.obstacles):
                continue
            row.append((j, ld, bx))
        cands.append(row)
    used = [False] * len(ports)
    chosen: list[tuple[Leader, tuple]] = []

    def rec(k: int) -> Iterator[list[Leader]]:
        if k == len(sites):
            yield list(c.pinned) + [ld for ld, _ in chosen]
            return
        for j, ld, bx in cands[k]:
            if used[j]:
                continue
            if any(_meet(bx, other) for _, other in chosen):
                continue
            used[j] = True
            chosen.append((ld, bx))
            yield from rec(k + 1)
            chosen.pop()
            used[j] = False

    yield from rec(0)


def oracle_solve(inst: Instance, c: OracleConstraint | None = None, cap: int = DEFAULT_CAP) -> Solution | None:
    """A crossing-free witness, or None when the instance is infeasible."""
    for leaders in _search(inst, c or OracleConstraint(), cap):
        return Solution(tuple(leaders))
    return None


def oracle_feasible(inst: Instance, c: OracleConstraint | None = None, cap: int = DEFAULT_CAP) -> bool:
    return oracle_solve(inst, c, cap) is not None


def oracle_count(inst: Instance, c: OracleConstraint | None = None, cap: int = DEFAULT_CAP) -> int:
    return sum(1 for _ in _search(inst, c or OracleConstraint(), cap))
