import itertools
from fractions import Fraction

from conftest import B, L, R, T, fixture_b, fixture_c, make, random_instance
from polabel.geom import AlignmentError, Point, Port, Rect, Side, Site, Solution, leader_for, leaders_cross, verify_solution
from polabel.foursided import (
    FourSided,
    FourState,
    kinds_clash,
    partition_point,
    partitioned_search,
    recover_boundary,
    solve_four_sided,
    swap_repair,
)
from polabel.oracle import oracle_feasible

BOX = Rect(0, 0, 10, 10)


def test_recover_boundary_example():
    first = leader_for(Site(4, 7, 0), Port(L, 6, 0))
    second = leader_for(Site(6, 2, 1), Port(B, 5, 1))
    assert first.polyline(BOX) == (Point(4, 7), Point(4, 6), Point(0, 6))
    rb = recover_boundary(first, second, BOX)
    assert rb.p == Point(4, 6) and rb.q == Point(5, 2)
    assert rb.rect == Rect(4, 2, 5, 6) and not rb.degenerate


def _lattice(seg):
    (a, b) = seg
    return [Point(x, y) for x in range(min(a.x, b.x), max(a.x, b.x) + 1)
            for y in range(min(a.y, b.y), max(a.y, b.y) + 1)]


def _closest_brute(first, second, bounds):
    """Closest pair over every lattice point; axis-parallel integer segments attain it there."""
    best = None
    for s in first.segments(bounds):
        for t in second.segments(bounds):
            for p in _lattice(s):
                for q in _lattice(t):
                    key = ((p.x - q.x) ** 2 + (p.y - q.y) ** 2, p.y, p.x, q.y, q.x)
                    best = key if best is None or key < best else best
    return Point(best[2], best[1]), Point(best[4], best[3])


def test_recover_boundary_matches_brute(rng):
    bounds = Rect(0, 0, 12, 12)
    done = 0
    while done < 400:
        s1, s2 = Site(rng.randint(1, 11), rng.randint(1, 11), 0), Site(rng.randint(1, 11), rng.randint(1, 11), 1)
        p1, p2 = Port(rng.choice((T, R)), rng.randint(1, 11), 0), Port(rng.choice((B, L)), rng.randint(1, 11), 1)
        try:
            a, b = leader_for(s1, p1), leader_for(s2, p2)
        except AlignmentError:
            continue
        if leaders_cross(a, b, bounds):
            continue
        rb = recover_boundary(a, b, bounds)
        assert (rb.p, rb.q) == _closest_brute(a, b, bounds)
        assert rb == recover_boundary(a, b, bounds)
        done += 1


def test_recover_boundary_tie_takes_lowest():
    # distance 4 is reached by (3,6)-(3,2) and by (8,8)-(8,4); the lower p wins
    first = leader_for(Site(3, 6, 0), Port(R, 8, 0))  # (3,6)-(3,8)-(10,8)
    second = leader_for(Site(8, 4, 1), Port(L, 2, 1))  # (8,4)-(8,2)-(0,2)
    rb = recover_boundary(first, second, BOX)
    assert rb.p == Point(3, 6) and rb.q == Point(3, 2)


def test_recover_boundary_degenerate():
    # the lower site sits straight above the other leader's horizontal piece
    first = leader_for(Site(4, 8, 0), Port(R, 9, 0))  # (4,8)-(4,9)-(10,9)
    second = leader_for(Site(2, 3, 1), Port(B, 6, 1))  # (2,3)-(6,3)-(6,0)
    rb = recover_boundary(first, second, BOX)
    assert (rb.p, rb.q) == (Point(4, 8), Point(4, 3))
    assert rb.rect == Rect(4, 3, 4, 8) and rb.degenerate


def _inside(pt, rects):
    return any(r.xmin <= pt[0] <= r.xmax and r.ymin <= pt[1] <= r.ymax for r in rects)


def _region_brute(inst, fixed, sites, ports, rects):
    """Some crossing-free matching whose leaders stay in the closed region and miss ``fixed``."""
    if len(sites) != len(ports):
        return False
    for perm in itertools.permutations(ports):
        try:
            lds = [leader_for(s, p) for s, p in zip(sites, perm)]
        except AlignmentError:
            continue
        if any(leaders_cross(a, b, inst.bounds) for a in lds for b in lds + list(fixed) if a is not b):
            continue
        ok = True
        for ld in lds:
            for (a, b) in ld.segments(inst.bounds):
                steps = 4 * (abs(a.x - b.x) + abs(a.y - b.y))
                for k in range(steps + 1):
                    t = Fraction(k, steps) if steps else Fraction(0)
                    if not _inside((a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)), rects):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return True
    return False


def test_reachable_states_are_sound(rng):
    # a state's bit means "completable in walk order", which can be stricter
    # than "completable somewhere in the region"; only the root is exact
    checked = 0
    for _ in range(150):
        inst = random_instance(rng, 3, tuple(Side), grid=12)
        fs = FourSided(inst)
        fs.walk.feasible()
        for p, q in list(fs.walk.memo):
            if p in fs.walk.sentinels or q in fs.walk.sentinels:
                continue
            (first, second) = fs.decode([p, q])
            state = FourState(first.port, first.site, second.port, second.site)
            sites, ports = fs.remaining(state)
            if fs.solve_T(state) is not None:
                assert _region_brute(inst, (first, second), sites, ports, fs.region(state))
                checked += 1
    assert checked > 50


def test_fixtures():
    c = fixture_c()
    sol = solve_four_sided(c)
    assert sol is not None and verify_solution(c, sol).ok
    assert partition_point(c, sol) is not None
    assert solve_four_sided(fixture_b()) is None
    empty = make([], [])
    assert solve_four_sided(empty) == Solution()


def test_matches_oracle_and_partitions(rng):
    for _ in range(400):
        inst = random_instance(rng, rng.randint(0, 7), tuple(Side))
        stats = {}
        sol = solve_four_sided(inst, stats)
        assert (sol is not None) == oracle_feasible(inst)
        if sol is not None:
            assert verify_solution(inst, sol).ok
            assert stats["partitioned"] and partition_point(inst, sol) is not None


def test_kinds_clash():
    low_left, high_right = Site(2, 2, 0), Site(6, 6, 1)
    assert kinds_clash(low_left, T, high_right, B)
    assert kinds_clash(high_right, L, low_left, R)
    assert not kinds_clash(low_left, B, high_right, T)
    assert not kinds_clash(low_left, T, high_right, T)


def test_partitioned_search_from_scratch(rng):
    for _ in range(150):
        inst = random_instance(rng, rng.randint(1, 6), tuple(Side))
        sol = partitioned_search(inst)
        assert (sol is not None) == oracle_feasible(inst)
        if sol is not None:
            assert verify_solution(inst, sol).ok and partition_point(inst, sol) is not None


def test_swap_repair_keeps_solutions_valid(rng):
    for _ in range(150):
        inst = random_instance(rng, rng.randint(2, 8), tuple(Side))
        sol = solve_four_sided(inst)
        if sol is None:
            continue
        fixed = swap_repair(inst, sol)
        if fixed is not None:
            assert verify_solution(inst, fixed).ok and partition_point(inst, fixed) is not None
