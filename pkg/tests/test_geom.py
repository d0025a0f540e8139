import itertools
import random

import pytest

from conftest import B, L, R, T, fixture_a, fixture_b, fixture_c, make
from polabel.geom import (
    AlignmentError,
    GeometryError,
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
    verify_solution,
)


def test_bend_positions():
    s = Site(3, 8, 0)
    assert leader_for(s, Port(T, 2, 0)).bend == Point(2, 8)
    assert leader_for(s, Port(B, 6, 0)).bend == Point(6, 8)
    assert leader_for(s, Port(L, 4, 0)).bend == Point(3, 4)
    assert leader_for(s, Port(R, 1, 0)).bend == Point(3, 1)


def test_aligned_site_has_no_leader():
    with pytest.raises(AlignmentError):
        leader_for(Site(4, 4, 0), Port(T, 4, 0))
    with pytest.raises(AlignmentError):
        leader_for(Site(4, 7, 0), Port(L, 7, 0))


def test_fixture_a_pairs():
    inst = fixture_a()
    # both matchings are crossing-free
    assert verify_solution(inst, Solution.from_pairs(inst, [(0, 1), (1, 0)])).ok
    assert verify_solution(inst, Solution.from_pairs(inst, [(0, 0), (1, 1)])).ok


def test_touching_counts_as_crossing():
    bounds = Rect(0, 0, 10, 10)
    # not in general position: both leaders run along y=3 and share a piece
    a = leader_for(Site(2, 3, 0), Port(T, 5, 0))
    b = leader_for(Site(7, 6, 1), Port(L, 3, 1))
    assert leaders_cross(a, b, bounds)
    inst = make([(2, 3), (7, 6)], [(T, 5), (L, 3)])
    rep = verify_solution(inst, Solution((a, b)))
    assert not rep.ok


def test_verify_flags_wrong_bend_and_missing():
    inst = fixture_a()
    ld = leader_for(inst.sites[0], inst.ports[1])
    skewed = ld._replace(bend=Point(ld.bend.x, ld.bend.y + 1))
    other = leader_for(inst.sites[1], inst.ports[0])
    assert "BadBend" in verify_solution(inst, Solution((skewed, other))).kinds()
    assert "NotMatching" in verify_solution(inst, Solution((other,))).kinds()


def test_fixture_b_every_matching_crosses():
    inst = fixture_b()
    for perm in itertools.permutations(range(2)):
        sol = Solution.from_pairs(inst, [(s, p) for s, p in enumerate(perm)])
        assert not verify_solution(inst, sol).ok
    cross = Solution.from_pairs(inst, [(0, 0), (1, 1)])
    assert verify_solution(inst, cross).violations[0].detail.endswith("(9,9)")


def test_fixture_c_has_valid_matching():
    inst = fixture_c()
    ok = []
    for perm in itertools.permutations(range(4)):
        try:
            sol = Solution.from_pairs(inst, list(enumerate(perm)))
        except AlignmentError:
            continue
        if verify_solution(inst, sol).ok:
            ok.append(perm)
    assert ok


def test_problems_report():
    inst = make([(2, 2), (2, 5)], [(T, 7)])
    msgs = inst.problems()
    assert any(m.startswith("unbalanced") for m in msgs)
    assert any("general position violated" in m and "site 0" in m and "site 1" in m for m in msgs)
    with pytest.raises(GeometryError):
        inst.validate()
    assert make([(2, 2)], [(T, 0)]).problems()  # corner port


_TOWARD = {T: (0, 1), R: (1, 0), B: (0, -1), L: (-1, 0)}


def _separable_brute(leaders, ka, kb):
    """Try every site subset that is closed toward side ka and away from kb."""
    dx = _TOWARD[ka][0] - _TOWARD[kb][0]
    dy = _TOWARD[ka][1] - _TOWARD[kb][1]
    sites = [ld.site for ld in leaders]

    def beyond(t, s):  # t lies from s in the direction (dx, dy), weakly
        return (t.x - s.x) * dx >= 0 and (t.y - s.y) * dy >= 0

    for mask in range(1 << len(sites)):
        up = {sites[i] for i in range(len(sites)) if mask >> i & 1}
        if any(beyond(t, s) and t not in up for s in up for t in sites):
            continue
        if all((ld.site in up) == (ld.port.side == ka) for ld in leaders):
            return True
    return False


@pytest.mark.parametrize("ka,kb", [(T, R), (R, B), (B, L), (L, T), (R, T), (T, L)])
def test_xy_separable_matches_brute_force(ka, kb):
    rng = random.Random(hash((ka, kb)) & 0xFFFF)
    rect = Rect(0, 0, 20, 20)
    for _ in range(400):
        k = rng.randint(0, 7)
        xs = rng.sample(range(1, 20), k)
        ys = rng.sample(range(1, 20), k)
        leaders = [Leader(Port(rng.choice((ka, kb)), 0, i), Site(xs[i], ys[i], i), Point(0, 0)) for i in range(k)]
        assert check_xy_separable(rect, leaders, ka, kb) == _separable_brute(leaders, ka, kb)


def test_xy_separable_rejects_opposite_sides():
    with pytest.raises(ValueError):
        check_xy_separable(Rect(0, 0, 5, 5), [], T, B)
