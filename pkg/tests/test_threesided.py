from fractions import Fraction

import pytest

from conftest import B, L, R, T, fixture_b, fixture_d, make, random_instance
from polabel.geom import WrongSideConfiguration, verify_solution
from polabel.oracle import OracleConstraint, oracle_feasible
from polabel.threesided import (
    GammaState,
    GridNode,
    LState,
    balanced_split_at,
    doubled,
    extension_scan,
    grid_nodes,
    leaders_avoid,
    region_obstacles,
    solve_Gamma,
    solve_L,
    solve_split,
    solve_three_sided,
)


def test_fixture_d():
    inst = fixture_d()
    sol = solve_three_sided(inst)
    assert sol is not None and verify_solution(inst, sol).ok
    assert oracle_feasible(inst)


def test_fixture_b():
    assert solve_three_sided(fixture_b()) is None


def test_rejects_bottom_ports():
    with pytest.raises(WrongSideConfiguration):
        solve_three_sided(make([(3, 3)], [(B, 5)]))


def test_grid_nodes_are_cell_centres():
    inst = fixture_d()
    nodes = grid_nodes(inst)
    # x lines: 0, 2, 4, 5, 8, 10; y lines: 0, 3, 5, 6, 7, 8, 10
    assert len(nodes) == 5 * 6
    assert GridNode(Fraction(9, 2), Fraction(13, 2)) in nodes
    assert all(v.denominator in (1, 2) for node in nodes for v in node)


def test_at_most_one_extension(rng):
    for _ in range(150):
        inst = random_instance(rng, rng.randint(0, 8), (L, T, R))
        for node in grid_nodes(inst):
            found = extension_scan(inst, node)
            assert len(found) <= 1
            got = balanced_split_at(inst, node)
            if found:
                assert got is not None and got.left_sites == found[0].left_sites
                assert got.left_ports == found[0].left_ports
            else:
                assert got is None


def _part_oracle(inst, split, part):
    sites, ports = (split.left_sites, split.left_ports) if part == "L" else (split.right_sites, split.right_ports)
    c = OracleConstraint(obstacles=tuple(region_obstacles(split, inst.bounds, part)),
                         site_ids=sites, port_ids=ports)
    return oracle_feasible(doubled(inst), c)


def test_parts_match_region_oracle(rng):
    checked = 0
    while checked < 300:
        inst = random_instance(rng, rng.randint(1, 7), (L, T, R))
        splits = [s for s in (balanced_split_at(inst, nd) for nd in grid_nodes(inst)) if s is not None]
        if not splits:
            continue
        split = rng.choice(splits)
        left = solve_L(LState(inst, split))
        right = solve_Gamma(GammaState(inst, split))
        assert (left is not None) == _part_oracle(inst, split, "L")
        assert (right is not None) == _part_oracle(inst, split, "G")
        checked += 1


def test_some_split_solves_iff_feasible(rng):
    for _ in range(200):
        inst = random_instance(rng, rng.randint(1, 6), (L, T, R))
        # same left sets at different nodes are different cuts, so no dedup
        splits = [s for s in (balanced_split_at(inst, nd) for nd in grid_nodes(inst)) if s]
        solved = [sol for sol in (solve_split(inst, s) for s in splits) if sol is not None]
        assert bool(solved) == oracle_feasible(inst)
        for sol in solved:
            assert verify_solution(inst, sol).ok


def test_split_parts_stay_on_their_side(rng):
    for _ in range(100):
        inst = random_instance(rng, rng.randint(1, 7), (L, T, R))
        for node in grid_nodes(inst):
            split = balanced_split_at(inst, node)
            if split is None:
                continue
            left = solve_L(LState(inst, split))
            if left is not None:
                # the left part never enters the region right of the cut
                assert leaders_avoid(left.leaders, (node.x, node.y, inst.bounds.xmax, inst.bounds.ymax), inst.bounds)
                assert leaders_avoid(left.leaders, (split.reach, inst.bounds.ymin, inst.bounds.xmax, node.y),
                                     inst.bounds)
            right = solve_Gamma(GammaState(inst, split))
            if right is not None:
                assert leaders_avoid(right.leaders, split.forbidden(inst.bounds), inst.bounds)
                assert leaders_avoid(right.leaders, (inst.bounds.xmin, inst.bounds.ymin, node.x, inst.bounds.ymax),
                                     inst.bounds)


def test_matches_oracle(rng):
    for _ in range(600):
        inst = random_instance(rng, rng.randint(0, 7), (L, T, R))
        sol = solve_three_sided(inst)
        assert (sol is not None) == oracle_feasible(inst)
        if sol is not None:
            assert verify_solution(inst, sol).ok
