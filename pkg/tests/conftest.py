import random
import sys

import pytest

from polabel.geom import Instance, Port, Rect, Side, Site

BOX = Rect(0, 0, 10, 10)


def make(sites, ports, bounds=BOX):
    """Instance from [(x, y)] sites and [(side, along)] ports, ids by position."""
    return Instance(
        bounds,
        tuple(Site(x, y, i) for i, (x, y) in enumerate(sites)),
        tuple(Port(Side(s), a, i) for i, (s, a) in enumerate(ports)),
    )


T, R, B, L = Side.TOP, Side.RIGHT, Side.BOTTOM, Side.LEFT


def fixture_a():
    return make([(7, 5), (3, 8)], [(T, 2), (T, 6)])


def fixture_b():
    return make([(2, 2), (1, 1)], [(T, 9), (R, 9)])


def fixture_c():
    return make([(2, 9), (8, 7), (7, 2), (4, 5)], [(T, 3), (R, 8), (B, 6), (L, 4)])


def fixture_d():
    return make([(2, 7), (5, 8), (8, 3)], [(L, 5), (T, 4), (R, 6)])


def random_instance(rng: random.Random, n: int, sides, grid: int | None = None) -> Instance:
    """Sites and ports in general position on a (grid x grid) box, ports spread over ``sides``."""
    g = grid or 3 * n + 3
    xs = rng.sample(range(1, g), 2 * n)
    ys = rng.sample(range(1, g), 2 * n)
    sites = [(xs[i], ys[i]) for i in range(n)]
    ports = []
    for i in range(n):
        side = rng.choice(sides)
        ports.append((side, xs[n + i] if side.horizontal else ys[n + i]))
    return make(sites, ports, Rect(0, 0, g, g))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.REPORT:
        terminalreporter.section("acceptance criteria")
        for line in sorted(mod.REPORT):
            terminalreporter.write_line(line)
