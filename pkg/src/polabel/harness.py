"""Instance generation and scaling benchmarks."""
from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Sequence

from .geom import Instance, Leader, Port, Rect, Side, Site, leader_for, leaders_cross


class Mode(str, Enum):
    RANDOM = "random"
    FEASIBLE = "feasible"


class GenerationExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class GenSpec:
    counts: tuple[int, int, int, int]  # ports on top, right, bottom, left
    seed: int = 0
    mode: Mode = Mode.RANDOM
    bounds: Rect | None = None

    @property
    def n(self) -> int:
        return sum(self.counts)

    def box(self) -> Rect:
        if self.bounds is not None:
            return Rect(*self.bounds)
        g = 8 * max(self.n, 1)
        return Rect(0, 0, g, g)


RETRIES_PER_LEADER = 50
MAX_RESTARTS = 200


def gen_instance(spec: GenSpec) -> Instance:
    rng = random.Random(spec.seed)
    box = spec.box()
    if Mode(spec.mode) is Mode.RANDOM:
        return _random(spec, box, rng)
    for _ in range(MAX_RESTARTS):
        inst = _by_construction(spec, box, rng)
        if inst is not None:
            return inst
    raise GenerationExhausted(f"no crossing-free placement after {MAX_RESTARTS} restarts")


def _side_list(spec: GenSpec) -> list[Side]:
    return [side for side in Side for _ in range(spec.counts[side])]


def _random(spec: GenSpec, box: Rect, rng: random.Random) -> Instance:
    xs = _Pool(box.xmin, box.xmax, rng)
    ys = _Pool(box.ymin, box.ymax, rng)
    sites = tuple(Site(xs.draw(), ys.draw(), i) for i in range(spec.n))
    sides = _side_list(spec)
    rng.shuffle(sides)
    ports = tuple(
        Port(side, xs.draw() if side.horizontal else ys.draw(), j) for j, side in enumerate(sides)
    )
    return Instance(box, sites, ports)


class _Pool:
    """Distinct interior coordinates on one axis, re-drawn on collision."""

    def __init__(self, lo: int, hi: int, rng: random.Random):
        self.lo, self.hi, self.rng = lo, hi, rng
        self.used: set[int] = set()

    def free(self, v: int) -> bool:
        return self.lo < v < self.hi and v not in self.used

    def draw(self, lo: int | None = None, hi: int | None = None) -> int:
        lo = self.lo + 1 if lo is None else max(lo, self.lo + 1)
        hi = self.hi - 1 if hi is None else min(hi, self.hi - 1)
        if hi - lo + 1 <= len(self.used):
            choices = [v for v in range(lo, hi + 1) if v not in self.used]
            if not choices:
                raise GenerationExhausted("coordinate pool exhausted")
            v = self.rng.choice(choices)
        else:
            while True:
                v = self.rng.randint(lo, hi)
                if v not in self.used:
                    break
        self.used.add(v)
        return v


def _by_construction(spec: GenSpec, box: Rect, rng: random.Random) -> Instance | None:
    sides = _side_list(spec)
    rng.shuffle(sides)
    xs = _Pool(box.xmin, box.xmax, rng)
    ys = _Pool(box.ymin, box.ymax, rng)
    placed: list[Leader] = []
    width, height = box.xmax - box.xmin, box.ymax - box.ymin
    for side in sides:
        for _ in range(RETRIES_PER_LEADER):
            ld = _propose(side, box, xs, ys, rng, width, height, len(placed))
            if ld is not None and not any(leaders_cross(ld, other, box) for other in placed):
                xs.used.update((ld.site.x,) + ((ld.port.along,) if side.horizontal else ()))
                ys.used.update((ld.site.y,) + (() if side.horizontal else (ld.port.along,)))
                placed.append(ld)
                break
        else:
            return None
    order = list(range(len(placed)))
    rng.shuffle(order)
    sites = tuple(Site(placed[k].site.x, placed[k].site.y, i) for i, k in enumerate(order))
    ports = tuple(Port(ld.port.side, ld.port.along, j) for j, ld in enumerate(placed))
    return Instance(box, sites, ports)


def _propose(side, box, xs, ys, rng, width, height, k) -> Leader | None:
    # Short leaders near their own side keep the acceptance rate high at large n;
    # the depth scale shrinks as the box fills up.
    along_pool, across_pool = (xs, ys) if side.horizontal else (ys, xs)
    span = width if side.horizontal else height
    depth_span = height if side.horizontal else width
    reach = max(2, depth_span // 3)
    a = rng.randint(along_pool.lo + 1, along_pool.hi - 1)
    if not along_pool.free(a):
        return None
    off = rng.randint(1, max(2, int(span / (2 + k / 2))))
    sx = a + rng.choice((-1, 1)) * off
    depth = rng.randint(1, reach)
    if side == Side.TOP:
        site_across = box.ymax - depth
    elif side == Side.BOTTOM:
        site_across = box.ymin + depth
    elif side == Side.RIGHT:
        site_across = box.xmax - depth
    else:
        site_across = box.xmin + depth
    if not along_pool.free(sx) or sx == a or not across_pool.free(site_across):
        return None
    if side.horizontal:
        site = Site(sx, site_across, -1)
    else:
        site = Site(site_across, sx, -1)
    return leader_for(site, Port(side, a, -1), box)


@dataclass(frozen=True)
class BenchRecord:
    solver: str
    n: int
    seed: int
    seconds: float
    feasible: bool
    memo: int


def fit_slope(ns: Sequence[float], ts: Sequence[float]) -> float:
    """Least-squares slope of log(t) against log(n)."""
    lx = [math.log(v) for v in ns]
    ly = [math.log(max(t, 1e-9)) for t in ts]
    mx, my = statistics.fmean(lx), statistics.fmean(ly)
    den = sum((a - mx) ** 2 for a in lx)
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / den if den else 0.0


SolverFn = Callable[[Instance, dict], object]


def run_bench(
    solver: str | SolverFn,
    schedule: Sequence[int],
    repetitions: int = 3,
    seed: int = 0,
    sides: tuple[int, int, int, int] | None = None,
    mode: Mode = Mode.FEASIBLE,
) -> tuple[list[BenchRecord], float]:
    """Time a solver on generated instances; returns records and the log-log slope.

    ``solver`` is a registered name (see ``solvers.SOLVERS``) or a callable
    ``f(inst, stats)`` returning a Solution or None.  ``sides`` gives the share of
    ports per side; by default all sides the solver handles get equal shares.
    """
    from .solvers import SOLVERS, default_sides

    if isinstance(solver, str):
        name, fn = solver, SOLVERS[solver]
        share = sides or default_sides(solver)
    else:
        name, fn = getattr(solver, "__name__", "custom"), solver
        share = sides or (1, 1, 1, 1)
    records: list[BenchRecord] = []
    medians: list[float] = []
    for n in schedule:
        times = []
        for r in range(repetitions):
            s = seed * 1_000_003 + n * 101 + r
            inst = gen_instance(GenSpec(split_counts(n, share), s, mode))
            stats: dict = {}
            t0 = time.perf_counter()
            sol = fn(inst, stats)
            dt = time.perf_counter() - t0
            times.append(dt)
            records.append(BenchRecord(name, n, s, dt, sol is not None, int(stats.get("memo", 0))))
        medians.append(statistics.median(times))
    return records, fit_slope(schedule, medians)


def split_counts(n: int, share: Sequence[int]) -> tuple[int, int, int, int]:
    """Distribute n ports over the sides with non-zero share, as evenly as possible."""
    active = [i for i in range(4) if share[i]]
    out = [0, 0, 0, 0]
    for k in range(n):
        out[active[k % len(active)]] += 1
    return tuple(out)  # type: ignore[return-value]
