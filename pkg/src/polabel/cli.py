"""Command-line front end and the blv1 text formats.

Instance documents::

    blv1
    bounds 0 0 10 10
    site 0 7 5
    port 0 top 2

Solution documents::

    blv1 solution
    leader 0 1 2 5      # port id, site id, bend x, bend y

Blank lines and ``#`` comments are ignored.
"""
from __future__ import annotations

import argparse
import sys
from typing import NamedTuple, Sequence

from .geom import Instance, Leader, Point, Rect, Side, Site, Port, Solution, verify_solution
from .harness import GenSpec, GenerationExhausted, Mode, gen_instance, run_bench, split_counts
from .oracle import DEFAULT_CAP, TooLarge, oracle_solve
from .solvers import SOLVERS

HEADER = "blv1"
SOLUTION_HEADER = "blv1 solution"


class Diagnostic(NamedTuple):
    line: int  # 0 when not tied to a line
    message: str

    def __str__(self) -> str:
        return f"line {self.line}: {self.message}" if self.line else self.message


class ParseError(ValueError):
    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(map(str, self.diagnostics)))


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(words, no, diags) -> list[int] | None:
    try:
        return [int(w) for w in words]
    except ValueError:
        diags.append(Diagnostic(no, f"expected integers, got {' '.join(words)!r}"))
        return None


def parse_instance(text: str) -> Instance | list[Diagnostic]:
    """An Instance, or every problem found in the document."""
    diags: list[Diagnostic] = []
    rows = list(_lines(text))
    if not rows or rows[0][1] != [HEADER]:
        diags.append(Diagnostic(rows[0][0] if rows else 0, f"missing {HEADER!r} header"))
    bounds = None
    sites: list[Site] = []
    ports: list[Port] = []
    for no, words in rows[1:] if rows and rows[0][1] == [HEADER] else rows:
        key, args = words[0], words[1:]
        if key == "bounds":
            vals = _ints(args, no, diags)
            if vals is not None and len(vals) != 4:
                diags.append(Diagnostic(no, "bounds takes xmin ymin xmax ymax"))
            elif vals is not None:
                if bounds is not None:
                    diags.append(Diagnostic(no, "bounds given twice"))
                bounds = Rect(*vals)
        elif key == "site":
            vals = _ints(args, no, diags)
            if vals is not None and len(vals) != 3:
                diags.append(Diagnostic(no, "site takes id x y"))
            elif vals is not None:
                sites.append(Site(vals[1], vals[2], vals[0]))
        elif key == "port":
            if len(args) != 3:
                diags.append(Diagnostic(no, "port takes id side along"))
                continue
            try:
                side = Side.parse(args[1])
            except ValueError as exc:
                diags.append(Diagnostic(no, str(exc)))
                continue
            vals = _ints([args[0], args[2]], no, diags)
            if vals is not None:
                ports.append(Port(side, vals[1], vals[0]))
        else:
            diags.append(Diagnostic(no, f"unknown record {key!r}"))
    if bounds is None:
        diags.append(Diagnostic(0, "missing bounds"))
        return diags
    inst = Instance(bounds, tuple(sites), tuple(ports))
    diags.extend(Diagnostic(0, msg) for msg in inst.problems())
    return diags or inst


def read_instance(text: str) -> Instance:
    out = parse_instance(text)
    if isinstance(out, list):
        raise ParseError(out)
    return out


def serialize_instance(inst: Instance) -> str:
    b = inst.bounds
    out = [HEADER, f"bounds {b.xmin} {b.ymin} {b.xmax} {b.ymax}"]
    out += [f"site {s.id} {s.x} {s.y}" for s in sorted(inst.sites, key=lambda s: s.id)]
    out += [f"port {p.id} {p.side.label} {p.along}" for p in sorted(inst.ports, key=lambda p: p.id)]
    return "\n".join(out) + "\n"


def parse_solution(text: str, inst: Instance) -> Solution:
    """Leaders exactly as written; ids must exist in ``inst``, bends are not checked."""
    diags: list[Diagnostic] = []
    rows = list(_lines(text))
    if not rows or " ".join(rows[0][1]) != SOLUTION_HEADER:
        raise ParseError([Diagnostic(rows[0][0] if rows else 0, f"missing {SOLUTION_HEADER!r} header")])
    sites = {s.id: s for s in inst.sites}
    ports = {p.id: p for p in inst.ports}
    leaders = []
    for no, words in rows[1:]:
        if words[0] != "leader" or len(words) != 5:
            diags.append(Diagnostic(no, "expected: leader port_id site_id bend_x bend_y"))
            continue
        vals = _ints(words[1:], no, diags)
        if vals is None:
            continue
        pid, sid, bx, by = vals
        if pid not in ports or sid not in sites:
            diags.append(Diagnostic(no, f"unknown port {pid} or site {sid}"))
            continue
        leaders.append(Leader(ports[pid], sites[sid], Point(bx, by)))
    if diags:
        raise ParseError(diags)
    return Solution(tuple(leaders))


def serialize_solution(sol: Solution) -> str:
    out = [SOLUTION_HEADER]
    for ld in sorted(sol.leaders, key=lambda ld: (ld.port.id, ld.site.id)):
        out.append(f"leader {ld.port.id} {ld.site.id} {ld.bend.x} {ld.bend.y}")
    return "\n".join(out) + "\n"


# -- rendering ---------------------------------------------------------------

_SIZE = 480
_PAD = 36


def render_svg(inst: Instance, sol: Solution | None = None) -> str:
    """A fixed-layout SVG picture: frame, sites, labelled port ticks, leaders."""
    b = inst.bounds
    w, h = b.xmax - b.xmin, b.ymax - b.ymin
    scale = _SIZE / max(w, h, 1)

    def px(x, y):
        return f"{_PAD + (x - b.xmin) * scale:.2f},{_PAD + (b.ymax - y) * scale:.2f}"

    W = f"{2 * _PAD + w * scale:.2f}"
    H = f"{2 * _PAD + h * scale:.2f}"
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        '<rect width="100%" height="100%" fill="white"/>',
        f'<polygon points="{px(b.xmin, b.ymin)} {px(b.xmax, b.ymin)} {px(b.xmax, b.ymax)} {px(b.xmin, b.ymax)}" '
        'fill="none" stroke="black" stroke-width="1.5"/>',
    ]
    tick = 6 / scale
    for side in Side:
        for k, p in enumerate(inst.ports_on(side), 1):
            loc = p.location(b)
            dx, dy = {Side.TOP: (0, 1), Side.BOTTOM: (0, -1), Side.LEFT: (-1, 0), Side.RIGHT: (1, 0)}[side]
            end = (loc.x + dx * tick, loc.y + dy * tick)
            lab = (loc.x + dx * 2.6 * tick, loc.y + dy * 2.6 * tick)
            out.append(f'<polyline points="{px(*loc)} {px(*end)}" stroke="black" stroke-width="2"/>')
            x, y = px(*lab).split(",")
            out.append(f'<text x="{x}" y="{y}" font-size="11" font-family="monospace" '
                       f'text-anchor="middle" dominant-baseline="middle">{side.label[0]}{k}</text>')
    if sol is not None:
        for ld in sorted(sol.leaders, key=lambda ld: (ld.port.id, ld.site.id)):
            pts = " ".join(px(*q) for q in ld.polyline(b))
            out.append(f'<polyline points="{pts}" fill="none" stroke="#1f5fa8" stroke-width="1.5"/>')
    for s in sorted(inst.sites, key=lambda s: s.id):
        x, y = px(s.x, s.y).split(",")
        out.append(f'<circle cx="{x}" cy="{y}" r="3.5" fill="#c0392b"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- commands ----------------------------------------------------------------


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _shares(text: str) -> tuple[int, int, int, int]:
    vals = tuple(int(v) for v in text.split(","))
    if len(vals) != 4 or min(vals) < 0 or not any(vals):
        raise argparse.ArgumentTypeError("expected four non-negative integers w,x,y,z")
    return vals  # type: ignore[return-value]


def _answer(args, sol: Solution | None) -> int:
    if sol is None:
        _write(args.out, "INFEASIBLE\n")
        return 1
    _write(args.out, serialize_solution(sol))
    return 0


def cmd_solve(args) -> int:
    inst = read_instance(_read(args.instance))
    return _answer(args, SOLVERS[args.solver](inst, None))


def cmd_oracle(args) -> int:
    inst = read_instance(_read(args.instance))
    return _answer(args, oracle_solve(inst, cap=args.cap))


def cmd_verify(args) -> int:
    inst = read_instance(_read(args.instance))
    sol = parse_solution(_read(args.solution), inst)
    rep = verify_solution(inst, sol)
    for v in rep.violations:
        print(f"{v.kind}: {v.detail}")
    print("OK" if rep.ok else f"{len(rep.violations)} violation(s)")
    return 0 if rep.ok else 1


def cmd_gen(args) -> int:
    counts = split_counts(args.n, args.sides)
    _write(args.out, serialize_instance(gen_instance(GenSpec(counts, args.seed, Mode(args.mode)))))
    return 0


def cmd_render(args) -> int:
    inst = read_instance(_read(args.instance))
    sol = parse_solution(_read(args.solution), inst) if args.solution else None
    _write(args.out, render_svg(inst, sol))
    return 0


def cmd_bench(args) -> int:
    schedule = [int(v) for v in args.schedule.split(",")]
    records, slope = run_bench(args.solver, schedule, args.repetitions, args.seed, args.sides, Mode(args.mode))
    lines = ["solver,n,seed,seconds,feasible,memo"]
    lines += [f"{r.solver},{r.n},{r.seed},{r.seconds:.6f},{int(r.feasible)},{r.memo}" for r in records]
    lines.append(f"slope,{slope:.4f}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polabel", description="1-bend boundary labelling")
    sub = ap.add_subparsers(dest="command", required=True)

    def with_out(p):
        p.add_argument("--out", help="output file (default: stdout)")
        return p

    p = with_out(sub.add_parser("solve", help="label an instance"))
    p.add_argument("instance")
    p.add_argument("--solver", choices=sorted(SOLVERS), default="auto")
    p.set_defaults(func=cmd_solve)

    p = with_out(sub.add_parser("oracle", help="label an instance by exhaustive search"))
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest n searched")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a solution against an instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=cmd_verify)

    p = with_out(sub.add_parser("gen", help="generate an instance"))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sides", type=_shares, default=(1, 1, 1, 1), help="port shares w,x,y,z")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FEASIBLE.value)
    p.set_defaults(func=cmd_gen)

    p = with_out(sub.add_parser("render", help="draw an instance as SVG"))
    p.add_argument("instance")
    p.add_argument("--solution")
    p.set_defaults(func=cmd_render)

    p = with_out(sub.add_parser("bench", help="time a solver over growing n"))
    p.add_argument("--solver", choices=sorted(SOLVERS), default="four")
    p.add_argument("--schedule", default="8,16,32", help="comma-separated n values")
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sides", type=_shares, default=None, help="port shares w,x,y,z")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FEASIBLE.value)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except ParseError as exc:
        for d in exc.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return 2
    except (OSError, ValueError, TooLarge, GenerationExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
