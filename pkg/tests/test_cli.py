import re

import pytest

from conftest import T, fixture_b, fixture_c, make, random_instance
from polabel.cli import (
    Diagnostic,
    ParseError,
    main,
    parse_instance,
    parse_solution,
    read_instance,
    render_svg,
    serialize_instance,
    serialize_solution,
)
from polabel.foursided import solve_four_sided
from polabel.geom import Side, Solution, leader_for, verify_solution
from polabel.harness import GenSpec, Mode, gen_instance


def _file(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_instance_round_trip(rng):
    for _ in range(100):
        inst = random_instance(rng, rng.randint(0, 12), tuple(Side))
        assert read_instance(serialize_instance(inst)) == inst


def test_solution_round_trip():
    inst = fixture_c()
    sol = solve_four_sided(inst)
    back = parse_solution(serialize_solution(sol), inst)
    assert sorted(back.leaders) == sorted(sol.leaders)


def test_comments_and_blank_lines():
    text = "# fixture A\nblv1\n\nbounds 0 0 10 10  # the box\nsite 0 7 5\nsite 1 3 8\nport 0 top 2\nport 1 t 6\n"
    inst = read_instance(text)
    assert inst.n == 2 and inst.ports[1].side == T


def test_general_position_diagnostic_names_both():
    text = "blv1\nbounds 0 0 10 10\nsite 0 3 5\nsite 1 3 8\nport 0 top 2\nport 1 top 6\n"
    out = parse_instance(text)
    assert isinstance(out, list)
    msg = " ".join(str(d) for d in out)
    assert "general position violated" in msg and "site 0" in msg and "site 1" in msg


def test_all_diagnostics_reported():
    text = "blv1\nbounds 0 0 10 10\nsite 0 x 5\nport 0 up 3\nsite 1 4 4\n"
    out = parse_instance(text)
    lines = {d.line for d in out}
    assert {3, 4} <= lines
    assert any("unbalanced" in d.message for d in out)
    with pytest.raises(ParseError) as err:
        read_instance(text)
    assert len(err.value.diagnostics) == len(out)
    assert str(Diagnostic(0, "missing bounds")) == "missing bounds"


def test_missing_header():
    out = parse_instance("bounds 0 0 10 10\n")
    assert any("header" in d.message for d in out)


def test_solve_fixture_c(tmp_path, capsys):
    inst_path = _file(tmp_path, "c.blv", serialize_instance(fixture_c()))
    sol_path = str(tmp_path / "c.sol")
    assert main(["solve", inst_path, "--solver", "four", "--out", sol_path]) == 0
    assert main(["verify", inst_path, sol_path]) == 0
    assert "OK" in capsys.readouterr().out


def test_solve_and_oracle_fixture_b(tmp_path, capsys):
    path = _file(tmp_path, "b.blv", serialize_instance(fixture_b()))
    assert main(["solve", path]) == 1
    assert capsys.readouterr().out.strip() == "INFEASIBLE"
    assert main(["oracle", path]) == 1
    assert capsys.readouterr().out.strip() == "INFEASIBLE"


def test_verify_tampered(tmp_path, capsys):
    inst = fixture_c()
    sol = solve_four_sided(inst)
    # swap the ports of two leaders whose exchange makes them cross
    tampered = None
    lds = list(sol.leaders)
    for i in range(len(lds)):
        for j in range(i + 1, len(lds)):
            try:
                a = leader_for(lds[i].site, lds[j].port)
                b = leader_for(lds[j].site, lds[i].port)
            except ValueError:
                continue
            cand = lds[:i] + [a] + lds[i + 1:j] + [b] + lds[j + 1:]
            if "Crossing" in verify_solution(inst, Solution(tuple(cand))).kinds():
                tampered = Solution(tuple(cand))
                break
        if tampered:
            break
    assert tampered is not None
    ip = _file(tmp_path, "c.blv", serialize_instance(inst))
    sp = _file(tmp_path, "bad.sol", serialize_solution(tampered))
    assert main(["verify", ip, sp]) == 1
    assert "Crossing" in capsys.readouterr().out


def test_bad_input_exit_2(tmp_path, capsys):
    path = _file(tmp_path, "x.blv", "blv1\nbounds 0 0 10 10\nsite 0 3 3\n")
    assert main(["solve", path]) == 2
    assert "unbalanced" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "missing.blv")]) == 2
    assert main(["no-such-command"]) == 2


def test_wrong_solver_for_sides(tmp_path):
    path = _file(tmp_path, "c.blv", serialize_instance(fixture_c()))
    assert main(["solve", path, "--solver", "three"]) == 2


def test_solve_and_oracle_agree(tmp_path, capsys):
    for seed in range(40):
        inst = gen_instance(GenSpec((2, 1, 2, 1), seed, Mode.RANDOM))
        path = _file(tmp_path, f"{seed}.blv", serialize_instance(inst))
        assert main(["solve", path]) == main(["oracle", path])
    capsys.readouterr()


def test_oracle_cap(tmp_path, capsys):
    inst = gen_instance(GenSpec((3, 3, 2, 2), 1, Mode.FEASIBLE))
    path = _file(tmp_path, "big.blv", serialize_instance(inst))
    assert main(["oracle", path, "--cap", "5"]) == 2
    assert "cap" in capsys.readouterr().err


def test_gen_is_deterministic(tmp_path, capsys):
    args = ["gen", "--n", "12", "--sides", "1,1,1,1", "--seed", "7"]
    assert main(args) == 0
    first = capsys.readouterr().out
    assert main(args) == 0
    assert capsys.readouterr().out == first
    inst = read_instance(first)
    assert inst.n == 12 and inst.counts == (3, 3, 3, 3)


def test_render(tmp_path, capsys):
    ip = _file(tmp_path, "c.blv", serialize_instance(fixture_c()))
    sp = str(tmp_path / "c.sol")
    main(["solve", ip, "--out", sp])
    assert main(["render", ip, "--solution", sp]) == 0
    svg = capsys.readouterr().out
    assert svg.startswith("<svg") and svg.count('stroke="#1f5fa8"') == 4


def test_svg_is_deterministic():
    inst = fixture_c()
    sol = solve_four_sided(inst)
    assert render_svg(inst, sol) == render_svg(inst, sol)
    assert render_svg(inst, sol).encode() == render_svg(read_instance(serialize_instance(inst)), sol).encode()


def test_svg_empty_instance_is_frame_only():
    svg = render_svg(make([], []))
    assert "<polygon" in svg
    assert not re.search(r"<(circle|polyline|text)", svg)


def test_bench_command(capsys):
    assert main(["bench", "--solver", "two", "--schedule", "4,8", "--repetitions", "1"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[-1].startswith("slope,")
    assert len(out) == 1 + 2 + 1  # header, one row per run, slope
