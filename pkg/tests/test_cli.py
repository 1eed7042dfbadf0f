import subprocess
import sys

import pytest

from mincorner.cli import main
from mincorner.gridio import GridParseError, emit_grid, parse_grid, render
from mincorner.grid import ColorGrid, count_corners, is_extension


@pytest.fixture
def gridfile(tmp_path):
    def make(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return make


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_example_and_round_trip():
    g = parse_grid("1 3 2\n1 0 2\n")
    assert g.cells.tolist() == [[1, 0, 2]] and g.k == 2
    text = "# comment\n2 2 3\n1  0\n\n3 2\n"
    assert emit_grid(parse_grid(text)) == "2 2 3\n1 0\n3 2\n"
    assert parse_grid(emit_grid(g)) == g


@pytest.mark.parametrize("text,line", [
    ("2 2 1\n1 0\n1\n", 3),
    ("1 2 2\n3 0\n", 2),
    ("x 2 2\n", 1),
    ("2 2 1\n1 0\n", 2),
    ("1 1 0\n0\n", 1),
])
def test_parse_errors_name_line(text, line):
    with pytest.raises(GridParseError) as exc:
        parse_grid(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_render():
    assert render(ColorGrid.from_rows([[1, 0]], k=1)) == "10\n"
    g = ColorGrid.from_rows([[1, 0, 3]], k=9)
    svg = render(g, "svg")
    assert svg == render(g, "svg")
    assert svg.count("<rect") == 3 and 'fill="none"' in svg
    with pytest.raises(ValueError):
        render(ColorGrid.from_rows([[1]], k=40), "svg")


def test_decide_exit_codes(capsys, gridfile):
    f = gridfile("1 3 1\n1 0 1\n")
    assert run(capsys, "decide", f, "--budget", "4")[0] == 0
    assert run(capsys, "decide", f, "--budget", "2")[0] == 1
    assert run(capsys, "decide", f, "--budget", "2", "--method", "exact")[0] == 1
    assert run(capsys, "decide", f)[0] == 2


def test_solve_output_is_valid(capsys, gridfile):
    src = "3 3 2\n1 0 2\n0 0 0\n2 0 1\n"
    f = gridfile(src)
    for flags in ([], ["--exact"], ["--fpt"], ["--approx"], ["--restrict", "1"]):
        code, out, _ = run(capsys, "solve", f, *flags)
        assert code == 0
        head, body = out.split("\n", 1)
        value = int(head.removeprefix("corners="))
        ext = parse_grid(body)
        allowed = {0, 1} if flags == ["--restrict", "1"] else {0, 1, 2}
        assert is_extension(parse_grid(src), ext, allowed)
        if "--restrict" not in flags and "--approx" not in flags:
            assert value == count_corners(ext)


def test_render_of_solve(capsys, gridfile):
    code, out, _ = run(capsys, "solve", gridfile("1 3 1\n1 0 1\n"))
    assert out.startswith("corners=4\n")
    code, out, _ = run(capsys, "render", gridfile(out.split("\n", 1)[1], "s.txt"))
    assert out == "111\n"


def test_cap_and_usage_errors(capsys, gridfile):
    white = gridfile("12 12 3\n" + "0 " * 12 + "\n" + ("0 " * 12 + "\n") * 11)
    code, _, err = run(capsys, "solve", white, "--state-cap", "1000")
    assert code == 3 and "resource limit" in err
    assert run(capsys, "solve", gridfile("1 1 1\n5\n"))[0] == 2
    assert run(capsys, "solve", "/nonexistent/grid")[0] == 2
    assert run(capsys, "solve", gridfile("1 1 1\n0\n"), "--restrict", "4")[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_kernelize_trace(capsys, gridfile):
    code, out, _ = run(capsys, "kernelize", gridfile("3 1 2\n1\n0\n2\n"), "--emit-trace")
    assert code == 0
    assert out.splitlines()[0] == "# trace: remove row 2"
    assert out.splitlines()[-3:] == ["2 1 2", "1", "2"]


def test_oracle_all(capsys, gridfile):
    code, out, _ = run(capsys, "oracle", gridfile("1 3 2\n1 0 2\n"), "--all")
    assert code == 0
    assert out.splitlines()[:2] == ["corners=8", "optima=3"]
    assert out.splitlines()[2:] == ["1 3 2", "1 0 2", "1 3 2", "1 1 2", "1 3 2", "1 2 2"]


def test_reduce_and_ilp(capsys, gridfile, tmp_path):
    formula = gridfile("p mono3 2 2\n+ 1 2\n- 1 2\n", "f.txt")
    emb = gridfile("pi: 1 2\nlambda: 1 1\nlambda: 2 -1\n", "e.txt")
    code, out, _ = run(capsys, "reduce", "--formula", formula, "--embedding", emb)
    assert code == 0 and out.startswith("# budget=40\n")
    assert parse_grid(out).shape == (17, 34)
    code, out, _ = run(capsys, "reduce", "--formula", formula, "--embedding", emb, "--general")
    assert out.startswith("# budget=84\n")

    g = gridfile("1 2 1\n1 0\n")
    lp = tmp_path / "m.lp"
    assert run(capsys, "ilp", "export", g, "-o", str(lp))[0] == 0
    assert lp.read_text().startswith("\\")
    code, out, _ = run(capsys, "ilp", "check", g, "--extension", gridfile("1 2 1\n1 1\n", "x.txt"))
    assert code == 0 and out == "feasible=true\ncorners=4\n"
    code, _, _ = run(capsys, "ilp", "check", g, "--extension", gridfile("1 2 1\n0 1\n", "y.txt"))
    assert code == 1
    assert run(capsys, "ilp", "check", g)[0] == 2


def test_deterministic_and_seed(capsys, gridfile):
    f = gridfile("3 3 2\n1 0 2\n0 0 0\n2 0 0\n")
    for cmd in (["solve", f], ["render", f, "--format", "svg"], ["ilp", "export", f]):
        outs = {run(capsys, *seed, *cmd)[1] for seed in ([], ["--seed", "1"], ["--seed", "99"])}
        assert len(outs) == 1


def test_module_entry_point(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("1 3 1\n1 0 1\n")
    res = subprocess.run([sys.executable, "-m", "mincorner", "solve", str(p)],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0 and res.stdout.startswith("corners=4")
