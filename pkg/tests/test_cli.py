from __future__ import annotations

import pytest

from nsdplanar import io
from nsdplanar.cli import EXIT_BREACH, EXIT_BUDGET, EXIT_INPUT, EXIT_OK, main
from nsdplanar.families import complete_graph, cycle_graph, disjoint_union, path_graph, star_graph, wheel_graph
from nsdplanar.fixtures import star_fixture


@pytest.fixture
def files(tmp_path):
    def write(name, g):
        p = tmp_path / name
        io.write_graph(g, p)
        return str(p)

    return write


def test_chi_sum_prints_value_and_witness(files, capsys):
    assert main(["chi-sum", files("p4.txt", path_graph(4))]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "3" and len(out) == 4
    assert main(["chi-sum", files("c5.txt", cycle_graph(5))]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "5"


def test_malformed_input_exit_one(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("3 1\n0 zz\n")
    assert main(["chi-sum", str(p)]) == EXIT_INPUT
    assert "bad.txt:2:" in capsys.readouterr().err


def test_budget_exit_two(files, capsys):
    assert main(["chi-sum", files("w.txt", wheel_graph(6)), "--node-limit", "3"]) == EXIT_BUDGET


def test_detect(files, capsys):
    assert main(["detect", files("p5.txt", path_graph(5)), "--k", "28"]) == EXIT_OK
    assert any(line.startswith("C3 ") for line in capsys.readouterr().out.splitlines())
    assert main(["detect", files("k2.txt", path_graph(2)), "--k", "28"]) == EXIT_INPUT
    assert "isolated edge" in capsys.readouterr().err


def test_discharge_k4(files, capsys):
    assert main(["discharge", files("k4.txt", complete_graph(4))]) == EXIT_OK
    out = capsys.readouterr().out
    assert "total(before)=-12/1 total(after)=-12/1" in out
    assert "violations: 4" in out and "\nX " not in out


def test_discharge_star_with_rotation(tmp_path, capsys):
    g, rs = star_fixture()
    io.write_graph(g, tmp_path / "s.txt")
    (tmp_path / "s.rot").write_text(io.format_rotation(rs))
    assert main(["discharge", str(tmp_path / "s.txt"), str(tmp_path / "s.rot")]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert sum(line.endswith(" RT") for line in out) == 8
    assert "VIOLATION 0 final=-6/1 floor=0/1" in out


def test_discharge_rejects_nonplanar(files, capsys):
    assert main(["discharge", files("k5.txt", complete_graph(5))]) == EXIT_INPUT


def test_construct_then_verify(files, tmp_path, capsys):
    gpath = files("w30.txt", wheel_graph(30))
    out = tmp_path / "w30.col"
    assert main(["construct", gpath, "--k", "30", "--trace", "--out", str(out)]) == EXIT_OK
    trace = capsys.readouterr().out.splitlines()
    assert trace and all(line.startswith("# ") for line in trace)
    assert main(["verify", gpath, str(out)]) == EXIT_OK
    assert capsys.readouterr().out.startswith("proper: yes, nsd: yes")


def test_construct_star_plus_triangle(files, capsys):
    g = disjoint_union(star_graph(30), complete_graph(3))
    assert main(["construct", files("s.txt", g), "--natural-order"]) == EXIT_OK


def test_verify_k3(files, tmp_path, capsys):
    gpath = files("k3.txt", complete_graph(3))
    col = tmp_path / "k3-123.col"
    col.write_text("0 1 1\n1 2 2\n0 2 3\n")
    assert main(["verify", gpath, str(col)]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[0] == "proper: yes, nsd: yes"
    col.write_text("0 1 1\n1 2 1\n0 2 3\n")
    assert main(["verify", gpath, str(col)]) == EXIT_INPUT
    assert "proper: no" in capsys.readouterr().out


def test_gen_then_detect(tmp_path, capsys):
    base = tmp_path / "g40"
    assert main(["gen", "--n", "40", "--seed", "7", "--out", str(base)]) == EXIT_OK
    capsys.readouterr()
    assert main(["detect", str(base.with_suffix(".txt"))]) == EXIT_OK
    assert capsys.readouterr().out.strip() != "no configuration"
    assert main(["discharge", str(base.with_suffix(".txt")), str(base.with_suffix(".rot"))]) == EXIT_OK


def test_gen_is_deterministic(capsys):
    main(["gen", "--n", "20", "--seed", "3", "--density", "triangulation-minus"])
    a = capsys.readouterr().out
    main(["gen", "--n", "20", "--seed", "3", "--density", "triangulation-minus"])
    assert capsys.readouterr().out == a


def test_invariant_breach_exit_three(files, monkeypatch, capsys):
    from nsdplanar import cli
    from nsdplanar.errors import InvariantBreach

    def boom(*a, **kw):
        raise InvariantBreach("forced")

    monkeypatch.setattr(cli, "chi_sum_exact", boom)
    assert main(["chi-sum", files("p3.txt", path_graph(3))]) == EXIT_BREACH


def test_bad_k_rejected_by_argparse(files):
    with pytest.raises(SystemExit):
        main(["detect", files("p3.txt", path_graph(3)), "--k", "0"])
