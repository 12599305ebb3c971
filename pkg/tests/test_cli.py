import json

import pytest

from awa2uba.cli import main

from conftest import DATA, GOLDEN

T1 = str(DATA / "t1.awa")


def test_build_to_file_with_stats(tmp_path, capsys):
    out = tmp_path / "t1.hoa"
    assert main(["build", "--algo", "u", "-i", T1, "-o", str(out), "--names", "--stats"]) == 0
    assert out.read_text() == (GOLDEN / "t1_u_names.hoa").read_text()
    stats = json.loads(capsys.readouterr().out)
    assert stats["macrostates"] == 6


def test_build_auto_and_prune(capsys):
    assert main(["build", "-i", T1, "--prune-unreachable-to-acceptance"]) == 0
    assert "States: 5" in capsys.readouterr().out


def test_eval(capsys):
    assert main(["eval", "-i", T1, "--lasso", ";a"]) == 0
    assert main(["eval", "-i", T1, "--state", "1", "--lasso", ";a"]) == 0
    assert capsys.readouterr().out.split() == ["reject", "accept"]


def test_trace(capsys):
    assert main(["trace", "-i", T1, "--lasso", "a;b"]) == 0
    out = capsys.readouterr().out
    assert "d={0:2}" in out and "U-macrorun (1 accepting)" in out


def test_check_unambiguous(tmp_path, capsys):
    assert main(["check-unambiguous", "-i", T1]) == 0
    assert main(["check-unambiguous", "-i", T1, "--algo", "brv"]) == 1
    hoa = tmp_path / "u.hoa"
    main(["build", "-i", T1, "-o", str(hoa)])
    assert main(["check-unambiguous", "-i", str(hoa)]) == 0
    assert "ambiguous on" in capsys.readouterr().out


def test_diff(capsys):
    assert main(["diff", "-i", T1, "--algo", "bu", "--max-prefix", "2", "--max-period", "2"]) == 0
    assert "equivalent on grid" in capsys.readouterr().out


def test_campaign_and_replay(tmp_path, capsys):
    report = tmp_path / "r.json"
    code = main(["campaign", "--count", "20", "--states", "5", "--algos", "brv",
                 "--require-unambiguous", "brv", "--lassos", "0", "--quiet",
                 "--artifacts", str(tmp_path / "art"), "--out", str(report)])
    assert code == 1
    assert json.loads(report.read_text())["passed"] is False
    case = sorted((tmp_path / "art").iterdir())[0]
    assert main(["replay", "--artifact", str(case)]) == 1
    assert "same verdict" in capsys.readouterr().out


def test_campaign_expect_ambiguous(capsys):
    code = main(["campaign", "--count", "20", "--states", "5", "--algos", "brv",
                 "--expect-ambiguous", "brv", "--lassos", "0", "--quiet"])
    assert code == 0
    assert "brv: 3 ambiguous instance(s)" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["build"],
    ["bogus"],
    ["eval", "-i", T1, "--lasso", "a b"],
    ["eval", "-i", T1, "--lasso", ";z"],
    ["build", "-i", "/nonexistent.awa"],
])
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.awa"
    bad.write_text("awa v1\nalphabet: a\nstates: 1\ninitial: 0\naccepting:\nstate 0:\n  a -> (0\n")
    assert main(["build", "-i", str(bad)]) == 2
    assert "line 7" in capsys.readouterr().err


def test_resource_limit_exit_code(monkeypatch, capsys):
    import awa2uba.cli as cli
    from awa2uba.verification import ResourceLimitError

    def boom(*args, **kwargs):
        raise ResourceLimitError("too many runs")
    monkeypatch.setattr(cli, "enumerate_lasso_macroruns", boom)
    assert main(["trace", "-i", T1, "--lasso", "a;b"]) == 3
