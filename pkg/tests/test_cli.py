"""Command line behaviour, in-process and against a service."""

import subprocess
import sys

import pytest
from fastapi.testclient import TestClient

from dynwfa import cli
from dynwfa.service import create_app

A1_TEXT = (
    "context = context<letterset<char_letters(ab)>, b>\n"
    "$ -> 0\n"
    "0 -> 0 a, b\n"
    "0 -> 1 b\n"
    "1 -> 1 a, b\n"
    "1 -> $\n"
)

A2_TEXT = (
    "context = context<letterset<char_letters(ab)>, z>\n"
    "$ -> 0\n"
    "0 -> 0 a, b\n"
    "0 -> 1 b\n"
    "1 -> 1 a, b <2>\n"
    "1 -> $\n"
)

LAW_TEXT = (
    "context = context<wordset<char_letters(ab)>, b>\n"
    "$ -> 0\n"
    "0 -> 1 ab\n"
    "1 -> $\n"
)

TUPLE_TEXT = (
    "context = context<tupleset<letterset<char_letters(ab)>,"
    " wordset<char_letters(xy)>>, q>\n"
    "$ -> 0\n"
    "0 -> 1 a|xy <1/3>\n"
    "1 -> $\n"
)


@pytest.fixture()
def a2_path(tmp_path):
    path = tmp_path / "a2.txt"
    path.write_text(A2_TEXT)
    return str(path)


def run_cli(capsys, *argv):
    rc = cli.main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def test_context_prints_canonical_name(capsys):
    rc, out, _ = run_cli(capsys, "context", "lal_char(ab), zmin")
    assert rc == 0
    assert out == "context<letterset<char_letters(ab)>, zmin>\n"


def test_expression_prints_canonical_form(capsys):
    rc, out, _ = run_cli(
        capsys, "expression", "--context", "lal_char(ab), q", "<2>(b+a)"
    )
    assert rc == 0
    assert out == "<2/1>[ba]\n"


def test_evaluate(capsys, a2_path):
    rc, out, _ = run_cli(capsys, "evaluate", "--automaton", a2_path, "bb")
    assert rc == 0
    assert out == "3\n"


def test_is_proper(capsys, a2_path):
    rc, out, _ = run_cli(capsys, "is-proper", "--automaton", a2_path)
    assert rc == 0
    assert out == "true\n"


def test_pipeline_output(capsys):
    rc, out, _ = run_cli(
        capsys,
        "pipeline",
        "--context",
        "lal_char(abc), b",
        "--expr",
        "[abc]*[abc]*",
    )
    assert rc == 0
    assert out == "states: 1\nexpression: [abc]*\n"


def test_add_weights_output(capsys):
    rc, out, _ = run_cli(
        capsys,
        "add-weights",
        "--left-context",
        "lal_char(ab), z",
        "--left",
        "2",
        "--right-context",
        "lal_char(ab), q",
        "--right",
        "1/2",
    )
    assert rc == 0
    assert out == "weightset: q\nweight: 5/2\n"


def test_minimize_writes_output_file(capsys, tmp_path):
    src = tmp_path / "a1.txt"
    src.write_text(A1_TEXT)
    dst = tmp_path / "min.txt"
    rc, out, _ = run_cli(
        capsys,
        "minimize",
        "--automaton",
        str(src),
        "--algo",
        "brzozowski",
        "--output",
        str(dst),
    )
    assert rc == 0 and out == ""
    assert dst.read_text() == (
        "context = context<letterset<char_letters(ab)>, b>\n"
        "$ -> 0\n"
        "0 -> 0 a\n"
        "0 -> 1 b\n"
        "1 -> 1 a, b\n"
        "1 -> $\n"
    )


def test_product_of_files(capsys, tmp_path, a2_path):
    rc, out, _ = run_cli(capsys, "product", a2_path, a2_path)
    assert rc == 0
    prod = tmp_path / "prod.txt"
    prod.write_text(out)
    rc, out, _ = run_cli(capsys, "evaluate", "--automaton", str(prod), "bb")
    assert out == "9\n"


def test_to_expression(capsys, tmp_path):
    src = tmp_path / "a1.txt"
    src.write_text(A1_TEXT)
    rc, out, _ = run_cli(capsys, "to-expression", "--automaton", str(src))
    assert rc == 0
    assert out == "[ab]*b[ab]*\n"


def test_focus(capsys, tmp_path):
    src = tmp_path / "t.txt"
    src.write_text(TUPLE_TEXT)
    rc, out, _ = run_cli(capsys, "focus", "--automaton", str(src), "--tape", "1")
    assert rc == 0
    assert out.startswith("context = context<wordset<char_letters(xy)>, q>")


def test_dot(capsys, a2_path):
    rc, out, _ = run_cli(capsys, "dot", "--automaton", a2_path)
    assert rc == 0
    assert out.startswith("digraph")
    assert '1 -> 1 [label = "<2>a, <2>b"]' in out


def test_cache_stats_and_clear(capsys):
    rc, out, _ = run_cli(capsys, "cache", "stats")
    assert rc == 0
    assert out.startswith("compiles: ")
    rc, out, _ = run_cli(capsys, "cache", "clear")
    assert rc == 0 and out == "cleared\n"


def test_registry_list(capsys):
    rc, out, _ = run_cli(capsys, "registry", "list")
    assert rc == 0
    lines = out.splitlines()
    assert "evaluate" in lines
    assert any(line.startswith("  mutable_automaton<") for line in lines)


def test_domain_error_goes_to_stderr(capsys, tmp_path):
    src = tmp_path / "law.txt"
    src.write_text(LAW_TEXT)
    rc, out, err = run_cli(capsys, "evaluate", "--automaton", str(src), "ab")
    assert rc == 1
    assert out == ""
    assert err.splitlines()[0] == "evaluate: requires a free labelset"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dynwfa", "context", "lal_char(ab), b"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert proc.stdout == "context<letterset<char_letters(ab)>, b>\n"


# ---------- server mode ----------


@pytest.fixture()
def server_mode(monkeypatch):
    monkeypatch.setattr(
        cli, "_http_client", lambda base_url: TestClient(create_app())
    )


def test_server_mode_matches_local_output(capsys, a2_path, server_mode):
    local = {}
    remote = {}
    for target, extra in ((local, []), (remote, ["--server", "http://svc"])):
        rc, out, _ = run_cli(capsys, *extra, "evaluate", "--automaton", a2_path, "bb")
        assert rc == 0
        target["evaluate"] = out
        rc, out, _ = run_cli(
            capsys,
            *extra,
            "pipeline",
            "--context",
            "lal_char(abc), b",
            "--expr",
            "[abc]*[abc]*",
        )
        assert rc == 0
        target["pipeline"] = out
        rc, out, _ = run_cli(
            capsys,
            *extra,
            "add-weights",
            "--left-context",
            "lal_char(ab), z",
            "--left",
            "2",
            "--right-context",
            "lal_char(ab), q",
            "--right",
            "1/2",
        )
        assert rc == 0
        target["add"] = out
    assert local == remote


def test_server_mode_relays_error_detail(capsys, tmp_path, server_mode):
    src = tmp_path / "law.txt"
    src.write_text(LAW_TEXT)
    rc, out, err = run_cli(
        capsys,
        "--server",
        "http://svc",
        "evaluate",
        "--automaton",
        str(src),
        "ab",
    )
    assert rc == 1
    assert err.splitlines()[0] == "evaluate: requires a free labelset"
