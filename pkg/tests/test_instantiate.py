"""On-demand plugin generation, compilation, caching and error reports.

Compile-count assertions call instantiate() directly because facade
dispatch consults the process-wide registry first, and other test
modules may already have warmed it. End-to-end miss behaviour is
checked in subprocesses, whose registries start empty.
"""

import json
import os
import subprocess
import sys
import textwrap
import threading

import pytest

import dynwfa
from dynwfa import bridges, instantiate
from dynwfa.errors import InstantiationError

A1_F2_TEXT = (
    "context = context<letterset<char_letters(ab)>, f2>\n"
    "$ -> 0\n"
    "0 -> 0 a, b\n"
    "0 -> 1 b\n"
    "1 -> 1 a, b\n"
    "1 -> $\n"
)

F2_SNAME = "context<letterset<char_letters>, f2>"
LAW_B_AUT = "mutable_automaton<context<wordset<char_letters>, b>>"

COLD_SCRIPT = textwrap.dedent(
    """
    import json
    import dynwfa
    from dynwfa import instantiate

    ctx = dynwfa.make_context("lal_char(ab), f2")
    aut = dynwfa.read_automaton(%r)
    for word in ("bb", "b"):
        w = dynwfa.make_word(ctx, word)
        print(dynwfa.print_value(dynwfa.evaluate(aut, w)))
    stats = instantiate.cache_stats()
    print(json.dumps({"compiles": stats["compiles"],
                      "cache_hits": stats["cache_hits"]}))
    """
    % A1_F2_TEXT
)


def run_cold_script(root):
    env = dict(os.environ, DYNWFA_PLUGINS=str(root))
    return subprocess.run(
        [sys.executable, "-c", COLD_SCRIPT],
        env=env,
        capture_output=True,
        text=True,
        timeout=120,
    )


# ---------- generation and caching ----------


def test_context_bundle_files_and_registration(tmp_path):
    instantiate.instantiate("make_context", [F2_SNAME])
    base = os.path.join(
        instantiate.plugin_root(),
        "contexts",
        "context%3Cletterset%3Cchar_letters%3E%2C%20f2%3E",
    )
    for ext in (".py", ".pyc", ".log"):
        assert os.path.exists(base + ext)
    assert instantiate.cache_stats()["compiles"] == 1
    # loading registered the context and its nullable companion
    assert F2_SNAME in bridges.REGISTRATION_REPORTS
    assert (
        "context<nullableset<letterset<char_letters>>, f2>"
        in bridges.REGISTRATION_REPORTS
    )


def test_algo_plugin_uses_encoded_signature_path():
    instantiate.instantiate("add_weights", ["z", "q"])
    base = os.path.join(instantiate.plugin_root(), "algos", "add_weights", "z%2C%20q")
    assert os.path.exists(base + ".py")
    assert os.path.exists(base + ".pyc")
    stats = instantiate.cache_stats()
    assert stats["compiles"] == 1 and stats["entries"] == 1


def test_second_call_is_a_cache_hit():
    sig = ["mutable_automaton<%s>" % F2_SNAME, "wordset<char_letters>"]
    instantiate.instantiate("evaluate", sig)
    instantiate.instantiate("evaluate", sig)
    stats = instantiate.cache_stats()
    assert stats["compiles"] == 1
    assert stats["cache_hits"] == 1


def test_generated_source_pins_host_fingerprint():
    instantiate.instantiate("add_weights", ["z", "q"])
    src = os.path.join(
        instantiate.plugin_root(), "algos", "add_weights", "z%2C%20q.py"
    )
    with open(src) as f:
        text = f.read()
    assert "# host-fingerprint: %s" % instantiate.host_fingerprint() in text


def test_changing_compile_flags_invalidates_cache(monkeypatch):
    instantiate.instantiate("add_weights", ["z", "q"])
    assert instantiate.cache_stats()["compiles"] == 1
    # the flag changes the compiler command, hence the fingerprint
    monkeypatch.setenv("DYNWFA_CCFLAGS", "--frontend-flag")
    instantiate.instantiate("add_weights", ["z", "q"])
    stats = instantiate.cache_stats()
    assert stats["compiles"] == 2 and stats["cache_hits"] == 0


def test_threads_share_one_compile():
    sig = ["mutable_automaton<%s>" % F2_SNAME, "wordset<char_letters>"]
    errors = []

    def work():
        try:
            instantiate.instantiate("evaluate", sig)
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=work) for _ in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    stats = instantiate.cache_stats()
    assert stats["compiles"] == 1
    assert stats["cache_hits"] == 3


def test_cache_clear_removes_artifacts():
    instantiate.instantiate("add_weights", ["z", "q"])
    assert instantiate.cache_stats()["entries"] == 1
    instantiate.cache_clear()
    stats = instantiate.cache_stats()
    assert stats["entries"] == 0
    assert not os.path.exists(stats["root"])


# ---------- cross-process behaviour ----------


def test_cold_then_warm_process(tmp_path):
    root = tmp_path / "shared"
    cold = run_cold_script(root)
    assert cold.returncode == 0, cold.stderr
    lines = cold.stdout.splitlines()
    assert lines[:2] == ["0", "1"]
    assert json.loads(lines[2]) == {"compiles": 1, "cache_hits": 0}

    warm = run_cold_script(root)
    assert warm.returncode == 0, warm.stderr
    lines = warm.stdout.splitlines()
    assert lines[:2] == ["0", "1"]
    assert json.loads(lines[2]) == {"compiles": 0, "cache_hits": 1}


def test_eight_concurrent_processes(tmp_path):
    root = tmp_path / "shared"
    env = dict(os.environ, DYNWFA_PLUGINS=str(root))
    procs = [
        subprocess.Popen(
            [sys.executable, "-c", COLD_SCRIPT],
            env=env,
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            text=True,
        )
        for _ in range(8)
    ]
    outs = [p.communicate(timeout=180) for p in procs]
    for p, (out, err) in zip(procs, outs):
        assert p.returncode == 0, err
        assert out.splitlines()[:2] == ["0", "1"]
    pycs = [
        f
        for f in os.listdir(root / "contexts")
        if f.endswith(".pyc")
    ]
    assert pycs == ["context%3Cletterset%3Cchar_letters%3E%2C%20f2%3E.pyc"]


# ---------- failure reporting ----------


def test_error_report_structure():
    with pytest.raises(InstantiationError) as exc:
        instantiate.instantiate("determinize", [LAW_B_AUT])
    lines = str(exc.value).splitlines()
    assert lines[0] == "determinize: requires a free labelset"
    i = lines.index("  failed signature:")
    assert lines[i + 1] == "    " + LAW_B_AUT
    j = lines.index("  available versions:")
    assert (
        "    mutable_automaton<context<letterset<char_letters>, b>>"
        in lines[j + 1 :]
    )
    k = lines.index("  failed command:")
    assert "_plugin_compile" in lines[k + 1]
    assert "static assertion failed: requires a free labelset" in exc.value.log
    assert exc.value.command[-1].endswith(".pyc")
    assert exc.value.command[-2].endswith(".py")


def test_unjoinable_operands_fail_at_compile_time():
    sig = [
        "mutable_automaton<context<letterset<char_letters>, b>>",
        "mutable_automaton<context<letterset<char_letters>, zmin>>",
    ]
    with pytest.raises(InstantiationError) as exc:
        instantiate.instantiate("product", sig)
    assert str(exc.value).splitlines()[0] == "product: no join for b and zmin"


def test_unknown_algorithm_rejected_before_any_write():
    with pytest.raises(InstantiationError) as exc:
        instantiate.instantiate("frobnicate", ["b"])
    assert str(exc.value).splitlines()[0].startswith(
        "frobnicate: unknown algorithm: frobnicate"
    )
    assert not os.path.exists(os.path.join(instantiate.plugin_root(), "algos"))


def test_invalid_signature_component_rejected_before_any_write():
    with pytest.raises(InstantiationError) as exc:
        instantiate.instantiate("evaluate", ["garbage<"])
    assert str(exc.value).splitlines()[0] == (
        "evaluate: invalid signature component: garbage<"
    )
    assert not os.path.exists(os.path.join(instantiate.plugin_root(), "algos"))


def test_failures_are_memoized():
    with pytest.raises(InstantiationError) as first:
        instantiate.instantiate("determinize", [LAW_B_AUT])
    log = os.path.join(
        instantiate.plugin_root(),
        "algos",
        "determinize",
        instantiate.encode_component(LAW_B_AUT) + ".log",
    )
    assert os.path.exists(log)
    os.unlink(log)
    with pytest.raises(InstantiationError) as second:
        instantiate.instantiate("determinize", [LAW_B_AUT])
    assert second.value is first.value
    # the compiler did not run again
    assert not os.path.exists(log)


def test_custom_compiler_command_shows_in_report(monkeypatch):
    monkeypatch.setenv("DYNWFA_CC", "/nonexistent/pycc --strict")
    with pytest.raises(InstantiationError) as exc:
        instantiate.instantiate("add_weights", ["q", "z"])
    text = str(exc.value)
    lines = text.splitlines()
    assert lines[0] == "add_weights: instantiation failed"
    k = lines.index("  failed command:")
    assert lines[k + 1].startswith("    /nonexistent/pycc --strict")
    assert exc.value.command[:2] == ["/nonexistent/pycc", "--strict"]
