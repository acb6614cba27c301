"""Timing comparisons between the typed layer and the dynamic facade.

Two scenarios are measured. The dispatch report times a single cheap
call (is_proper on a one-state automaton) four ways, so the cost of
name-based dispatch is visible next to plain and virtual calls. The
pipeline report runs expression -> thompson -> proper -> determinize ->
minimize -> to_expression many times through both layers and compares
the totals; the facade only pays its toll at the boundary, so the
relative overhead shrinks as the work grows.

Times come from time.perf_counter over whole loops, best of several
repeats, so one-off hiccups do not inflate the numbers. The pipeline
loops run in alternating chunks and each lane keeps its best chunk;
that way background drift hits both lanes alike instead of whichever
one happens to run last.
"""

import time

from . import algorithms, bridges
from .algebra import make_valueset
from .automata import read_automaton_text
from .expressions import ExpressionSet

_TINY_TEXT = (
    "context = context<letterset<char_letters(ab)>, b>\n"
    "$ -> 0\n"
    "0 -> $\n"
)

_PIPELINE_SPEC = "context<letterset<char_letters(abc)>, b>"
_PIPELINE_EXPR = "[abc]*[abc]*"


def _best_ns_per_call(fn, loops, repeat):
    best = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(loops):
            fn()
        elapsed = time.perf_counter() - t0
        if best is None or elapsed < best:
            best = elapsed
    return best / loops * 1e9


class _Probe:
    def probe(self, aut):
        raise NotImplementedError


class _IsProperProbe(_Probe):
    def probe(self, aut):
        return algorithms.is_proper(aut)


def dispatch_report(loops=20000, repeat=3):
    """Time is_proper through four call paths, in ns per call."""
    aut = read_automaton_text(_TINY_TEXT)
    aut_dv = bridges.read_automaton(_TINY_TEXT)
    probe = _IsProperProbe()

    def empty():
        pass

    rows = {
        "empty": _best_ns_per_call(empty, loops, repeat),
        "static": _best_ns_per_call(
            lambda: algorithms.is_proper(aut), loops, repeat
        ),
        "virtual": _best_ns_per_call(lambda: probe.probe(aut), loops, repeat),
        "dyn": _best_ns_per_call(
            lambda: bridges.is_proper(aut_dv), loops, repeat
        ),
    }
    rows["ratio_dyn_virtual"] = rows["dyn"] / rows["virtual"]
    return rows


def pipeline_report(iterations=10000, chunks=5):
    """Run the full pipeline both ways and compare wall-clock totals.

    The iterations are split into alternating static and dyn chunks and
    each lane reports its best chunk scaled back to the full count, so a
    slowdown halfway through the measurement cannot charge one lane only.
    """
    ctx = make_valueset(_PIPELINE_SPEC)
    es = ExpressionSet(ctx)
    expr = es.parse(_PIPELINE_EXPR)
    ctx_dv = bridges.make_context(_PIPELINE_SPEC)
    expr_dv = bridges.read_expression(ctx_dv, _PIPELINE_EXPR)

    def static_pipe():
        aut = algorithms.thompson(es, expr)
        aut = algorithms.proper(aut)
        aut = algorithms.determinize(aut)
        aut = algorithms.minimize(aut)
        return aut, algorithms.to_expression(aut)

    def dyn_pipe():
        aut = bridges.thompson(expr_dv)
        aut = bridges.proper(aut)
        aut = bridges.determinize(aut)
        aut = bridges.minimize(aut)
        return aut, bridges.to_expression(aut)

    minimized, final_expr = static_pipe()
    minimized_dv, final_expr_dv = dyn_pipe()

    per_chunk = max(1, iterations // chunks)
    static_best = None
    dyn_best = None
    for _ in range(chunks):
        t0 = time.perf_counter()
        for _ in range(per_chunk):
            static_pipe()
        elapsed = time.perf_counter() - t0
        if static_best is None or elapsed < static_best:
            static_best = elapsed

        t0 = time.perf_counter()
        for _ in range(per_chunk):
            dyn_pipe()
        elapsed = time.perf_counter() - t0
        if dyn_best is None or elapsed < dyn_best:
            dyn_best = elapsed

    static_s = static_best / per_chunk * iterations
    dyn_s = dyn_best / per_chunk * iterations

    return {
        "iterations": iterations,
        "static_s": static_s,
        "dyn_s": dyn_s,
        "overhead": dyn_s / static_s - 1.0,
        "states": minimized.strip().num_states(),
        "expression": es.print_value(final_expr),
        "dyn_states": minimized_dv.as_(
            "mutable_automaton<%s>" % minimized_dv.valueset.sname()
        ).num_states(),
        "dyn_expression": bridges.print_value(final_expr_dv),
    }


def format_dispatch_report(rows):
    lines = ["%-8s %12.1f ns/call" % (k, rows[k])
             for k in ("empty", "static", "virtual", "dyn")]
    lines.append("dyn/virtual ratio: %.1f" % rows["ratio_dyn_virtual"])
    return "\n".join(lines)


def format_pipeline_report(rows):
    return "\n".join(
        [
            "iterations: %d" % rows["iterations"],
            "static: %.3f s" % rows["static_s"],
            "dyn:    %.3f s" % rows["dyn_s"],
            "overhead: %.1f%%" % (100.0 * rows["overhead"]),
            "states: %d" % rows["states"],
            "expression: %s" % rows["expression"],
        ]
    )
