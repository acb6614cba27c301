"""Stable surface for generated bridge plugins.

Generated modules import only this module. Everything here must keep its
name and calling convention: compiled plugins from older runs call it at
load time. Static failures raise StaticAssertionError, which the compile
driver turns into a 'static assertion failed:' diagnostic line.
"""

from __future__ import annotations

from functools import reduce

from . import bridges
from .algebra import (
    Context,
    LetterSet,
    NullableSet,
    TupleLabelSet,
    WordSet,
    join_contexts,
    join_weightsets,
    make_valueset,
)
from .errors import JoinError, ParseError, StaticAssertionError


def static_assert(condition, message):
    if not condition:
        raise StaticAssertionError(message)


def check_context(sname):
    """Parse an sname and insist it denotes a context; returns it."""
    try:
        vs = make_valueset(str(sname))
    except ParseError as exc:
        raise StaticAssertionError("not a context: %s (%s)" % (sname, exc)) from None
    static_assert(isinstance(vs, Context), "not a context: %s" % sname)
    return vs


def context_kind(sname):
    """The labelset kind of a context sname."""
    ctx = check_context(sname)
    ls = ctx.labelset
    if isinstance(ls, LetterSet):
        return "letterset"
    if isinstance(ls, NullableSet):
        return "nullableset"
    if isinstance(ls, WordSet):
        return "wordset"
    return "tupleset"


def _embedded_context_snames(sig_strings):
    out = []
    for s in sig_strings:
        s = str(s)
        if s.startswith("mutable_automaton<") or s.startswith("expressionset<"):
            out.append(s[s.index("<") + 1 : -1])
        elif s.startswith("context<"):
            out.append(s)
    return out


def _weightset_of(sname):
    try:
        vs = make_valueset(str(sname))
    except ParseError as exc:
        raise StaticAssertionError(
            "not a weightset: %s (%s)" % (sname, exc)
        ) from None
    static_assert(
        not vs.is_labelset and not isinstance(vs, Context),
        "not a weightset: %s" % sname,
    )
    return vs


def check_preconditions(name, sig_strings):
    """Every static check an instantiation of (name, signature) must pass."""
    row = bridges.ALGO_TABLE.get(name)
    static_assert(row is not None, "unknown algorithm: %s" % name)
    contexts = [check_context(s) for s in _embedded_context_snames(sig_strings)]
    for ctx in contexts:
        for message, pred in row.preconditions:
            static_assert(pred(ctx), message)
    if row.join_over == "contexts" and len(contexts) > 1:
        try:
            reduce(join_contexts, contexts)
        except JoinError as exc:
            raise StaticAssertionError(str(exc)) from None
    elif row.join_over == "weightsets":
        try:
            reduce(join_weightsets, [_weightset_of(s) for s in sig_strings])
        except JoinError as exc:
            raise StaticAssertionError(str(exc)) from None


def monomorphize(name, sig_strings):
    """Build the bridge callable for a concrete signature."""
    row = bridges.ALGO_TABLE.get(name)
    static_assert(row is not None, "unknown algorithm: %s" % name)
    return row.factory([str(s) for s in sig_strings])


def register_context_bridges(host, sname):
    """Register the full standard function set of a context (and of its
    nullable companion when there is one) through the host services."""
    ctx = check_context(sname)
    contexts = [ctx]
    if isinstance(ctx.labelset, LetterSet):
        contexts.append(ctx.nullable())
    for c in contexts:
        report = bridges.register_functions(c, host.set)
        host.report(report)
