"""Algorithms on weighted automata and expressions.

Every function here is statically typed in spirit: it takes concrete
automata, expression sets and weightsets, checks its preconditions, and
raises PreconditionError with a stable message when they fail. The dynamic
facade reuses these messages verbatim.
"""

from __future__ import annotations

import itertools
from collections import deque
from functools import reduce

from .algebra import (
    BooleanWeightSet,
    Context,
    LetterSet,
    TupleLabelSet,
    join_contexts,
    join_weightsets,
)
from .automata import (
    FocusAutomaton,
    MutableAutomaton,
    ProductAutomaton,
    SubsetAutomaton,
)
from .errors import PreconditionError
from .expressions import Atom, ExpressionSet, LWeight, One, Prod, Star, Sum, Zero


def _require_free(aut):
    if not aut.context.labelset.is_free:
        raise PreconditionError("requires a free labelset")


def _require_boolean(aut):
    if not isinstance(aut.context.weightset, BooleanWeightSet):
        raise PreconditionError("requires Boolean weightset")


def letters_of(labelset):
    """Every letter-label of a free labelset, in sorted order."""
    if isinstance(labelset, LetterSet):
        return list(labelset.alphabet.letters)
    if isinstance(labelset, TupleLabelSet) and labelset.is_free:
        return [
            tuple(combo)
            for combo in itertools.product(
                *(letters_of(c) for c in labelset.components)
            )
        ]
    raise PreconditionError("requires a free labelset")


# ---------- evaluation ----------


def evaluate(aut, word):
    """The weight of a word: the sum over all accepting paths."""
    _require_free(aut)
    ls = aut.context.labelset
    ws = aut.context.weightset
    for letter in word:
        ls.validate(letter)
    weights = dict(aut.initial())
    for letter in word:
        nxt = {}
        for s, w in weights.items():
            for label, dst, tw in aut.out(s):
                if ls.equal_to(label, letter):
                    acc = ws.mul(w, tw)
                    nxt[dst] = ws.add(nxt[dst], acc) if dst in nxt else acc
        weights = nxt
    total = ws.zero()
    for s, w in weights.items():
        total = ws.add(total, ws.mul(w, aut.final_weight(s)))
    return total


def is_proper(aut):
    """Whether the automaton has no spontaneous (empty-labelled) transition."""
    ls = aut.context.labelset
    if ls.is_free:
        return True
    for _, label, _, _ in aut.transitions():
        if ls.is_one(label):
            return False
    return True


# ---------- expression to automaton ----------


def thompson(es, expr):
    """The Thompson automaton of an expression, over the nullable context.

    One initial and one final state; a left weight is pushed onto the
    outgoing transitions of its child's initial state.
    """
    ctx = es.context.nullable()
    ls = ctx.labelset
    ws = ctx.weightset
    eps = ls.one()
    aut = MutableAutomaton(ctx)

    def build(e):
        if isinstance(e, Zero):
            return aut.add_state(), aut.add_state()
        if isinstance(e, One):
            i, f = aut.add_state(), aut.add_state()
            aut.add_transition(i, eps, f)
            return i, f
        if isinstance(e, Atom):
            i, f = aut.add_state(), aut.add_state()
            aut.add_transition(i, e.label, f)
            return i, f
        if isinstance(e, Sum):
            i, f = aut.add_state(), aut.add_state()
            for child in e.children:
                ci, cf = build(child)
                aut.add_transition(i, eps, ci)
                aut.add_transition(cf, eps, f)
            return i, f
        if isinstance(e, Prod):
            pairs = [build(child) for child in e.children]
            for (_, cf), (ni, _) in zip(pairs, pairs[1:]):
                aut.add_transition(cf, eps, ni)
            return pairs[0][0], pairs[-1][1]
        if isinstance(e, Star):
            ci, cf = build(e.child)
            i, f = aut.add_state(), aut.add_state()
            aut.add_transition(i, eps, ci)
            aut.add_transition(cf, eps, f)
            aut.add_transition(i, eps, f)
            aut.add_transition(cf, eps, ci)
            return i, f
        if isinstance(e, LWeight):
            ci, cf = build(e.child)
            for label, dst, w in aut.out(ci):
                aut.set_transition(ci, label, dst, ws.mul(e.weight, w))
            return ci, cf
        raise TypeError("not an expression: %r" % (e,))

    i, f = build(expr)
    aut.set_initial(i)
    aut.set_final(f)
    return aut


# ---------- spontaneous transition removal ----------


def _matrix_star(mat, ws):
    """All-pairs star closure (identity included) of a weight matrix."""
    n = len(mat)
    cur = [row[:] for row in mat]
    for k in range(n):
        skk = ws.star(cur[k][k])
        nxt = [row[:] for row in cur]
        for i in range(n):
            if ws.is_zero(cur[i][k]):
                continue
            left = ws.mul(cur[i][k], skk)
            for j in range(n):
                if ws.is_zero(cur[k][j]):
                    continue
                nxt[i][j] = ws.add(nxt[i][j], ws.mul(left, cur[k][j]))
        cur = nxt
    for i in range(n):
        cur[i][i] = ws.add(cur[i][i], ws.one())
    return cur


def _boolean_closure(edges, n):
    """Reflexive-transitive closure of a boolean edge set, as successor sets."""
    closure = []
    for start in range(n):
        seen = {start}
        todo = deque([start])
        while todo:
            s = todo.popleft()
            for d in edges.get(s, ()):
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        closure.append(seen)
    return closure


def proper(aut):
    """Eliminate spontaneous transitions; the result lives in the freed context.

    Backward elimination: initial weights are kept, and every transition and
    final weight is pre-composed with the star closure of the spontaneous
    part. A diagonal star that does not converge raises NotStarrable.
    """
    ls = aut.context.labelset
    ws = aut.context.weightset
    res_ctx = aut.context.freed()
    res = MutableAutomaton(res_ctx)
    res.add_states(aut.num_states())
    for s, w in aut.initial():
        res.set_initial(s, w)
    if ls.is_free:
        for s, w in aut.final():
            res.set_final(s, w)
        for src, label, dst, w in aut.transitions():
            res.set_transition(src, label, dst, w)
        return res

    n = aut.num_states()
    plain = []
    if isinstance(ws, BooleanWeightSet):
        edges = {}
        for src, label, dst, w in aut.transitions():
            if ls.is_one(label):
                edges.setdefault(src, []).append(dst)
            else:
                plain.append((src, label, dst, w))
        reach = _boolean_closure(edges, n)
        closure = [
            [ws.one() if q in reach[p] else ws.zero() for q in range(n)]
            for p in range(n)
        ]
    else:
        mat = [[ws.zero()] * n for _ in range(n)]
        for src, label, dst, w in aut.transitions():
            if ls.is_one(label):
                mat[src][dst] = ws.add(mat[src][dst], w)
            else:
                plain.append((src, label, dst, w))
        closure = _matrix_star(mat, ws)

    by_src = {}
    for src, label, dst, w in plain:
        by_src.setdefault(src, []).append((label, dst, w))
    # non-spontaneous labels are valid as-is in the freed labelset
    for p in range(n):
        row = closure[p]
        for q in range(n):
            c = row[q]
            if ws.is_zero(c):
                continue
            for label, r, v in by_src.get(q, ()):
                res.add_transition(p, label, r, ws.mul(c, v))
            fq = aut.final_weight(q)
            if not ws.is_zero(fq):
                res.add_final(p, ws.mul(c, fq))
    return res


# ---------- structural helpers ----------


def is_deterministic(aut):
    if len(aut.initial()) > 1:
        return False
    for src in aut.states():
        seen = set()
        for label, _, _ in aut.out(src):
            if label in seen:
                return False
            seen.add(label)
    return True


def is_complete(aut):
    letters = letters_of(aut.context.labelset)
    if not aut.initial():
        return False
    for src in aut.states():
        have = {label for label, _, _ in aut.out(src)}
        if len(have) < len(letters):
            return False
    return True


def accessible(aut):
    """The accessible part, states renumbered in increasing id order."""
    seen = set(s for s, _ in aut.initial())
    todo = deque(sorted(seen))
    while todo:
        s = todo.popleft()
        for _, dst, _ in aut.out(s):
            if dst not in seen:
                seen.add(dst)
                todo.append(dst)
    keep = sorted(seen)
    index = {old: new for new, old in enumerate(keep)}
    res = MutableAutomaton(aut.context)
    res.add_states(len(keep))
    for s, w in aut.initial():
        res.set_initial(index[s], w)
    for s, w in aut.final():
        if s in index:
            res.set_final(index[s], w)
    for src, label, dst, w in aut.transitions():
        if src in index and dst in index:
            res.set_transition(index[src], label, index[dst], w)
    return res


def complete(aut):
    """Add a sink so every state has one transition per letter."""
    _require_free(aut)
    letters = letters_of(aut.context.labelset)
    res = aut.copy_plain()
    sink = None

    def the_sink():
        nonlocal sink
        if sink is None:
            sink = res.add_state()
        return sink

    if not res.initial():
        res.set_initial(the_sink())
    for src in list(res.states()):
        have = {label for label, _, _ in res.out(src)}
        for letter in letters:
            if letter not in have:
                res.set_transition(src, letter, the_sink())
    if sink is not None:
        for letter in letters:
            if not any(l == letter for l, _, _ in res.out(sink)):
                res.set_transition(sink, letter, sink)
    return res


def reverse(aut):
    """Transpose: arrows flipped, initial and final exchanged."""
    res = MutableAutomaton(aut.context)
    res.add_states(aut.num_states())
    for s, w in aut.initial():
        res.set_final(s, w)
    for s, w in aut.final():
        res.set_initial(s, w)
    for src, label, dst, w in aut.transitions():
        res.set_transition(dst, label, src, w)
    return res


# ---------- determinization ----------


def determinize(aut):
    """Boolean subset construction; explores every letter, so the result is
    deterministic and complete (an empty subset serves as the sink)."""
    _require_boolean(aut)
    _require_free(aut)
    ls = aut.context.labelset
    letters = letters_of(ls)
    succ = [dict() for _ in aut.states()]
    for src, label, dst, _ in aut.transitions():
        succ[src].setdefault(label, set()).add(dst)
    finals = {s for s, _ in aut.final()}

    res = SubsetAutomaton(aut.context, aut)
    index = {}
    todo = deque()

    def state_of(subset):
        if subset not in index:
            index[subset] = res.add_state_from(subset)
            todo.append(subset)
            if subset & finals:
                res.set_final(index[subset])
        return index[subset]

    start = frozenset(s for s, _ in aut.initial())
    res.set_initial(state_of(start))
    while todo:
        subset = todo.popleft()
        src = index[subset]
        for letter in letters:
            targets = set()
            for s in subset:
                targets |= succ[s].get(letter, set())
            res.set_transition(src, letter, state_of(frozenset(targets)))
    return res


# ---------- minimization ----------

_MINIMIZE_ALGOS = ("auto", "brzozowski", "moore", "signature")


def minimize(aut, algo="auto"):
    """The minimal complete deterministic automaton of the language."""
    _require_free(aut)
    _require_boolean(aut)
    if algo not in _MINIMIZE_ALGOS:
        raise PreconditionError("unknown algorithm: %r" % (algo,))
    if algo == "auto":
        algo = "signature" if is_deterministic(aut) else "brzozowski"
    if algo == "brzozowski":
        return determinize(reverse(determinize(reverse(aut))))
    if not is_deterministic(aut):
        raise PreconditionError("requires a deterministic automaton")
    work = complete(accessible(aut))
    letters = letters_of(work.context.labelset)
    succ = []
    for s in work.states():
        row = {label: dst for label, dst, _ in work.out(s)}
        succ.append([row[letter] for letter in letters])
    finals = {s for s, _ in work.final()}
    cls = [1 if s in finals else 0 for s in work.states()]
    if algo == "moore":
        cls = _moore_refine(cls, succ, len(letters))
    else:
        cls = _signature_refine(cls, succ)
    return _quotient(work, cls)


def _renumber(cls, states):
    """Normalize class ids to first-occurrence order; returns (cls, count)."""
    remap = {}
    out = []
    for s in states:
        c = cls[s]
        if c not in remap:
            remap[c] = len(remap)
        out.append(remap[c])
    return out, len(remap)


def _moore_refine(cls, succ, num_letters):
    """Refine one letter at a time until no letter splits any class."""
    n = len(cls)
    cls, count = _renumber(cls, range(n))
    while True:
        changed = False
        for a in range(num_letters):
            key = [(cls[s], cls[succ[s][a]]) for s in range(n)]
            ids = {}
            nxt = []
            for s in range(n):
                if key[s] not in ids:
                    ids[key[s]] = len(ids)
                nxt.append(ids[key[s]])
            if len(ids) != count:
                cls, count = nxt, len(ids)
                changed = True
        if not changed:
            return cls


def _signature_refine(cls, succ):
    """Refine all letters at once, grouping states by signature."""
    n = len(cls)
    cls, count = _renumber(cls, range(n))
    while True:
        buckets = {}
        nxt = []
        for s in range(n):
            sig = (cls[s], tuple(cls[d] for d in succ[s]))
            if sig not in buckets:
                buckets[sig] = len(buckets)
            nxt.append(buckets[sig])
        if len(buckets) == count:
            return nxt
        cls, count = nxt, len(buckets)


def _quotient(aut, cls):
    count = max(cls) + 1 if cls else 0
    res = MutableAutomaton(aut.context)
    res.add_states(count)
    rep = {}
    for s in aut.states():
        rep.setdefault(cls[s], s)
    for s, w in aut.initial():
        res.set_initial(cls[s], w)
    for s, w in aut.final():
        res.set_final(cls[s], w)
    for c, s in rep.items():
        for label, dst, w in aut.out(s):
            res.set_transition(c, label, cls[dst], w)
    return res


# ---------- combinations ----------


def product(auts):
    """Synchronized product of any number of automata, single left-to-right
    pass over tuples of states; weights are multiplied in the joined
    weightset."""
    auts = list(auts)
    if not auts:
        raise PreconditionError("empty operand list")
    for a in auts:
        _require_free(a)
    ctx = reduce(join_contexts, (a.context for a in auts))
    ls = ctx.labelset
    ws = ctx.weightset
    res = ProductAutomaton(ctx, auts)
    index = {}
    todo = deque()

    def state_of(tup):
        if tup not in index:
            index[tup] = res.add_state_from(tup)
            todo.append(tup)
        return index[tup]

    for combo in itertools.product(*(a.initial() for a in auts)):
        tup = tuple(s for s, _ in combo)
        w = ws.one()
        for (_, wi), a in zip(combo, auts):
            w = ws.mul(w, ws.conv(a.context.weightset, wi))
        res.add_initial(state_of(tup), w)

    while todo:
        tup = todo.popleft()
        src = index[tup]
        outs = []
        for a, s in zip(auts, tup):
            table = {}
            for label, dst, w in a.out(s):
                lab = ls.conv(a.context.labelset, label)
                table.setdefault(lab, []).append(
                    (dst, ws.conv(a.context.weightset, w))
                )
            outs.append(table)
        common = set(outs[0])
        for table in outs[1:]:
            common &= set(table)
        for lab in sorted(common, key=ls.sort_key):
            for combo in itertools.product(*(t[lab] for t in outs)):
                w = ws.one()
                for _, wi in combo:
                    w = ws.mul(w, wi)
                res.add_transition(
                    src, lab, state_of(tuple(d for d, _ in combo)), w
                )

    for tup, sid in index.items():
        w = ws.one()
        for a, s in zip(auts, tup):
            fw = a.final_weight(s)
            if a.context.weightset.is_zero(fw):
                w = None
                break
            w = ws.mul(w, ws.conv(a.context.weightset, fw))
        if w is not None:
            res.set_final(sid, w)
    return res


def union(auts):
    """Disjoint sum in the joined context."""
    auts = list(auts)
    if not auts:
        raise PreconditionError("empty operand list")
    ctx = reduce(join_contexts, (a.context for a in auts))
    ls = ctx.labelset
    ws = ctx.weightset
    res = MutableAutomaton(ctx)
    for a in auts:
        base = res.num_states()
        res.add_states(a.num_states())
        for s, w in a.initial():
            res.set_initial(base + s, ws.conv(a.context.weightset, w))
        for s, w in a.final():
            res.set_final(base + s, ws.conv(a.context.weightset, w))
        for src, label, dst, w in a.transitions():
            res.set_transition(
                base + src,
                ls.conv(a.context.labelset, label),
                base + dst,
                ws.conv(a.context.weightset, w),
            )
    return res


def focus(aut, tape):
    """A lazy view of one tape of a multitape automaton."""
    return FocusAutomaton(aut, tape)


# ---------- automaton to expression ----------


def to_expression(aut):
    """State elimination. States go in ascending (in-degree * out-degree),
    self-loops excluded, ties broken by state id."""
    es = ExpressionSet(aut.context)
    ls = aut.context.labelset
    ws = aut.context.weightset

    def label_expr(label):
        if ls.has_one and ls.is_one(label):
            return es.one()
        return es.atom(label)

    edges = {}

    def put(p, q, expr):
        if isinstance(expr, Zero):
            return
        if (p, q) in edges:
            edges[(p, q)] = es.sum([edges[(p, q)], expr])
        else:
            edges[(p, q)] = expr

    for s, w in aut.initial():
        put("I", s, es.lweight(w, es.one()))
    for s, w in aut.final():
        put(s, "F", es.lweight(w, es.one()))
    for src, label, dst, w in aut.transitions():
        put(src, dst, es.lweight(w, label_expr(label)))

    remaining = set(aut.states())
    while remaining:
        def cost(s):
            ins = sum(1 for (p, q) in edges if q == s and p != s)
            outs = sum(1 for (p, q) in edges if p == s and q != s)
            return (ins * outs, s)

        s = min(remaining, key=cost)
        remaining.discard(s)
        loop = edges.pop((s, s), None)
        star = es.star(loop) if loop is not None else None
        ins = [(p, e) for (p, q), e in list(edges.items()) if q == s]
        outs = [(q, e) for (p, q), e in list(edges.items()) if p == s]
        for (p, _) in ins:
            del edges[(p, s)]
        for (q, _) in outs:
            del edges[(s, q)]
        for p, ein in ins:
            for q, eout in outs:
                mid = [ein, star, eout] if star is not None else [ein, eout]
                put(p, q, es.prod(mid))
    return edges.get(("I", "F"), es.zero())


# ---------- weights ----------


def add_weights(ws_a, a, ws_b, b):
    """Add two weights from possibly different weightsets; returns the
    joined weightset and the sum converted into it."""
    ws = join_weightsets(ws_a, ws_b)
    return ws, ws.add(ws.conv(ws_a, a), ws.conv(ws_b, b))
