"""Weighted automata: the mutable representation, views, and file formats.

A MutableAutomaton stores weighted initial and final states plus at most one
transition per (source, label, destination); adding the same triple again
merges weights additively and a weight of zero deletes. State ids are dense
and never reused. Enumeration order is deterministic everywhere: sorted by
state id and label.

SubsetAutomaton and ProductAutomaton are ordinary automata decorated with
the origin of each state (a set, resp. a tuple, of source states); strip()
forgets the decoration. FocusAutomaton is a lazy read-only view of one tape
of a multitape automaton; strip() materializes it.

The text format:

    context = context<letterset<char_letters(ab)>, z>
    $ -> 0
    0 -> 1 a, b <2>
    1 -> $

'$' marks entry and exit arrows, labels are comma separated, and a trailing
'<weight>' applies to every label on the line (default: the unit weight).
"""

from __future__ import annotations

from .algebra import Context, _split_unescaped, make_valueset
from .errors import ParseError, PreconditionError


class MutableAutomaton:
    """Dense-state weighted automaton over a context."""

    def __init__(self, context):
        self.context = context
        self._num_states = 0
        self._initial = {}
        self._final = {}
        self._out = {}

    # ---------- identity ----------

    def sname(self):
        return "mutable_automaton<%s>" % self.context.sname()

    def vname(self):
        return "mutable_automaton<%s>" % self.context.vname()

    # ---------- states ----------

    def add_state(self):
        sid = self._num_states
        self._num_states += 1
        self._out[sid] = {}
        return sid

    def add_states(self, count):
        return [self.add_state() for _ in range(count)]

    def num_states(self):
        return self._num_states

    def states(self):
        return range(self._num_states)

    def _check_state(self, s):
        if not isinstance(s, int) or not 0 <= s < self._num_states:
            raise ParseError("no such state: %r" % (s,))

    # ---------- initial / final ----------

    def set_initial(self, s, weight=None):
        self._set_terminal(self._initial, s, weight)

    def add_initial(self, s, weight=None):
        self._add_terminal(self._initial, s, weight)

    def set_final(self, s, weight=None):
        self._set_terminal(self._final, s, weight)

    def add_final(self, s, weight=None):
        self._add_terminal(self._final, s, weight)

    def _set_terminal(self, table, s, weight):
        self._check_state(s)
        ws = self.context.weightset
        weight = ws.one() if weight is None else weight
        if ws.is_zero(weight):
            table.pop(s, None)
        else:
            table[s] = weight

    def _add_terminal(self, table, s, weight):
        self._check_state(s)
        ws = self.context.weightset
        weight = ws.one() if weight is None else weight
        if s in table:
            weight = ws.add(table[s], weight)
        self._set_terminal(table, s, weight)

    def is_initial(self, s):
        return s in self._initial

    def is_final(self, s):
        return s in self._final

    def initial_weight(self, s):
        return self._initial.get(s, self.context.weightset.zero())

    def final_weight(self, s):
        return self._final.get(s, self.context.weightset.zero())

    def initial(self):
        return sorted(self._initial.items())

    def final(self):
        return sorted(self._final.items())

    # ---------- transitions ----------

    def add_transition(self, src, label, dst, weight=None):
        """Merge a transition in, adding weights on an existing triple."""
        self._check_state(src)
        self._check_state(dst)
        self.context.labelset.validate(label)
        ws = self.context.weightset
        weight = ws.one() if weight is None else weight
        row = self._out[src]
        key = (label, dst)
        if key in row:
            weight = ws.add(row[key], weight)
        if ws.is_zero(weight):
            row.pop(key, None)
        else:
            row[key] = weight

    def set_transition(self, src, label, dst, weight=None):
        """Overwrite the weight of a triple (zero deletes)."""
        self._check_state(src)
        self._check_state(dst)
        self.context.labelset.validate(label)
        ws = self.context.weightset
        weight = ws.one() if weight is None else weight
        row = self._out[src]
        if ws.is_zero(weight):
            row.pop((label, dst), None)
        else:
            row[(label, dst)] = weight

    def weight_of(self, src, label, dst):
        return self._out[src].get((label, dst), self.context.weightset.zero())

    def out(self, src):
        """Outgoing transitions of a state as (label, dst, weight), sorted."""
        key = self.context.labelset.sort_key
        row = self._out[src]
        return sorted(
            ((label, dst, w) for (label, dst), w in row.items()),
            key=lambda t: (key(t[0]), t[1]),
        )

    def transitions(self):
        for src in range(self._num_states):
            for label, dst, w in self.out(src):
                yield src, label, dst, w

    def num_transitions(self):
        return sum(len(row) for row in self._out.values())

    # ---------- copies and views ----------

    def strip(self):
        return self

    def copy_plain(self):
        """A fresh undecorated automaton with the same content."""
        out = MutableAutomaton(self.context)
        out.add_states(self._num_states)
        for s, w in self._initial.items():
            out.set_initial(s, w)
        for s, w in self._final.items():
            out.set_final(s, w)
        for src, row in self._out.items():
            for (label, dst), w in row.items():
                out.set_transition(src, label, dst, w)
        return out

    # ---------- text format ----------

    def to_text(self):
        ws = self.context.weightset
        ls = self.context.labelset
        lines = ["context = %s" % self.context.vname()]
        for s, w in self.initial():
            lines.append("$ -> %d%s" % (s, _weight_suffix(ws, w)))
        for src in range(self._num_states):
            for labels, dst, w in _grouped(self.out(src), ws):
                lines.append(
                    "%d -> %d %s%s"
                    % (
                        src,
                        dst,
                        ", ".join(ls.print_value(l) for l in labels),
                        _weight_suffix(ws, w),
                    )
                )
        for s, w in self.final():
            lines.append("%d -> $%s" % (s, _weight_suffix(ws, w)))
        return "\n".join(lines) + "\n"

    # ---------- dot format ----------

    def to_dot(self):
        ws = self.context.weightset
        ls = self.context.labelset
        lines = [
            "digraph",
            "{",
            "  context = \"%s\"" % self.context.vname(),
            "  rankdir = LR",
            "  edge [arrowhead = vee, arrowsize = .6]",
            "  {",
            "    node [shape = point, width = 0]",
        ]
        for s, _ in self.initial():
            lines.append("    I%d" % s)
        for s, _ in self.final():
            lines.append("    F%d" % s)
        lines.append("  }")
        lines.append("  {")
        lines.append("    node [shape = circle, style = rounded, width = 0.5]")
        for s in range(self._num_states):
            lines.append("    %d" % s)
        lines.append("  }")
        for s, w in self.initial():
            lines.append("  I%d -> %d%s" % (s, s, _dot_label(ws, None, w, ls)))
        for src in range(self._num_states):
            for labels, dst, w in _grouped(self.out(src), ws):
                body = ", ".join(_edge_text(ls, ws, l, w) for l in labels)
                lines.append('  %d -> %d [label = "%s"]' % (src, dst, body))
        for s, w in self.final():
            lines.append("  %d -> F%d%s" % (s, s, _dot_label(ws, None, w, ls)))
        lines.append("}")
        return "\n".join(lines) + "\n"


def _weight_suffix(ws, w):
    if ws.is_one(w):
        return ""
    return " <%s>" % ws.print_value(w)


def _edge_text(ls, ws, label, w):
    text = ls.print_value(label)
    if not ws.is_one(w):
        text = "<%s>%s" % (ws.print_value(w), text)
    return text


def _dot_label(ws, label, w, ls):
    if ws.is_one(w):
        return ""
    return ' [label = "<%s>"]' % ws.print_value(w)


def _grouped(out_transitions, ws):
    """Group (label, dst, weight) triples sharing (dst, weight), in order."""
    groups = []
    index = {}
    for label, dst, w in out_transitions:
        marker = (dst, ws.print_value(w))
        if marker in index:
            groups[index[marker]][0].append(label)
        else:
            index[marker] = len(groups)
            groups.append(([label], dst, w))
    return groups


class SubsetAutomaton(MutableAutomaton):
    """A determinization result; each state carries its set of origins."""

    def __init__(self, context, source):
        super().__init__(context)
        self.source = source
        self.origins = {}

    def add_state_from(self, origin):
        sid = self.add_state()
        self.origins[sid] = frozenset(origin)
        return sid

    def origin_of(self, s):
        return self.origins[s]

    def strip(self):
        return self.copy_plain()


class ProductAutomaton(MutableAutomaton):
    """A synchronized product; each state carries its tuple of origins."""

    def __init__(self, context, sources):
        super().__init__(context)
        self.sources = tuple(sources)
        self.origins = {}

    def add_state_from(self, origin):
        sid = self.add_state()
        self.origins[sid] = tuple(origin)
        return sid

    def origin_of(self, s):
        return self.origins[s]

    def strip(self):
        return self.copy_plain()


class FocusAutomaton:
    """Read-only view of one tape of an automaton with tupleset labels.

    Transitions are projected on the fly, so distinct multitape transitions
    may show up as duplicate triples; strip() materializes the view into a
    plain automaton, merging duplicates additively.
    """

    def __init__(self, source, tape):
        from .algebra import TupleLabelSet

        ls = source.context.labelset
        if not isinstance(ls, TupleLabelSet):
            raise PreconditionError("requires tupleset labels")
        if not 0 <= tape < len(ls.components):
            raise PreconditionError(
                "tape %d out of range for %s" % (tape, ls.sname())
            )
        self.source = source
        self.tape = tape
        self.context = Context(ls.components[tape], source.context.weightset)

    def sname(self):
        return "focus_automaton<%d, %s>" % (self.tape, self.source.sname())

    def vname(self):
        return "focus_automaton<%d, %s>" % (self.tape, self.source.vname())

    def num_states(self):
        return self.source.num_states()

    def states(self):
        return self.source.states()

    def initial(self):
        return self.source.initial()

    def final(self):
        return self.source.final()

    def initial_weight(self, s):
        return self.source.initial_weight(s)

    def final_weight(self, s):
        return self.source.final_weight(s)

    def out(self, src):
        return [
            (label[self.tape], dst, w) for label, dst, w in self.source.out(src)
        ]

    def transitions(self):
        for src, label, dst, w in self.source.transitions():
            yield src, label[self.tape], dst, w

    def strip(self):
        out = MutableAutomaton(self.context)
        out.add_states(self.num_states())
        for s, w in self.initial():
            out.set_initial(s, w)
        for s, w in self.final():
            out.set_final(s, w)
        for src, label, dst, w in self.transitions():
            out.add_transition(src, label, dst, w)
        return out

    def to_text(self):
        return self.strip().to_text()

    def to_dot(self):
        return self.strip().to_dot()


# ---------- reading ----------


def read_automaton_text(text):
    """Parse the text format back into a MutableAutomaton."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("context"):
        raise ParseError("automaton text must start with 'context = ...'")
    _, _, ctx_text = lines[0].partition("=")
    context = make_valueset(ctx_text.strip())
    if not isinstance(context, Context):
        raise ParseError("automaton header wants a context, got %r" % ctx_text)
    aut = MutableAutomaton(context)
    ws = context.weightset
    ls = context.labelset

    def state_of(token, line):
        try:
            sid = int(token)
        except ValueError:
            raise ParseError("bad state %r in %r" % (token, line)) from None
        if sid < 0:
            raise ParseError("bad state %r in %r" % (token, line))
        while aut.num_states() <= sid:
            aut.add_state()
        return sid

    for line in lines[1:]:
        parts = line.split(None, 2)
        if len(parts) < 3 or parts[1] != "->":
            raise ParseError("bad line %r" % line)
        src_tok = parts[0]
        rest = parts[2].split(None, 1)
        dst_tok = rest[0]
        payload = rest[1].strip() if len(rest) > 1 else ""
        labels_text, weight = _split_payload(payload, ws, line)
        if src_tok == "$":
            if labels_text:
                raise ParseError("labels are not allowed on %r" % line)
            aut.add_initial(state_of(dst_tok, line), weight)
            continue
        if dst_tok == "$":
            if labels_text:
                raise ParseError("labels are not allowed on %r" % line)
            aut.add_final(state_of(src_tok, line), weight)
            continue
        if not labels_text:
            raise ParseError("missing label on %r" % line)
        src = state_of(src_tok, line)
        dst = state_of(dst_tok, line)
        for token in _split_unescaped(labels_text, ","):
            token = token.strip(" ")
            if not token:
                raise ParseError("empty label on %r" % line)
            aut.add_transition(src, ls.parse(token), dst, weight)
    return aut


def _split_payload(payload, ws, line):
    """Split 'a, b <2>' into the label text and the parsed weight."""
    if not payload:
        return "", ws.one()
    start = _find_unescaped(payload, "<")
    if start < 0:
        return payload.strip(), ws.one()
    if not payload.endswith(">"):
        raise ParseError("unterminated weight on %r" % line)
    weight = ws.parse(payload[start + 1 : -1].strip())
    return payload[:start].strip(), weight


def _find_unescaped(text, ch):
    i = 0
    while i < len(text):
        if text[i] == "\\":
            i += 2
            continue
        if text[i] == ch:
            return i
        i += 1
    return -1
