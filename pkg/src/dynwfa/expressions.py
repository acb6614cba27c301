"""Rational expression trees and their concrete syntax.

Trees are plain immutable nodes; an ExpressionSet ties them to a context and
owns construction, parsing and printing. Construction applies only the
trivial identities (e+0 = e, e.1 = e, e.0 = 0, weight one/zero collapsing)
plus n-ary flattening of nested sums/products; no commutativity and no other
rewriting, so printing stays deterministic.

Grammar: letters are atoms, '[abc]' sugars a letter sum, '+' is sum,
juxtaposition is product, postfix '*' is star, '\\e' and '\\z' are the one
and zero constants, '<w>' prefixes a starred factor with a left weight.
Precedence: star > juxtaposition > sum.
"""

from __future__ import annotations

from .errors import ParseError

_META = set("+*()[]<>\\ ")


def _escape_letter(ch):
    return "\\" + ch if ch in _META else ch


class Expression:
    __slots__ = ()

    def __repr__(self):
        return "%s%r" % (type(self).__name__, tuple(self))

    def __iter__(self):  # overridden where there are children
        return iter(())


class Zero(Expression):
    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, Zero)

    def __hash__(self):
        return hash("\\z")


class One(Expression):
    __slots__ = ()

    def __eq__(self, other):
        return isinstance(other, One)

    def __hash__(self):
        return hash("\\e")


class Atom(Expression):
    __slots__ = ("label",)

    def __init__(self, label):
        self.label = label

    def __eq__(self, other):
        return isinstance(other, Atom) and self.label == other.label

    def __hash__(self):
        return hash(("atom", self.label))

    def __repr__(self):
        return "Atom(%r)" % (self.label,)


class Sum(Expression):
    __slots__ = ("children",)

    def __init__(self, children):
        self.children = tuple(children)

    def __iter__(self):
        return iter(self.children)

    def __eq__(self, other):
        return isinstance(other, Sum) and self.children == other.children

    def __hash__(self):
        return hash(("sum", self.children))


class Prod(Expression):
    __slots__ = ("children",)

    def __init__(self, children):
        self.children = tuple(children)

    def __iter__(self):
        return iter(self.children)

    def __eq__(self, other):
        return isinstance(other, Prod) and self.children == other.children

    def __hash__(self):
        return hash(("prod", self.children))


class Star(Expression):
    __slots__ = ("child",)

    def __init__(self, child):
        self.child = child

    def __iter__(self):
        return iter((self.child,))

    def __eq__(self, other):
        return isinstance(other, Star) and self.child == other.child

    def __hash__(self):
        return hash(("star", self.child))


class LWeight(Expression):
    """A left weight applied to a sub-expression."""

    __slots__ = ("weight", "child")

    def __init__(self, weight, child):
        self.weight = weight
        self.child = child

    def __iter__(self):
        return iter((self.child,))

    def __eq__(self, other):
        return (
            isinstance(other, LWeight)
            and self.weight == other.weight
            and self.child == other.child
        )

    def __hash__(self):
        return hash(("lweight", self.weight, self.child))


ZERO = Zero()
ONE = One()


class ExpressionSet:
    """Expressions over a given context; owns construction, parse, print."""

    def __init__(self, context):
        self.context = context

    def sname(self):
        return "expressionset<%s>" % self.context.sname()

    def vname(self):
        return "expressionset<%s>" % self.context.vname()

    def __eq__(self, other):
        return isinstance(other, ExpressionSet) and self.vname() == other.vname()

    def __hash__(self):
        return hash(self.vname())

    def equal_to(self, a, b):
        return a == b

    # ---------- constructors (trivial identities only) ----------

    def zero(self):
        return ZERO

    def one(self):
        return ONE

    def atom(self, label):
        self.context.labelset.validate(label)
        return Atom(label)

    def sum(self, children):
        flat = []
        for child in children:
            if isinstance(child, Zero):
                continue
            if isinstance(child, Sum):
                flat.extend(child.children)
            else:
                flat.append(child)
        if not flat:
            return ZERO
        if len(flat) == 1:
            return flat[0]
        return Sum(flat)

    def prod(self, children):
        flat = []
        for child in children:
            if isinstance(child, Zero):
                return ZERO
            if isinstance(child, One):
                continue
            if isinstance(child, Prod):
                flat.extend(child.children)
            else:
                flat.append(child)
        if not flat:
            return ONE
        if len(flat) == 1:
            return flat[0]
        return Prod(flat)

    def star(self, child):
        return Star(child)

    def lweight(self, weight, child):
        ws = self.context.weightset
        if ws.is_one(weight):
            return child
        if ws.is_zero(weight) or isinstance(child, Zero):
            return ZERO
        return LWeight(weight, child)

    # ---------- parsing ----------

    def parse(self, text):
        parser = _Parser(self, text)
        expr = parser.parse_sum()
        parser.skip_spaces()
        if not parser.at_end():
            raise ParseError("unexpected character %r" % parser.peek(), parser.pos)
        return expr

    # ---------- printing ----------

    def print_value(self, expr):
        return self._print(expr, 0)

    def _print(self, e, min_level):
        text, level = self._render(e)
        if level < min_level:
            return "(%s)" % text
        return text

    def _render(self, e):
        # levels: sum 0 < product 1 < weighted factor 2 < star 3 < atom 4
        if isinstance(e, Zero):
            return "\\z", 4
        if isinstance(e, One):
            return "\\e", 4
        if isinstance(e, Atom):
            return self._print_label(e.label), 4
        if isinstance(e, Sum):
            letters = self._class_letters(e)
            if letters is not None:
                return "[%s]" % "".join(map(_escape_letter, letters)), 4
            return "+".join(self._print(c, 1) for c in e.children), 0
        if isinstance(e, Prod):
            return "".join(self._print(c, 2) for c in e.children), 1
        if isinstance(e, Star):
            return self._print(e.child, 3) + "*", 3
        if isinstance(e, LWeight):
            ws = self.context.weightset
            return "<%s>%s" % (ws.print_value(e.weight), self._print(e.child, 2)), 2
        raise TypeError("not an expression: %r" % (e,))

    def _print_label(self, label):
        printed = str(label)
        if len(printed) != 1:
            # multi-letter atoms exist only in trees built programmatically
            return "".join(map(_escape_letter, printed))
        return _escape_letter(printed)

    def _class_letters(self, e):
        if len(e.children) < 2:
            return None
        letters = []
        for child in e.children:
            if not isinstance(child, Atom):
                return None
            label = str(child.label)
            if len(label) != 1:
                return None
            letters.append(label)
        return letters


class _Parser:
    def __init__(self, es, text):
        self.es = es
        self.text = text
        self.pos = 0

    def at_end(self):
        return self.pos >= len(self.text)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_spaces(self):
        while self.peek() == " ":
            self.pos += 1

    def error(self, message):
        raise ParseError(message, self.pos)

    def parse_sum(self):
        terms = [self.parse_term()]
        self.skip_spaces()
        while self.peek() == "+":
            self.pos += 1
            terms.append(self.parse_term())
            self.skip_spaces()
        return self.es.sum(terms)

    def parse_term(self):
        factors = [self.parse_factor()]
        while True:
            self.skip_spaces()
            ch = self.peek()
            if ch == "" or ch in "+)":
                break
            factors.append(self.parse_factor())
        return self.es.prod(factors)

    def parse_factor(self):
        self.skip_spaces()
        if self.peek() == "<":
            weight = self.parse_weight()
            return self.es.lweight(weight, self.parse_factor())
        expr = self.parse_base()
        while self.peek() == "*":
            self.pos += 1
            expr = self.es.star(expr)
        return expr

    def parse_weight(self):
        start = self.pos
        self.pos += 1  # '<'
        end = self.text.find(">", self.pos)
        if end < 0:
            self.pos = start
            self.error("unterminated weight")
        text = self.text[self.pos : end]
        self.pos = end + 1
        try:
            return self.es.context.weightset.parse(text.strip())
        except ParseError as exc:
            raise ParseError(str(exc), start) from None

    def parse_base(self):
        self.skip_spaces()
        ch = self.peek()
        if ch == "":
            self.error("unexpected end of expression")
        if ch == "(":
            self.pos += 1
            expr = self.parse_sum()
            self.skip_spaces()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return expr
        if ch == "[":
            return self.parse_class()
        if ch == "\\":
            nxt = self.text[self.pos + 1 : self.pos + 2]
            if nxt == "e":
                self.pos += 2
                return self.es.one()
            if nxt == "z":
                self.pos += 2
                return self.es.zero()
            return self.parse_letter()
        if ch in "+*)]<>":
            self.error("unexpected character %r" % ch)
        return self.parse_letter()

    def parse_class(self):
        self.pos += 1  # '['
        atoms = []
        while True:
            ch = self.peek()
            if ch == "":
                self.error("unterminated class")
            if ch == "]":
                self.pos += 1
                break
            atoms.append(self.parse_letter())
        if not atoms:
            self.error("empty class")
        return self.es.sum(atoms)

    def parse_letter(self):
        start = self.pos
        ch = self.peek()
        if ch == "\\":
            self.pos += 1
            if self.at_end():
                self.error("dangling escape")
            ch = self.peek()
        self.pos += 1
        try:
            label = self.es.context.labelset.make_letter(ch)
        except ParseError as exc:
            raise ParseError(str(exc), start) from None
        return Atom(label)
