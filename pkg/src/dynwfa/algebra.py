"""Label monoids, weight semirings, and contexts pairing one of each.

Values themselves are dumb Python data (bool, int, Fraction, str, tuple);
all behavior lives in the value-set objects, which know how to compare,
combine, print and parse their values, and how to name themselves.

Two textual names exist for every value set:

* ``vname()`` carries runtime parameters, e.g.
  ``context<letterset<char_letters(ab)>, z>``;
* ``sname()`` drops them, e.g. ``context<letterset<char_letters>, b>``,
  and identifies the static kind only.

A value set built from an sname (no alphabet) is a "kind": it can answer
static questions (is_free, join compatibility) but refuses value-level work.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    ConversionError,
    JoinError,
    NotStarrable,
    ParseError,
    UnsupportedOperation,
)

# Characters that must be escaped inside a char_letters(...) segment.
_VNAME_ESCAPE = {"\\", ")"}
# Characters that must be escaped in label tokens of the automaton format.
_LABEL_ESCAPE = {"\\", ",", " ", "|", "<", ">", "$"}


def _escape(text, special):
    out = []
    for ch in text:
        if ch in special:
            out.append("\\")
        out.append(ch)
    return "".join(out)


# ---------- alphabets ----------


class Alphabet:
    """An ordered set of letters. Letters are single printable ASCII chars."""

    __slots__ = ("_letters", "_set")

    def __init__(self, letters):
        seen = sorted(set(letters))
        for ch in seen:
            if len(ch) != 1 or not (0x21 <= ord(ch) <= 0x7E):
                raise ParseError("invalid alphabet letter %r" % ch)
        self._letters = tuple(seen)
        self._set = frozenset(seen)

    @property
    def letters(self):
        return self._letters

    def __contains__(self, ch):
        return ch in self._set

    def __iter__(self):
        return iter(self._letters)

    def __len__(self):
        return len(self._letters)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self._letters == other._letters

    def __hash__(self):
        return hash(self._letters)

    def __le__(self, other):
        return self._set <= other._set

    def union(self, other):
        return Alphabet(self._letters + other._letters)

    def __repr__(self):
        return "Alphabet(%r)" % ("".join(self._letters),)


class ValueSet:
    """Shared plumbing: naming, equality, hashing."""

    def sname(self):
        raise NotImplementedError

    def vname(self):
        raise NotImplementedError

    def equal_to(self, a, b):
        return a == b

    def __eq__(self, other):
        return isinstance(other, ValueSet) and self.vname() == other.vname()

    def __hash__(self):
        return hash(self.vname())

    def __repr__(self):
        return "<%s %s>" % (type(self).__name__, self.vname())

    def star(self, value):
        raise UnsupportedOperation("unsupported operation: star on %s" % self.sname())


# ---------- weight semirings ----------


class WeightSet(ValueSet):
    is_labelset = False

    def vname(self):
        return self.sname()

    def less(self, a, b):
        return a < b

    def is_zero(self, w):
        return self.equal_to(w, self.zero())

    def is_one(self, w):
        return self.equal_to(w, self.one())

    def conv(self, source, value):
        if source == self:
            self.validate(value)
            return value
        raise ConversionError(
            "no conversion from %s to %s" % (source.sname(), self.sname())
        )

    def validate(self, w):
        raise NotImplementedError


class BooleanWeightSet(WeightSet):
    """B: or/and over {0, 1}. 1 + 1 = 1."""

    def sname(self):
        return "b"

    def zero(self):
        return False

    def one(self):
        return True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def star(self, w):
        return True

    def validate(self, w):
        if not isinstance(w, bool):
            raise ParseError("not a boolean weight: %r" % (w,))

    def print_value(self, w):
        return "1" if w else "0"

    def parse(self, text):
        if text == "1":
            return True
        if text == "0":
            return False
        raise ParseError("invalid b weight %r" % text)


class F2WeightSet(WeightSet):
    """The two-element field: xor/and. 1 + 1 = 0."""

    def sname(self):
        return "f2"

    def zero(self):
        return False

    def one(self):
        return True

    def add(self, a, b):
        return a != b

    def mul(self, a, b):
        return a and b

    def star(self, w):
        # 1* does not converge: partial sums alternate between 1 and 0.
        if not w:
            return True
        raise NotStarrable(self.sname(), self.print_value(w))

    def validate(self, w):
        if not isinstance(w, bool):
            raise ParseError("not an f2 weight: %r" % (w,))

    def print_value(self, w):
        return "1" if w else "0"

    def parse(self, text):
        if text == "1":
            return True
        if text == "0":
            return False
        raise ParseError("invalid f2 weight %r" % text)


class IntegerWeightSet(WeightSet):
    """Z with ordinary + and *."""

    def sname(self):
        return "z"

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def star(self, w):
        if w == 0:
            return 1
        raise NotStarrable(self.sname(), self.print_value(w))

    def validate(self, w):
        if not isinstance(w, int) or isinstance(w, bool):
            raise ParseError("not a z weight: %r" % (w,))

    def print_value(self, w):
        return str(w)

    def parse(self, text):
        try:
            return int(text, 10)
        except ValueError:
            raise ParseError("invalid z weight %r" % text) from None


class RationalWeightSet(WeightSet):
    """Q as normalized integer pairs (Fraction keeps the denominator positive)."""

    def sname(self):
        return "q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def star(self, w):
        # The geometric series converges for |w| < 1 and sums to 1/(1-w).
        if abs(w) < 1:
            return 1 / (1 - w)
        raise NotStarrable(self.sname(), self.print_value(w))

    def validate(self, w):
        if not isinstance(w, Fraction):
            raise ParseError("not a q weight: %r" % (w,))

    def print_value(self, w):
        return "%d/%d" % (w.numerator, w.denominator)

    def parse(self, text):
        num, sep, den = text.partition("/")
        try:
            if not sep:
                return Fraction(int(num, 10))
            d = int(den, 10)
            if d == 0:
                raise ParseError("invalid q weight %r: zero denominator" % text)
            return Fraction(int(num, 10), d)
        except ValueError:
            raise ParseError("invalid q weight %r" % text) from None

    def conv(self, source, value):
        if isinstance(source, IntegerWeightSet):
            return Fraction(value)
        return super().conv(source, value)


class MinPlusWeightSet(WeightSet):
    """Zmin: min is the addition, + the multiplication.

    The neutral of min is a genuine infinity (math.inf), not a sentinel
    integer, so annihilation (oo + w = oo) holds by arithmetic.
    """

    def sname(self):
        return "zmin"

    def zero(self):
        return math.inf

    def one(self):
        return 0

    def add(self, a, b):
        return min(a, b)

    def mul(self, a, b):
        return a + b

    def star(self, w):
        # min(0, w, 2w, ...) stabilizes at 0 whenever w >= 0 (infinity included).
        if w >= 0:
            return 0
        raise NotStarrable(self.sname(), self.print_value(w))

    def validate(self, w):
        if w == math.inf:
            return
        if not isinstance(w, int) or isinstance(w, bool):
            raise ParseError("not a zmin weight: %r" % (w,))

    def print_value(self, w):
        return "oo" if w == math.inf else str(w)

    def parse(self, text):
        if text == "oo":
            return math.inf
        try:
            return int(text, 10)
        except ValueError:
            raise ParseError("invalid zmin weight %r" % text) from None


class TupleWeightSet(WeightSet):
    """Product semiring: every operation is component-wise."""

    def __init__(self, components):
        components = tuple(components)
        if len(components) < 2:
            raise ParseError("tupleset needs at least two components")
        self.components = components

    def sname(self):
        return "tupleset<%s>" % ", ".join(c.sname() for c in self.components)

    def zero(self):
        return tuple(c.zero() for c in self.components)

    def one(self):
        return tuple(c.one() for c in self.components)

    def add(self, a, b):
        return tuple(c.add(x, y) for c, x, y in zip(self.components, a, b))

    def mul(self, a, b):
        return tuple(c.mul(x, y) for c, x, y in zip(self.components, a, b))

    def star(self, w):
        return tuple(c.star(x) for c, x in zip(self.components, w))

    def less(self, a, b):
        for c, x, y in zip(self.components, a, b):
            if c.less(x, y):
                return True
            if c.less(y, x):
                return False
        return False

    def validate(self, w):
        if not isinstance(w, tuple) or len(w) != len(self.components):
            raise ParseError("not a %s weight: %r" % (self.sname(), w))
        for c, x in zip(self.components, w):
            c.validate(x)

    def print_value(self, w):
        return "(%s)" % ", ".join(
            c.print_value(x) for c, x in zip(self.components, w)
        )

    def parse(self, text):
        inner = text.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise ParseError("invalid %s weight %r" % (self.sname(), text))
        parts = inner[1:-1].split(",")
        if len(parts) != len(self.components):
            raise ParseError("invalid %s weight %r" % (self.sname(), text))
        return tuple(
            c.parse(p.strip()) for c, p in zip(self.components, parts)
        )

    def conv(self, source, value):
        if isinstance(source, TupleWeightSet) and len(source.components) == len(
            self.components
        ):
            return tuple(
                c.conv(s, v)
                for c, s, v in zip(self.components, source.components, value)
            )
        return super().conv(source, value)


B = BooleanWeightSet()
F2 = F2WeightSet()
Z = IntegerWeightSet()
Q = RationalWeightSet()
ZMIN = MinPlusWeightSet()


# ---------- label monoids ----------


class LabelSet(ValueSet):
    is_labelset = True
    # Free label sets generate words freely from letters: no empty label.
    is_free = False
    has_one = False

    @property
    def alphabet(self):
        return None

    @property
    def is_kind_only(self):
        return self.alphabet is None

    def _need_alphabet(self):
        if self.is_kind_only:
            raise UnsupportedOperation(
                "%s is type-only (no alphabet); value operations unavailable"
                % self.sname()
            )

    def one(self):
        raise UnsupportedOperation(
            "unsupported operation: %s has no empty label" % self.sname()
        )

    def mul(self, a, b):
        raise UnsupportedOperation(
            "unsupported operation: %s cannot concatenate labels" % self.sname()
        )

    def is_one(self, label):
        return self.has_one and self.equal_to(label, self.one())

    def less(self, a, b):
        return self.sort_key(a) < self.sort_key(b)

    def sort_key(self, label):
        return label

    def make_letter(self, ch):
        """Build the label denoted by a single letter of the alphabet."""
        raise UnsupportedOperation("%s has no letter labels" % self.sname())

    def conv(self, source, value):
        raise ConversionError(
            "no conversion from %s to %s" % (source.sname(), self.sname())
        )


def _letters_segment(alphabet):
    if alphabet is None:
        return ""
    return "(%s)" % _escape("".join(alphabet.letters), _VNAME_ESCAPE)


class LetterSet(LabelSet):
    """Labels are single letters; the free case with no empty word."""

    is_free = True
    has_one = False

    def __init__(self, alphabet=None):
        self._alphabet = alphabet

    @property
    def alphabet(self):
        return self._alphabet

    def sname(self):
        return "letterset<char_letters>"

    def vname(self):
        return "letterset<char_letters%s>" % _letters_segment(self._alphabet)

    def validate(self, label):
        self._need_alphabet()
        if not isinstance(label, str) or len(label) != 1:
            raise ParseError("not a letter label: %r" % (label,))
        if label not in self._alphabet:
            raise ParseError(
                "letter %r does not belong to the alphabet {%s}"
                % (label, "".join(self._alphabet.letters))
            )

    def make_letter(self, ch):
        self.validate(ch)
        return ch

    def print_value(self, label):
        return _escape(label, _LABEL_ESCAPE)

    def parse(self, text):
        label = _unescape_token(text)
        self.validate(label)
        return label

    def conv(self, source, value):
        if isinstance(source, LetterSet) and source.alphabet <= self._alphabet:
            self.validate(value)
            return value
        return super().conv(source, value)


class WordSet(LabelSet):
    """Labels are words, the empty word included."""

    is_free = False
    has_one = True

    def __init__(self, alphabet=None):
        self._alphabet = alphabet

    @property
    def alphabet(self):
        return self._alphabet

    def sname(self):
        return "wordset<char_letters>"

    def vname(self):
        return "wordset<char_letters%s>" % _letters_segment(self._alphabet)

    def one(self):
        return ""

    def mul(self, a, b):
        return a + b

    def validate(self, label):
        self._need_alphabet()
        if not isinstance(label, str):
            raise ParseError("not a word label: %r" % (label,))
        for ch in label:
            if ch not in self._alphabet:
                raise ParseError(
                    "letter %r does not belong to the alphabet {%s}"
                    % (ch, "".join(self._alphabet.letters))
                )

    def make_letter(self, ch):
        word = str(ch)
        self.validate(word)
        return word

    def print_value(self, label):
        if label == "":
            return "\\e"
        return _escape(label, _LABEL_ESCAPE)

    def parse(self, text):
        if text == "\\e":
            return ""
        label = _unescape_token(text)
        self.validate(label)
        return label

    def conv(self, source, value):
        ok = isinstance(source, (LetterSet, WordSet, NullableSet))
        if ok and source.alphabet <= self._alphabet:
            word = str(value)
            self.validate(word)
            return word
        return super().conv(source, value)


class NullableSet(LabelSet):
    """A letter set extended with exactly one distinguished empty label."""

    is_free = False
    has_one = True

    def __init__(self, base):
        if not isinstance(base, LetterSet):
            raise ParseError("nullableset expects a letterset base")
        self.base = base

    @property
    def alphabet(self):
        return self.base.alphabet

    def sname(self):
        return "nullableset<%s>" % self.base.sname()

    def vname(self):
        return "nullableset<%s>" % self.base.vname()

    def one(self):
        return ""

    def mul(self, a, b):
        if a == "":
            return b
        if b == "":
            return a
        raise UnsupportedOperation(
            "unsupported operation: cannot concatenate two letters in %s"
            % self.sname()
        )

    def validate(self, label):
        if label == "":
            return
        self.base.validate(label)

    def make_letter(self, ch):
        self.base.validate(ch)
        return ch

    def print_value(self, label):
        if label == "":
            return "\\e"
        return _escape(label, _LABEL_ESCAPE)

    def parse(self, text):
        if text == "\\e":
            return ""
        label = _unescape_token(text)
        self.validate(label)
        return label

    def conv(self, source, value):
        if isinstance(source, NullableSet):
            source = source.base if value != "" else None
            if source is None:
                return ""
        if isinstance(source, LetterSet) and source.alphabet <= self.alphabet:
            self.validate(value)
            return value
        return super().conv(source, value)


class TupleLabelSet(LabelSet):
    """Multitape labels: tuples combined component-wise."""

    def __init__(self, components):
        components = tuple(components)
        if len(components) < 2:
            raise ParseError("tupleset needs at least two components")
        self.components = components

    @property
    def is_free(self):
        return all(c.is_free for c in self.components)

    @property
    def has_one(self):
        return all(c.has_one for c in self.components)

    @property
    def alphabet(self):
        return None

    @property
    def is_kind_only(self):
        return any(c.is_kind_only for c in self.components)

    def sname(self):
        return "tupleset<%s>" % ", ".join(c.sname() for c in self.components)

    def vname(self):
        return "tupleset<%s>" % ", ".join(c.vname() for c in self.components)

    def one(self):
        if not self.has_one:
            raise UnsupportedOperation(
                "unsupported operation: %s has no empty label" % self.sname()
            )
        return tuple(c.one() for c in self.components)

    def validate(self, label):
        if not isinstance(label, tuple) or len(label) != len(self.components):
            raise ParseError("not a %s label: %r" % (self.sname(), label))
        for c, x in zip(self.components, label):
            c.validate(x)

    def sort_key(self, label):
        return tuple(
            c.sort_key(x) for c, x in zip(self.components, label)
        )

    def print_value(self, label):
        return "|".join(
            c.print_value(x) for c, x in zip(self.components, label)
        )

    def parse(self, text):
        parts = _split_unescaped(text, "|")
        if len(parts) != len(self.components):
            raise ParseError("not a %s label: %r" % (self.sname(), text))
        return tuple(c.parse(p) for c, p in zip(self.components, parts))

    def conv(self, source, value):
        if isinstance(source, TupleLabelSet) and len(source.components) == len(
            self.components
        ):
            return tuple(
                c.conv(s, v)
                for c, s, v in zip(self.components, source.components, value)
            )
        return super().conv(source, value)


def _unescape_token(text):
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\":
            i += 1
            if i >= len(text):
                raise ParseError("dangling escape in %r" % text)
            ch = text[i]
        out.append(ch)
        i += 1
    return "".join(out)


def _split_unescaped(text, sep):
    parts = []
    cur = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\\" and i + 1 < len(text):
            cur.append(text[i : i + 2])
            i += 2
            continue
        if ch == sep:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
        i += 1
    parts.append("".join(cur))
    return parts


# ---------- contexts ----------


class Context(ValueSet):
    """A labelset paired with a weightset; the type of an automaton."""

    def __init__(self, labelset, weightset):
        if not labelset.is_labelset or weightset.is_labelset:
            raise ParseError("context wants (labelset, weightset)")
        self.labelset = labelset
        self.weightset = weightset

    def sname(self):
        return "context<%s, %s>" % (self.labelset.sname(), self.weightset.sname())

    def vname(self):
        return "context<%s, %s>" % (self.labelset.vname(), self.weightset.vname())

    @property
    def is_kind_only(self):
        return getattr(self.labelset, "is_kind_only", False)

    def nullable(self):
        """The sibling context able to hold spontaneous (empty) labels."""
        ls = self.labelset
        if isinstance(ls, LetterSet):
            return Context(NullableSet(ls), self.weightset)
        if isinstance(ls, (NullableSet, WordSet)):
            return self
        raise UnsupportedOperation(
            "no nullable counterpart for %s" % ls.sname()
        )

    def freed(self):
        """The context proper automata live in (empty labels removed)."""
        ls = self.labelset
        if isinstance(ls, NullableSet):
            return Context(ls.base, self.weightset)
        return self


# ---------- join (least common supertype) ----------

_KIND_RANK = {LetterSet: 0, NullableSet: 1, WordSet: 2}


def join_weightsets(a, b):
    if a == b:
        return a
    pair = {type(a), type(b)}
    if pair == {IntegerWeightSet, RationalWeightSet}:
        return Q
    if (
        isinstance(a, TupleWeightSet)
        and isinstance(b, TupleWeightSet)
        and len(a.components) == len(b.components)
    ):
        return TupleWeightSet(
            join_weightsets(x, y) for x, y in zip(a.components, b.components)
        )
    raise JoinError("no join for %s and %s" % (a.sname(), b.sname()))


def join_labelsets(a, b):
    if isinstance(a, TupleLabelSet) or isinstance(b, TupleLabelSet):
        if (
            isinstance(a, TupleLabelSet)
            and isinstance(b, TupleLabelSet)
            and len(a.components) == len(b.components)
        ):
            return TupleLabelSet(
                join_labelsets(x, y) for x, y in zip(a.components, b.components)
            )
        raise JoinError("no join for %s and %s" % (a.sname(), b.sname()))
    try:
        rank = max(_KIND_RANK[type(a)], _KIND_RANK[type(b)])
    except KeyError:
        raise JoinError("no join for %s and %s" % (a.sname(), b.sname())) from None
    if a.alphabet is None or b.alphabet is None:
        alphabet = None
    else:
        alphabet = a.alphabet.union(b.alphabet)
    if rank == 0:
        return LetterSet(alphabet)
    if rank == 1:
        return NullableSet(LetterSet(alphabet))
    return WordSet(alphabet)


def join_contexts(a, b):
    return Context(
        join_labelsets(a.labelset, b.labelset),
        join_weightsets(a.weightset, b.weightset),
    )


def join(a, b):
    if isinstance(a, Context) and isinstance(b, Context):
        return join_contexts(a, b)
    if isinstance(a, Context) or isinstance(b, Context):
        raise JoinError("no join for %s and %s" % (a.sname(), b.sname()))
    if a.is_labelset and b.is_labelset:
        return join_labelsets(a, b)
    if not a.is_labelset and not b.is_labelset:
        return join_weightsets(a, b)
    raise JoinError("no join for %s and %s" % (a.sname(), b.sname()))


# ---------- the vname/sname grammar ----------


class _Cursor:
    __slots__ = ("text", "pos")

    def __init__(self, text, pos=0):
        self.text = text
        self.pos = pos

    def error(self, message):
        raise ParseError(message, self.pos)

    def at_end(self):
        return self.pos >= len(self.text)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def try_eat(self, literal):
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def eat(self, literal):
        if not self.try_eat(literal):
            self.error("expected %r" % literal)

    def skip_spaces(self):
        while self.peek() == " ":
            self.pos += 1

    def eat_separator(self):
        self.eat(",")
        self.skip_spaces()


def _parse_letters(cur):
    """The (...) segment; empty when parsing an sname. Backslash escapes."""
    if not cur.try_eat("("):
        return None
    letters = []
    while True:
        if cur.at_end():
            cur.error("unterminated letter list")
        ch = cur.text[cur.pos]
        cur.pos += 1
        if ch == ")":
            break
        if ch == "\\":
            if cur.at_end():
                cur.error("dangling escape in letter list")
            ch = cur.text[cur.pos]
            cur.pos += 1
        letters.append(ch)
    return Alphabet(letters)


_LABELSET_STARTERS = (
    "letterset<",
    "wordset<",
    "nullableset<",
    "lal_char",
    "law_char",
)


def _looks_like_labelset(cur):
    rest = cur.text[cur.pos :]
    if any(rest.startswith(s) for s in _LABELSET_STARTERS):
        return True
    if rest.startswith("tupleset<"):
        probe = _Cursor(cur.text, cur.pos + len("tupleset<"))
        return _looks_like_labelset(probe)
    return False


def parse_weightset(cur):
    for name, ws in (("zmin", ZMIN), ("b", B), ("f2", F2), ("z", Z), ("q", Q)):
        if cur.try_eat(name):
            return ws
    if cur.try_eat("tupleset<"):
        components = [parse_weightset(cur)]
        while cur.peek() == ",":
            cur.eat_separator()
            components.append(parse_weightset(cur))
        cur.eat(">")
        return TupleWeightSet(components)
    cur.error("expected a weightset name")


def parse_labelset(cur):
    if cur.try_eat("letterset<char_letters"):
        alphabet = _parse_letters(cur)
        cur.eat(">")
        return LetterSet(alphabet)
    if cur.try_eat("wordset<char_letters"):
        alphabet = _parse_letters(cur)
        cur.eat(">")
        return WordSet(alphabet)
    if cur.try_eat("nullableset<"):
        base = parse_labelset(cur)
        cur.eat(">")
        if not isinstance(base, LetterSet):
            cur.error("nullableset expects a letterset base")
        return NullableSet(base)
    if cur.try_eat("tupleset<"):
        components = [parse_labelset(cur)]
        while cur.peek() == ",":
            cur.eat_separator()
            components.append(parse_labelset(cur))
        cur.eat(">")
        return TupleLabelSet(components)
    # Input-only shorthands.
    if cur.try_eat("lal_char"):
        return LetterSet(_parse_letters(cur))
    if cur.try_eat("law_char"):
        return WordSet(_parse_letters(cur))
    cur.error("expected a labelset name")


def parse_context(cur):
    cur.eat("context<")
    labelset = parse_labelset(cur)
    cur.eat_separator()
    weightset = parse_weightset(cur)
    cur.eat(">")
    return Context(labelset, weightset)


def parse_valueset(cur):
    """Parse one value-set name, consuming exactly through its final '>'.

    Accepts contexts, labelsets and weightsets; tupleset<...> is
    disambiguated by peeking at its first component.
    """
    if cur.text.startswith("context<", cur.pos):
        return parse_context(cur)
    if _looks_like_labelset(cur):
        return parse_labelset(cur)
    return parse_weightset(cur)


def make_valueset(text):
    """Deserialize a full vname (or sname) string; trailing junk is an error."""
    cur = _Cursor(text)
    vs = parse_valueset(cur)
    if not cur.at_end():
        cur.error("trailing characters after %s" % vs.sname())
    return vs


def parse_context_spec(text):
    """Parse a context given either fully wrapped or as 'labelset, weightset'."""
    cur = _Cursor(text.strip())
    if cur.text.startswith("context<"):
        ctx = parse_context(cur)
    else:
        labelset = parse_labelset(cur)
        cur.eat_separator()
        weightset = parse_weightset(cur)
        ctx = Context(labelset, weightset)
    if not cur.at_end():
        cur.error("trailing characters after context")
    return ctx
