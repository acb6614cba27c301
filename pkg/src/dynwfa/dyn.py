"""The dynamically typed core: names, signatures and dispatch registries.

Static types are identified at runtime purely by their sname rendered as an
interned Symbol, so signature comparison is pointer comparison. A Registry
maps Signatures to callables; a dispatch miss hands (algorithm, signature)
to a pluggable miss handler which is expected to install the missing entry
(by generating and loading a plugin) before the lookup is retried.
"""

from __future__ import annotations

import threading

from .errors import DynError

_SYMBOLS = {}
_SYMBOLS_LOCK = threading.Lock()


class Symbol:
    """An interned name; equality and hashing are object identity."""

    __slots__ = ("text",)

    def __init__(self, text):
        self.text = text

    def __str__(self):
        return self.text

    def __repr__(self):
        return "Symbol(%r)" % self.text


def intern(text):
    if isinstance(text, Symbol):
        return text
    with _SYMBOLS_LOCK:
        sym = _SYMBOLS.get(text)
        if sym is None:
            sym = Symbol(text)
            _SYMBOLS[text] = sym
        return sym


def num_symbols():
    return len(_SYMBOLS)


class Signature:
    """A tuple of Symbols with a precomputed hash."""

    __slots__ = ("symbols", "_hash")

    def __init__(self, symbols):
        self.symbols = tuple(intern(s) for s in symbols)
        self._hash = hash(self.symbols)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, Signature) and self.symbols == other.symbols

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __str__(self):
        return ", ".join(s.text for s in self.symbols)

    def __repr__(self):
        return "Signature(%r)" % (tuple(s.text for s in self.symbols),)


class IntegralConstant:
    """An integer lifted into the type system, e.g. the tape of focus."""

    __slots__ = ("value",)

    def __init__(self, value):
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise DynError("integral constant wants a nonnegative int")
        self.value = value

    def sname(self):
        return "integral_constant<unsigned, %d>" % self.value

    def __repr__(self):
        return "IntegralConstant(%d)" % self.value


_TAGS = ("label", "weight", "expression", "context", "automaton")


class DynValue:
    """A value paired with its valueset and a coarse tag.

    vname() is the runtime type name used for dispatch: the sname of the
    underlying static type, interned.
    """

    __slots__ = ("tag", "valueset", "value")

    def __init__(self, tag, valueset, value):
        if tag not in _TAGS:
            raise DynError("unknown tag %r" % (tag,))
        self.tag = tag
        self.valueset = valueset
        self.value = value

    @classmethod
    def make_label(cls, labelset, value):
        return cls("label", labelset, value)

    @classmethod
    def make_weight(cls, weightset, value):
        return cls("weight", weightset, value)

    @classmethod
    def make_expression(cls, expressionset, value):
        return cls("expression", expressionset, value)

    @classmethod
    def make_context(cls, context):
        return cls("context", context, context)

    @classmethod
    def make_automaton(cls, automaton):
        return cls("automaton", automaton.context, automaton)

    def vname(self):
        if self.tag == "automaton":
            return intern("mutable_automaton<%s>" % self.valueset.sname())
        return intern(self.valueset.sname())

    def as_(self, sname):
        expected = intern(sname)
        if self.vname() is not expected:
            raise DynError(
                "cannot view %s as %s" % (self.vname(), expected)
            )
        return self.value

    def __repr__(self):
        return "DynValue(%s: %s)" % (self.tag, self.vname())


def vsignature(args):
    """The Signature of a dyn call: one symbol per typed argument.

    Plain Python strings, ints and bools (algorithm names, plain options)
    do not participate in dispatch.
    """
    symbols = []
    for a in args:
        if isinstance(a, DynValue):
            symbols.append(a.vname())
        elif isinstance(a, IntegralConstant):
            symbols.append(intern(a.sname()))
        elif isinstance(a, (str, int, bool)):
            continue
        else:
            raise DynError("cannot build a signature from %r" % (a,))
    return Signature(symbols)


_MISS_HANDLER = None


def set_miss_handler(handler):
    """Install the callable invoked on a dispatch miss: handler(name, sig).

    It should register the missing entry (or raise); returns the previous
    handler."""
    global _MISS_HANDLER
    previous = _MISS_HANDLER
    _MISS_HANDLER = handler
    return previous


class Registry:
    """Per-algorithm table from Signature to implementation."""

    def __init__(self, name):
        self.name = name
        self._lock = threading.Lock()
        self._entries = {}
        self._calls = {}

    def set(self, signature, fn):
        with self._lock:
            self._entries[signature] = fn

    def get0(self, signature):
        return self._entries.get(signature)

    def __contains__(self, signature):
        return signature in self._entries

    def dispatch(self, signature):
        with self._lock:
            self._calls[signature] = self._calls.get(signature, 0) + 1
        fn = self._entries.get(signature)
        if fn is not None:
            return fn
        handler = _MISS_HANDLER
        if handler is not None:
            handler(self.name, signature)
            fn = self._entries.get(signature)
            if fn is not None:
                return fn
        raise DynError(
            "%s: no implementation for signature <%s>" % (self.name, signature)
        )

    def known(self):
        return sorted(str(sig) for sig in self._entries)

    def call_counts(self):
        return {str(sig): n for sig, n in sorted(
            self._calls.items(), key=lambda kv: str(kv[0])
        )}


_REGISTRIES = {}
_REGISTRIES_LOCK = threading.Lock()


def registry(name):
    """The process-lifetime registry for an algorithm, created lazily."""
    with _REGISTRIES_LOCK:
        reg = _REGISTRIES.get(name)
        if reg is None:
            reg = Registry(name)
            _REGISTRIES[name] = reg
        return reg


def registries():
    """A snapshot of all registries, by algorithm name."""
    with _REGISTRIES_LOCK:
        return dict(_REGISTRIES)
