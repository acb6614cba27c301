"""The dynamically typed facade.

Free functions here take and return DynValue wrappers; each call builds the
runtime signature of its typed arguments, looks the pair (algorithm,
signature) up in the registry, and runs the bridge found there. Bridges are
small adapters that unwrap the operands with checked casts and call the
typed algorithms; they are monomorphic in the *kind* of their operands
(snames carry no alphabets), so one registration covers every alphabet.

ALGO_TABLE is the single source of truth for what exists: per algorithm it
lists the static preconditions (with the exact messages the typed layer
uses), how to spell the registration signatures of a context, and the
factory producing the bridge for a concrete signature. Built-in contexts
are registered from this table at import; generated plugins go through the
very same table via the codegen module.
"""

from __future__ import annotations

from . import algebra, algorithms, dyn
from .algebra import (
    Context,
    LetterSet,
    NullableSet,
    TupleLabelSet,
    WordSet,
    make_valueset,
    parse_context_spec,
)
from .automata import read_automaton_text
from .dyn import DynValue, IntegralConstant, Signature, vsignature
from .errors import DynError, ParseError, PreconditionError
from .expressions import ExpressionSet

# ---------- kind predicates and derived valuesets ----------


def _is_free(ctx):
    return ctx.labelset.is_free


def _is_boolean(ctx):
    return ctx.weightset.sname() == "b"


def _has_letter_atoms(ctx):
    return isinstance(ctx.labelset, (LetterSet, NullableSet))


def _is_tuple(ctx):
    return isinstance(ctx.labelset, TupleLabelSet)


def wordified(labelset):
    """The labelset words over this labelset live in."""
    if isinstance(labelset, WordSet):
        return labelset
    if isinstance(labelset, (LetterSet, NullableSet)):
        return WordSet(labelset.alphabet)
    if isinstance(labelset, TupleLabelSet):
        return TupleLabelSet(wordified(c) for c in labelset.components)
    raise DynError("no word monoid over %s" % labelset.sname())


def _tuple_steps(word):
    """Transpose a tuple of component words into per-step tuple labels."""
    lengths = {len(w) for w in word}
    if len(lengths) > 1:
        raise ParseError("tuple word components differ in length: %r" % (word,))
    return list(zip(*word))


def _aut_sname(ctx):
    return "mutable_automaton<%s>" % ctx.sname()


def _expr_sname(ctx):
    return "expressionset<%s>" % ctx.sname()


# ---------- bridge factories ----------
# Each factory takes the registration signature (a list of sname strings)
# and returns the callable stored in the registry.


def _factory_make_context(sig):
    sname = sig[0]

    def bridge(vname_text):
        ctx = parse_context_spec(vname_text)
        if ctx.sname() != sname:
            raise DynError("context %s does not match %s" % (ctx.sname(), sname))
        return DynValue.make_context(ctx)

    return bridge


def _factory_read_automaton(sig):
    sname = sig[0]

    def bridge(text):
        aut = read_automaton_text(text)
        if aut.context.sname() != sname:
            raise DynError(
                "automaton context %s does not match %s"
                % (aut.context.sname(), sname)
            )
        return DynValue.make_automaton(aut)

    return bridge


def _factory_read_expression(sig):
    sname = sig[0]

    def bridge(ctx_dv, text):
        ctx = ctx_dv.as_(sname)
        es = ExpressionSet(ctx)
        return DynValue.make_expression(es, es.parse(text))

    return bridge


def _factory_make_word(sig):
    sname = sig[0]

    def bridge(ctx_dv, text):
        ctx = ctx_dv.as_(sname)
        ls = wordified(ctx.labelset)
        return DynValue.make_label(ls, ls.parse(text))

    return bridge


def _factory_make_weight(sig):
    sname = sig[0]

    def bridge(ctx_dv, text):
        ctx = ctx_dv.as_(sname)
        ws = ctx.weightset
        return DynValue.make_weight(ws, ws.parse(text))

    return bridge


def _factory_evaluate(sig):
    aut_sname, word_sname = sig
    tuple_mode = word_sname.startswith("tupleset<")

    def bridge(aut_dv, word_dv):
        aut = aut_dv.as_(aut_sname)
        word = word_dv.as_(word_sname)
        steps = _tuple_steps(word) if tuple_mode else word
        w = algorithms.evaluate(aut, steps)
        return DynValue.make_weight(aut.context.weightset, w)

    return bridge


def _factory_is_proper(sig):
    aut_sname = sig[0]

    def bridge(aut_dv):
        return algorithms.is_proper(aut_dv.as_(aut_sname))

    return bridge


def _factory_proper(sig):
    aut_sname = sig[0]

    def bridge(aut_dv):
        return DynValue.make_automaton(
            algorithms.proper(aut_dv.as_(aut_sname)).strip()
        )

    return bridge


def _factory_thompson(sig):
    expr_sname = sig[0]

    def bridge(expr_dv):
        expr = expr_dv.as_(expr_sname)
        es = expr_dv.valueset
        return DynValue.make_automaton(algorithms.thompson(es, expr))

    return bridge


def _factory_determinize(sig):
    aut_sname = sig[0]

    def bridge(aut_dv):
        return DynValue.make_automaton(
            algorithms.determinize(aut_dv.as_(aut_sname)).strip()
        )

    return bridge


def _factory_minimize(sig):
    aut_sname = sig[0]

    def bridge(aut_dv, algo="auto"):
        return DynValue.make_automaton(
            algorithms.minimize(aut_dv.as_(aut_sname), algo).strip()
        )

    return bridge


def _factory_product(sig):
    snames = list(sig)

    def bridge(aut_dvs):
        auts = [dv.as_(s) for dv, s in zip(aut_dvs, snames)]
        return DynValue.make_automaton(algorithms.product(auts).strip())

    return bridge


def _factory_union(sig):
    snames = list(sig)

    def bridge(aut_dvs):
        auts = [dv.as_(s) for dv, s in zip(aut_dvs, snames)]
        return DynValue.make_automaton(algorithms.union(auts).strip())

    return bridge


def _factory_focus(sig):
    aut_sname = sig[0]
    tape = int(sig[1][sig[1].rindex(" ") + 1 : -1])

    def bridge(aut_dv):
        view = algorithms.focus(aut_dv.as_(aut_sname), tape)
        return DynValue.make_automaton(view.strip())

    return bridge


def _factory_to_expression(sig):
    aut_sname = sig[0]

    def bridge(aut_dv):
        aut = aut_dv.as_(aut_sname)
        expr = algorithms.to_expression(aut)
        return DynValue.make_expression(ExpressionSet(aut.context), expr)

    return bridge


def _factory_add_weights(sig):
    a_sname, b_sname = sig

    def bridge(a_dv, b_dv):
        a = a_dv.as_(a_sname)
        b = b_dv.as_(b_sname)
        ws, total = algorithms.add_weights(
            a_dv.valueset, a, b_dv.valueset, b
        )
        return DynValue.make_weight(ws, total)

    return bridge


def _factory_print(sig):
    sname = sig[0]

    def bridge(dv):
        dv.as_(sname)
        return dv.valueset.print_value(dv.value)

    return bridge


def _factory_print_automaton(sig):
    sname = sig[0]

    def bridge(dv):
        return dv.as_(sname).to_text()

    return bridge


def _factory_print_expression(sig):
    sname = sig[0]

    def bridge(dv):
        return dv.valueset.print_value(dv.as_(sname))

    return bridge


# ---------- the algorithm table ----------


class AlgoRow:
    """What the table knows about one algorithm.

    preconditions: ordered (message, predicate-on-context) pairs; the first
    failing one is the skip reason at registration time and the static
    assertion at instantiation time.
    signatures: context -> list of registration signatures (sname lists).
    join_over: None, "contexts" or "weightsets"; a static check that the
    operands of a generated signature have a common supertype.
    """

    def __init__(self, factory, signatures, preconditions=(), join_over=None):
        self.factory = factory
        self.signatures = signatures
        self.preconditions = tuple(preconditions)
        self.join_over = join_over


_PRE_FREE = ("requires a free labelset", _is_free)
_PRE_BOOLEAN = ("requires Boolean weightset", _is_boolean)
_PRE_LETTER_ATOMS = ("requires letter atoms", _has_letter_atoms)
_PRE_TUPLESET = ("requires tupleset labels", _is_tuple)


def _sig_ctx(ctx):
    return [[ctx.sname()]]


def _sig_aut(ctx):
    return [[_aut_sname(ctx)]]


def _sig_expr(ctx):
    return [[_expr_sname(ctx)]]


def _sig_evaluate(ctx):
    return [[_aut_sname(ctx), wordified(ctx.labelset).sname()]]


def _sig_aut_pair(ctx):
    return [[_aut_sname(ctx), _aut_sname(ctx)]]


def _sig_focus(ctx):
    return [
        [_aut_sname(ctx), "integral_constant<unsigned, %d>" % tape]
        for tape in range(len(ctx.labelset.components))
    ]


def _sig_weight_pair(ctx):
    return [[ctx.weightset.sname(), ctx.weightset.sname()]]


def _sig_print_label(ctx):
    ls = ctx.labelset
    sigs = [[ls.sname()]]
    words = wordified(ls)
    if words.sname() != ls.sname():
        sigs.append([words.sname()])
    return sigs


def _sig_print_weight(ctx):
    return [[ctx.weightset.sname()]]


ALGO_TABLE = {
    "make_context": AlgoRow(_factory_make_context, _sig_ctx),
    "read_automaton": AlgoRow(_factory_read_automaton, _sig_ctx),
    "read_expression": AlgoRow(
        _factory_read_expression, _sig_ctx, [_PRE_LETTER_ATOMS]
    ),
    "make_word": AlgoRow(_factory_make_word, _sig_ctx),
    "make_weight": AlgoRow(_factory_make_weight, _sig_ctx),
    "evaluate": AlgoRow(_factory_evaluate, _sig_evaluate, [_PRE_FREE]),
    "is_proper": AlgoRow(_factory_is_proper, _sig_aut),
    "proper": AlgoRow(_factory_proper, _sig_aut),
    "thompson": AlgoRow(_factory_thompson, _sig_expr, [_PRE_LETTER_ATOMS]),
    "determinize": AlgoRow(
        _factory_determinize, _sig_aut, [_PRE_FREE, _PRE_BOOLEAN]
    ),
    "minimize": AlgoRow(_factory_minimize, _sig_aut, [_PRE_FREE, _PRE_BOOLEAN]),
    "product": AlgoRow(
        _factory_product, _sig_aut_pair, [_PRE_FREE], join_over="contexts"
    ),
    "union": AlgoRow(_factory_union, _sig_aut_pair, join_over="contexts"),
    "focus": AlgoRow(_factory_focus, _sig_focus, [_PRE_TUPLESET]),
    "to_expression": AlgoRow(
        _factory_to_expression, _sig_aut, [_PRE_LETTER_ATOMS]
    ),
    "add_weights": AlgoRow(
        _factory_add_weights, _sig_weight_pair, join_over="weightsets"
    ),
    "print_label": AlgoRow(_factory_print, _sig_print_label),
    "print_weight": AlgoRow(_factory_print, _sig_print_weight),
    "print_expression": AlgoRow(_factory_print_expression, _sig_expr),
    "print_automaton": AlgoRow(_factory_print_automaton, _sig_aut),
}


def register_functions(ctx, sink):
    """Offer every algorithm of the table for one context.

    sink(name, signature_strings, bridge) stores accepted registrations.
    Returns a report of what was registered and what was skipped and why.
    """
    report = {"context": ctx.sname(), "registered": [], "skipped": []}
    for name, row in ALGO_TABLE.items():
        reason = None
        for message, pred in row.preconditions:
            if not pred(ctx):
                reason = message
                break
        if reason is not None:
            report["skipped"].append([name, reason])
            continue
        for sig_strings in row.signatures(ctx):
            sink(name, sig_strings, row.factory(sig_strings))
            report["registered"].append([name, ", ".join(sig_strings)])
    return report


# ---------- built-in contexts ----------

BUILTIN_CONTEXTS = (
    "lal_char(ab), b",
    "law_char(ab), b",
    "lal_char(ab), z",
    "lal_char(ab), q",
    "lal_char(ab), zmin",
    "context<tupleset<letterset<char_letters(ab)>, wordset<char_letters(xy)>>, q>",
)

REGISTRATION_REPORTS = {}

_BUILTINS_DONE = False


def _registry_sink(name, sig_strings, bridge):
    dyn.registry(name).set(Signature(sig_strings), bridge)


def register_builtins():
    """Register bridges for the built-in contexts and their nullable
    companions, and hook bridge generation into dispatch misses."""
    global _BUILTINS_DONE
    if _BUILTINS_DONE:
        return
    _BUILTINS_DONE = True
    contexts = []
    for spec in BUILTIN_CONTEXTS:
        ctx = parse_context_spec(spec)
        contexts.append(ctx)
        if isinstance(ctx.labelset, LetterSet):
            contexts.append(ctx.nullable())
    for ctx in contexts:
        report = register_functions(ctx, _registry_sink)
        REGISTRATION_REPORTS[ctx.sname()] = report
    from . import instantiate

    dyn.set_miss_handler(instantiate.instantiate)


# ---------- the facade ----------


def _dispatch(name, signature):
    return dyn.registry(name).dispatch(signature)


def make_context(spec):
    """Build a context from its specification (vname, alias or bare pair)."""
    ctx = parse_context_spec(spec)
    fn = _dispatch("make_context", Signature([ctx.sname()]))
    return fn(ctx.vname())


def _header_context(text):
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, rest = line.partition("=")
        if name.strip() != "context":
            break
        ctx = make_valueset(rest.strip())
        if not isinstance(ctx, Context):
            raise ParseError("automaton header wants a context, got %r" % rest)
        return ctx
    raise ParseError("automaton text must start with 'context = ...'")


def read_automaton(text):
    ctx = _header_context(text)
    fn = _dispatch("read_automaton", Signature([ctx.sname()]))
    return fn(text)


def read_expression(ctx_dv, text):
    fn = _dispatch("read_expression", vsignature([ctx_dv]))
    return fn(ctx_dv, text)


def make_word(ctx_dv, text):
    fn = _dispatch("make_word", vsignature([ctx_dv]))
    return fn(ctx_dv, text)


def make_weight(ctx_dv, text):
    fn = _dispatch("make_weight", vsignature([ctx_dv]))
    return fn(ctx_dv, text)


def evaluate(aut_dv, word_dv):
    fn = _dispatch("evaluate", vsignature([aut_dv, word_dv]))
    return fn(aut_dv, word_dv)


def is_proper(aut_dv):
    fn = _dispatch("is_proper", vsignature([aut_dv]))
    return fn(aut_dv)


def proper(aut_dv):
    fn = _dispatch("proper", vsignature([aut_dv]))
    return fn(aut_dv)


def thompson(expr_dv):
    fn = _dispatch("thompson", vsignature([expr_dv]))
    return fn(expr_dv)


def determinize(aut_dv):
    fn = _dispatch("determinize", vsignature([aut_dv]))
    return fn(aut_dv)


def minimize(aut_dv, algo="auto"):
    fn = _dispatch("minimize", vsignature([aut_dv]))
    return fn(aut_dv, algo)


def product(aut_dvs):
    aut_dvs = list(aut_dvs)
    if not aut_dvs:
        raise PreconditionError("empty operand list")
    fn = _dispatch("product", vsignature(aut_dvs))
    return fn(aut_dvs)


def union(aut_dvs):
    aut_dvs = list(aut_dvs)
    if not aut_dvs:
        raise PreconditionError("empty operand list")
    fn = _dispatch("union", vsignature(aut_dvs))
    return fn(aut_dvs)


def focus(aut_dv, tape):
    ls = aut_dv.valueset.labelset
    if not isinstance(ls, TupleLabelSet):
        raise PreconditionError("requires tupleset labels")
    if not 0 <= tape < len(ls.components):
        raise PreconditionError(
            "tape %d out of range for %s" % (tape, ls.sname())
        )
    fn = _dispatch("focus", vsignature([aut_dv, IntegralConstant(tape)]))
    return fn(aut_dv)


def to_expression(aut_dv):
    fn = _dispatch("to_expression", vsignature([aut_dv]))
    return fn(aut_dv)


def add_weights(a_dv, b_dv):
    fn = _dispatch("add_weights", vsignature([a_dv, b_dv]))
    return fn(a_dv, b_dv)


_PRINT_REGISTRY = {
    "label": "print_label",
    "weight": "print_weight",
    "expression": "print_expression",
    "automaton": "print_automaton",
}


def print_value(dv):
    if not isinstance(dv, DynValue):
        raise DynError("print_value wants a dyn value, got %r" % (dv,))
    if dv.tag == "context":
        return dv.valueset.vname()
    fn = _dispatch(_PRINT_REGISTRY[dv.tag], vsignature([dv]))
    return fn(dv)


def registry_overview():
    """Known signatures and per-signature call counts, per algorithm."""
    out = {}
    for name, reg in sorted(dyn.registries().items()):
        out[name] = {"known": reg.known(), "calls": reg.call_counts()}
    return out
