"""dynwfa: weighted finite automata with a dynamically typed facade.

The typed core (algebra, expressions, automata, algorithms) is importable
directly; the bridges module is the dynamic entry point most callers want.
Importing the package registers the built-in context bridges and hooks
plugin generation into dispatch misses.
"""

from . import bridges
from .bridges import (
    add_weights,
    determinize,
    evaluate,
    focus,
    is_proper,
    make_context,
    make_weight,
    make_word,
    minimize,
    print_value,
    product,
    proper,
    read_automaton,
    read_expression,
    registry_overview,
    thompson,
    to_expression,
    union,
)

__version__ = "0.1.0"

bridges.register_builtins()
