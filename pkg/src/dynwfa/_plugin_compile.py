"""Compile driver for generated plugin sources.

Usage: python -m dynwfa._plugin_compile [flags...] SOURCE OUTPUT

Checks the source (syntax, then module-level static checks by executing
it), then writes a hash-checked bytecode file to OUTPUT. A failed static
check prints a single 'static assertion failed: ...' line on stderr and
exits nonzero; the caller surfaces that line in its error report.
"""

import py_compile
import sys

from dynwfa.errors import StaticAssertionError


def main(argv):
    if len(argv) < 3:
        print("usage: _plugin_compile [flags...] SOURCE OUTPUT", file=sys.stderr)
        return 2
    src, out = argv[-2], argv[-1]
    try:
        with open(src) as f:
            source = f.read()
    except OSError as exc:
        print("cannot read %s: %s" % (src, exc), file=sys.stderr)
        return 1
    try:
        code = compile(source, src, "exec")
    except SyntaxError as exc:
        print("syntax error: %s" % exc, file=sys.stderr)
        return 1
    namespace = {"__name__": "dynwfa_plugin_check", "__file__": src}
    try:
        exec(code, namespace)
    except StaticAssertionError as exc:
        print("static assertion failed: %s" % exc, file=sys.stderr)
        return 1
    py_compile.compile(
        src,
        cfile=out,
        invalidation_mode=py_compile.PycInvalidationMode.CHECKED_HASH,
        doraise=True,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
