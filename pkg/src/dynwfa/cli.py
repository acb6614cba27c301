"""Command line front end.

Every subcommand is a thin client over the dynamic facade. By default
the work happens in process; with --server (or DYNWFA_SERVER in the
environment) the same operations are POSTed to a running service
instead, and the printed output is identical either way.

Automata are passed as files in the text format, or "-" for stdin.
"""

import argparse
import os
import sys

from . import bench, bridges, instantiate, service
from .errors import DynwfaError


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path) as f:
        return f.read()


def _write_out(text, output):
    if not text.endswith("\n"):
        text += "\n"
    if output and output != "-":
        with open(output, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


class LocalRunner:
    """Run operations in this process through the dynamic facade."""

    def _aut(self, text):
        return bridges.read_automaton(text)

    def _aut_text(self, dv):
        return bridges.print_value(dv)

    def context(self, spec):
        return bridges.print_value(bridges.make_context(spec))

    def expression(self, spec, text):
        ctx = bridges.make_context(spec)
        return bridges.print_value(bridges.read_expression(ctx, text))

    def evaluate(self, aut_text, word):
        aut = self._aut(aut_text)
        ctx = bridges.make_context(str(aut.valueset.vname()))
        word_dv = bridges.make_word(ctx, word)
        return bridges.print_value(bridges.evaluate(aut, word_dv))

    def is_proper(self, aut_text):
        return bool(bridges.is_proper(self._aut(aut_text)))

    def proper(self, aut_text):
        return self._aut_text(bridges.proper(self._aut(aut_text)))

    def thompson(self, spec, expr_text):
        ctx = bridges.make_context(spec)
        expr = bridges.read_expression(ctx, expr_text)
        return self._aut_text(bridges.thompson(expr))

    def determinize(self, aut_text):
        return self._aut_text(bridges.determinize(self._aut(aut_text)))

    def minimize(self, aut_text, algo):
        return self._aut_text(bridges.minimize(self._aut(aut_text), algo))

    def product(self, aut_texts):
        return self._aut_text(bridges.product([self._aut(t) for t in aut_texts]))

    def union(self, aut_texts):
        return self._aut_text(bridges.union([self._aut(t) for t in aut_texts]))

    def focus(self, aut_text, tape):
        return self._aut_text(bridges.focus(self._aut(aut_text), tape))

    def to_expression(self, aut_text):
        return bridges.print_value(bridges.to_expression(self._aut(aut_text)))

    def pipeline(self, spec, expr_text):
        return service.run_pipeline(spec, expr_text)

    def add_weights(self, left_spec, left, right_spec, right):
        lw = bridges.make_weight(bridges.make_context(left_spec), left)
        rw = bridges.make_weight(bridges.make_context(right_spec), right)
        total = bridges.add_weights(lw, rw)
        return {
            "weightset": str(total.vname()),
            "weight": bridges.print_value(total),
        }

    def dot(self, aut_text):
        aut = self._aut(aut_text)
        return aut.as_(str(aut.vname())).to_dot()

    def registries(self):
        return bridges.registry_overview()

    def cache_stats(self):
        return instantiate.cache_stats()

    def cache_clear(self):
        instantiate.cache_clear()


def _http_client(base_url):
    import httpx

    return httpx.Client(base_url=base_url, timeout=60.0)


class HttpRunner:
    """Send operations to a service and relay its printed forms."""

    def __init__(self, base_url):
        self._client = _http_client(base_url)

    def _call(self, method, path, payload=None):
        if method == "GET":
            resp = self._client.get(path)
        else:
            resp = self._client.post(path, json=payload)
        if resp.status_code == 400:
            raise DynwfaError(resp.json()["detail"])
        resp.raise_for_status()
        return resp.json()

    def context(self, spec):
        return self._call("POST", "/context", {"spec": spec})["context"]

    def expression(self, spec, text):
        body = {"context": spec, "text": text}
        return self._call("POST", "/expression", body)["expression"]

    def evaluate(self, aut_text, word):
        body = {"automaton": aut_text, "word": word}
        return self._call("POST", "/evaluate", body)["weight"]

    def is_proper(self, aut_text):
        return self._call("POST", "/is-proper", {"automaton": aut_text})[
            "is_proper"
        ]

    def proper(self, aut_text):
        return self._call("POST", "/proper", {"automaton": aut_text})["automaton"]

    def thompson(self, spec, expr_text):
        body = {"context": spec, "text": expr_text}
        return self._call("POST", "/thompson", body)["automaton"]

    def determinize(self, aut_text):
        return self._call("POST", "/determinize", {"automaton": aut_text})[
            "automaton"
        ]

    def minimize(self, aut_text, algo):
        body = {"automaton": aut_text, "algo": algo}
        return self._call("POST", "/minimize", body)["automaton"]

    def product(self, aut_texts):
        return self._call("POST", "/product", {"automata": aut_texts})["automaton"]

    def union(self, aut_texts):
        return self._call("POST", "/union", {"automata": aut_texts})["automaton"]

    def focus(self, aut_text, tape):
        body = {"automaton": aut_text, "tape": tape}
        return self._call("POST", "/focus", body)["automaton"]

    def to_expression(self, aut_text):
        return self._call("POST", "/to-expression", {"automaton": aut_text})[
            "expression"
        ]

    def pipeline(self, spec, expr_text):
        return self._call("POST", "/pipeline", {"context": spec, "expr": expr_text})

    def add_weights(self, left_spec, left, right_spec, right):
        body = {
            "left": {"context": left_spec, "weight": left},
            "right": {"context": right_spec, "weight": right},
        }
        return self._call("POST", "/add-weights", body)

    def dot(self, aut_text):
        return self._call("POST", "/dot", {"automaton": aut_text})["dot"]

    def registries(self):
        return self._call("GET", "/registries")

    def cache_stats(self):
        return self._call("GET", "/cache/stats")

    def cache_clear(self):
        self._call("POST", "/cache/clear")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dynwfa", description="weighted automata over pluggable contexts"
    )
    parser.add_argument(
        "--server",
        default=os.environ.get("DYNWFA_SERVER"),
        help="base URL of a running service; default is in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("context", help="print the canonical context name")
    p.add_argument("spec")

    p = sub.add_parser("expression", help="parse and reprint an expression")
    p.add_argument("--context", required=True)
    p.add_argument("expr")

    p = sub.add_parser("evaluate", help="weight of a word in an automaton")
    p.add_argument("--automaton", required=True)
    p.add_argument("word")

    p = sub.add_parser("is-proper", help="check for spontaneous transitions")
    p.add_argument("--automaton", required=True)

    for name, help_text in (
        ("proper", "eliminate spontaneous transitions"),
        ("determinize", "subset construction"),
        ("to-expression", "state elimination back to an expression"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--automaton", required=True)
        p.add_argument("--output")

    p = sub.add_parser("thompson", help="expression to automaton")
    p.add_argument("--context", required=True)
    p.add_argument("--expr", required=True)
    p.add_argument("--output")

    p = sub.add_parser("minimize", help="minimal complete automaton")
    p.add_argument("--automaton", required=True)
    p.add_argument("--algo", default="auto")
    p.add_argument("--output")

    for name, help_text in (
        ("product", "synchronized product of automata"),
        ("union", "disjoint union of automata"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("automata", nargs="+")
        p.add_argument("--output")

    p = sub.add_parser("focus", help="project one tape of a tuple automaton")
    p.add_argument("--automaton", required=True)
    p.add_argument("--tape", type=int, required=True)
    p.add_argument("--output")

    p = sub.add_parser("pipeline", help="expression round trip via minimize")
    p.add_argument("--context", required=True)
    p.add_argument("--expr", required=True)

    p = sub.add_parser("add-weights", help="add weights from two weightsets")
    p.add_argument("--left-context", required=True)
    p.add_argument("--left", required=True)
    p.add_argument("--right-context", required=True)
    p.add_argument("--right", required=True)

    p = sub.add_parser("dot", help="render an automaton as graphviz")
    p.add_argument("--automaton", required=True)
    p.add_argument("--output")

    p = sub.add_parser("bench", help="dispatch and pipeline timings")
    p.add_argument("--dispatch-loops", type=int, default=20000)
    p.add_argument("--pipeline-iterations", type=int, default=2000)

    p = sub.add_parser("cache", help="plugin cache maintenance")
    p.add_argument("action", choices=("stats", "clear"))

    p = sub.add_parser("registry", help="dispatch registry contents")
    p.add_argument("action", choices=("list",))

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8601)

    return parser


def run(args):
    runner = HttpRunner(args.server) if args.server else LocalRunner()
    cmd = args.command

    if cmd == "context":
        print(runner.context(args.spec))
    elif cmd == "expression":
        print(runner.expression(args.context, args.expr))
    elif cmd == "evaluate":
        print(runner.evaluate(_read_text(args.automaton), args.word))
    elif cmd == "is-proper":
        print("true" if runner.is_proper(_read_text(args.automaton)) else "false")
    elif cmd in ("proper", "determinize", "to-expression"):
        method = getattr(runner, cmd.replace("-", "_"))
        result = method(_read_text(args.automaton))
        if cmd == "to-expression":
            print(result)
        else:
            _write_out(result, args.output)
    elif cmd == "thompson":
        _write_out(runner.thompson(args.context, args.expr), args.output)
    elif cmd == "minimize":
        _write_out(
            runner.minimize(_read_text(args.automaton), args.algo), args.output
        )
    elif cmd in ("product", "union"):
        texts = [_read_text(path) for path in args.automata]
        _write_out(getattr(runner, cmd)(texts), args.output)
    elif cmd == "focus":
        _write_out(runner.focus(_read_text(args.automaton), args.tape), args.output)
    elif cmd == "pipeline":
        report = runner.pipeline(args.context, args.expr)
        print("states: %d" % report["states"])
        print("expression: %s" % report["expression"])
    elif cmd == "add-weights":
        result = runner.add_weights(
            args.left_context, args.left, args.right_context, args.right
        )
        print("weightset: %s" % result["weightset"])
        print("weight: %s" % result["weight"])
    elif cmd == "dot":
        _write_out(runner.dot(_read_text(args.automaton)), args.output)
    elif cmd == "bench":
        rows = bench.dispatch_report(loops=args.dispatch_loops)
        print(bench.format_dispatch_report(rows))
        print()
        report = bench.pipeline_report(iterations=args.pipeline_iterations)
        print(bench.format_pipeline_report(report))
    elif cmd == "cache":
        if args.action == "clear":
            runner.cache_clear()
            print("cleared")
        else:
            stats = runner.cache_stats()
            for key in ("compiles", "cache_hits", "entries", "root"):
                print("%s: %s" % (key, stats[key]))
    elif cmd == "registry":
        view = runner.registries()
        for name in sorted(view):
            print(name)
            for sig in view[name]["known"]:
                print("  %s" % sig)
    elif cmd == "serve":
        service.serve(host=args.host, port=args.port)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return run(args)
    except DynwfaError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
