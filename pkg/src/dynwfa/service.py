"""HTTP interface over the dynamic facade.

Automata travel as their text format, expressions and weights as their
printed forms, so any client that can speak JSON gets exactly the
strings the command line prints. Every operation goes through the
runtime-typed layer; a client over this service exercises the same
dispatch paths as in-process callers, including on-demand plugin
instantiation for signatures no builtin covers.

Domain failures (parse errors, precondition violations, instantiation
failures) come back as HTTP 400 with the full error text in `detail`.
"""

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__, bridges, instantiate
from .errors import DynwfaError


class ContextIn(BaseModel):
    spec: str


class ExpressionIn(BaseModel):
    context: str
    text: str


class AutomatonIn(BaseModel):
    automaton: str


class EvaluateIn(BaseModel):
    automaton: str
    word: str


class MinimizeIn(BaseModel):
    automaton: str
    algo: str = "auto"


class OperandsIn(BaseModel):
    automata: list[str]


class FocusIn(BaseModel):
    automaton: str
    tape: int


class PipelineIn(BaseModel):
    context: str
    expr: str


class WeightIn(BaseModel):
    context: str
    weight: str


class AddWeightsIn(BaseModel):
    left: WeightIn
    right: WeightIn


def _context_of(aut_dv):
    return bridges.make_context(str(aut_dv.valueset.vname()))


def _automaton_out(aut_dv):
    return {"automaton": bridges.print_value(aut_dv)}


def _cast(aut_dv):
    return aut_dv.as_(str(aut_dv.vname()))


def run_pipeline(context_spec, expr_text):
    ctx = bridges.make_context(context_spec)
    expr = bridges.read_expression(ctx, expr_text)
    aut = bridges.thompson(expr)
    aut = bridges.proper(aut)
    aut = bridges.determinize(aut)
    aut = bridges.minimize(aut)
    back = bridges.to_expression(aut)
    return {
        "states": _cast(aut).num_states(),
        "expression": bridges.print_value(back),
    }


def create_app():
    app = FastAPI(title="dynwfa", version=__version__)

    @app.exception_handler(DynwfaError)
    def _domain_error(request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/context")
    def context(body: ContextIn):
        dv = bridges.make_context(body.spec)
        return {"context": bridges.print_value(dv)}

    @app.post("/expression")
    def expression(body: ExpressionIn):
        ctx = bridges.make_context(body.context)
        expr = bridges.read_expression(ctx, body.text)
        return {"expression": bridges.print_value(expr)}

    @app.post("/evaluate")
    def evaluate(body: EvaluateIn):
        aut = bridges.read_automaton(body.automaton)
        word = bridges.make_word(_context_of(aut), body.word)
        return {"weight": bridges.print_value(bridges.evaluate(aut, word))}

    @app.post("/is-proper")
    def is_proper(body: AutomatonIn):
        aut = bridges.read_automaton(body.automaton)
        return {"is_proper": bool(bridges.is_proper(aut))}

    @app.post("/proper")
    def proper(body: AutomatonIn):
        return _automaton_out(bridges.proper(bridges.read_automaton(body.automaton)))

    @app.post("/thompson")
    def thompson(body: ExpressionIn):
        ctx = bridges.make_context(body.context)
        expr = bridges.read_expression(ctx, body.text)
        return _automaton_out(bridges.thompson(expr))

    @app.post("/determinize")
    def determinize(body: AutomatonIn):
        return _automaton_out(
            bridges.determinize(bridges.read_automaton(body.automaton))
        )

    @app.post("/minimize")
    def minimize(body: MinimizeIn):
        return _automaton_out(
            bridges.minimize(bridges.read_automaton(body.automaton), body.algo)
        )

    @app.post("/product")
    def product(body: OperandsIn):
        auts = [bridges.read_automaton(text) for text in body.automata]
        return _automaton_out(bridges.product(auts))

    @app.post("/union")
    def union(body: OperandsIn):
        auts = [bridges.read_automaton(text) for text in body.automata]
        return _automaton_out(bridges.union(auts))

    @app.post("/focus")
    def focus(body: FocusIn):
        aut = bridges.read_automaton(body.automaton)
        return _automaton_out(bridges.focus(aut, body.tape))

    @app.post("/to-expression")
    def to_expression(body: AutomatonIn):
        aut = bridges.read_automaton(body.automaton)
        return {"expression": bridges.print_value(bridges.to_expression(aut))}

    @app.post("/pipeline")
    def pipeline(body: PipelineIn):
        return run_pipeline(body.context, body.expr)

    @app.post("/add-weights")
    def add_weights(body: AddWeightsIn):
        left = bridges.make_weight(
            bridges.make_context(body.left.context), body.left.weight
        )
        right = bridges.make_weight(
            bridges.make_context(body.right.context), body.right.weight
        )
        total = bridges.add_weights(left, right)
        return {
            "weightset": str(total.vname()),
            "weight": bridges.print_value(total),
        }

    @app.post("/dot")
    def dot(body: AutomatonIn):
        aut = bridges.read_automaton(body.automaton)
        return {"dot": _cast(aut).to_dot()}

    @app.get("/registries")
    def registries():
        return bridges.registry_overview()

    @app.get("/cache/stats")
    def cache_stats():
        return instantiate.cache_stats()

    @app.post("/cache/clear")
    def cache_clear():
        instantiate.cache_clear()
        return {"cleared": True}

    return app


app = create_app()


def serve(host="127.0.0.1", port=8601):
    import uvicorn

    uvicorn.run(app, host=host, port=port, log_level="warning")
