"""Command-line interface.

Exit status: 0 when the claim holds (formula true, proof accepted,
witness found), 1 when it does not, 2 on usage or input errors.
"""

from __future__ import annotations

import json
import sys

import click

from . import fixtures
from .checker import MeaningNotShared, SemanticsMode, failing_points, satisfies
from .countermodel import SearchBounds, find_countermodel, find_model
from .formula import FormulaSyntaxError, parse, render
from .harness import GenConfig, run_meaning_transfer_suite, run_soundness_suite, run_undefinability_suite
from .model import ModelError, load, save
from .proof import ProofFormatError, check_proof, load_proof

EXIT_HOLDS, EXIT_FAILS, EXIT_ERROR = 0, 1, 2

_INPUT_ERRORS = (FormulaSyntaxError, ModelError, ProofFormatError, MeaningNotShared, OSError)


class _Settings:
    def __init__(self, json_output=False, seed=0, time_limit=None):
        self.json = json_output
        self.seed = seed
        self.time_limit = time_limit


def _emit(ctx: click.Context, payload: dict, text: str) -> None:
    if ctx.obj.json:
        click.echo(json.dumps(payload, indent=2, sort_keys=True))
    else:
        click.echo(text)


def _fail_input(ctx: click.Context, exc: Exception) -> None:
    message = f"{type(exc).__name__}: {exc}"
    if ctx.obj.json:
        click.echo(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True))
    click.echo(f"error: {message}", err=True)
    ctx.exit(EXIT_ERROR)


def _json_option(f):
    def callback(ctx, _param, value):
        if value:
            ctx.ensure_object(_Settings).json = True
        return value

    return click.option("--json", "json_flag", is_flag=True, expose_value=False,
                        callback=callback, help="Machine-readable JSON on stdout.")(f)


def _parse_formula(ctx, text):
    try:
        return parse(text)
    except FormulaSyntaxError as exc:
        _fail_input(ctx, exc)


@click.group()
@click.option("--json", "json_output", is_flag=True, help="Machine-readable JSON on stdout.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for the harness suites.")
@click.option("--time-limit", type=float, default=None, help="Wall-clock limit for countermodel search, seconds.")
@click.pass_context
def main(ctx, json_output, seed, time_limit):
    """Model checking and proof checking for knowledge and comprehension."""
    ctx.obj = _Settings(json_output, seed, time_limit)


@main.command()
@click.argument("model_path", type=click.Path(dir_okay=False))
@click.argument("formula")
@click.option("--state", help="State to evaluate at (default: every state).")
@click.option("--meaning", help="Meaning to evaluate at (default: every meaning of the state).")
@click.option("--mode", type=click.Choice([m.value for m in SemanticsMode]), default="standard",
              show_default=True, help="alt4 evaluates knowledge at the current meaning only.")
@_json_option
@click.pass_context
def check(ctx, model_path, formula, state, meaning, mode):
    """Evaluate FORMULA at points of the model in MODEL_PATH."""
    f = _parse_formula(ctx, formula)
    try:
        model = load(model_path)
        if meaning is not None and state is None:
            raise click.UsageError("--meaning requires --state")
        states = [state] if state is not None else list(model.states)
        points = []
        for w in states:
            ms = [meaning] if meaning is not None else list(model.meanings.get(w, [None]))
            points.extend(model.check_point((w, m)) for m in ms)
        values = [satisfies(model, p, f, SemanticsMode(mode)) for p in points]
    except _INPUT_ERRORS as exc:
        _fail_input(ctx, exc)

    consistent = {}
    if meaning is None:
        for w in states:
            seen = {v for p, v in zip(points, values) if p.state == w}
            consistent[w] = len(seen) == 1
    holds = all(values)
    payload = {
        "command": "check",
        "formula": render(f),
        "mode": mode,
        "points": [{"state": p.state, "meaning": p.meaning, "value": v} for p, v in zip(points, values)],
        "consistent": consistent,
        "holds": holds,
    }
    lines = []
    if meaning is not None:
        lines.append(f"({state}, {meaning}) {render(f)}: {str(values[0]).lower()}")
    else:
        for w in states:
            lines.append(f"state {w}:")
            lines.extend(f"  {p.meaning}: {str(v).lower()}" for p, v in zip(points, values) if p.state == w)
            lines.append(f"  consistent={str(consistent[w]).lower()}")
    _emit(ctx, payload, "\n".join(lines))
    ctx.exit(EXIT_HOLDS if holds else EXIT_FAILS)


@main.command()
@click.argument("model_path", type=click.Path(dir_okay=False))
@click.argument("formula")
@_json_option
@click.pass_context
def valid(ctx, model_path, formula):
    """Check FORMULA at every point of the model; list the failing points."""
    f = _parse_formula(ctx, formula)
    try:
        model = load(model_path)
        bad = failing_points(model, f)
    except _INPUT_ERRORS as exc:
        _fail_input(ctx, exc)
    payload = {
        "command": "valid",
        "formula": render(f),
        "valid": not bad,
        "failing_points": [list(p) for p in bad],
    }
    if bad:
        text = f"not valid: {len(bad)} failing points\n" + "\n".join(f"  ({w}, {m})" for w, m in bad)
    else:
        text = "valid"
    _emit(ctx, payload, text)
    ctx.exit(EXIT_FAILS if bad else EXIT_HOLDS)


@main.command("prove-check")
@click.argument("proof_path", type=click.Path(dir_okay=False))
@_json_option
@click.pass_context
def prove_check(ctx, proof_path):
    """Verify the Hilbert-style proof in PROOF_PATH."""
    try:
        proof = load_proof(proof_path)
    except _INPUT_ERRORS as exc:
        _fail_input(ctx, exc)
    verdict = check_proof(proof)
    payload = {
        "command": "prove-check",
        "accepted": verdict.accepted,
        "goal": render(verdict.goal) if verdict.accepted else None,
        "line": verdict.line,
        "reason": verdict.reason.value if verdict.reason else None,
        "message": verdict.message,
    }
    _emit(ctx, payload, verdict.describe())
    ctx.exit(EXIT_HOLDS if verdict.accepted else EXIT_FAILS)


@main.command()
@click.argument("formula")
@click.option("--max-states", type=click.IntRange(min=1), default=3, show_default=True)
@click.option("--max-meanings", type=click.IntRange(min=1), default=2, show_default=True)
@click.option("--satisfy", is_flag=True, help="Look for a point where FORMULA is true instead.")
@click.option("--out", type=click.Path(dir_okay=False), help="Write the witness model here.")
@_json_option
@click.pass_context
def countermodel(ctx, formula, max_states, max_meanings, satisfy, out):
    """Search small models for a point falsifying FORMULA."""
    f = _parse_formula(ctx, formula)
    bounds = SearchBounds(max_states, max_meanings, ctx.obj.time_limit)
    result = (find_model if satisfy else find_countermodel)(f, bounds)
    if result.found and out:
        try:
            save(result.model, out)
        except OSError as exc:
            _fail_input(ctx, exc)
    payload = {
        "command": "countermodel",
        "formula": render(f),
        "status": result.status.value,
        "candidates": result.candidates,
        "point": list(result.point) if result.found else None,
        "model": result.model.to_dict() if result.found else None,
    }
    if result.found:
        kind = "model" if satisfy else "countermodel"
        text = f"found {kind} at point ({result.point.state}, {result.point.meaning}) " \
               f"after {result.candidates} candidates"
        text += f"\nwritten to {out}" if out else "\n" + json.dumps(result.model.to_dict(), indent=2)
    else:
        text = f"{result.status.value}: no witness within {max_states} states, " \
               f"{max_meanings} meanings per state ({result.candidates} candidates)"
    _emit(ctx, payload, text)
    ctx.exit(EXIT_HOLDS if result.found else EXIT_FAILS)


@main.command()
@click.argument("formula")
@_json_option
@click.pass_context
def fmt(ctx, formula):
    """Print FORMULA in canonical form."""
    f = _parse_formula(ctx, formula)
    _emit(ctx, {"command": "fmt", "formula": render(f)}, render(f))


@main.command()
@click.option("--list", "list_", is_flag=True, help="List bundled examples.")
@click.option("--emit", nargs=2, metavar="NAME DIR", help="Write example NAME (or 'all') into DIR.")
@_json_option
@click.pass_context
def examples(ctx, list_, emit):
    """List or materialize the bundled example models and proofs."""
    if emit:
        name, directory = emit
        try:
            written = fixtures.emit(name, directory)
        except (KeyError, OSError) as exc:
            _fail_input(ctx, exc)
        _emit(ctx, {"command": "examples", "written": [str(p) for p in written]},
              "\n".join(str(p) for p in written))
        return
    if not list_:
        raise click.UsageError("give --list or --emit NAME DIR")
    catalogue = {**fixtures.MODEL_FIXTURES, **fixtures.PROOF_FIXTURES}
    width = max(map(len, catalogue))
    _emit(ctx, {"command": "examples", "examples": catalogue},
          "\n".join(f"{n:<{width}}  {d}" for n, d in catalogue.items()))


@main.command()
@click.argument("suite", type=click.Choice(["soundness", "undefinability", "transfer"]))
@click.option("--trials", type=click.IntRange(min=1), default=None,
              help="Number of trials (default 500, or 200 for undefinability).")
@_json_option
@click.pass_context
def harness(ctx, suite, trials):
    """Run one of the randomized property suites."""
    seed = ctx.obj.seed
    if suite == "soundness":
        report = run_soundness_suite(GenConfig(seed=seed), trials or 500)
    elif suite == "undefinability":
        report = run_undefinability_suite(trials or 200, seed)
    else:
        report = run_meaning_transfer_suite(GenConfig(seed=seed), trials or 500)
    if ctx.obj.json:
        click.echo(report.to_json(), nl=False)
    else:
        for name, counts in report.checks.items():
            click.echo(f"{name:<32} passed={counts['passed']} failed={counts['failed']}")
        click.echo("ok" if report.ok else f"FAILED ({report.failures} failures)")
    ctx.exit(EXIT_HOLDS if report.ok else EXIT_FAILS)


if __name__ == "__main__":
    sys.exit(main())
