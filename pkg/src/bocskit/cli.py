"""Command-line surface over the verification pipeline.

Every command reads and writes the JSON documents from the io module.
Text output is a flattened key/value rendering of the same document, so
both formats carry identical verdicts.  Commands exit nonzero with a
machine-readable error object whenever a check fails.
"""

from __future__ import annotations

import json
import sys

import click

from . import io as bio
from .bocs import construct_bocs
from .pipeline import PipelineError, roundtrip_bocs, run_pipeline
from .quiver import (example_a2, example_dual_numbers, example_jordan3,
                     example_semisimple_pair)
from .strata import classify_algebra

FIXTURES = {
    "e0": (example_semisimple_pair, [1, 2]),
    "e1": (example_dual_numbers, [1]),
    "e2": (example_a2, [1, 2]),
    "e3": (example_jordan3, [1]),
}


def _flatten(doc, prefix=""):
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            lines.extend(_flatten(doc[key], f"{prefix}{key}."))
    elif isinstance(doc, list):
        for k, item in enumerate(doc):
            lines.extend(_flatten(item, f"{prefix}{k}."))
    else:
        lines.append(f"{prefix[:-1]}: {json.dumps(doc)}")
    return lines


def _write(ctx, doc):
    fmt = ctx.obj["format"]
    text = bio.emit(doc) if fmt == "json" else \
        "\n".join(_flatten(doc)) + "\n"
    out = ctx.obj["out"]
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _fail(ctx, err):
    if isinstance(err, PipelineError):
        obj = err.error_object()
    else:
        obj = {"error": str(err), "stage": "input"}
    click.echo(json.dumps(obj, sort_keys=True), err=True)
    ctx.exit(1)


def _load_algebra(ctx, path):
    try:
        parsed = bio.parse(path)
        if not isinstance(parsed, bio.AlgebraDocument):
            raise ValueError("expected an algebra document")
        return parsed.build()
    except ValueError as e:
        _fail(ctx, e)


@click.group()
@click.option("--out", type=click.Path(), default=None,
              help="Write output to this path instead of stdout.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]),
              default="json", help="Output format.")
@click.option("--seed", type=int, default=0,
              help="Seed for randomized property tests.")
@click.option("--dim-bound", type=int, default=4,
              help="Dimension bound for module-by-module comparisons.")
@click.pass_context
def main(ctx, out, fmt, seed, dim_bound):
    """Exact-arithmetic toolkit for stratified algebras and bocses."""
    ctx.ensure_object(dict)
    ctx.obj.update(out=out, format=fmt, seed=seed, dim_bound=dim_bound)


@main.command()
@click.argument("source", type=click.Path(exists=True))
@click.pass_context
def classify(ctx, source):
    """Classify an algebra document against its vertex order."""
    alg, order = _load_algebra(ctx, source)
    try:
        cls = classify_algebra(alg, order)
    except ValueError as e:
        _fail(ctx, e)
    _write(ctx, {"schema": "bocskit/classification", "version": bio.VERSION,
                 "label": cls.label, "order": list(cls.order),
                 "dim": alg.dim})


@main.command()
@click.argument("source", type=click.Path(exists=True))
@click.option("--mode", type=click.Choice(["delta", "pdelta"]),
              default="pdelta")
@click.option("--rmax", type=int, default=5)
@click.pass_context
def bocs(ctx, source, mode, rmax):
    """Construct the bocs of an algebra document and emit it."""
    alg, order = _load_algebra(ctx, source)
    try:
        b = construct_bocs(alg, order, mode=mode, r_max=rmax)
        doc = bio.bocs_to_doc(b)
    except (ValueError, AssertionError) as e:
        _fail(ctx, e)
    _write(ctx, doc)


@main.command("burt-butler")
@click.argument("source", type=click.Path(exists=True))
@click.pass_context
def burt_butler(ctx, source):
    """Build the right algebra of a bocs document and verify it."""
    try:
        parsed = bio.parse(source)
        if not isinstance(parsed, bio.BocsDocument):
            raise ValueError("expected a bocs document")
        b = parsed.build()
        report = roundtrip_bocs(b)
    except (PipelineError, ValueError) as e:
        _fail(ctx, e)
    _write(ctx, report.doc)


@main.command()
@click.argument("source", type=click.Path(exists=True))
@click.option("--mode", type=click.Choice(["delta", "pdelta"]),
              default="pdelta")
@click.option("--rmax", type=int, default=5)
@click.pass_context
def verify(ctx, source, mode, rmax):
    """Run the full verification pipeline on an algebra document."""
    alg, order = _load_algebra(ctx, source)
    try:
        report = run_pipeline(alg, order, mode=mode,
                              config={"r_max": rmax,
                                      "dim_bound": ctx.obj["dim_bound"]})
    except PipelineError as e:
        _fail(ctx, e)
    _write(ctx, report.doc)


@main.command()
@click.option("--dir", "target", type=click.Path(), default="fixtures")
@click.pass_context
def fixtures(ctx, target):
    """Write the bundled example algebras e0 to e3 as documents."""
    import os
    os.makedirs(target, exist_ok=True)
    written = []
    for name, (build, order) in sorted(FIXTURES.items()):
        doc = bio.algebra_to_doc(build(), order)
        path = os.path.join(target, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(bio.emit(doc))
        written.append(path)
    _write(ctx, {"schema": "bocskit/fixtures", "version": bio.VERSION,
                 "written": written})


if __name__ == "__main__":
    sys.exit(main())
