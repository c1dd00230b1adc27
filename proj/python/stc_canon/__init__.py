"""Canonicity engine: typechecking, canonical-form extraction, phase laws,
and cost extraction for a small dependent type theory, driven by the same
core as the `stc` command line tool."""

import json

from stc_canon._core import (
    convertible,
    infer_type,
    normalize,
    reprint,
    run,
    version,
)

__all__ = [
    "version",
    "run",
    "reprint",
    "infer_type",
    "normalize",
    "convertible",
    "check",
    "canon",
    "laws",
    "calf",
    "CliError",
]


class CliError(RuntimeError):
    """A CLI invocation failed at the usage/parse level (exit code 2)."""


def _report(args):
    res = run(args)
    if res["code"] == 2:
        raise CliError(res["err"].strip() or res["out"].strip())
    return json.loads(res["out"])


def _single(report):
    item = report["items"][0]
    return item


def check(text, fuel=None):
    """Typecheck a closed term; returns the report item as a dict."""
    args = ["check", "-e", text, "--json"]
    if fuel is not None:
        args += ["--fuel", str(fuel)]
    return _single(_report(args))


def canon(text, fuel=None):
    """Extract the canonical boolean of a closed term with its witness."""
    args = ["canon", "-e", text, "--json"]
    if fuel is not None:
        args += ["--fuel", str(fuel)]
    return _single(_report(args))


def calf(text, fuel=None):
    """Extract the cost and result of a closed boolean computation."""
    args = ["calf", "-e", text, "--json"]
    if fuel is not None:
        args += ["--fuel", str(fuel)]
    return _single(_report(args))


def laws(size=3):
    """Exhaustively check the phase-distinction laws up to a carrier bound."""
    return _report(["laws", "--size", str(size), "--json"])
