"""Shared test helpers: variant equality, trace parsing, CLI harness."""

from __future__ import annotations

import io
from dataclasses import dataclass

from skolog import Atom, Clause, Int, Struct, Var
from skolog.cli import main as cli_main


def canonical(term, mapping=None):
    """Rename variables to V0, V1, ... in first-occurrence order, so two
    variants of the same term become equal."""
    if mapping is None:
        mapping = {}
    if isinstance(term, Var):
        if term not in mapping:
            mapping[term] = Var("V", len(mapping))
        return mapping[term]
    if isinstance(term, (Atom, Int)):
        return term
    if isinstance(term, Struct):
        return Struct(term.name, tuple(canonical(a, mapping) for a in term.args))
    if isinstance(term, Clause):
        return Clause(
            head=canonical(term.head, mapping),
            body=tuple(canonical(g, mapping) for g in term.body),
        )
    raise TypeError(f"not a term: {term!r}")


def variant_equal(a, b) -> bool:
    """True when a and b differ only in variable names."""
    return canonical(a) == canonical(b)


def variant_equal_seq(xs, ys) -> bool:
    """Variant equality over a sequence, with one shared renaming per side
    (variable identities must correspond across all elements)."""
    xs, ys = list(xs), list(ys)
    if len(xs) != len(ys):
        return False
    ma, mb = {}, {}
    return all(canonical(x, ma) == canonical(y, mb) for x, y in zip(xs, ys))


@dataclass
class CliResult:
    code: int
    out: str
    err: str


def run_cli(argv, stdin_text: str = "") -> CliResult:
    stdin = io.StringIO(stdin_text)
    stdout = io.StringIO()
    stderr = io.StringIO()
    code = cli_main(argv, stdin=stdin, stdout=stdout, stderr=stderr)
    return CliResult(code, stdout.getvalue(), stderr.getvalue())
