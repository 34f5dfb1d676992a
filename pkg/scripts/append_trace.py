#!/usr/bin/env python3
"""Trace a list-append query step by step.

Runs append([a,b],[c,d],Ls) against the corpus program and prints the
reduction table followed by the answer binding, then shows the HOW tree
for the same solution.
"""

import argparse

from skolog import Database, SolveOptions, load_program, parse_query, solve
from skolog.corpus import corpus_text
from skolog.explain import format_trace, how, trace_of


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--goal",
        default="append([a,b],[c,d],Ls).",
        help="query to trace (default: %(default)s)",
    )
    args = ap.parse_args()

    db = Database()
    load_program(db, corpus_text("append.pl"))
    out = solve(db, parse_query(args.goal), SolveOptions())
    if out.status != "yes":
        print(out.status)
        return

    sol = out.solutions[0]
    print(format_trace(trace_of(sol.proof)))
    print()
    for var, term in sol.bindings.items():
        from skolog import format_term

        print(f"{var.name} = {format_term(term)}")
    print()
    print(how(sol.proof))


if __name__ == "__main__":
    main()
