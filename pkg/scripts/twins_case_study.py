#!/usr/bin/env python3
"""Walk the not_twin case study end to end.

Two people share a birthday, so twin/2 succeeds and not(twin) fails;
state(not_twin, ...) then establishes the intended negative through
questions to the user.  Each scripted variant answers the questions
differently and the HOW tree shows which clause carried the proof.
The final section skolemizes a negative fact directly.
"""

from skolog import (
    Database,
    FreshnessLedger,
    ScriptedOracle,
    SolveOptions,
    format_term,
    load_program,
    negate_fact,
    parse_clause_text,
    parse_query,
    solve,
)
from skolog.corpus import corpus_text
from skolog.explain import how

QUERY = "state(not_twin, marsha, marjorie)."


def fresh_db() -> Database:
    db = Database()
    load_program(db, corpus_text("twins.pl"))
    return db


def show(title: str) -> None:
    print(f"--- {title} ---")


def main() -> None:
    show("the misleading reading")
    db = fresh_db()
    for text in ("twin(marsha, marjorie).", "not(twin(marsha, marjorie))."):
        out = solve(db, parse_query(text), SolveOptions())
        print(f"?- {text}  =>  {out.status}")
    print()

    for script in ("answers_country.txt", "answers_family.txt", "answers_day.txt"):
        show(script)
        db = fresh_db()
        orc = ScriptedOracle(corpus_text(script))
        out = solve(db, parse_query(QUERY), SolveOptions(max_solutions=1), oracle=orc)
        print(f"?- {QUERY}  =>  {out.status}")
        print(how(out.solutions[0].proof))
        print()

    show("triplets: a third sibling does the job")
    db = fresh_db()
    db.assertz(parse_clause_text("person(mona, father1, mother1, month1, year1)."))
    orc = ScriptedOracle(corpus_text("answers_triplets.txt"))
    out = solve(db, parse_query(QUERY), SolveOptions(max_solutions=1), oracle=orc)
    print(f"?- {QUERY}  =>  {out.status}")
    print(how(out.solutions[0].proof))
    print()

    show("skolemized negative fact")
    db = fresh_db()
    nf = negate_fact(db, parse_clause_text("enrolled(Someone, logic)."), ledger=FreshnessLedger())
    print(f"stored: {format_term(nf.stored)}.")
    out = solve(db, parse_query(f"holds_negated(enrolled({format_term(nf.skolem_constants[0])}, logic))."), SolveOptions())
    print(f"?- holds_negated(...)  =>  {out.status}")


if __name__ == "__main__":
    main()
