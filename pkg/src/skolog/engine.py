"""Goal resolution: leftmost goal first, clauses in stored order,
alternatives on backtracking.

Each reduction renames the chosen clause apart, unifies the selected goal
with its head, and continues with the clause body prepended to the
remaining goals.  The number of reductions along one derivation path is
capped by ``depth_limit``; paths cut off that way set a flag, and a run
that finds no solution reports ``depth_exceeded`` instead of ``no`` when
the flag is up, so ``no`` always means an exhaustive search said no.

Cut (!) succeeds once and, on backtracking, discards the choice points
made since the clause it sits in was entered: remaining alternatives of
the preceding body goals and the remaining clauses of the predicate.
not/1 runs its argument in a nested search over the same database and
succeeds exactly when that search finds nothing within the remaining
depth; a cut inside the argument stays inside.

Successful derivations are recorded as proof trees for HOW/WHY and the
derived trace; only the successful branch is kept.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Iterator, Optional, TextIO

from . import oracle as oracle_mod
from .database import (
    Database,
    StoredClause,
    KIND_DYNAMIC,
    KIND_S_FACT,
    KIND_STATIC,
)
from .errors import EngineError, InstantiationError
from .explain import (
    AssertedFactJust,
    BuiltinJust,
    ClauseJust,
    ProofNode,
    QUERY_ROOT,
    SFactJust,
    UserSaidJust,
    WhyContext,
    format_trace_entry,
    TraceEntry,
    why as render_why,
)
from .negation import find_s_fact
from .parser import format_goal
from .terms import (
    Atom,
    Clause,
    FreshVars,
    Int,
    Struct,
    Subst,
    Term,
    Var,
    apply,
    compose,
    indicator_of,
    is_ground,
    rename_clause,
    restrict,
    unify,
    variables_in,
    variables_of,
)

# Deep derivations run through nested generators; give them headroom.
sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))


@dataclass
class SolveOptions:
    depth_limit: int = 10_000
    trace: bool = False
    max_solutions: Optional[int] = None


@dataclass
class Solution:
    bindings: Subst  # query variables only, fully instantiated
    proof: ProofNode


@dataclass
class Outcome:
    status: str  # "yes" | "no" | "depth_exceeded"
    solutions: list[Solution] = field(default_factory=list)


class _MissingOracle(oracle_mod.Oracle):
    """Stands in when no oracle is attached; consulting it is an error."""

    def answer(self, question, why_supplier):
        raise EngineError(
            "a question came up but no oracle is attached: "
            + oracle_mod.prompt_for(question)
        )


_MISSING_ORACLE = _MissingOracle()


class _Cut(Exception):
    """Unwinds choice points up to the call that owns ``barrier``."""

    def __init__(self, barrier: object):
        self.barrier = barrier


def reduce(goal: Term, clause: Clause):
    """One reduction step: (body with the unifier applied, unifier), or
    None if the head does not match.  The clause must be renamed apart."""
    theta = unify(goal, clause.head)
    if theta is None:
        return None
    return tuple(apply(theta, b) for b in clause.body), theta


class Solver:
    """One query-answering machine over a database.

    ``out`` receives write/1 output and question dialogue, ``diag``
    receives warnings, ``trace_out`` receives the live trace stream when
    options.trace is set.  All defaults go to the real terminal.
    """

    def __init__(
        self,
        db: Database,
        options: Optional[SolveOptions] = None,
        oracle: Optional[oracle_mod.Oracle] = None,
        out: Optional[TextIO] = None,
        diag: Optional[TextIO] = None,
        trace_out: Optional[TextIO] = None,
    ):
        self.db = db
        self.options = options or SolveOptions()
        self.oracle = oracle
        self.out = out if out is not None else sys.stdout
        self.diag = diag if diag is not None else sys.stderr
        self.trace_out = trace_out

    def run(self, goals) -> Outcome:
        """Collect solutions (up to max_solutions) and name the outcome."""
        solutions = []
        limit = self.options.max_solutions
        for sol in self.solutions(goals):
            solutions.append(sol)
            if limit is not None and len(solutions) >= limit:
                break
        if solutions:
            return Outcome("yes", solutions)
        return Outcome("depth_exceeded" if self._truncated else "no")

    def solutions(self, goals) -> Iterator[Solution]:
        """Lazy stream of solutions in derivation order."""
        goals = tuple(goals)
        for g in goals:
            if not isinstance(g, (Atom, Struct)):
                raise EngineError(f"query goal is not callable: {g!r}")
        self._fresh = FreshVars()
        self._truncated = False
        self._why_frames: list[tuple[Term, StoredClause]] = []
        self._root = goals
        self._warned: set[tuple[str, int]] = set()
        qvars = [v for v in variables_in(goals) if v.name != "_"]
        top_barrier = object()
        try:
            for theta, proofs, _depth in self._prove_all(goals, {}, 0, top_barrier):
                bindings = restrict(theta, qvars)
                root = self._root_proof(proofs, theta)
                yield Solution(bindings, root)
        except _Cut as c:
            if c.barrier is not top_barrier:
                raise

    def _root_proof(self, proofs: tuple[ProofNode, ...], theta: Subst) -> ProofNode:
        finalized = tuple(self._finalize(p, theta) for p in proofs)
        if len(finalized) == 1:
            return finalized[0]
        goal = Struct(",", tuple(p.goal for p in finalized)) if finalized else Atom("true")
        return ProofNode(goal, goal, QUERY_ROOT, {}, finalized)

    def _finalize(self, node: ProofNode, theta: Subst) -> ProofNode:
        return ProofNode(
            goal=apply(theta, node.goal),
            entry_goal=node.entry_goal,
            justification=node.justification,
            bindings=node.bindings,
            children=tuple(self._finalize(c, theta) for c in node.children),
        )

    # (theta, proof nodes so far, reductions used) triples.
    def _prove_all(self, goals, theta: Subst, depth: int, barrier: object):
        if not goals:
            yield theta, (), depth
            return
        first, rest = goals[0], goals[1:]
        g = apply(theta, first)
        if isinstance(g, Var):
            raise InstantiationError(f"goal is an unbound variable: {first!r}")
        if isinstance(g, Int):
            raise EngineError(f"integer is not a callable goal: {g.value}")
        if g == Atom("!"):
            node = ProofNode(g, g, BuiltinJust("!"), {})
            for theta2, proofs2, d2 in self._prove_all(rest, theta, depth, barrier):
                yield theta2, (node,) + proofs2, d2
            raise _Cut(barrier)
        for theta1, node, d1 in self._prove_goal(g, theta, depth):
            for theta2, proofs2, d2 in self._prove_all(rest, theta1, d1, barrier):
                yield theta2, (node,) + proofs2, d2

    def _prove_goal(self, g: Term, theta: Subst, depth: int):
        ind = indicator_of(g)
        handler = _BUILTINS.get(ind)
        if handler is not None:
            yield from handler(self, g, theta, depth)
            return
        yield from self._user_call(g, theta, depth, ind)

    def _user_call(self, g: Term, theta: Subst, depth: int, ind):
        snapshot = self.db.clauses(ind)
        if not snapshot:
            if ind not in self._warned:
                self._warned.add(ind)
                self.diag.write(f"warning: unknown predicate {ind[0]}/{ind[1]}\n")
            return
        barrier = object()
        produced = False
        try:
            for sc in snapshot:
                renamed = rename_clause(sc.clause, self._fresh)
                theta_i = unify(g, renamed.head)
                if theta_i is None:
                    continue
                if depth >= self.options.depth_limit:
                    self._truncated = True
                    break
                entry_bindings = restrict(theta_i, variables_of(g))
                self._emit_trace(g, entry_bindings)
                new_theta = compose(theta, theta_i)
                self._why_frames.append((g, sc))
                try:
                    for theta2, child_proofs, d2 in self._prove_all(
                        renamed.body, new_theta, depth + 1, barrier
                    ):
                        produced = True
                        node = ProofNode(
                            goal=apply(theta2, g),
                            entry_goal=g,
                            justification=_justify(sc),
                            bindings=entry_bindings,
                            children=child_proofs,
                        )
                        yield theta2, node, d2
                finally:
                    self._why_frames.pop()
            if not produced and self.trace_out is not None and self.options.trace:
                self.trace_out.write(f"fail\t{format_goal(g)}\n")
        except _Cut as c:
            if c.barrier is barrier:
                return
            raise

    def _emit_trace(self, goal: Term, bindings: Subst) -> None:
        if self.trace_out is not None and self.options.trace:
            self.trace_out.write(format_trace_entry(TraceEntry(goal, bindings)) + "\n")

    # ------------------------------------------------------------------
    # builtins

    def _why_supplier(self):
        return WhyContext(tuple(self._why_frames), self._root)

    def _why_renderer(self, ctx) -> None:
        self.out.write(render_why(ctx) + "\n")

    def _bi_true(self, g, theta, depth):
        yield theta, ProofNode(g, g, BuiltinJust("true"), {}), depth

    def _bi_fail(self, g, theta, depth):
        return
        yield  # pragma: no cover

    def _bi_not(self, g, theta, depth):
        inner = g.args[0]
        if isinstance(inner, Var):
            raise InstantiationError("not/1 needs a callable argument")
        if isinstance(inner, Int):
            raise EngineError("integer is not a callable goal")
        inner_barrier = object()
        found = False
        try:
            for _ in self._prove_all((inner,), theta, depth + 1, inner_barrier):
                found = True
                break
        except _Cut as c:
            if c.barrier is not inner_barrier:
                raise
        if not found:
            yield theta, ProofNode(g, g, BuiltinJust("not"), {}), depth + 1

    def _bi_unify(self, g, theta, depth):
        theta_i = unify(g.args[0], g.args[1])
        if theta_i is None:
            return
        node = ProofNode(g, g, BuiltinJust("="), restrict(theta_i, variables_of(g)))
        yield compose(theta, theta_i), node, depth

    def _bi_not_unify(self, g, theta, depth):
        if unify(g.args[0], g.args[1]) is None:
            yield theta, ProofNode(g, g, BuiltinJust("\\="), {}), depth

    def _bi_plus(self, g, theta, depth):
        a, b, c = g.args
        ints = [x.value if isinstance(x, Int) else None for x in (a, b, c)]
        known = sum(1 for x in ints if x is not None)
        if known < 2:
            raise InstantiationError(
                f"plus/3 needs at least two integers: {format_goal(g)}"
            )
        if known == 3:
            if ints[0] + ints[1] == ints[2]:
                yield theta, ProofNode(g, g, BuiltinJust("plus"), {}), depth
            return
        if ints[2] is None:
            missing, value = c, Int(ints[0] + ints[1])
        elif ints[1] is None:
            missing, value = b, Int(ints[2] - ints[0])
        else:
            missing, value = a, Int(ints[2] - ints[1])
        theta_i = unify(missing, value)
        if theta_i is None:
            return
        node = ProofNode(
            apply(theta_i, g), g, BuiltinJust("plus"), restrict(theta_i, variables_of(g))
        )
        yield compose(theta, theta_i), node, depth

    def _bi_write(self, g, theta, depth):
        self.out.write(format_goal(g.args[0]))
        yield theta, ProofNode(g, g, BuiltinJust("write"), {}), depth

    def _require_oracle(self) -> oracle_mod.Oracle:
        # resolved lazily: a memo hit answers without any oracle at all
        if self.oracle is None:
            return _MISSING_ORACLE
        return self.oracle

    def _ask_args(self, g) -> tuple[str, str]:
        a, p = g.args[0], g.args[1]
        if not isinstance(a, Atom) or not isinstance(p, Atom):
            raise InstantiationError(
                f"ask attribute and subject must be atoms: {format_goal(g)}"
            )
        return a.name, p.name

    def _ask_node(self, g, theta, res) -> ProofNode:
        if res.source == "memo":
            just = AssertedFactJust(res.known)
        else:
            just = UserSaidJust(res.question, res.answer)
        return ProofNode(apply(theta, g), g, just, {})

    def _bi_ask(self, g, theta, depth):
        attribute, subject = self._ask_args(g)
        v = g.args[2]
        if not is_ground(v):
            yield from self._ask_value(g, theta, depth, attribute, subject, v)
            return
        res = oracle_mod.ask(
            self.db,
            attribute,
            subject,
            v,
            self._require_oracle(),
            self._why_supplier,
            self._why_renderer,
        )
        if res.succeeded:
            yield theta, self._ask_node(g, theta, res), depth

    def _bi_ask_value(self, g, theta, depth):
        # ask_value/3 with a ground value degenerates to a yes/no ask.
        yield from self._bi_ask(g, theta, depth)

    def _ask_value(self, g, theta, depth, attribute, subject, v):
        if not isinstance(v, Var):
            raise InstantiationError(
                f"ask value must be ground or a variable: {format_goal(g)}"
            )
        res = oracle_mod.ask_value(
            self.db,
            attribute,
            subject,
            self._require_oracle(),
            self._why_supplier,
            self._why_renderer,
        )
        if not res.succeeded:
            return
        theta_i = {v: res.value}
        node = self._ask_node(g, theta, res)
        node = ProofNode(
            goal=apply(theta_i, node.goal),
            entry_goal=node.entry_goal,
            justification=node.justification,
            bindings=restrict(theta_i, variables_of(g)),
            children=(),
        )
        yield compose(theta, theta_i), node, depth

    def _assert_clause(self, g) -> Clause:
        t = g.args[0]
        if not isinstance(t, (Atom, Struct)):
            raise EngineError(f"cannot assert: {format_goal(g)}")
        return Clause(head=t)

    def _bi_asserta(self, g, theta, depth):
        self.db.asserta(self._assert_clause(g), kind=KIND_DYNAMIC)
        yield theta, ProofNode(g, g, BuiltinJust("asserta"), {}), depth

    def _bi_assertz(self, g, theta, depth):
        self.db.assertz(self._assert_clause(g), kind=KIND_DYNAMIC)
        yield theta, ProofNode(g, g, BuiltinJust("assertz"), {}), depth

    def _bi_assert(self, g, theta, depth):
        yield from self._bi_assertz(g, theta, depth)

    def _bi_retract(self, g, theta, depth):
        t = g.args[0]
        if not isinstance(t, (Atom, Struct)):
            raise EngineError(f"cannot retract: {format_goal(g)}")
        theta_i = self.db.retract(Clause(head=t))
        if theta_i is None:
            return
        node = ProofNode(
            apply(theta_i, g), g, BuiltinJust("retract"), restrict(theta_i, variables_of(g))
        )
        yield compose(theta, theta_i), node, depth

    def _bi_holds_negated(self, g, theta, depth):
        inner = g.args[0]
        if not isinstance(inner, (Atom, Struct)):
            raise InstantiationError("holds_negated/1 needs a callable argument")
        if not is_ground(inner):
            raise InstantiationError(
                f"holds_negated/1 needs a ground argument: {format_goal(g)}"
            )
        sc = find_s_fact(self.db, inner)
        if sc is not None:
            yield theta, ProofNode(g, g, SFactJust(sc), {}), depth


def _justify(sc: StoredClause):
    if sc.kind == KIND_STATIC:
        return ClauseJust(sc)
    if sc.kind == KIND_S_FACT:
        return SFactJust(sc)
    return AssertedFactJust(sc)


_BUILTINS = {
    ("true", 0): Solver._bi_true,
    ("fail", 0): Solver._bi_fail,
    ("not", 1): Solver._bi_not,
    ("=", 2): Solver._bi_unify,
    ("\\=", 2): Solver._bi_not_unify,
    ("plus", 3): Solver._bi_plus,
    ("write", 1): Solver._bi_write,
    ("ask", 3): Solver._bi_ask,
    ("ask_value", 3): Solver._bi_ask_value,
    ("asserta", 1): Solver._bi_asserta,
    ("assertz", 1): Solver._bi_assertz,
    ("assert", 1): Solver._bi_assert,
    ("retract", 1): Solver._bi_retract,
    ("holds_negated", 1): Solver._bi_holds_negated,
}

# Cut is handled in the conjunction loop, not the dispatch table.
BUILTIN_INDICATORS = frozenset(_BUILTINS) | {("!", 0)}


def solve(
    db: Database,
    goals,
    options: Optional[SolveOptions] = None,
    oracle: Optional[oracle_mod.Oracle] = None,
    out: Optional[TextIO] = None,
    diag: Optional[TextIO] = None,
    trace_out: Optional[TextIO] = None,
) -> Outcome:
    return Solver(db, options, oracle, out, diag, trace_out).run(goals)
