"""Terms, substitutions, and unification with the occurs check.

The term language has four shapes: variables, atoms (symbolic constants),
integers, and compound terms.  A substitution is a plain dict from ``Var``
to ``Term``, kept idempotent by construction: no key variable ever occurs
in a value term, so applying a substitution twice equals applying it once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union


@dataclass(frozen=True)
class Var:
    """A logic variable.

    ``id`` separates same-named variables made by renaming; variables
    written in source text parse with id 0 (anonymous ``_`` gets a fresh
    negative id per occurrence).
    """

    name: str
    id: int = 0


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Int:
    value: int


@dataclass(frozen=True)
class Struct:
    name: str
    args: tuple["Term", ...]

    def __post_init__(self):
        if len(self.args) < 1:
            raise ValueError("compound term needs at least one argument")


Term = Union[Var, Atom, Int, Struct]
Subst = dict  # Var -> Term

NIL = Atom("[]")
TRUE = Atom("true")
FAIL = Atom("fail")
CUT = Atom("!")


@dataclass(frozen=True)
class Clause:
    """One program clause: ``head.`` or ``head :- body.``

    ``span`` is the source position (line, col, end_line, end_col) when the
    clause came from text; clauses built at runtime carry ``None``.  Spans
    are ignored by equality so a reparsed clause compares equal.
    """

    head: Term
    body: tuple[Term, ...] = ()
    span: Optional[tuple[int, int, int, int]] = field(default=None, compare=False)


def mklist(items: Iterable[Term], tail: Term = NIL) -> Term:
    out = tail
    for x in reversed(list(items)):
        out = Struct(".", (x, out))
    return out


def is_ground(t: Term) -> bool:
    if isinstance(t, Var):
        return False
    if isinstance(t, Struct):
        return all(is_ground(a) for a in t.args)
    return True


def occurs(v: Var, t: Term) -> bool:
    if isinstance(t, Var):
        return t == v
    if isinstance(t, Struct):
        return any(occurs(v, a) for a in t.args)
    return False


def variables_of(t: Term) -> list[Var]:
    """Variables of ``t`` in first-occurrence order, left to right."""
    out: list[Var] = []
    seen: set[Var] = set()

    def walk(x: Term) -> None:
        if isinstance(x, Var):
            if x not in seen:
                seen.add(x)
                out.append(x)
        elif isinstance(x, Struct):
            for a in x.args:
                walk(a)

    walk(t)
    return out


def variables_in(terms: Iterable[Term]) -> list[Var]:
    out: list[Var] = []
    seen: set[Var] = set()
    for t in terms:
        for v in variables_of(t):
            if v not in seen:
                seen.add(v)
                out.append(v)
    return out


def apply(theta: Subst, t: Term) -> Term:
    """Apply a substitution.  One lookup step suffices: idempotence means
    value terms never mention key variables."""
    if not theta:
        return t
    if isinstance(t, Var):
        return theta.get(t, t)
    if isinstance(t, Struct):
        return Struct(t.name, tuple(apply(theta, a) for a in t.args))
    return t


def compose(s1: Subst, s2: Subst) -> Subst:
    """Substitution with apply(compose(s1, s2), t) == apply(s2, apply(s1, t)).

    Identity bindings produced by the composition are dropped, keeping the
    result idempotent for the chains the resolution loop builds.
    """
    out: Subst = {}
    for x, t in s1.items():
        t2 = apply(s2, t)
        if t2 != x:
            out[x] = t2
    for y, t in s2.items():
        if y not in s1:
            out[y] = t
    return out


def restrict(theta: Subst, variables: Iterable[Var]) -> Subst:
    """Keys limited to ``variables``, preserving the given order."""
    return {v: theta[v] for v in variables if v in theta}


def _subst_one(v: Var, value: Term, t: Term) -> Term:
    if isinstance(t, Var):
        return value if t == v else t
    if isinstance(t, Struct):
        return Struct(t.name, tuple(_subst_one(v, value, a) for a in t.args))
    return t


def unify(t1: Term, t2: Term) -> Optional[Subst]:
    """Most general unifier of ``t1`` and ``t2``, or None.

    Works through a stack of equations.  Each variable binding is pushed
    eagerly into both the remaining equations and the accumulated
    substitution, so the result is idempotent.  The occurs check is always
    on: unify(X, f(X)) is None.
    """
    theta: Subst = {}
    stack: list[tuple[Term, Term]] = [(t1, t2)]

    def bind(v: Var, value: Term) -> None:
        for i, (a, b) in enumerate(stack):
            stack[i] = (_subst_one(v, value, a), _subst_one(v, value, b))
        for k in list(theta):
            theta[k] = _subst_one(v, value, theta[k])
        theta[v] = value

    while stack:
        x, y = stack.pop()
        if x == y and isinstance(x, (Var, Atom, Int)):
            continue
        if isinstance(x, Var) and not occurs(x, y):
            bind(x, y)
            continue
        if isinstance(y, Var) and not occurs(y, x):
            bind(y, x)
            continue
        if (
            isinstance(x, Struct)
            and isinstance(y, Struct)
            and x.name == y.name
            and len(x.args) == len(y.args)
        ):
            stack.extend(zip(x.args, y.args))
            continue
        return None
    return theta


def unify_all(pairs: Iterable[tuple[Term, Term]]) -> Optional[Subst]:
    """Unify a sequence of term pairs under one accumulated substitution."""
    theta: Subst = {}
    for a, b in pairs:
        s = unify(apply(theta, a), apply(theta, b))
        if s is None:
            return None
        theta = compose(theta, s)
    return theta


def common_instance(t1: Term, t2: Term) -> Optional[Term]:
    theta = unify(t1, t2)
    if theta is None:
        return None
    return apply(theta, t1)


class FreshVars:
    """Issues variables whose ids have not been used before in this source.

    The resolution loop creates one per top-level query, so renamed
    variables print as _G1, _G2, ... restarting at each query.
    """

    def __init__(self, prefix: str = "_G", start: int = 1):
        self._prefix = prefix
        self._next = start

    def new(self) -> Var:
        n = self._next
        self._next += 1
        return Var(f"{self._prefix}{n}", n)


_ANON_IDS = itertools.count(-1, -1)


def anonymous_var() -> Var:
    """A distinct variable for each ``_`` written in source text."""
    return Var("_", next(_ANON_IDS))


def rename_clause(c: Clause, fresh: FreshVars) -> Clause:
    """Variant of ``c`` with every variable replaced by a fresh one.

    A ground clause is returned unchanged (same object).
    """
    vs = variables_in((c.head,) + c.body)
    if not vs:
        return c
    mapping: Subst = {v: fresh.new() for v in vs}
    return Clause(
        head=apply(mapping, c.head),
        body=tuple(apply(mapping, b) for b in c.body),
        span=c.span,
    )


def indicator_of(t: Term) -> tuple[str, int]:
    """Predicate indicator (name, arity) of a callable term."""
    if isinstance(t, Atom):
        return (t.name, 0)
    if isinstance(t, Struct):
        return (t.name, len(t.args))
    raise ValueError(f"not a callable term: {t!r}")


def goal_constants(goal: Term) -> set[Term]:
    """Atoms and integers in argument positions of one head or body term.

    The predicate symbol itself is not a data constant; functor names of
    nested compounds are not either.
    """
    out: set[Term] = set()

    def walk_arg(t: Term) -> None:
        if isinstance(t, (Atom, Int)):
            out.add(t)
        elif isinstance(t, Struct):
            for a in t.args:
                walk_arg(a)

    if isinstance(goal, Struct):
        for a in goal.args:
            walk_arg(a)
    return out


def goal_functors(goal: Term) -> set[tuple[str, int]]:
    """Functor/arity pairs of compounds in argument positions of a goal."""
    out: set[tuple[str, int]] = set()

    def walk_arg(t: Term) -> None:
        if isinstance(t, Struct):
            out.add((t.name, len(t.args)))
            for a in t.args:
                walk_arg(a)

    if isinstance(goal, Struct):
        for a in goal.args:
            walk_arg(a)
    return out
