"""Reader and writer for the clause syntax.

Grammar (Edinburgh-style subset):

    program  ::=  clause*
    clause   ::=  term [ ':-' goals ] '.'
    query    ::=  [ '?-' ] goals '.'
    goals    ::=  goal ( ',' goal )*
    goal     ::=  term [ ( '=' | '\\=' ) term ]
    term     ::=  VAR | INT | ATOM [ '(' term ( ',' term )* ')' ]
               |  '[' [ term ( ',' term )* [ '|' term ] ] ']'  |  '!'

Atoms are /[a-z][A-Za-z0-9_]*/ or single-quoted; variables are
/[A-Z_][A-Za-z0-9_]*/ (a bare ``_`` is a fresh variable per occurrence);
integers may carry a leading minus.  ``%`` starts a comment.  Lists are
sugar for '.'/2 chains ending in ``[]``.

``format_term`` writes the canonical form read back by the parser:
no spaces inside terms, lists re-sugared, atoms quoted only when needed.
"""

from __future__ import annotations

import re
from typing import NamedTuple, Optional

from .errors import ParseError
from .terms import (
    NIL,
    Atom,
    Clause,
    Int,
    Struct,
    Subst,
    Term,
    Var,
    anonymous_var,
    mklist,
)

_PLAIN_ATOM = re.compile(r"[a-z][A-Za-z0-9_]*\Z")
_ESCAPES = {"\\": "\\", "'": "'", "n": "\n", "t": "\t"}
_UNESCAPES = {"\\": "\\\\", "'": "\\'", "\n": "\\n", "\t": "\\t"}


class Token(NamedTuple):
    kind: str  # "atom" | "var" | "int" | "punct" | "eof"
    value: object
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def step(k: int = 1) -> None:
        nonlocal i, line, col
        for _ in range(k):
            if i < n and text[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        c = text[i]
        if c == "%":
            while i < n and text[i] != "\n":
                step()
            continue
        if c.isspace():
            step()
            continue
        start_line, start_col = line, col
        if c.islower():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("atom", text[i:j], start_line, start_col))
            step(j - i)
            continue
        if c.isupper() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("var", text[i:j], start_line, start_col))
            step(j - i)
            continue
        if c.isdigit() or (c == "-" and i + 1 < n and text[i + 1].isdigit()):
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("int", int(text[i:j]), start_line, start_col))
            step(j - i)
            continue
        if c == "'":
            step()
            chars: list[str] = []
            while True:
                if i >= n:
                    raise ParseError("unterminated quoted atom", line, col)
                c = text[i]
                if c == "'":
                    step()
                    break
                if c == "\\":
                    if i + 1 >= n or text[i + 1] not in _ESCAPES:
                        raise ParseError("bad escape in quoted atom", line, col)
                    chars.append(_ESCAPES[text[i + 1]])
                    step(2)
                    continue
                chars.append(c)
                step()
            toks.append(Token("atom", "".join(chars), start_line, start_col))
            continue
        two = text[i : i + 2]
        if two in (":-", "?-", "\\="):
            toks.append(Token("punct", two, start_line, start_col))
            step(2)
            continue
        if c in "()[]|,.!=":
            toks.append(Token("punct", c, start_line, start_col))
            step()
            continue
        raise ParseError(f"illegal character {c!r}", start_line, start_col, expected="token")

    toks.append(Token("eof", None, line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[Token]):
        self.toks = toks
        self.i = 0

    def peek(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at_punct(self, *symbols: str) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.value in symbols

    def expect_punct(self, symbol: str) -> Token:
        t = self.peek()
        if t.kind != "punct" or t.value != symbol:
            self.fail(f"unexpected {describe(t)}", expected=repr(symbol))
        return self.advance()

    def fail(self, message: str, expected: Optional[str] = None) -> None:
        t = self.peek()
        raise ParseError(message, t.line, t.col, expected=expected)

    def parse_term(self) -> Term:
        t = self.peek()
        if t.kind == "var":
            self.advance()
            if t.value == "_":
                return anonymous_var()
            return Var(t.value)
        if t.kind == "int":
            self.advance()
            return Int(t.value)
        if t.kind == "atom":
            self.advance()
            if self.at_punct("("):
                self.advance()
                args = [self.parse_term()]
                while self.at_punct(","):
                    self.advance()
                    args.append(self.parse_term())
                self.expect_punct(")")
                return Struct(t.value, tuple(args))
            return Atom(t.value)
        if self.at_punct("["):
            return self.parse_list()
        if self.at_punct("!"):
            self.advance()
            return Atom("!")
        self.fail(f"unexpected {describe(t)}", expected="term")

    def parse_list(self) -> Term:
        self.expect_punct("[")
        if self.at_punct("]"):
            self.advance()
            return NIL
        items = [self.parse_term()]
        while self.at_punct(","):
            self.advance()
            items.append(self.parse_term())
        tail: Term = NIL
        if self.at_punct("|"):
            self.advance()
            tail = self.parse_term()
        self.expect_punct("]")
        return mklist(items, tail)

    def parse_goal(self) -> Term:
        t = self.peek()
        lhs = self.parse_term()
        if self.at_punct("=", "\\="):
            op = self.advance()
            rhs = self.parse_term()
            return Struct(str(op.value), (lhs, rhs))
        if isinstance(lhs, Var):
            raise ParseError("variable is not a callable goal", t.line, t.col, expected="goal")
        if isinstance(lhs, Int):
            raise ParseError("integer is not a callable goal", t.line, t.col, expected="goal")
        return lhs

    def parse_goals(self) -> list[Term]:
        goals = [self.parse_goal()]
        while self.at_punct(","):
            self.advance()
            goals.append(self.parse_goal())
        return goals

    def parse_clause(self) -> Clause:
        start = self.peek()
        head = self.parse_term()
        if isinstance(head, (Var, Int)):
            raise ParseError(
                "clause head must be an atom or compound term",
                start.line,
                start.col,
                expected="clause head",
            )
        body: tuple[Term, ...] = ()
        if self.at_punct(":-"):
            self.advance()
            body = tuple(self.parse_goals())
        end = self.expect_punct(".")
        span = (start.line, start.col, end.line, end.col)
        return Clause(head=head, body=body, span=span)

    def expect_eof(self) -> None:
        if self.peek().kind != "eof":
            self.fail(f"unexpected {describe(self.peek())}", expected="end of input")


def describe(t: Token) -> str:
    if t.kind == "eof":
        return "end of input"
    if t.kind == "punct":
        return f"'{t.value}'"
    return f"{t.kind} '{t.value}'"


def parse_program(text: str) -> list[Clause]:
    p = _Parser(tokenize(text))
    clauses: list[Clause] = []
    while p.peek().kind != "eof":
        clauses.append(p.parse_clause())
    return clauses


def parse_query(text: str) -> list[Term]:
    """Goals of one query: ``?- g1, g2.`` (the ``?-`` is optional)."""
    p = _Parser(tokenize(text))
    if p.at_punct("?-"):
        p.advance()
    goals = p.parse_goals()
    p.expect_punct(".")
    p.expect_eof()
    return goals


def parse_clause_text(text: str) -> Clause:
    p = _Parser(tokenize(text))
    c = p.parse_clause()
    p.expect_eof()
    return c


def parse_term_text(text: str) -> Term:
    p = _Parser(tokenize(text))
    t = p.parse_term()
    p.expect_eof()
    return t


def _atom_text(name: str) -> str:
    if _PLAIN_ATOM.match(name) or name in ("[]", "!"):
        return name
    out = "".join(_UNESCAPES.get(c, c) for c in name)
    return f"'{out}'"


def format_term(t: Term) -> str:
    """Canonical writing: reading it back yields the same term up to
    consistent variable renaming."""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Int):
        return str(t.value)
    if isinstance(t, Atom):
        return _atom_text(t.name)
    if isinstance(t, Struct) and t.name == "." and len(t.args) == 2:
        items = []
        cur: Term = t
        while isinstance(cur, Struct) and cur.name == "." and len(cur.args) == 2:
            items.append(format_term(cur.args[0]))
            cur = cur.args[1]
        if cur == NIL:
            return "[" + ",".join(items) + "]"
        return "[" + ",".join(items) + "|" + format_term(cur) + "]"
    assert isinstance(t, Struct)
    return _atom_text(t.name) + "(" + ",".join(format_term(a) for a in t.args) + ")"


def format_goal(t: Term) -> str:
    """Like format_term, but writes =/2 and \\=/2 infix as goals read."""
    if isinstance(t, Struct) and t.name in ("=", "\\=") and len(t.args) == 2:
        return f"{format_term(t.args[0])} {t.name} {format_term(t.args[1])}"
    return format_term(t)


def format_goals(goals) -> str:
    return ", ".join(format_goal(g) for g in goals)


def format_clause(c: Clause) -> str:
    if not c.body:
        return format_term(c.head) + "."
    return format_term(c.head) + " :- " + format_goals(c.body) + "."


def format_bindings(theta: Subst) -> str:
    return ", ".join(f"{v.name} = {format_term(t)}" for v, t in theta.items())
