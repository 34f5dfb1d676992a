"""A small logic-programming engine with questions to the user, fact
negation by skolemization, proof explanation, and a model-theoretic
reference semantics."""

from .database import Database, StoredClause, constants_of, load_program
from .engine import Outcome, Solution, SolveOptions, Solver, solve
from .errors import (
    EngineError,
    InstantiationError,
    NotAFactError,
    NotDefiniteError,
    OracleScriptError,
    ParseError,
    SkologError,
    UnansweredQuestionError,
)
from .explain import ProofNode, TraceEntry, format_trace, how, trace_of, why
from .negation import FreshnessLedger, NegatedFact, fresh_constant, holds_negated, negate_fact
from .oracle import (
    Answer,
    InteractiveOracle,
    Oracle,
    Question,
    QueuedOracle,
    ScriptedOracle,
    ask,
    ask_value,
    prompt_for,
    reset_known,
)
from .parser import (
    format_clause,
    format_goal,
    format_term,
    parse_clause_text,
    parse_program,
    parse_query,
    parse_term_text,
)
from .semantics import (
    UniverseBound,
    herbrand_base,
    herbrand_universe,
    is_complete,
    is_correct,
    is_model,
    minimal_model,
    minimal_model_with_steps,
    tp,
)
from .terms import Atom, Clause, Int, Struct, Term, Var, mklist, unify

__all__ = [
    "Answer",
    "Atom",
    "Clause",
    "Database",
    "EngineError",
    "FreshnessLedger",
    "InstantiationError",
    "Int",
    "InteractiveOracle",
    "NegatedFact",
    "NotAFactError",
    "NotDefiniteError",
    "Oracle",
    "OracleScriptError",
    "Outcome",
    "ParseError",
    "ProofNode",
    "Question",
    "QueuedOracle",
    "ScriptedOracle",
    "SkologError",
    "Solution",
    "SolveOptions",
    "Solver",
    "StoredClause",
    "Struct",
    "Term",
    "TraceEntry",
    "UnansweredQuestionError",
    "UniverseBound",
    "Var",
    "ask",
    "ask_value",
    "constants_of",
    "format_clause",
    "format_goal",
    "format_term",
    "format_trace",
    "fresh_constant",
    "herbrand_base",
    "herbrand_universe",
    "holds_negated",
    "how",
    "is_complete",
    "is_correct",
    "is_model",
    "load_program",
    "minimal_model",
    "minimal_model_with_steps",
    "mklist",
    "negate_fact",
    "parse_clause_text",
    "parse_program",
    "parse_query",
    "parse_term_text",
    "prompt_for",
    "reset_known",
    "solve",
    "tp",
    "trace_of",
    "unify",
    "why",
]
