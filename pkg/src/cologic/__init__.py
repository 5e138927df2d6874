"""cologic: logic programming with co-facts over rational trees.

A program's meaning is steered by its co-fact set: the empty set gives
ordinary inductive semantics, a universal set gives coinductive
semantics, and anything in between carves out a fixed point that is
neither. The engine resolves goals coinductively but demands, whenever a
goal recurs, a bounded standard proof in the program enriched by the
co-facts; a brute-force oracle over the finite ground fragment provides
the declarative semantics the engine is tested against.
"""

from .engine import (
    Answer,
    EngineConfig,
    LfpCounts,
    Resolution,
    eval_builtin,
    hyp_lookup,
    is_builtin,
    solve,
)
from .errors import (
    CologicError,
    EvaluationError,
    InstantiationError,
    InternalError,
    ParseError,
    ResourceLimitError,
    UnsupportedProgramError,
)
from .oracle import (
    BoundedCoinductionReport,
    GroundUniverse,
    bounded_coinduction_check,
    coind_semantics,
    generated_semantics,
    ground_instances,
    herbrand_base,
    ind_semantics,
    op_step,
    universe_for,
)
from .parser import SourceProgram, parse_program, parse_query
from .terms import (
    Atom,
    Clause,
    Compound,
    Goal,
    Int,
    Program,
    Query,
    Term,
    Var,
    VarSource,
    fresh_rename,
    list_term,
    max_var_id,
    render_atom,
    render_clause,
    render_program,
    render_term,
    substitute,
    term_vars,
    with_universal_cofacts,
)
from .unify import (
    BindStore,
    extract_answer,
    rational_equal,
    unify,
    unify_atoms,
    variant_equal,
)

__all__ = [
    "Answer",
    "Atom",
    "BindStore",
    "BoundedCoinductionReport",
    "Clause",
    "CologicError",
    "Compound",
    "EngineConfig",
    "EvaluationError",
    "Goal",
    "GroundUniverse",
    "InstantiationError",
    "Int",
    "InternalError",
    "LfpCounts",
    "ParseError",
    "Program",
    "Query",
    "Resolution",
    "ResourceLimitError",
    "SourceProgram",
    "Term",
    "UnsupportedProgramError",
    "Var",
    "VarSource",
    "bounded_coinduction_check",
    "coind_semantics",
    "eval_builtin",
    "extract_answer",
    "fresh_rename",
    "generated_semantics",
    "ground_instances",
    "herbrand_base",
    "hyp_lookup",
    "ind_semantics",
    "is_builtin",
    "list_term",
    "max_var_id",
    "op_step",
    "parse_program",
    "parse_query",
    "rational_equal",
    "render_atom",
    "render_clause",
    "render_program",
    "render_term",
    "solve",
    "substitute",
    "term_vars",
    "unify",
    "unify_atoms",
    "universe_for",
    "variant_equal",
    "with_universal_cofacts",
]
