"""Shared test utilities: independent oracles and answer comparison.

The comparison helpers deliberately avoid the code paths they check:
alpha-equivalence goes through canonical renumbering (not unification),
rational-tree equality of answers goes through reconstruction into fresh
stores plus cross-store bisimulation, and `unfold` gives a bounded
tree-expansion oracle for cyclic equality.
"""

from __future__ import annotations

from cologic import (
    Answer,
    Atom,
    BindStore,
    Clause,
    Compound,
    EngineConfig,
    Goal,
    Int,
    Program,
    Query,
    Term,
    Var,
    parse_query,
    solve,
    substitute,
    unify,
    variant_equal,
)

RUNNING_EXAMPLE = """
all_pos([]).
all_pos([N|L]) :- N > 0, all_pos(L).
cofact(all_pos(_)).

member(X, [X|_]).
member(X, [Y|L]) :- X \\= Y, member(X, L).

max([N], N).
max([N|L], M2) :- max(L, M), M2 is max(N, M).
cofact(max([N|_], N)).
"""

PQ_EXAMPLE = """
p(0) :- p(0), p(1).
p(1) :- p(0), p(1).
cofact(p(0)).
"""


def canon_clause(clause: Clause) -> Clause:
    """Renumber variables 0,1,... in first-occurrence order (head, then body)."""
    mapping: dict[int, Var] = {}

    def go(t: Term) -> Term:
        if isinstance(t, Var):
            if t.id not in mapping:
                mapping[t.id] = Var(len(mapping))
            return mapping[t.id]
        if isinstance(t, Compound) and t.args:
            return Compound(t.functor, tuple(go(a) for a in t.args))
        return t

    def go_atom(a: Atom) -> Atom:
        return Atom(a.predicate, tuple(go(t) for t in a.args))

    return Clause(go_atom(clause.head), tuple(go_atom(b) for b in clause.body))


def alpha_equal_clause(a: Clause, b: Clause) -> bool:
    return canon_clause(a) == canon_clause(b)


def alpha_equal_program(a: Program, b: Program) -> bool:
    if len(a.clauses) != len(b.clauses) or len(a.cofacts) != len(b.cofacts):
        return False
    if not all(alpha_equal_clause(x, y) for x, y in zip(a.clauses, b.clauses)):
        return False
    return all(
        alpha_equal_clause(Clause(x), Clause(y)) for x, y in zip(a.cofacts, b.cofacts)
    )


def answer_store(answer: Answer) -> tuple[BindStore, dict[str, Var]]:
    """Reconstruct an answer's equation set in a fresh store.

    Returns the store and a name -> variable map; unifying each equation
    re-creates the (possibly cyclic) bindings it describes.
    """
    store = BindStore()
    names = set(answer.names.values()) | {name for name, _ in answer.equations}
    var_of = {name: Var(i) for i, name in enumerate(sorted(names))}
    id_map = {vid: var_of[name] for vid, name in answer.names.items()}
    for name, rhs in answer.equations:
        assert unify(var_of[name], substitute(rhs, id_map), store)
    return store, var_of


def answers_equivalent_on(a: Answer, b: Answer, names: list[str]) -> bool:
    """Solution equivalence of two answers, restricted to the given variables."""
    store_a, vars_a = answer_store(a)
    store_b, vars_b = answer_store(b)
    if any(n not in vars_a or n not in vars_b for n in names):
        return False
    tuple_a = Compound("$answ", tuple(vars_a[n] for n in names))
    tuple_b = Compound("$answ", tuple(vars_b[n] for n in names))
    return variant_equal(tuple_a, store_a, tuple_b, store_b)


_DEPTH_CUT = Compound("$cut")


def unfold(t: Term, store: BindStore, depth: int) -> Term:
    """Expand a term graph to a finite tree, truncating below ``depth``.

    Independent oracle for rational equality: two terms denoting the same
    rational tree unfold identically at every depth.
    """
    t = store.resolve(t)
    if depth == 0:
        return _DEPTH_CUT
    if isinstance(t, Compound) and t.args:
        return Compound(t.functor, tuple(unfold(a, store, depth - 1) for a in t.args))
    return t


def expected_answer(bindings: dict[str, Term]) -> Answer:
    """Hand-build an Answer from name -> finite term with name back-references.

    Variables inside the terms are ``Var(i)`` where ``i`` indexes the
    sorted names, mirroring what ``answer_store`` reconstructs.
    """
    names = sorted(bindings)
    id_of = {name: i for i, name in enumerate(names)}
    return Answer(
        equations=[(name, bindings[name]) for name in names],
        names={id_of[name]: name for name in names},
    )


def ask(program: Program, text: str, mode: str = "cofacts", **cfg) -> Answer | None:
    """First answer of a textual query, or None."""
    return next(iter(solve(program, parse_query(text), EngineConfig(mode=mode, **cfg))), None)


def ask_all(program: Program, text: str, mode: str = "cofacts", limit: int = 64, **cfg) -> list[Answer]:
    out = []
    for answer in solve(program, parse_query(text), EngineConfig(mode=mode, **cfg)):
        out.append(answer)
        if len(out) >= limit:
            break
    return out


def succeeds(program: Program, text: str, mode: str = "cofacts", **cfg) -> bool:
    return ask(program, text, mode, **cfg) is not None


def ground_query(atom: Atom) -> Query:
    return Query(Goal((atom,)), {})


def atom(pred: str, *args) -> Atom:
    """Ground-atom shorthand: ints become Int terms, strings become constants."""
    terms: list[Term] = []
    for a in args:
        if isinstance(a, int):
            terms.append(Int(a))
        elif isinstance(a, str):
            terms.append(Compound(a))
        else:
            terms.append(a)
    return Atom(pred, tuple(terms))
