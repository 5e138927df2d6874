"""Brute-force declarative semantics on the finite-Herbrand fragment.

Everything here is restricted to programs whose terms are constants or
variables (no function symbols, no builtins), so the ground atom space is
finite and every fixed point is directly computable by naive iteration:

* ``ind_semantics``: the least model, iterating the one-step operator up
  from the empty interpretation;
* ``coind_semantics``: the greatest consistent interpretation, iterating
  down from the full ground atom base;
* ``generated_semantics``: the co-fact semantics, i.e. the largest
  consistent interpretation inside the least model of the program
  enriched by its co-facts;
* ``bounded_coinduction_check``: the executable proof principle; a goal
  set inside that least model and supported by the one-step operator is
  inside the generated semantics.

This module is the ground truth that the search engine is tested against.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import UnsupportedProgramError
from .terms import (
    BUILTIN_SIGNATURES,
    Atom,
    Clause,
    Compound,
    Goal,
    Int,
    Program,
    Term,
    render_atom,
    render_clause,
    render_term,
    substitute,
    term_vars,
)

_DUMMY_CONSTANT: Term = Compound("a")


@dataclass(frozen=True)
class GroundUniverse:
    """The finite set of constants that ground instantiation draws from."""

    constants: tuple[Term, ...]


def _scan_constants(t: Term, out: set[Term]) -> None:
    if isinstance(t, Int):
        out.add(t)
    elif isinstance(t, Compound):
        if not t.args:
            out.add(t)
        else:
            for a in t.args:
                _scan_constants(a, out)


def universe_for(program: Program, *goals: Goal) -> GroundUniverse:
    """Constants harvested from the program and the given goals.

    Injects a single dummy constant when nothing at all is found, so the
    universe is never empty.
    """
    consts: set[Term] = set()
    for clause in program.clauses:
        for atom in (clause.head, *clause.body):
            for t in atom.args:
                _scan_constants(t, consts)
    for cofact in program.cofacts:
        for t in cofact.args:
            _scan_constants(t, consts)
    for goal in goals:
        for atom in goal.atoms:
            for t in atom.args:
                _scan_constants(t, consts)
    if not consts:
        consts.add(_DUMMY_CONSTANT)
    return GroundUniverse(tuple(sorted(consts, key=render_term)))


def _require_datalog(clauses: Iterable[Clause]) -> None:
    for clause in clauses:
        for atom in (clause.head, *clause.body):
            if (atom.predicate, atom.arity) in BUILTIN_SIGNATURES:
                raise UnsupportedProgramError(
                    f"builtin {atom.predicate}/{atom.arity} in clause"
                    f" `{render_clause(clause)}`; the oracle handles pure clauses only"
                )
            for t in atom.args:
                if isinstance(t, Compound) and t.args:
                    raise UnsupportedProgramError(
                        f"function symbol {t.functor}/{len(t.args)} in clause"
                        f" `{render_clause(clause)}`; the oracle handles constants only"
                    )


def ground_instances(
    clauses: Sequence[Clause], universe: GroundUniverse
) -> frozenset[Clause]:
    """All instantiations of the clauses' variables by universe constants."""
    _require_datalog(clauses)
    out: set[Clause] = set()
    for clause in clauses:
        var_ids = sorted(term_vars(clause))
        for combo in itertools.product(universe.constants, repeat=len(var_ids)):
            out.add(substitute(clause, dict(zip(var_ids, combo))))
    return frozenset(out)


def op_step(ground_clauses: Iterable[Clause], interp: frozenset[Atom]) -> frozenset[Atom]:
    """One-step inference: heads of ground clauses whose bodies the interpretation satisfies."""
    return frozenset(
        c.head for c in ground_clauses if all(b in interp for b in c.body)
    )


def herbrand_base(clauses: Sequence[Clause], universe: GroundUniverse) -> frozenset[Atom]:
    """Every ground atom over the clauses' predicates and the universe."""
    preds: set[tuple[str, int]] = set()
    for clause in clauses:
        for atom in (clause.head, *clause.body):
            preds.add((atom.predicate, atom.arity))
    return frozenset(
        Atom(name, combo)
        for name, arity in preds
        for combo in itertools.product(universe.constants, repeat=arity)
    )


def ind_semantics(clauses: Sequence[Clause], universe: GroundUniverse) -> frozenset[Atom]:
    """Least model: iterate the one-step operator up from the empty set."""
    ground = ground_instances(clauses, universe)
    current: frozenset[Atom] = frozenset()
    while True:
        nxt = op_step(ground, current)
        if nxt == current:
            return current
        current = nxt


def coind_semantics(clauses: Sequence[Clause], universe: GroundUniverse) -> frozenset[Atom]:
    """Greatest consistent interpretation: iterate down from the full atom base."""
    ground = ground_instances(clauses, universe)
    current = herbrand_base(clauses, universe)
    while True:
        nxt = op_step(ground, current)
        if nxt == current:
            return current
        current = nxt


def generated_semantics(program: Program, universe: GroundUniverse) -> frozenset[Atom]:
    """The co-fact semantics: largest consistent interpretation inside the bound.

    The bound is the least model of the program enriched by its co-facts
    as facts; consistency is with respect to the program's own clauses.
    """
    bound = ind_semantics(program.extended(), universe)
    ground = ground_instances(program.clauses, universe)
    current = bound
    while True:
        nxt = current & op_step(ground, current)
        if nxt == current:
            return current
        current = nxt


@dataclass(frozen=True)
class BoundedCoinductionReport:
    bounded: bool
    boundedness_witness: Atom | None
    consistent: bool
    consistency_witness: Atom | None

    @property
    def passed(self) -> bool:
        return self.bounded and self.consistent

    def __str__(self) -> str:
        parts = []
        if self.bounded:
            parts.append("boundedness: pass")
        else:
            parts.append(
                f"boundedness: fail (witness {render_atom(self.boundedness_witness)})"
            )
        if self.consistent:
            parts.append("consistency: pass")
        else:
            parts.append(
                f"consistency: fail (witness {render_atom(self.consistency_witness)})"
            )
        return "; ".join(parts)


def _first_by_render(atoms: frozenset[Atom]) -> Atom | None:
    if not atoms:
        return None
    return min(atoms, key=render_atom)


def bounded_coinduction_check(
    goal_set: Iterable[Atom], program: Program, universe: GroundUniverse
) -> BoundedCoinductionReport:
    """Check a goal set for boundedness and consistency.

    When both pass, the goal set is contained in the generated semantics;
    each failing condition reports a witness atom.
    """
    goals = frozenset(goal_set)
    bound = ind_semantics(program.extended(), universe)
    unbounded = goals - bound
    ground = ground_instances(program.clauses, universe)
    unsupported = goals - op_step(ground, goals)
    return BoundedCoinductionReport(
        bounded=not unbounded,
        boundedness_witness=_first_by_render(unbounded),
        consistent=not unsupported,
        consistency_witness=_first_by_render(unsupported),
    )
