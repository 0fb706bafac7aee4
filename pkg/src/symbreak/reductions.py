"""Desk-scale gadgets showing how leader constraints can hide hard decisions.

Two constructions, both solved exhaustively here and cross-checked against
independent brute-force deciders in the test suite:

* the *ordering gadget*: a single value-swap symmetry whose leader constraint
  decides 1-in-3 satisfiability, because the comparator itself embeds that
  question;
* the *group gadget*: a polynomial comparator (reverse lex) whose leader
  constraints decide CNF satisfiability, because the group glues all
  solutions into one orbit.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .breaker import LeaderConstraint
from .model import (
    Assignment,
    InputError,
    InvariantViolationError,
    Problem,
    TableConstraint,
    UnaryConstraint,
    binary_domains,
    binary_problem,
    enumerate_solutions,
    _reject_unknown,
    _require,
)
from .orderings import EQ, GT, LT, RevLexOrdering
from .symmetry import AssignmentSymmetry, LiteralSymmetry, SymmetryGroup, orbits

MAX_ONE_IN_THREE_VARS = 12
MAX_GROUP_GADGET_VARS = 10

SAT, UNSAT = "SAT", "UNSAT"


# ---------------------------------------------------------------------------
# 1-in-3 instances and the ordering gadget


@dataclass(frozen=True)
class OneInThreeInstance:
    """Positive 3-clauses; a model must make exactly one literal per clause true."""

    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        if not self.clauses:
            raise InputError("instance needs at least one clause")
        for clause in self.clauses:
            if len(clause) != 3 or any(v < 1 for v in clause):
                raise InputError(f"bad clause {clause}: need three indices >= 1")
        if self.num_vars > MAX_ONE_IN_THREE_VARS:
            raise InputError(f"more than {MAX_ONE_IN_THREE_VARS} variables")

    @property
    def num_vars(self) -> int:
        return max(v for clause in self.clauses for v in clause)


def one_in_three_satisfiable(inst: OneInThreeInstance) -> bool:
    """Brute force over all truth assignments."""
    for bits in itertools.product((0, 1), repeat=inst.num_vars):
        if all(bits[i - 1] + bits[j - 1] + bits[k - 1] == 1 for i, j, k in inst.clauses):
            return True
    return False


class OneInThreeOrdering:
    """Orders gadget assignments: prefixes compare lexicographically; equal
    prefixes order the final flag bit by whether the instance the prefix
    spells out is 1-in-3 satisfiable (satisfiable puts flag 0 first).

    Deliberately not a SimpleOrdering: each comparison with tied prefixes
    embeds an NP-hard decision, answered by brute force at this scale.
    Pairs with equal prefixes and equal flags compare EQ.
    """

    name = "one-in-three"

    def __init__(self, num_clauses: int):
        self.num_clauses = num_clauses
        self._cache: dict[tuple[int, ...], bool] = {}

    def _prefix_satisfiable(self, prefix: tuple[int, ...]) -> bool:
        if prefix not in self._cache:
            clauses = tuple(prefix[3 * p:3 * p + 3] for p in range(self.num_clauses))
            self._cache[prefix] = one_in_three_satisfiable(OneInThreeInstance(clauses))
        return self._cache[prefix]

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        width = 3 * self.num_clauses + 1
        if len(a) != width or len(b) != width:
            raise InputError(f"expected assignments of arity {width}")
        pa, pb = tuple(a[:-1]), tuple(b[:-1])
        if pa != pb:
            return LT if pa < pb else GT
        if a[-1] == b[-1]:
            return EQ
        if self._prefix_satisfiable(pa):
            return LT if a[-1] == 0 else GT
        return LT if a[-1] == 1 else GT


@dataclass(frozen=True)
class OrderingGadget:
    """3m index variables fixed by unary constraints, plus one free flag bit."""

    instance: OneInThreeInstance
    problem: Problem
    flip: LiteralSymmetry  # swaps 0/1 on the flag bit
    ordering: OneInThreeOrdering


def ordering_gadget(inst: OneInThreeInstance) -> OrderingGadget:
    m = len(inst.clauses)
    n = 3 * m + 1
    flag = n - 1
    index_domain = tuple(range(1, inst.num_vars + 1))
    domains = (index_domain,) * (3 * m) + ((0, 1),)
    constraints = []
    for p, (i, j, k) in enumerate(inst.clauses):
        constraints.append(UnaryConstraint(3 * p, i))
        constraints.append(UnaryConstraint(3 * p + 1, j))
        constraints.append(UnaryConstraint(3 * p + 2, k))
    problem = Problem(n, domains, tuple(constraints))
    flip = LiteralSymmetry.value_swap(flag, 0, 1, domains)
    return OrderingGadget(inst, problem, flip, OneInThreeOrdering(m))


def solve_ordering_gadget(gadget: OrderingGadget) -> str:
    """Solve the gadget with its leader constraint posted; read the flag bit.

    Exactly one assignment survives; flag 0 means the encoded instance is
    satisfiable.
    """
    leader = LeaderConstraint(gadget.flip, gadget.ordering)
    survivors = [a for a in enumerate_solutions(gadget.problem) if leader.satisfied(a)]
    if len(survivors) != 1:
        raise InvariantViolationError(
            f"ordering gadget left {len(survivors)} solutions, expected 1")
    return SAT if survivors[0][-1] == 0 else UNSAT


# ---------------------------------------------------------------------------
# CNF and the group gadget


@dataclass(frozen=True)
class Cnf:
    """Clauses as nonzero signed variable indices (1-based)."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise InputError("CNF needs at least one variable")
        for clause in self.clauses:
            if not clause:
                raise InputError("empty clause")
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InputError(f"bad literal {lit}")

    def satisfied_by(self, bits: Sequence[int]) -> bool:
        return all(any((lit > 0) == bool(bits[abs(lit) - 1]) for lit in clause)
                   for clause in self.clauses)


def cnf_models(phi: Cnf, n: Optional[int] = None) -> list[Assignment]:
    """All models over n >= phi.num_vars binary variables, lex order."""
    width = phi.num_vars if n is None else n
    if width < phi.num_vars:
        raise InputError("model width below the CNF's variable count")
    return [bits for bits in itertools.product((0, 1), repeat=width)
            if phi.satisfied_by(bits)]


def cnf_satisfiable(phi: Cnf) -> bool:
    return any(phi.satisfied_by(bits)
               for bits in itertools.product((0, 1), repeat=phi.num_vars))


@dataclass(frozen=True)
class GroupGadget:
    """Solutions = models(phi) plus the all-zero vector, glued into one orbit
    by a chain of solution transpositions; ordering = reverse lex."""

    phi: Cnf
    n: int
    problem: Problem
    group: SymmetryGroup
    ordering: RevLexOrdering
    solutions: tuple[Assignment, ...]


def group_gadget(phi: Cnf, n: Optional[int] = None) -> GroupGadget:
    width = phi.num_vars if n is None else n
    if width < phi.num_vars:
        raise InputError("gadget width below the CNF's variable count")
    if width > MAX_GROUP_GADGET_VARS:
        raise InputError(f"gadget width above {MAX_GROUP_GADGET_VARS}")
    zero = (0,) * width
    solutions = tuple(sorted(set(cnf_models(phi, width)) | {zero}))
    problem = binary_problem(width,
                             [TableConstraint(tuple(range(width)), frozenset(solutions))])
    generators = tuple(AssignmentSymmetry.transposition(solutions[i], solutions[i + 1])
                       for i in range(len(solutions) - 1))
    group = SymmetryGroup(generators)
    return GroupGadget(phi, width, problem, group,
                       RevLexOrdering(binary_domains(width)), solutions)


def solve_group_gadget(gadget: GroupGadget) -> str:
    """Filter the gadget's solutions by the group's leader constraints.

    The closure of the transposition chain is the full symmetric group on
    the solution set, so a solution satisfies every closure element's leader
    constraint iff it is the ordering-minimum of its orbit; the survivors are
    therefore the per-orbit minima, computed without materializing the
    (factorially large) closure.  The unique survivor being all-zero and
    falsifying phi means UNSAT; anything else means SAT.
    """
    partition = orbits(enumerate_solutions(gadget.problem), gadget.group)
    survivors = [gadget.ordering.minimum(block) for block in partition.blocks]
    if len(survivors) != 1:
        raise InvariantViolationError(
            f"group gadget left {len(survivors)} solutions, expected 1")
    winner = survivors[0]
    if winner == (0,) * gadget.n:
        return SAT if gadget.phi.satisfied_by(winner) else UNSAT
    return SAT


# ---------------------------------------------------------------------------
# instance files


def one_in_three_from_dict(data: dict) -> OneInThreeInstance:
    _reject_unknown(data, {"clauses"}, "1-in-3 instance")
    return OneInThreeInstance(tuple(tuple(c) for c in _require(data, "clauses", "1-in-3 instance")))


def cnf_from_dict(data: dict) -> Cnf:
    _reject_unknown(data, {"n", "clauses"}, "CNF instance")
    return Cnf(_require(data, "n", "CNF instance"),
               tuple(tuple(c) for c in _require(data, "clauses", "CNF instance")))


def _load_json(path, what: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {what}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from exc


def load_one_in_three(path) -> OneInThreeInstance:
    return one_in_three_from_dict(_load_json(path, "1-in-3 instance file"))


def load_cnf(path) -> Cnf:
    return cnf_from_dict(_load_json(path, "CNF instance file"))
