"""Command-line front end: one binary, subcommand per task.

Exit codes: 0 success, 1 infeasible problem / negative verdict, 2 usage or
input error, 3 enumeration/closure cap overflow.  Results go to stdout,
diagnostics to stderr.  Identical configuration and seed produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from .breaker import (
    LeaderConstraint,
    doublelex_constraints,
    extensional_set,
    filter_solutions,
    leader_constraints,
    per_orbit_survivors,
)
from .gray import build_decomposition, initial_store, propagate, store_from_candidates
from .model import (
    CapExceededError,
    InputError,
    InvariantViolationError,
    Problem,
    SymbreakError,
    UnsupportedOrderingError,
    binary_domains,
    enumerate_solutions,
    format_assignment,
    load_problem,
    parse_assignment,
    _reject_unknown,
    _require,
)
from .orderings import ORDERING_NAMES, make_ordering
from .reductions import (
    SAT,
    UNSAT,
    cnf_satisfiable,
    group_gadget,
    load_cnf,
    load_one_in_three,
    one_in_three_satisfiable,
    ordering_gadget,
    solve_group_gadget,
    solve_ordering_gadget,
)
from .symmetry import load_symmetry_group, orbits

METHODS = ("leader-full", "leader-generators", "doublelex")


@dataclass
class RunConfig:
    """Everything one invocation needs; filled from parsed arguments."""

    command: str
    problem: Optional[str] = None
    symmetries: Optional[str] = None
    ordering: Optional[str] = None
    method: Optional[str] = None
    survivors: Optional[str] = None
    instance: Optional[str] = None
    store: Optional[str] = None
    n: Optional[int] = None
    k: Optional[int] = None
    shape: Optional[tuple[int, int]] = None
    assignment: Optional[str] = None
    strict: bool = True
    cap: Optional[int] = None
    fmt: str = "table"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.cap is not None and self.cap < 1:
            raise InputError("cap must be positive")

    @classmethod
    def from_namespace(cls, ns: argparse.Namespace) -> "RunConfig":
        shape = _parse_shape(getattr(ns, "shape", None))
        return cls(command=ns.command,
                   problem=getattr(ns, "problem", None),
                   symmetries=getattr(ns, "symmetries", None),
                   ordering=getattr(ns, "ordering", None),
                   method=getattr(ns, "method", None),
                   survivors=getattr(ns, "survivors", None),
                   instance=getattr(ns, "instance", None),
                   store=getattr(ns, "store", None),
                   n=getattr(ns, "n", None),
                   k=getattr(ns, "k", None),
                   shape=shape,
                   assignment=getattr(ns, "assignment", None),
                   strict=not getattr(ns, "non_strict", False),
                   cap=getattr(ns, "cap", None),
                   fmt=getattr(ns, "format", "table"),
                   seed=getattr(ns, "seed", 0))


def _parse_shape(text: Optional[str]) -> Optional[tuple[int, int]]:
    if text is None:
        return None
    for sep in ("x", ","):
        if sep in text:
            try:
                r, c = (int(tok) for tok in text.split(sep))
                return (r, c)
            except ValueError:
                break
    raise InputError(f"bad shape '{text}': expected ROWSxCOLS")


def _print_rows(headers: Sequence[str], rows: Sequence[Sequence], fmt: str) -> None:
    table = [list(map(str, row)) for row in rows]
    if fmt == "csv":
        print(",".join(headers))
        for row in table:
            print(",".join(row))
        return
    widths = [max(len(h), *(len(row[i]) for row in table)) if table else len(h)
              for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
    for row in table:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())


def _load_pair(cfg: RunConfig):
    if cfg.problem is None:
        raise InputError("missing --problem")
    problem = load_problem(cfg.problem)
    if cfg.symmetries is None:
        raise InputError("missing --symmetries")
    group = load_symmetry_group(cfg.symmetries, problem.domains)
    return problem, group


def _ordering_context(cfg: RunConfig):
    if cfg.problem is not None:
        problem = load_problem(cfg.problem)
        return problem.domains, problem.shape
    if cfg.n is not None:
        return binary_domains(cfg.n), cfg.shape
    raise InputError("need --problem or --n")


def _breaking_set(cfg: RunConfig, problem: Problem, group):
    if cfg.method == "doublelex":
        return doublelex_constraints(problem.shape, problem.domains)
    ordering = make_ordering(cfg.ordering or "lex", problem.domains, problem.shape)
    mode = "full" if cfg.method == "leader-full" else "generators"
    return leader_constraints(group, ordering, mode)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_solve(cfg: RunConfig) -> int:
    if cfg.problem is None:
        raise InputError("missing --problem")
    problem = load_problem(cfg.problem)
    sols = enumerate_solutions(problem, cfg.cap)
    print(f"# seed={cfg.seed} solutions={len(sols)}")
    _print_rows(["assignment"],
                [[format_assignment(a, problem.domains)] for a in sols], cfg.fmt)
    return 0 if sols else 1


def _cmd_orbits(cfg: RunConfig) -> int:
    problem, group = _load_pair(cfg)
    sols = enumerate_solutions(problem, cfg.cap)
    partition = orbits(sols, group)
    print(f"# seed={cfg.seed} orbits={len(partition)}")
    rows = [[i, len(block), " ".join(format_assignment(a, problem.domains) for a in block)]
            for i, block in enumerate(partition.blocks)]
    _print_rows(["orbit", "size", "members"], rows, cfg.fmt)
    return 0


def _cmd_break(cfg: RunConfig) -> int:
    problem, group = _load_pair(cfg)
    bset = _breaking_set(cfg, problem, group)
    sols = enumerate_solutions(problem, cfg.cap)
    survivors = filter_solutions(sols, bset)
    partition, counts = per_orbit_survivors(sols, bset, group)
    print(f"# seed={cfg.seed} ordering={cfg.ordering} method={cfg.method} "
          f"constraints={len(bset)} survivors={len(survivors)}")
    _print_rows(["assignment"],
                [[format_assignment(a, problem.domains)] for a in survivors], cfg.fmt)
    print()
    _print_rows(["orbit", "size", "survivors"],
                [[i, len(block), counts[i]] for i, block in enumerate(partition.blocks)],
                cfg.fmt)
    return 0 if survivors else 1


def _read_survivors(path, domains) -> list:
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise InputError(f"cannot read survivor file: {exc}") from exc
    rows = []
    in_body = False
    for line in lines:
        text = line.strip()
        if not text:
            if in_body:
                break
            continue
        if text.startswith("#"):
            continue
        if text == "assignment":
            in_body = True
            continue
        if text.startswith("orbit"):
            break
        if not in_body:
            raise InputError("survivor file lacks an 'assignment' header")
        rows.append(parse_assignment(text, domains))
    if not in_body:
        raise InputError("survivor file lacks an 'assignment' header")
    return rows


def _cmd_check(cfg: RunConfig) -> int:
    problem, group = _load_pair(cfg)
    sols = enumerate_solutions(problem, cfg.cap)
    if cfg.survivors is not None:
        bset = extensional_set(_read_survivors(cfg.survivors, problem.domains))
    else:
        bset = _breaking_set(cfg, problem, group)
    partition, counts = per_orbit_survivors(sols, bset, group)
    sound = all(c >= 1 for c in counts)
    complete = all(c <= 1 for c in counts)
    print(f"# seed={cfg.seed}")
    _print_rows(["sound", "complete", "orbits", "survivors"],
                [[str(sound).lower(), str(complete).lower(), len(partition), sum(counts)]],
                cfg.fmt)
    return 0 if sound and complete else 1


def _cmd_rank(cfg: RunConfig) -> int:
    domains, shape = _ordering_context(cfg)
    ordering = make_ordering(cfg.ordering or "lex", domains, shape)
    if cfg.assignment is None:
        raise InputError("missing assignment argument")
    print(ordering.rank(parse_assignment(cfg.assignment, domains)))
    return 0


def _cmd_unrank(cfg: RunConfig) -> int:
    domains, shape = _ordering_context(cfg)
    ordering = make_ordering(cfg.ordering or "lex", domains, shape)
    if cfg.k is None:
        raise InputError("missing --k")
    print(format_assignment(ordering.unrank(cfg.k), domains))
    return 0


def _load_store(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read store file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"store file is not valid JSON: {exc}") from exc
    _reject_unknown(data, {"strict", "lhs", "rhs", "state"}, "store file")
    lhs = _require(data, "lhs", "store file")
    rhs = _require(data, "rhs", "store file")
    strict = data.get("strict", True)
    n = len(lhs)
    return n, strict, store_from_candidates(n, lhs, rhs, data.get("state"))


def _cmd_gray_check(cfg: RunConfig) -> int:
    if cfg.store is not None:
        n, strict, store = _load_store(cfg.store)
    elif cfg.n is not None:
        n, strict = cfg.n, cfg.strict
        store = None
    else:
        raise InputError("need --store or --n")
    decomp = build_decomposition(n, strict)
    if store is None:
        store = initial_store(decomp)
    outcome = propagate(decomp, store)
    assert outcome.trace is not None
    print(f"# seed={cfg.seed} n={n} strict={str(strict).lower()} "
          f"events={outcome.trace.removals}")
    if outcome.failed:
        print("FAIL")
        return 1
    rows = [[decomp.var_label(idx),
             " ".join(str(v) for v in sorted(outcome.store.candidates[idx]))]
            for idx in range(decomp.num_vars)]
    _print_rows(["variable", "candidates"], rows, cfg.fmt)
    return 0


def _cmd_demo_prop1(cfg: RunConfig) -> int:
    if cfg.instance is None:
        raise InputError("missing --instance")
    inst = load_one_in_three(cfg.instance)
    gadget = ordering_gadget(inst)
    verdict = solve_ordering_gadget(gadget)
    oracle = SAT if one_in_three_satisfiable(inst) else UNSAT
    leader = LeaderConstraint(gadget.flip, gadget.ordering)
    survivors = [a for a in enumerate_solutions(gadget.problem) if leader.satisfied(a)]
    print(f"# clauses={list(list(c) for c in inst.clauses)}")
    print(f"problem: {gadget.problem.n} variables; prefix fixed to the clause "
          f"indices; flag bit free; symmetry swaps the flag bit's values")
    for a in survivors:
        print(f"survivor: {format_assignment(a, gadget.problem.domains)}")
    print(f"verdict: {verdict}")
    print(f"oracle: {oracle}")
    print(f"agreement: {str(verdict == oracle).lower()}")
    return 0 if verdict == SAT else 1


def _cmd_demo_prop2(cfg: RunConfig) -> int:
    if cfg.instance is None:
        raise InputError("missing --instance")
    phi = load_cnf(cfg.instance)
    gadget = group_gadget(phi)
    verdict = solve_group_gadget(gadget)
    oracle = SAT if cnf_satisfiable(phi) else UNSAT
    partition = orbits(list(gadget.solutions), gadget.group)
    print(f"# n={gadget.n} clauses={list(list(c) for c in phi.clauses)}")
    print(f"solutions of the gadget ({len(gadget.solutions)} members, "
          f"{len(partition)} orbit):")
    for a in gadget.solutions:
        print(f"  {format_assignment(a, gadget.problem.domains)}")
    print(f"verdict: {verdict}")
    print(f"oracle: {oracle}")
    print(f"agreement: {str(verdict == oracle).lower()}")
    return 0 if verdict == SAT else 1


def _cmd_compare(cfg: RunConfig) -> int:
    problem, group = _load_pair(cfg)
    sols = enumerate_solutions(problem, cfg.cap)
    binary = all(len(d) == 2 for d in problem.domains)
    rows = []

    def record(name: str, method: str, bset) -> None:
        partition, counts = per_orbit_survivors(sols, bset, group)
        rows.append([name, method, len(bset), sum(counts), len(partition),
                     str(all(c >= 1 for c in counts)).lower(),
                     str(all(c <= 1 for c in counts)).lower()])

    for name in ORDERING_NAMES:
        if name == "gray" and not binary:
            continue
        if name == "snakelex" and problem.shape is None:
            continue
        ordering = make_ordering(name, problem.domains, problem.shape)
        for mode, method in (("full", "leader-full"), ("generators", "leader-generators")):
            record(name, method, leader_constraints(group, ordering, mode))
    if problem.shape is not None:
        record("lex", "doublelex", doublelex_constraints(problem.shape, problem.domains))

    print(f"# seed={cfg.seed} solutions={len(sols)}")
    _print_rows(["ordering", "method", "constraints", "survivors", "orbits",
                 "sound", "complete"], rows, cfg.fmt)
    return 0


_DISPATCH = {
    "solve": _cmd_solve,
    "orbits": _cmd_orbits,
    "break": _cmd_break,
    "check": _cmd_check,
    "rank": _cmd_rank,
    "unrank": _cmd_unrank,
    "gray-check": _cmd_gray_check,
    "demo-prop1": _cmd_demo_prop1,
    "demo-prop2": _cmd_demo_prop2,
    "compare": _cmd_compare,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symbreak",
        description="Symmetry breaking for finite-domain problems under "
                    "pluggable assignment orderings.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="recorded in report headers")
    common.add_argument("--format", choices=("table", "csv"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="enumerate all solutions")
    p.add_argument("--problem", required=True)
    p.add_argument("--cap", type=int)

    p = sub.add_parser("orbits", parents=[common], help="orbit partition of the solutions")
    p.add_argument("--problem", required=True)
    p.add_argument("--symmetries", required=True)
    p.add_argument("--cap", type=int)

    for name in ("break", "check"):
        p = sub.add_parser(name, parents=[common],
                           help="generate breaking constraints and filter" if name == "break"
                           else "soundness/completeness verdicts")
        p.add_argument("--problem", required=True)
        p.add_argument("--symmetries", required=True)
        p.add_argument("--ordering", choices=ORDERING_NAMES, default="lex")
        p.add_argument("--method", choices=METHODS, default="leader-full")
        p.add_argument("--cap", type=int)
        if name == "check":
            p.add_argument("--survivors", help="survivor list CSV to check instead")

    for name in ("rank", "unrank"):
        p = sub.add_parser(name, parents=[common],
                           help="position of an assignment" if name == "rank"
                           else "assignment at a position")
        p.add_argument("--ordering", choices=ORDERING_NAMES, default="lex")
        p.add_argument("--problem", help="problem file supplying domains and shape")
        p.add_argument("--n", type=int, help="binary space with this many variables")
        p.add_argument("--shape", help="ROWSxCOLS, for snakelex with --n")
        if name == "rank":
            p.add_argument("assignment", help="0/1 string or comma-separated values")
        else:
            p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("gray-check", parents=[common],
                       help="propagate the reflected-binary precedence decomposition")
    p.add_argument("--store", help="candidate-store JSON file")
    p.add_argument("--n", type=int, help="full domains over this many bit positions")
    p.add_argument("--non-strict", action="store_true", dest="non_strict")

    for name in ("demo-prop1", "demo-prop2"):
        p = sub.add_parser(name, parents=[common],
                           help="hard-ordering demo" if name == "demo-prop1"
                           else "hard-group demo")
        p.add_argument("--instance", required=True)

    p = sub.add_parser("compare", parents=[common],
                       help="survivor counts across orderings and methods")
    p.add_argument("--problem", required=True)
    p.add_argument("--symmetries", required=True)
    p.add_argument("--cap", type=int)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.from_namespace(ns)
        return _DISPATCH[cfg.command](cfg)
    except (InputError, UnsupportedOrderingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolationError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 2
    except SymbreakError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
