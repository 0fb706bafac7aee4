"""Total orderings on assignments with position (rank) / unrank bijections.

Each ordering is defined over the full assignment space of fixed domains:
`rank` is a bijection onto range(space_size), `unrank` is its inverse, and
`compare` agrees with rank comparison.  Ranks are 0-indexed.  Values compare
by domain position, so non-binary domains order consistently.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .model import (
    Assignment,
    Domain,
    InputError,
    UnsupportedOrderingError,
)

LT, EQ, GT = -1, 0, 1

ORDERING_NAMES = ("lex", "revlex", "gray", "snakelex")


class SimpleOrdering:
    """Base ordering: subclasses implement rank/unrank over `self.domains`."""

    name = "?"

    def __init__(self, domains: Sequence[Domain]):
        self.domains = tuple(tuple(d) for d in domains)
        if not self.domains:
            raise InputError("an ordering needs at least one variable")
        self._pos = tuple({v: i for i, v in enumerate(d)} for d in self.domains)
        self.n = len(self.domains)
        self.space_size = 1
        for d in self.domains:
            if not d:
                raise InputError("empty domain")
            self.space_size *= len(d)

    def positions(self, a: Sequence[int]) -> tuple[int, ...]:
        if len(a) != self.n:
            raise InputError(f"assignment arity {len(a)} != {self.n}")
        try:
            return tuple(self._pos[i][v] for i, v in enumerate(a))
        except KeyError as exc:
            raise InputError(f"value {exc.args[0]} outside its domain") from exc

    def _check_rank(self, k: int) -> None:
        if not 0 <= k < self.space_size:
            raise InputError(f"rank {k} outside [0, {self.space_size})")

    def rank(self, a: Sequence[int]) -> int:
        raise NotImplementedError

    def unrank(self, k: int) -> Assignment:
        raise NotImplementedError

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        ra, rb = self.rank(a), self.rank(b)
        return LT if ra < rb else GT if ra > rb else EQ

    def minimum(self, assignments) -> Assignment:
        """Smallest of a nonempty collection under this ordering."""
        items = list(assignments)
        if not items:
            raise InputError("minimum of an empty collection")
        best = items[0]
        for a in items[1:]:
            if self.compare(a, best) == LT:
                best = a
        return best


class LexOrdering(SimpleOrdering):
    """Big-endian positional order: variable 0 is most significant."""

    name = "lex"

    def rank(self, a: Sequence[int]) -> int:
        k = 0
        for base, p in zip((len(d) for d in self.domains), self.positions(a)):
            k = k * base + p
        return k

    def unrank(self, k: int) -> Assignment:
        self._check_rank(k)
        out = [0] * self.n
        for i in range(self.n - 1, -1, -1):
            dom = self.domains[i]
            k, p = divmod(k, len(dom))
            out[i] = dom[p]
        return tuple(out)

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        for pa, pb in zip(self.positions(a), self.positions(b)):
            if pa != pb:
                return LT if pa < pb else GT
        return EQ


class RevLexOrdering(SimpleOrdering):
    """Lex with every comparison reversed; rank k maps to lex rank size-1-k."""

    name = "revlex"

    def __init__(self, domains: Sequence[Domain]):
        super().__init__(domains)
        self._lex = LexOrdering(domains)

    def rank(self, a: Sequence[int]) -> int:
        return self.space_size - 1 - self._lex.rank(a)

    def unrank(self, k: int) -> Assignment:
        self._check_rank(k)
        return self._lex.unrank(self.space_size - 1 - k)

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        return -self._lex.compare(a, b)


class GrayOrdering(SimpleOrdering):
    """Reflected-binary order: codeword at rank k is k XOR (k >> 1).

    Defined for two-valued domains only; consecutive codewords differ in one
    position and the second half mirrors the first over the leading bit.
    """

    name = "gray"

    def __init__(self, domains: Sequence[Domain]):
        super().__init__(domains)
        if any(len(d) != 2 for d in self.domains):
            raise UnsupportedOrderingError("gray ordering needs two-valued domains")

    def rank(self, a: Sequence[int]) -> int:
        k = 0
        acc = 0
        for g in self.positions(a):
            acc ^= g  # prefix-XOR decodes the codeword back to its index
            k = (k << 1) | acc
        return k

    def unrank(self, k: int) -> Assignment:
        self._check_rank(k)
        g = k ^ (k >> 1)
        return tuple(self.domains[i][(g >> (self.n - 1 - i)) & 1] for i in range(self.n))


def snake_variable_order(shape: tuple[int, int]) -> tuple[int, ...]:
    """Cell indices in serpentine column order: odd columns read bottom-up."""
    r, c = shape
    order = []
    for j in range(c):
        rows = range(r) if j % 2 == 0 else range(r - 1, -1, -1)
        order.extend(i * c + j for i in rows)
    return tuple(order)


def snake_vectorize(values: Sequence[int], shape: Optional[tuple[int, int]]) -> tuple[int, ...]:
    """Serpentine read of a row-major matrix: col 0 top-down, col 1 bottom-up, ..."""
    if shape is None:
        raise InputError("snake vectorization needs a matrix shape")
    r, c = shape
    if r * c != len(values):
        raise InputError(f"shape {shape} does not cover {len(values)} values")
    return tuple(values[v] for v in snake_variable_order(shape))


class SnakeLexOrdering(SimpleOrdering):
    """Lex comparison of the serpentine vectorization of a matrix."""

    name = "snakelex"

    def __init__(self, domains: Sequence[Domain], shape: Optional[tuple[int, int]]):
        super().__init__(domains)
        if shape is None:
            raise InputError("snakelex needs a matrix shape")
        r, c = shape
        if r * c != self.n:
            raise InputError(f"shape {shape} does not cover {self.n} variables")
        self.shape = (r, c)
        self.order = snake_variable_order(self.shape)

    def rank(self, a: Sequence[int]) -> int:
        pos = self.positions(a)
        k = 0
        for v in self.order:
            k = k * len(self.domains[v]) + pos[v]
        return k

    def unrank(self, k: int) -> Assignment:
        self._check_rank(k)
        out = [0] * self.n
        for v in reversed(self.order):
            dom = self.domains[v]
            k, p = divmod(k, len(dom))
            out[v] = dom[p]
        return tuple(out)

    def compare(self, a: Sequence[int], b: Sequence[int]) -> int:
        pa, pb = self.positions(a), self.positions(b)
        for v in self.order:
            if pa[v] != pb[v]:
                return LT if pa[v] < pb[v] else GT
        return EQ


def make_ordering(name: str, domains: Sequence[Domain],
                  shape: Optional[tuple[int, int]] = None) -> SimpleOrdering:
    if name == "lex":
        return LexOrdering(domains)
    if name == "revlex":
        return RevLexOrdering(domains)
    if name == "gray":
        return GrayOrdering(domains)
    if name == "snakelex":
        return SnakeLexOrdering(domains, shape)
    raise InputError(f"unknown ordering '{name}' (choose from {', '.join(ORDERING_NAMES)})")


@dataclass(frozen=True)
class AssignmentPermutation:
    """Bijection on the assignment space: read a position in `source`, realize
    it in `target` (forward = target.unrank of source.rank)."""

    source: SimpleOrdering
    target: SimpleOrdering

    def __post_init__(self) -> None:
        if self.source.domains != self.target.domains:
            raise InputError("source and target orderings cover different spaces")

    @property
    def domains(self) -> tuple[Domain, ...]:
        return self.source.domains

    def forward(self, a: Sequence[int]) -> Assignment:
        return self.target.unrank(self.source.rank(a))

    def inverse(self, a: Sequence[int]) -> Assignment:
        return self.source.unrank(self.target.rank(a))


def rank_preserving_map(ordering: SimpleOrdering) -> AssignmentPermutation:
    """Permutation sending the assignment at lex position k to the assignment
    at position k of `ordering`, for every k."""
    return AssignmentPermutation(LexOrdering(ordering.domains), ordering)
