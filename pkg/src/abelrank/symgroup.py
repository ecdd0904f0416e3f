"""Symmetric-group combinatorics: partitions, conjugacy classes, characters.

Irreducible character values are computed by the Murnaghan-Nakayama
recursion on beta-sets (first-column hook lengths); everything is exact
integer arithmetic.  The memo tables cache pure functions, so they are an
optimization only: results are identical with the caches cleared, and
concurrent use is safe.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable


class Partition:
    """A weakly decreasing tuple of positive integers."""

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int] = ()):
        ps = tuple(int(p) for p in parts)
        if any(p <= 0 for p in ps):
            raise ValueError(f"partition parts must be positive: {ps}")
        if any(ps[i] < ps[i + 1] for i in range(len(ps) - 1)):
            raise ValueError(f"partition parts must be weakly decreasing: {ps}")
        object.__setattr__(self, "parts", ps)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @property
    def degree(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts!r}"

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n, in reverse lexicographic order.

    The ordering is part of the public contract: (4), (3,1), (2,2),
    (2,1,1), (1,1,1,1).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return [Partition(p) for p in _partition_tuples(n, n)]


@lru_cache(maxsize=None)
def _partition_tuples(n: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in _partition_tuples(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def class_size(sigma: Partition) -> int:
    """Number of permutations with cycle type sigma: n! / prod(i^m_i * m_i!)."""
    n = sigma.degree
    z = 1
    for part, mult in sigma.multiplicities().items():
        z *= part**mult * math.factorial(mult)
    size, rem = divmod(math.factorial(n), z)
    assert rem == 0
    return size


def character(alpha: Partition, sigma: Partition) -> int:
    """Irreducible character indexed by alpha, evaluated on the class sigma."""
    if alpha.degree != sigma.degree:
        raise ValueError(
            f"degree mismatch: {alpha!r} vs cycle type {sigma!r}"
        )
    return _mn_character(alpha.parts, sigma.parts)


@lru_cache(maxsize=None)
def _mn_character(alpha: tuple[int, ...], rho: tuple[int, ...]) -> int:
    if not rho:
        return 1
    k, rest = rho[0], rho[1:]
    # Beta-set of alpha: strictly decreasing first-column hook lengths.
    length = len(alpha)
    beta = [alpha[i] + (length - 1 - i) for i in range(length)]
    beta_set = set(beta)
    total = 0
    for b in beta:
        low = b - k
        if low < 0 or low in beta_set:
            continue
        # Removing a border strip of length k: replace b by b-k; the sign is
        # (-1)^height with height = #(beta elements strictly between).
        height = sum(1 for c in beta if low < c < b)
        new_beta = sorted((beta_set - {b}) | {low}, reverse=True)
        new_alpha = tuple(
            c - (len(new_beta) - 1 - i) for i, c in enumerate(new_beta)
        )
        new_alpha = tuple(p for p in new_alpha if p > 0)
        total += (-1) ** height * _mn_character(new_alpha, rest)
    return total


def dimension(alpha: Partition) -> int:
    """Dimension of the irreducible indexed by alpha (hook length formula)."""
    n = alpha.degree
    if n < 1:
        raise ValueError("dimension needs a nonempty partition")
    conj = _conjugate(alpha.parts)
    hooks = 1
    for i, row in enumerate(alpha.parts):
        for j in range(row):
            hooks *= (row - j) + (conj[j] - i) - 1
    dim, rem = divmod(math.factorial(n), hooks)
    assert rem == 0
    return dim


def _conjugate(parts: tuple[int, ...]) -> list[int]:
    if not parts:
        return []
    out = [0] * parts[0]
    for p in parts:
        for j in range(p):
            out[j] += 1
    return out
