"""Fixed-length bitstrings, objective vectors, individuals and Pareto dominance.

All types are immutable value objects; they can be shared or copied freely
across threads. Objective values are exact Python integers throughout, so
dominance and hypervolume comparisons never involve floating-point ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

#: An objective vector is a tuple of ``m`` integers (maximization).
ObjectiveVector = tuple[int, ...]


class DimensionMismatch(ValueError):
    """Raised when objective vectors of different lengths are combined."""


@dataclass(frozen=True)
class BitString:
    """Immutable string of n binary values."""

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        if not all(b in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @classmethod
    def from_iterable(cls, bits: Iterable[int]) -> "BitString":
        return cls(tuple(int(b) for b in bits))

    @classmethod
    def zeros(cls, n: int) -> "BitString":
        return cls((0,) * n)

    @classmethod
    def ones(cls, n: int) -> "BitString":
        return cls((1,) * n)

    def __len__(self) -> int:
        return len(self.bits)

    def __getitem__(self, i: int) -> int:
        return self.bits[i]

    @property
    def n(self) -> int:
        return len(self.bits)

    def ones_count(self) -> int:
        return sum(self.bits)

    def zeros_count(self) -> int:
        return len(self.bits) - sum(self.bits)

    def complement(self) -> "BitString":
        return BitString(tuple(1 - b for b in self.bits))

    def with_flips(self, mask: Sequence[int]) -> "BitString":
        """Return a copy with every bit toggled where ``mask`` is truthy."""
        if len(mask) != len(self.bits):
            raise ValueError("flip mask length must equal bitstring length")
        return BitString(tuple(b ^ 1 if m else b for b, m in zip(self.bits, mask)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass(frozen=True)
class Individual:
    """A genotype with its cached objective vector and an age counter.

    The objective vector is computed exactly once, when the individual is
    created; the age starts at 0 for offspring and at tau for the initial
    population of the aging strategy.
    """

    genotype: BitString
    objectives: ObjectiveVector
    age: int = 0

    def __post_init__(self) -> None:
        if self.age < 0:
            raise ValueError("age must be non-negative")


@dataclass(frozen=True)
class Population:
    """A fixed-capacity multiset of individuals (duplicates permitted)."""

    members: tuple[Individual, ...]
    mu: int

    def __post_init__(self) -> None:
        if self.mu < 1:
            raise ValueError("population capacity must be positive")
        if len(self.members) != self.mu:
            raise ValueError(
                f"population holds {len(self.members)} members, expected {self.mu}"
            )

    def __len__(self) -> int:
        return self.mu

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> Individual:
        return self.members[i]


def _check_dims(u: Sequence[int], v: Sequence[int]) -> None:
    if len(u) != len(v):
        raise DimensionMismatch(f"vector lengths differ: {len(u)} vs {len(v)}")


def weakly_dominates(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff u is at least as large as v in every objective."""
    _check_dims(u, v)
    return all(a >= b for a, b in zip(u, v))


def strictly_dominates(u: Sequence[int], v: Sequence[int]) -> bool:
    """True iff u weakly dominates v and differs from it somewhere."""
    _check_dims(u, v)
    return all(a >= b for a, b in zip(u, v)) and any(a > b for a, b in zip(u, v))
