"""Algebra families and their index conventions."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import gmpy2

Rat = gmpy2.mpq


class Family(str, Enum):
    GL = "gl"
    O_ODD = "o"


class FamilyError(ValueError):
    """Operation requested for the wrong algebra family."""


@dataclass(frozen=True)
class AlgebraSpec:
    """gl_n (indices 1..n) or o_{2n+1} (indices -n..n)."""

    family: Family
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n < 1:
            raise ValueError(f"rank must be >= 1, got {self.n}")
        if self.family is Family.GL and self.n < 2:
            raise ValueError("gl_n needs n >= 2")

    @property
    def is_gl(self) -> bool:
        return self.family is Family.GL

    @property
    def is_o(self) -> bool:
        return self.family is Family.O_ODD

    @property
    def N(self) -> int:
        return self.n if self.is_gl else 2 * self.n + 1

    @property
    def indices(self) -> tuple[int, ...]:
        if self.is_gl:
            return tuple(range(1, self.n + 1))
        return tuple(range(-self.n, self.n + 1))

    @property
    def min_index(self) -> int:
        return 1 if self.is_gl else -self.n

    @property
    def colors(self) -> tuple[int, ...]:
        if self.is_gl:
            return tuple(range(1, self.n))
        return tuple(range(0, self.n))

    @property
    def kappa(self):
        """kappa_n = n - 1/2 for o_{2n+1}; None stands for infinity (gl)."""
        if self.is_gl:
            return None
        return Rat(2 * self.n - 1, 2)

    def has_color(self, s: int) -> bool:
        return s in self.colors

    def check_index(self, i: int) -> None:
        if i not in self.indices:
            raise IndexError(f"index {i} outside {self.indices[0]}..{self.indices[-1]}")

    def label(self) -> str:
        return f"gl{self.n}" if self.is_gl else f"o{2 * self.n + 1}"


def gl(n: int) -> AlgebraSpec:
    return AlgebraSpec(Family.GL, n)


def o_odd(n: int) -> AlgebraSpec:
    return AlgebraSpec(Family.O_ODD, n)
