"""Sparse exact vectors and operators on the N^L-dimensional chain space.

Basis states are stored as integers: site 1 is the most significant
base-N digit and digit p stands for index ``min_index + p``.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .scalars import Rat, rat_str


class StateVector(dict):
    """Map basis integer -> nonzero Rat."""

    def copy(self) -> "StateVector":
        return StateVector(self)

    def scaled(self, coef) -> "StateVector":
        if coef == 0:
            return StateVector()
        return StateVector({k: v * coef for k, v in self.items()})

    def add_scaled(self, other: Mapping, coef) -> "StateVector":
        """In-place self += coef * other."""
        if coef == 0:
            return self
        get = self.get
        for k, v in other.items():
            nv = get(k, 0) + v * coef
            if nv:
                self[k] = nv
            else:
                self.pop(k, None)
        return self

    def minus(self, other: Mapping) -> "StateVector":
        return self.copy().add_scaled(other, -1)

    def is_zero(self) -> bool:
        return not self

    def first_difference(self, other: Mapping):
        """(basis, self value, other value) of the smallest differing basis state, or None."""
        for k in sorted(set(self) | set(other)):
            a, b = self.get(k, 0), other.get(k, 0)
            if a != b:
                return k, a, b
        return None


def decode(index: int, N: int, L: int, min_index: int) -> tuple[int, ...]:
    digits = []
    for _ in range(L):
        index, p = divmod(index, N)
        digits.append(p + min_index)
    return tuple(reversed(digits))


def encode(multi: Iterable[int], N: int, min_index: int) -> int:
    out = 0
    for i in multi:
        out = out * N + (i - min_index)
    return out


class OperatorMatrix:
    """Column-major sparse matrix: col -> {row: value}."""

    __slots__ = ("dim", "cols")

    def __init__(self, dim: int, cols: dict[int, dict[int, Rat]] | None = None):
        self.dim = dim
        self.cols = cols if cols is not None else {}

    @classmethod
    def identity(cls, dim: int, scale=1) -> "OperatorMatrix":
        s = Rat(scale)
        if s == 0:
            return cls(dim)
        return cls(dim, {k: {k: s} for k in range(dim)})

    @classmethod
    def from_entries(cls, dim: int, entries: Mapping[tuple[int, int], Rat]) -> "OperatorMatrix":
        cols: dict[int, dict[int, Rat]] = {}
        for (r, col), v in entries.items():
            if v:
                cols.setdefault(col, {})[r] = Rat(v)
        return cls(dim, cols)

    def entries(self) -> dict[tuple[int, int], Rat]:
        return {(r, col): v for col, column in self.cols.items() for r, v in column.items()}

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def apply(self, vec: Mapping[int, Rat]) -> StateVector:
        out: dict = {}
        get = out.get
        cols = self.cols
        for col, x in vec.items():
            column = cols.get(col)
            if column is None:
                continue
            for r, a in column.items():
                out[r] = get(r, 0) + a * x
        return StateVector({k: v for k, v in out.items() if v})

    def compose(self, other: "OperatorMatrix") -> "OperatorMatrix":
        """self @ other."""
        mine = {col: tuple(column.items()) for col, column in self.cols.items() if column}
        cols = {}
        for col, column in other.cols.items():
            acc: dict = {}
            get = acc.get
            for k, x in column.items():
                entries = mine.get(k)
                if entries is None:
                    continue
                for r, a in entries:
                    acc[r] = get(r, 0) + a * x
            acc = {r: v for r, v in acc.items() if v}
            if acc:
                cols[col] = acc
        return OperatorMatrix(self.dim, cols)

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        return self.compose(other)

    def add_scaled(self, other: "OperatorMatrix", coef=1) -> "OperatorMatrix":
        """Return self + coef * other."""
        cols = {col: dict(column) for col, column in self.cols.items()}
        if coef == 0:
            return OperatorMatrix(self.dim, cols)
        for col, column in other.cols.items():
            target = cols.setdefault(col, {})
            for r, v in column.items():
                nv = target.get(r, 0) + coef * v
                if nv:
                    target[r] = nv
                else:
                    target.pop(r, None)
            if not target:
                del cols[col]
        return OperatorMatrix(self.dim, cols)

    def accumulate(self, other: "OperatorMatrix", coef=1) -> "OperatorMatrix":
        """In-place self += coef * other."""
        if coef == 0:
            return self
        cols = self.cols
        for col, column in other.cols.items():
            target = cols.get(col)
            if target is None:
                target = cols[col] = {}
            get = target.get
            for r, v in column.items():
                nv = get(r, 0) + coef * v
                if nv:
                    target[r] = nv
                else:
                    target.pop(r, None)
        return self

    def __add__(self, other):
        return self.add_scaled(other, 1)

    def __sub__(self, other):
        return self.add_scaled(other, -1)

    def scaled(self, coef) -> "OperatorMatrix":
        if coef == 0:
            return OperatorMatrix(self.dim)
        return OperatorMatrix(self.dim, {col: {r: v * coef for r, v in column.items()} for col, column in self.cols.items()})

    def is_zero(self) -> bool:
        return all(not column for column in self.cols.values())

    def first_nonzero(self):
        """Smallest (row, col, value) entry, or None for the zero operator."""
        best = None
        for col, column in self.cols.items():
            for r, v in column.items():
                if v and (best is None or (r, col) < best[:2]):
                    best = (r, col, v)
        return best

    def __eq__(self, other) -> bool:
        return isinstance(other, OperatorMatrix) and (self - other).is_zero()

    def scalar_value(self):
        """lambda if self == lambda * Id, else None."""
        value = None
        for k in range(self.dim):
            column = self.cols.get(k, {})
            v = column.get(k, 0)
            if any(r != k and x for r, x in column.items()):
                return None
            if value is None:
                value = v
            elif v != value:
                return None
        return value


def kron(a: OperatorMatrix, b: OperatorMatrix) -> OperatorMatrix:
    """a acting on the more significant factor, b on the less significant one."""
    db = b.dim
    cols = {}
    for ca, column_a in a.cols.items():
        for cb, column_b in b.cols.items():
            col = ca * db + cb
            target = {}
            for ra, va in column_a.items():
                base = ra * db
                for rb, vb in column_b.items():
                    target[base + rb] = va * vb
            cols[col] = target
    return OperatorMatrix(a.dim * db, cols)


def format_witness(index: int, a, b, N: int, L: int, min_index: int) -> dict:
    return {
        "basis": list(decode(index, N, L, min_index)),
        "lhs": rat_str(Rat(a)),
        "rhs": rat_str(Rat(b)),
    }
