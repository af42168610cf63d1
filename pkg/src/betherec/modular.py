"""Exact equality of integer sparse matrix products via modular arithmetic.

A product identity A_1 ... A_r = B_1 ... B_s over the integers holds iff the
difference D vanishes. If D = 0 modulo primes whose product exceeds 2 max|D|,
then D = 0 exactly. The bound max|D| <= max(|A_1|...|A_r| + |B_1|...|B_s|) is
taken in floating point with a safety margin; the residues use int64 sparse
products whose partial sums provably fit in 63 bits.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import gmpy2
import numpy as np
import scipy.sparse as sps

_INT64_LIMIT = 2**62
_FLOAT_MARGIN = 1e-9
_LIMB_BITS = 31
_LIMB_MASK = (1 << _LIMB_BITS) - 1


def split_limbs(vals: Iterable[int]) -> tuple[np.ndarray, np.ndarray]:
    """Signs and base-2^31 digits of |v|, one column per value."""
    ints = [int(v) for v in vals]
    sign = np.fromiter((-1 if v < 0 else 1 for v in ints), dtype=np.int64, count=len(ints))
    mags = [abs(v) for v in ints]
    count = max(1, -(-max(mags, default=0).bit_length() // _LIMB_BITS))
    limbs = np.empty((count, len(ints)), dtype=np.int64)
    for k in range(count):
        shift = k * _LIMB_BITS
        limbs[k] = np.fromiter(((a >> shift) & _LIMB_MASK for a in mags), dtype=np.int64, count=len(ints))
    return sign, limbs


class IntSparse:
    """Square integer matrix in coordinate form; entries are split into 31-bit limbs once."""

    def __init__(self, n: int, rows, cols, sign: np.ndarray, limbs: np.ndarray):
        self.n = n
        self.rows = np.asarray(rows, dtype=np.int64)
        self.cols = np.asarray(cols, dtype=np.int64)
        self.sign, self.limbs = sign, limbs
        if not (len(self.rows) == len(self.cols) == len(sign) == limbs.shape[1]):
            raise ValueError("coordinate arrays differ in length")
        self._layout = None

    def _csr_layout(self):
        """Entry order, column indices and row pointers of the CSR form, or None with repeated coordinates."""
        if self._layout is None:
            order = np.lexsort((self.cols, self.rows))
            r, c = self.rows[order], self.cols[order]
            repeated = bool(np.any((r[1:] == r[:-1]) & (c[1:] == c[:-1])))
            indptr = np.searchsorted(r, np.arange(self.n + 1, dtype=np.int64)).astype(np.int64)
            self._layout = False if repeated else (order, c, indptr)
        return self._layout or None

    @classmethod
    def from_coo(cls, n: int, rows: Iterable[int], cols: Iterable[int], vals: Iterable[int]) -> "IntSparse":
        sign, limbs = split_limbs(vals)
        return cls(n, list(rows), list(cols), sign, limbs)

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[tuple[int, int, int]]) -> "IntSparse":
        data = [(r, c, v) for r, c, v in entries if v]
        return cls.from_coo(n, [e[0] for e in data], [e[1] for e in data], [e[2] for e in data])

    def residues(self, p: int) -> sps.csr_matrix:
        acc = np.zeros(self.limbs.shape[1], dtype=np.int64)
        for k in range(self.limbs.shape[0]):
            weight = pow(2, k * _LIMB_BITS, p)
            acc = (acc + (self.limbs[k] % p) * weight) % p
        acc = np.where(self.sign < 0, (p - acc) % p, acc)
        layout = self._csr_layout()
        if layout is not None:
            order, indices, indptr = layout
            return sps.csr_matrix((acc[order], indices, indptr), shape=(self.n, self.n))
        out = sps.csr_matrix((acc, (self.rows, self.cols)), shape=(self.n, self.n), dtype=np.int64)
        out.data %= p  # repeated coordinates are summed on construction
        return out

    def magnitudes(self) -> sps.csr_matrix:
        """|entries| as floats (inf beyond the float range)."""
        data = np.zeros(self.limbs.shape[1], dtype=np.float64)
        with np.errstate(over="ignore", invalid="ignore"):
            for k in range(self.limbs.shape[0]):
                shift = k * _LIMB_BITS
                weight = math.ldexp(1.0, shift) if shift < 1024 else math.inf
                data += np.where(self.limbs[k] > 0, self.limbs[k].astype(np.float64) * weight, 0.0)
        return sps.csr_matrix((data, (self.rows, self.cols)), shape=(self.n, self.n), dtype=np.float64)


def _product(mats: Sequence[sps.csr_matrix], p: int) -> sps.csr_matrix:
    out = mats[0]
    for m in mats[1:]:
        out = out @ m
        out.data %= p
        out.eliminate_zeros()
    return out


def _row_nnz(m: sps.csr_matrix) -> int:
    return int(np.diff(m.indptr).max()) if m.nnz else 0


def _magnitude_chain(mats: Sequence[IntSparse]) -> tuple[sps.csr_matrix, int]:
    """|M_1|...|M_r| and the largest row count of any left operand along the way.

    Magnitudes are nonnegative, so the float products carry the exact structural pattern.
    """
    out = mats[0].magnitudes()
    widest = 0
    for m in mats[1:]:
        widest = max(widest, _row_nnz(out))
        out = out @ m.magnitudes()
    return out, widest


def _bound(left: Sequence[IntSparse], right: Sequence[IntSparse]) -> tuple[float, int] | None:
    """(bound on |difference|, widest left operand) or None when the floats overflow."""
    a, wa = _magnitude_chain(left)
    b, wb = _magnitude_chain(right)
    total = a + b
    top = float(total.data.max()) if total.nnz else 0.0
    if not math.isfinite(top):
        return None
    return top * (1 + _FLOAT_MARGIN) + 1, max(wa, wb)


def _primes(count: int, below: int) -> list[int]:
    out: list[int] = []
    p = int(gmpy2.next_prime(below // 2))
    while len(out) < count:
        if p >= below:
            raise ValueError("not enough primes below the overflow-safe limit")
        out.append(p)
        p = int(gmpy2.next_prime(p))
    return out


def products_equal(left: Sequence[IntSparse], right: Sequence[IntSparse]) -> bool | None:
    """True if the products agree exactly, False if they differ, None if no usable bound exists."""
    mats = list(left) + list(right)
    if not left or not right or len({m.n for m in mats}) != 1:
        raise ValueError("need square matrices of one size on both sides")
    found = _bound(left, right)
    if found is None:
        return None
    bound, widest = found
    # residues are < p, so each product entry sums at most `widest` terms below p^2
    limit = math.isqrt(_INT64_LIMIT // max(1, widest))
    if limit < 1000:
        return None
    count = max(1, math.ceil(math.log2(2 * bound) / math.log2(limit // 2)))
    for p in _primes(count, limit):
        reduced = {id(m): m.residues(p) for m in mats}
        diff = _product([reduced[id(m)] for m in left], p) - _product([reduced[id(m)] for m in right], p)
        diff.data %= p
        if np.count_nonzero(diff.data):
            return False
    return True
