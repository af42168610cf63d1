"""Inhomogeneous fundamental spin chains realizing the RTT algebra exactly.

The monodromy is T(z) = D R_{0L}(z, xi_L) ... R_{01}(z, xi_1) with
R(u, v) = I + c P/(u - v) - c Q/(u - v + c kappa) and D = diag(chi).
Entry (i, j) is the physical-space operator <i| T(z) |j>.
"""

from __future__ import annotations

import contextlib
import math
import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .algebra import AlgebraSpec, FamilyError
from .report import CheckReport
from .scalars import ONE, ZERO, PoleError, Rat, rat, rat_str
from .modular import IntSparse, products_equal, split_limbs
from .sparse import OperatorMatrix, StateVector, decode, encode, kron


SITE_KINDS = ("fundamental", "dual")


class ConfigError(ValueError):
    """Invalid chain or run configuration."""


class NoVacuumFound(RuntimeError):
    """No basis vector satisfies the vacuum conditions."""


class InterpolationDegreeError(ArithmeticError):
    """Zero-mode reconstruction failed its holdout consistency check."""


# ---------------------------------------------------------------------------
# R-matrix


def _q_coefficient(algebra: AlgebraSpec, u: Rat, v: Rat, c: Rat) -> Rat:
    if algebra.is_gl:
        return ZERO
    d = u - v + c * algebra.kappa
    if d == 0:
        raise PoleError(f"R({u},{v}) has a pole at u-v=-c*kappa", ("R", u, v))
    return c / d


def _p_coefficient(u: Rat, v: Rat, c: Rat) -> Rat:
    if u == v:
        raise PoleError(f"R({u},{v}) has a pole at u=v", ("R", u, v))
    return c / (u - v)


def build_r_matrix(algebra: AlgebraSpec, u, v, c, q_sign: int = 1) -> OperatorMatrix:
    """R(u, v) on C^N (x) C^N; basis index a*N + b with a in the first factor.

    ``q_sign=-1`` flips the Q term (negative control only).
    """
    u, v, c = rat(u), rat(v), rat(c)
    N, m = algebra.N, algebra.min_index
    p = _p_coefficient(u, v, c)
    q = _q_coefficient(algebra, u, v, c) * q_sign
    entries: dict[tuple[int, int], Rat] = {}

    def add(r, col, val):
        entries[(r, col)] = entries.get((r, col), ZERO) + val

    for a in algebra.indices:
        for b in algebra.indices:
            col = (a - m) * N + (b - m)
            add(col, col, ONE)
            add((b - m) * N + (a - m), col, p)
            if q and a == -b:
                for i in algebra.indices:
                    add((-i - m) * N + (i - m), col, -q)
    return OperatorMatrix.from_entries(N * N, entries)


def _embed(op: OperatorMatrix, N: int, slots: tuple[int, int]) -> OperatorMatrix:
    """Place a two-site operator on two of three tensor factors."""
    dim = N ** 3
    cols: dict[int, dict[int, Rat]] = {}
    other = ({0, 1, 2} - set(slots)).pop()
    for col in range(dim):
        digits = [col // (N * N), (col // N) % N, col % N]
        local = digits[slots[0]] * N + digits[slots[1]]
        column = op.cols.get(local)
        if not column:
            continue
        out = {}
        for r, val in column.items():
            nd = list(digits)
            nd[slots[0]], nd[slots[1]] = divmod(r, N)
            nd[other] = digits[other]
            out[nd[0] * N * N + nd[1] * N + nd[2]] = val
        cols[col] = out
    return OperatorMatrix(dim, cols)


def check_yang_baxter(algebra: AlgebraSpec, u, v, w, c, q_sign: int = 1) -> CheckReport:
    """R12(u,v) R13(u,w) R23(v,w) = R23(v,w) R13(u,w) R12(u,v)."""
    start = time.perf_counter()
    N = algebra.N
    r12 = _embed(build_r_matrix(algebra, u, v, c, q_sign), N, (0, 1))
    r13 = _embed(build_r_matrix(algebra, u, w, c, q_sign), N, (0, 2))
    r23 = _embed(build_r_matrix(algebra, v, w, c, q_sign), N, (1, 2))
    lhs = r12 @ r13 @ r23
    rhs = r23 @ r13 @ r12
    diff = (lhs - rhs).first_nonzero()
    config = {"algebra": algebra.label(), "u": rat_str(rat(u)), "v": rat_str(rat(v)), "w": rat_str(rat(w)), "c": rat_str(rat(c))}
    witness = None
    if diff is not None:
        r, col, val = diff
        witness = {"row": r, "col": col, "difference": rat_str(val)}
    return CheckReport.make("yang-baxter", config, witness, start)


# ---------------------------------------------------------------------------
# chain model


@dataclass(frozen=True)
class MonodromySlice:
    z: Rat
    entries: Mapping[tuple[int, int], OperatorMatrix]

    def __getitem__(self, ij: tuple[int, int]) -> OperatorMatrix:
        return self.entries[ij]


class ChainModel:
    """Algebra, inhomogeneities xi, twists chi and the constant c."""

    def __init__(
        self,
        algebra: AlgebraSpec,
        xi: Iterable,
        chi: Mapping | None = None,
        c=1,
        lax_variant: str = "standard",
        sites: Iterable[str] | None = None,
    ):
        self.algebra = algebra
        self.xi = tuple(rat(x) for x in xi)
        self.sites = tuple(sites) if sites is not None else ("fundamental",) * len(self.xi)
        self.c = rat(c)
        if chi is None:
            chi = {i: ONE for i in algebra.indices}
        self.chi = {int(i): rat(v) for i, v in chi.items()}
        if lax_variant not in ("standard", "transposed"):
            raise ConfigError(f"unknown lax variant {lax_variant!r}")
        self.lax_variant = lax_variant
        self._validate()
        self._slices: dict[Rat, MonodromySlice] = {}
        self._vacuum: int | None = None
        self._recorders: list[set] = []

    # -- validation -------------------------------------------------------
    def _validate(self) -> None:
        alg = self.algebra
        if self.c == 0:
            raise ConfigError("c must be nonzero")
        if not self.xi:
            raise ConfigError("need at least one site")
        if len(set(self.xi)) != len(self.xi):
            raise ConfigError("inhomogeneities must be pairwise distinct")
        if len(self.sites) != len(self.xi) or any(k not in SITE_KINDS for k in self.sites):
            raise ConfigError(f"sites must list one of {SITE_KINDS} per inhomogeneity")
        if alg.is_o and "dual" in self.sites:
            raise ConfigError("dual sites are only defined for gl chains")
        if set(self.chi) != set(alg.indices):
            raise ConfigError(f"twists must be given for indices {alg.indices}")
        if any(v == 0 for v in self.chi.values()):
            raise ConfigError("twists must be nonzero")
        if alg.is_o:
            shift = self.c * alg.kappa
            for a in self.xi:
                for b in self.xi:
                    if a != b and (a - b == shift or b - a == shift):
                        raise ConfigError("inhomogeneities differ by c*kappa")
            if self.chi[0] != 1:
                raise ConfigError("orthogonal twists need chi_0 = 1")
            for i in range(1, alg.n + 1):
                if self.chi[i] * self.chi[-i] != 1:
                    raise ConfigError(f"orthogonal twists need chi_{i} chi_{-i} = 1")

    # -- basic data -------------------------------------------------------
    @property
    def L(self) -> int:
        return len(self.xi)

    @property
    def N(self) -> int:
        return self.algebra.N

    @property
    def dim(self) -> int:
        return self.N ** self.L

    def with_chi(self, chi: Mapping) -> "ChainModel":
        return ChainModel(self.algebra, self.xi, chi, self.c, self.lax_variant, self.sites)

    def describe(self) -> dict:
        out = {
            "algebra": self.algebra.label(),
            "L": self.L,
            "c": rat_str(self.c),
            "xi": [rat_str(x) for x in self.xi],
            "chi": {str(i): rat_str(self.chi[i]) for i in self.algebra.indices},
        }
        if "dual" in self.sites:
            out["sites"] = list(self.sites)
        return out

    def check_pole_free(self, z) -> None:
        z = rat(z)
        for a in self.xi:
            if z == a:
                raise PoleError(f"z={z} hits an inhomogeneity", ("xi", z))
            if self.algebra.is_o and z - a + self.c * self.algebra.kappa == 0:
                raise PoleError(f"z={z} hits xi - c*kappa", ("xi-kappa", z))

    # -- Lax operators ----------------------------------------------------
    def lax(self, z, xi, kind: str = "fundamental") -> dict[tuple[int, int], OperatorMatrix]:
        """Site operators L_{ik}: R_{0a} = sum_{i,k} e_{ik} (x) L_{ik}.

        A gl ``dual`` site carries I - c Q/(z - xi) instead of I + c P/(z - xi).
        """
        alg, N, m = self.algebra, self.N, self.algebra.min_index
        z, xi = rat(z), rat(xi)
        p = _p_coefficient(z, xi, self.c)
        q = _q_coefficient(alg, z, xi, self.c)
        dual = kind == "dual"
        out = {}
        for i in alg.indices:
            for k in alg.indices:
                ent: dict[tuple[int, int], Rat] = {}
                if i == k:
                    for b in alg.indices:
                        ent[(b - m, b - m)] = ONE
                if dual:
                    # transposed P: -p e_{i,k}
                    key = (i - m, k - m)
                    ent[key] = ent.get(key, ZERO) - p
                    out[(i, k)] = OperatorMatrix.from_entries(N, ent)
                    continue
                # P contributes p e_{k,i}; Q contributes -q e_{-i,-k}
                key = (k - m, i - m)
                ent[key] = ent.get(key, ZERO) + p
                if q:
                    key = (-i - m, -k - m)
                    ent[key] = ent.get(key, ZERO) - q
                if self.lax_variant == "transposed":
                    ent = {(col, r): v for (r, col), v in ent.items()}
                out[(i, k)] = OperatorMatrix.from_entries(N, ent)
        return out

    def slice(self, z) -> MonodromySlice:
        z = rat(z)
        cached = self._slices.get(z)
        if cached is not None:
            return cached
        self.check_pole_free(z)
        idx = self.algebra.indices
        M = self.lax(z, self.xi[0], self.sites[0])
        for a in range(1, self.L):
            lax = self.lax(z, self.xi[a], self.sites[a])
            nxt = {}
            for i in idx:
                for j in idx:
                    acc = OperatorMatrix(M[(i, j)].dim * self.N)
                    for k in idx:
                        left = M[(k, j)]
                        right = lax[(i, k)]
                        if left.cols and right.cols:
                            acc = acc + kron(left, right)
                    nxt[(i, j)] = acc
            M = nxt
        entries = {(i, j): M[(i, j)].scaled(self.chi[i]) for i in idx for j in idx}
        sl = MonodromySlice(z, entries)
        if len(self._slices) > 256:
            self._slices.clear()
        self._slices[z] = sl
        return sl

    def entry(self, i: int, j: int, z) -> OperatorMatrix:
        return self.slice(z)[(i, j)]

    # -- instrumented application ----------------------------------------
    @contextlib.contextmanager
    def recording(self):
        """Collect every (i, j) passed to ``apply`` inside the block."""
        rec: set = set()
        self._recorders.append(rec)
        try:
            yield rec
        finally:
            self._recorders.remove(rec)

    def apply(self, i: int, j: int, z, vec: Mapping) -> StateVector:
        for rec in self._recorders:
            rec.add((i, j))
        return self.slice(z)[(i, j)].apply(vec)

    # -- vacuum -------------------------------------------------------------
    def basis_vector(self, multi: Iterable[int]) -> StateVector:
        return StateVector({encode(multi, self.N, self.algebra.min_index): ONE})

    def decode(self, index: int) -> tuple[int, ...]:
        return decode(index, self.N, self.L, self.algebra.min_index)

    def sample_points(self, count: int, start: int = 3) -> list[Rat]:
        """Deterministic pole-free points, used internally (scan, interpolation)."""
        pts = []
        cand = Rat(start, 7)
        while len(pts) < count:
            try:
                self.check_pole_free(cand)
                pts.append(cand)
            except PoleError:
                pass
            cand += Rat(5, 3)
        return pts

    def vacuum_candidates(self, points: Iterable | None = None) -> list[int]:
        """Exhaustive scan of basis vectors against the vacuum conditions."""
        pts = list(points) if points is not None else self.sample_points(3)
        idx = self.algebra.indices
        found = []
        slices = [self.slice(z) for z in pts]
        for b in range(self.dim):
            ok = True
            for sl in slices:
                for i in idx:
                    for j in idx:
                        col = sl[(i, j)].cols.get(b, {})
                        if i > j:
                            if any(col.values()):
                                ok = False
                        elif i == j:
                            if any(r != b and v for r, v in col.items()):
                                ok = False
                        if not ok:
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                found.append(b)
        return found

    def find_vacuum(self) -> StateVector:
        if self._vacuum is None:
            found = self.vacuum_candidates()
            if not found:
                raise NoVacuumFound(f"no vacuum for {self.algebra.label()} chain with L={self.L}")
            self._vacuum = found[0]
        return StateVector({self._vacuum: ONE})

    @property
    def vacuum(self) -> StateVector:
        return self.find_vacuum()

    @property
    def vacuum_index(self) -> int:
        self.find_vacuum()
        return self._vacuum

    # -- vacuum eigenvalues -------------------------------------------------
    def lam(self, i: int, z) -> Rat:
        """Product formula for the vacuum eigenvalue of T_ii(z)."""
        alg, c = self.algebra, self.c
        z = rat(z)
        self.check_pole_free(z)
        out = self.chi[i]
        top = alg.min_index
        for a, kind in zip(self.xi, self.sites):
            factor = ONE
            if kind == "dual":
                if i == alg.n:
                    factor -= c / (z - a)
                out *= factor
                continue
            if i == top:
                factor += c / (z - a)
            if alg.is_o and i == alg.n:
                factor -= c / (z - a + c * alg.kappa)
            out *= factor
        return out

    def lam_from_slice(self, i: int, z) -> Rat:
        """Coefficient of |0> in T_ii(z)|0>."""
        vac = self.vacuum_index
        col = self.entry(i, i, z).cols.get(vac, {})
        return col.get(vac, ZERO)

    def alpha(self, s: int, z) -> Rat:
        den = self.lam(s + 1, z)
        if den == 0:
            raise PoleError(f"lambda_{s + 1}({z}) = 0", ("alpha", s, z))
        return self.lam(s, z) / den

    # -- transfer matrix ----------------------------------------------------
    def transfer(self, z) -> OperatorMatrix:
        sl = self.slice(z)
        out = OperatorMatrix(self.dim)
        for i in self.algebra.indices:
            out = out + sl[(i, i)]
        return out


def build_monodromy(chain: ChainModel, z) -> MonodromySlice:
    return chain.slice(z)


def find_vacuum(chain: ChainModel) -> StateVector:
    return chain.find_vacuum()


def eval_lambda(chain: ChainModel, i: int, z) -> Rat:
    chain.algebra.check_index(i)
    return chain.lam(i, z)


def build_transfer(chain: ChainModel, z) -> OperatorMatrix:
    return chain.transfer(z)


# ---------------------------------------------------------------------------
# structural checks


def _op_witness(op: OperatorMatrix, chain: ChainModel, label: str) -> dict | None:
    bad = op.first_nonzero()
    if bad is None:
        return None
    r, col, val = bad
    return {"entry": label, "row": list(chain.decode(r)), "col": list(chain.decode(col)), "difference": rat_str(val)}


def _common_denominator(ops: Iterable[OperatorMatrix]) -> int:
    den = 1
    for op in ops:
        for column in op.cols.values():
            for v in column.values():
                den = math.lcm(den, int(Rat(v).denominator))
    return den


def _integral(op: OperatorMatrix, den: int | None = None) -> OperatorMatrix:
    den = den or _common_denominator([op])
    cols = {col: {r: int(v * den) for r, v in column.items()} for col, column in op.cols.items()}
    return OperatorMatrix(op.dim, cols)


def _integral_slice(sl: MonodromySlice) -> dict:
    den = _common_denominator(sl.entries.values())
    return {ij: _integral(op, den) for ij, op in sl.entries.items()}


RTT_METHODS = ("auto", "exact", "modular")


def _flat_entries(ops: Mapping[tuple[int, int], OperatorMatrix], shift: int):
    """Auxiliary indices, quantum coordinates, signs and limbs of every entry of a slice."""
    aux_i, aux_j, rows, cols, vals = [], [], [], [], []
    for (i, j), op in ops.items():
        for col, column in op.cols.items():
            for r, val in column.items():
                aux_i.append(i - shift)
                aux_j.append(j - shift)
                rows.append(r)
                cols.append(col)
                vals.append(val)
    sign, limbs = split_limbs(vals)
    as_arr = lambda x: np.asarray(x, dtype=np.int64)
    return as_arr(aux_i), as_arr(aux_j), as_arr(rows), as_arr(cols), sign, limbs


def _rtt_full_operators(alg: AlgebraSpec, dim: int, R: OperatorMatrix, Tu: Mapping, Tv: Mapping):
    """R (x) I, T1(u) and T2(v) on aux1 (x) aux2 (x) quantum as integer coordinate matrices."""
    N, m = alg.N, alg.min_index
    big = N * N * dim
    r_rows, r_cols, r_vals = [], [], []
    for col, column in R.cols.items():
        for r, val in column.items():
            r_rows.append(r)
            r_cols.append(col)
            r_vals.append(val)
    sign, limbs = split_limbs(r_vals)
    q = np.arange(dim, dtype=np.int64)[:, None]
    r_full = IntSparse(
        big,
        (np.asarray(r_rows, dtype=np.int64) * dim + q).ravel(),
        (np.asarray(r_cols, dtype=np.int64) * dim + q).ravel(),
        np.tile(sign, dim),
        np.tile(limbs, (1, dim)),
    )
    copies = np.arange(N, dtype=np.int64)[:, None]
    i, j, r, c, sign, limbs = _flat_entries(Tu, m)
    t1 = IntSparse(
        big,
        ((i * N + copies) * dim + r).ravel(),
        ((j * N + copies) * dim + c).ravel(),
        np.tile(sign, N),
        np.tile(limbs, (1, N)),
    )
    i, j, r, c, sign, limbs = _flat_entries(Tv, m)
    t2 = IntSparse(
        big,
        ((copies * N + i) * dim + r).ravel(),
        ((copies * N + j) * dim + c).ravel(),
        np.tile(sign, N),
        np.tile(limbs, (1, N)),
    )
    return r_full, t1, t2


def check_rtt(
    chain: ChainModel, u, v, zero_entry: tuple[int, int] | None = None, method: str = "auto"
) -> CheckReport:
    """R(u,v) T1(u) T2(v) = T2(v) T1(u) R(u,v), compared entrywise in the auxiliary spaces.

    ``zero_entry`` replaces one monodromy entry by zero (negative control).
    ``method``: "exact" multiplies rational operators block by block; "modular"
    certifies the integer-rescaled identity through residues and a magnitude
    bound; "auto" tries the certificate and falls back to the exact route when
    it is unavailable or reports a difference (the exact route supplies the witness).
    """
    if method not in RTT_METHODS:
        raise ValueError(f"unknown RTT method {method!r}")
    start = time.perf_counter()
    alg = chain.algebra
    u, v = rat(u), rat(v)
    idx = alg.indices
    N, m = alg.N, alg.min_index
    # both sides are bilinear in T(u), T(v) and linear in R, so each may be
    # rescaled to integer entries, which keeps the products in fast int arithmetic
    R = _integral(build_r_matrix(alg, u, v, chain.c))
    Tu, Tv = _integral_slice(chain.slice(u)), _integral_slice(chain.slice(v))
    if zero_entry is not None:
        Tu = dict(Tu) | {zero_entry: OperatorMatrix(chain.dim)}
        Tv = dict(Tv) | {zero_entry: OperatorMatrix(chain.dim)}
    config = chain.describe() | {"u": rat_str(u), "v": rat_str(v)}
    if method != "exact":
        r_full, t1, t2 = _rtt_full_operators(alg, chain.dim, R, Tu, Tv)
        verdict = products_equal([r_full, t1, t2], [t2, t1, r_full])
        if verdict is True:
            return CheckReport.make("rtt", config, None, start)
        if method == "modular":
            reason = "no usable magnitude bound" if verdict is None else "nonzero residue"
            return CheckReport.make("rtt", config, {"certificate": reason}, start)

    def ent(sl, i, j):
        return sl[(i, j)]

    prod_uv: dict = {}
    prod_vu: dict = {}

    def uv(a, c_, b, d):
        key = (a, c_, b, d)
        if key not in prod_uv:
            prod_uv[key] = ent(Tu, a, c_) @ ent(Tv, b, d)
        return prod_uv[key]

    def vu(b, d, a, c_):
        key = (b, d, a, c_)
        if key not in prod_vu:
            prod_vu[key] = ent(Tv, b, d) @ ent(Tu, a, c_)
        return prod_vu[key]

    rows = {}  # R as row -> {col: val}
    for col, column in R.cols.items():
        for r, val in column.items():
            rows.setdefault(r, {})[col] = val

    def split(x):
        a, b = divmod(x, N)
        return a + m, b + m

    witness = None
    for a in idx:
        for b in idx:
            row = (a - m) * N + (b - m)
            for c_ in idx:
                for d in idx:
                    colk = (c_ - m) * N + (d - m)
                    diff = OperatorMatrix(chain.dim)
                    for k, val in rows.get(row, {}).items():
                        a2, b2 = split(k)
                        diff.accumulate(uv(a2, c_, b2, d), val)
                    for k, val in R.cols.get(colk, {}).items():
                        a2, b2 = split(k)
                        diff.accumulate(vu(b, b2, a, a2), -val)
                    witness = _op_witness(diff, chain, f"({a},{b}),({c_},{d})")
                    if witness:
                        witness["units"] = "integer-rescaled"
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    return CheckReport.make("rtt", config, witness, start)


def check_vacuum(chain: ChainModel, points: Iterable) -> CheckReport:
    """Exactly one basis vector passes the scan and the product formula matches the slice."""
    start = time.perf_counter()
    pts = [rat(p) for p in points]
    found = chain.vacuum_candidates(pts)
    witness = None
    if len(found) != 1:
        witness = {"candidates": [list(chain.decode(b)) for b in found]}
    else:
        for z in pts:
            for i in chain.algebra.indices:
                a, b = chain.lam_from_slice(i, z), chain.lam(i, z)
                if a != b:
                    witness = {"index": i, "z": rat_str(z), "slice": rat_str(a), "formula": rat_str(b)}
                    break
            if witness:
                break
    config = chain.describe() | {"vacuum": [list(chain.decode(b)) for b in found]}
    return CheckReport.make("vacuum", config, witness, start)


# ---------------------------------------------------------------------------
# orthogonal central element and the eigenvalue relation


def lambda_invariant(chain: ChainModel, j: int, z) -> Rat:
    """lambda_{-j}(z) lambda_j(z_j) prod_{s=j+1}^n lambda_s(z_s)/lambda_s(z_{s-1}); j-independent."""
    alg = chain.algebra
    if not alg.is_o:
        raise FamilyError("the eigenvalue invariant is defined for o_{2n+1} only")
    from .scalars import shifted

    z = rat(z)
    c = chain.c
    out = chain.lam(-j, z) * chain.lam(j, shifted(z, j, c))
    for s in range(j + 1, alg.n + 1):
        out *= chain.lam(s, shifted(z, s, c)) / chain.lam(s, shifted(z, s - 1, c))
    return out


def central_scalar(chain: ChainModel, z) -> tuple[Rat | None, dict | None]:
    """T(z)^t T(z + c kappa) as lambda * Id; returns (lambda, None) or (None, witness)."""
    alg = chain.algebra
    if not alg.is_o:
        raise FamilyError("central element check applies to o_{2n+1} only")
    z = rat(z)
    zs = z + chain.c * alg.kappa
    A, B = chain.slice(z), chain.slice(zs)
    value = None
    for i in alg.indices:
        for j in alg.indices:
            acc = OperatorMatrix(chain.dim)
            for k in alg.indices:
                acc = acc + (A[(-k, -i)] @ B[(k, j)])
            if i != j:
                w = _op_witness(acc, chain, f"({i},{j})")
                if w:
                    return None, w
            else:
                s = acc.scalar_value()
                if s is None or (value is not None and s != value):
                    return None, {"entry": f"({i},{i})", "reason": "not a common scalar"}
                value = s
    return value, None


def central_element_check(chain: ChainModel, z) -> CheckReport:
    start = time.perf_counter()
    z = rat(z)
    alg = chain.algebra
    if not alg.is_o:
        raise FamilyError("central element check applies to o_{2n+1} only")
    value, witness = central_scalar(chain, z)
    config = chain.describe() | {"z": rat_str(z)}
    if witness is None:
        config["scalar"] = rat_str(value)
        # F_j(z + c kappa) = C(z) for every j
        zz = z + chain.c * alg.kappa
        for j in range(0, alg.n + 1):
            fj = lambda_invariant(chain, j, zz)
            if fj != value:
                witness = {"j": j, "F_j": rat_str(fj), "scalar": rat_str(value)}
                break
    return CheckReport.make("central-element", config, witness, start)


# ---------------------------------------------------------------------------
# zero modes


@dataclass
class ZeroModeTable:
    modes: dict[tuple[int, int], OperatorMatrix]
    lam0: dict[int, Rat]
    points: list[Rat] = field(default_factory=list)

    def __getitem__(self, ij):
        return self.modes[ij]


def _poly_from_roots(roots: list[Rat]) -> list[Rat]:
    """Coefficients (low to high) of prod (u - r)."""
    coeffs = [ONE]
    for r in roots:
        nxt = [ZERO] * (len(coeffs) + 1)
        for k, a in enumerate(coeffs):
            nxt[k + 1] += a
            nxt[k] -= a * r
        coeffs = nxt
    return coeffs


def _eval_poly(coeffs: list[Rat], u: Rat) -> Rat:
    out = ZERO
    for a in reversed(coeffs):
        out = out * u + a
    return out


def _denominator_roots(chain: ChainModel) -> list[Rat]:
    roots = list(chain.xi)
    if chain.algebra.is_o:
        roots += [a - chain.c * chain.algebra.kappa for a in chain.xi]
    return roots


def zero_mode_weights(chain: ChainModel, points: list[Rat]) -> tuple[list[Rat], list[Rat]]:
    """Weights w, w_top with T[0] = sum w_m T(u_m) and T[-1] = sum w_top_m T(u_m).

    T(u) = P(u)/D(u) with P interpolated at deg D + 1 points.
    """
    roots = _denominator_roots(chain)
    D = _poly_from_roots(roots)
    d = len(roots)
    if len(points) != d + 1:
        raise ValueError("need deg D + 1 interpolation points")
    d1 = D[d - 1]
    w, w_top = [], []
    for m, um in enumerate(points):
        others = [x for k, x in enumerate(points) if k != m]
        den = ONE
        for x in others:
            den *= um - x
        beta_top = ONE / den
        beta_next = -sum(others, ZERO) / den
        scale = _eval_poly(D, um)
        w.append(scale * (beta_next - d1 * beta_top) / chain.c)
        w_top.append(scale * beta_top)
    return w, w_top


def zero_modes(chain: ChainModel) -> ZeroModeTable:
    alg = chain.algebra
    d = len(_denominator_roots(chain))
    pts = chain.sample_points(d + 2)
    interp, holdout = pts[: d + 1], pts[d + 1]
    w, w_top = zero_mode_weights(chain, interp)
    slices = [chain.slice(u) for u in interp]
    modes = {}
    roots = _denominator_roots(chain)
    D = _poly_from_roots(roots)
    # Lagrange weights at the holdout point
    hw = []
    for m, um in enumerate(interp):
        num, den = ONE, ONE
        for k, x in enumerate(interp):
            if k != m:
                num *= holdout - x
                den *= um - x
        hw.append(_eval_poly(D, um) * num / den)
    d_hold = _eval_poly(D, holdout)
    hold_slice = chain.slice(holdout)
    for i in alg.indices:
        for j in alg.indices:
            acc = OperatorMatrix(chain.dim)
            top = OperatorMatrix(chain.dim)
            rec = OperatorMatrix(chain.dim)
            for m, sl in enumerate(slices):
                acc = acc.add_scaled(sl[(i, j)], w[m])
                top = top.add_scaled(sl[(i, j)], w_top[m])
                rec = rec.add_scaled(sl[(i, j)], hw[m])
            if rec != hold_slice[(i, j)].scaled(d_hold):
                raise InterpolationDegreeError(f"holdout mismatch for entry ({i},{j})")
            expect_top = OperatorMatrix.identity(chain.dim, chain.chi[i]) if i == j else OperatorMatrix(chain.dim)
            if top != expect_top:
                raise InterpolationDegreeError(f"leading coefficient of T_{i},{j} is not chi*delta")
            modes[(i, j)] = acc
    lam0 = {}
    for i in alg.indices:
        lam0[i] = sum((w[m] * chain.lam(i, u) for m, u in enumerate(interp)), ZERO)
    return ZeroModeTable(modes, lam0, interp)


def _delta(a, b) -> int:
    return 1 if a == b else 0


def zero_mode_rhs(chain: ChainModel, i, j, k, l, v, chi: Mapping | None = None) -> OperatorMatrix:
    """Right-hand side of [T_ij[0], T_kl(v)] from the zero-mode commutation relation."""
    alg = chain.algebra
    chi = chi or chain.chi
    sl = chain.slice(v)
    zero = OperatorMatrix(chain.dim)

    def T(a, b):
        if a in alg.indices and b in alg.indices:
            return sl[(a, b)]
        return zero

    out = OperatorMatrix(chain.dim)
    if _delta(i, l):
        out = out.add_scaled(T(k, j), chi[i])
    if _delta(k, j):
        out = out.add_scaled(T(i, l), -chi[j])
    if alg.is_o:
        if _delta(l, -j):
            out = out.add_scaled(T(k, -i), -chi[i])
        if _delta(k, -i):
            out = out.add_scaled(T(-j, l), chi[j])
    return out


def lowering_rhs(chain: ChainModel, l, i, j, v, chi: Mapping | None = None) -> OperatorMatrix:
    """Specialized form of [T_{l+1,l}[0], T_ij(v)] (coded separately from zero_mode_rhs)."""
    alg = chain.algebra
    chi = chi or chain.chi
    sl = chain.slice(v)
    out = OperatorMatrix(chain.dim)
    if alg.is_gl:
        if l + 1 == j:
            out = out.add_scaled(sl[(i, l)], chi[l + 1])
        if l == i:
            out = out.add_scaled(sl[(l + 1, j)], -chi[l])
        return out
    a = _delta(l, j - 1) - _delta(l, -j)
    b = _delta(l, i) - _delta(l, -i - 1)
    if a:
        out = out.add_scaled(sl[(i, j - 1)], chi[l + 1] * a)
    if b:
        out = out.add_scaled(sl[(i + 1, j)], -chi[l] * b)
    return out


def check_zero_mode_commutators(chain: ChainModel, v, modes: ZeroModeTable | None = None, chi_rhs: Mapping | None = None) -> CheckReport:
    """All [T_ij[0], T_kl(v)] relations, the lowering specialization, and vacuum annihilation."""
    start = time.perf_counter()
    v = rat(v)
    alg = chain.algebra
    modes = modes or zero_modes(chain)
    sl = chain.slice(v)
    idx = alg.indices
    witness = None
    vac = chain.vacuum
    for i in idx:
        for j in idx:
            if i > j and modes[(i, j)].apply(vac):
                witness = {"reason": "zero mode does not annihilate vacuum", "entry": [i, j]}
                break
        if witness:
            break
    if witness is None:
        for i in idx:
            for j in idx:
                Z = modes[(i, j)]
                for k in idx:
                    for l in idx:
                        comm = (Z @ sl[(k, l)]) - (sl[(k, l)] @ Z)
                        diff = comm - zero_mode_rhs(chain, i, j, k, l, v, chi_rhs)
                        witness = _op_witness(diff, chain, f"[T{i},{j}[0], T{k},{l}]")
                        if witness:
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
    if witness is None:
        for l in alg.colors:
            Z = modes[(l + 1, l)]
            for i in idx:
                for j in idx:
                    comm = (Z @ sl[(i, j)]) - (sl[(i, j)] @ Z)
                    diff = comm - lowering_rhs(chain, l, i, j, v, chi_rhs)
                    witness = _op_witness(diff, chain, f"lowering l={l} T{i},{j}")
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
    config = chain.describe() | {"v": rat_str(v)}
    return CheckReport.make("zero-modes", config, witness, start)


def cartan_and_color(chain: ChainModel, modes: ZeroModeTable | None = None):
    """(h_i, t_s) with chi_i h_i = T_ii[0] - lambda_i[0] and t_s = sum_{i>s} h_i."""
    alg = chain.algebra
    modes = modes or zero_modes(chain)
    h = {}
    for i in alg.indices:
        op = modes[(i, i)] - OperatorMatrix.identity(chain.dim, modes.lam0[i])
        h[i] = op.scaled(ONE / chain.chi[i])
    t = {}
    for s in alg.colors:
        acc = OperatorMatrix(chain.dim)
        for i in range(s + 1, alg.n + 1):
            acc = acc + h[i]
        t[s] = acc
    return h, t


def check_cartan(chain: ChainModel, v, modes: ZeroModeTable | None = None) -> CheckReport:
    """h_i|0> = 0 and [h_i, T_kl(v)] = weight * T_kl(v)."""
    start = time.perf_counter()
    v = rat(v)
    alg = chain.algebra
    h, _ = cartan_and_color(chain, modes)
    sl = chain.slice(v)
    witness = None
    vac = chain.vacuum
    for i in alg.indices:
        if h[i].apply(vac):
            witness = {"reason": "h_i does not annihilate vacuum", "i": i}
            break
    if witness is None:
        for i in alg.indices:
            for k in alg.indices:
                for l in alg.indices:
                    wgt = _delta(i, l) - _delta(i, k)
                    if alg.is_o:
                        wgt += _delta(i, -k) - _delta(i, -l)
                    comm = (h[i] @ sl[(k, l)]) - (sl[(k, l)] @ h[i])
                    witness = _op_witness(comm - sl[(k, l)].scaled(wgt), chain, f"[h{i}, T{k},{l}]")
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
    config = chain.describe() | {"v": rat_str(v)}
    return CheckReport.make("cartan", config, witness, start)
