"""Off-shell Bethe vectors from the elementary recurrences, and rectangular right-hand sides.

A ``MonodromyView`` exposes T_{i,j}(z) and lambda_i(z) for some algebra.  The
plain view is the chain itself; block views re-index a sub-block of an o-type
chain as a gl-type monodromy (used by the gl reductions).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .algebra import AlgebraSpec, FamilyError, gl
from .chain import ChainModel
from .coefficients import gamma_left, gamma_right, mu, xi_coefficient, xi_sign, z_extension
from .colored import ColoredSets, cardinality_profile, enumerate_partitions, profile_from
from .scalars import ONE, PoleError, Rat, ZeroNormalization, gamma_kind, rat, rat_str, shifted, sigma, sp, theta
from .sparse import OperatorMatrix, StateVector


class UnsupportedBlock(ValueError):
    """Requested pre-Bethe window is not a rank-1 window."""


# ---------------------------------------------------------------------------
# monodromy views


class ChainView:
    """The chain's own monodromy."""

    def __init__(self, chain: ChainModel):
        self.chain = chain
        self.algebra = chain.algebra
        self.c = chain.c

    def apply(self, i: int, j: int, z, vec) -> StateVector:
        return self.chain.apply(i, j, z, vec)

    def entry(self, i: int, j: int, z) -> OperatorMatrix:
        return self.chain.entry(i, j, z)

    def lam(self, i: int, z) -> Rat:
        return self.chain.lam(i, z)

    @property
    def vacuum(self) -> StateVector:
        return self.chain.vacuum

    def key(self) -> tuple:
        return ("chain",)


class BlockView(ChainView):
    """gl_n-type view: entry (i, j) at z is T_{i+offset, j+offset}(z + shift) of the chain."""

    def __init__(self, chain: ChainModel, n: int, offset: int, shift):
        super().__init__(chain)
        self.algebra = gl(n)
        self.offset = offset
        self.shift = rat(shift)
        for i in self.algebra.indices:
            chain.algebra.check_index(i + offset)

    def apply(self, i, j, z, vec):
        return self.chain.apply(i + self.offset, j + self.offset, rat(z) + self.shift, vec)

    def entry(self, i, j, z):
        return self.chain.entry(i + self.offset, j + self.offset, rat(z) + self.shift)

    def lam(self, i, z):
        return self.chain.lam(i + self.offset, rat(z) + self.shift)

    def key(self) -> tuple:
        return ("block", self.algebra.n, self.offset, self.shift)


def upper_block(chain: ChainModel) -> BlockView:
    """T_{i,j} with 1 <= i, j <= n of an o-type chain, read as a gl_n monodromy."""
    if not chain.algebra.is_o:
        raise FamilyError("block views need an o-type chain")
    return BlockView(chain, chain.algebra.n, 0, 0)


def hat_block(chain: ChainModel) -> BlockView:
    """hat T_{i,j}(w) = T_{i-n-1, j-n-1}(w), read as a gl_n monodromy."""
    if not chain.algebra.is_o:
        raise FamilyError("block views need an o-type chain")
    alg = chain.algebra
    return BlockView(chain, alg.n, -alg.n - 1, 0)


# ---------------------------------------------------------------------------
# builder


def _accumulate(out: StateVector, view, i, j, z, vec, coef) -> None:
    if coef and vec:
        out.add_scaled(view.apply(i, j, z, vec), coef)


class BetheBuilder:
    """Memoized constructor of B(tbar) on one monodromy view."""

    def __init__(self, source):
        self.view = source if isinstance(source, ChainView) else ChainView(source)
        self.algebra: AlgebraSpec = self.view.algebra
        self.c = self.view.c
        self._cache: dict[tuple, StateVector] = {}

    @property
    def chain(self) -> ChainModel:
        return self.view.chain

    def lam(self, i, z) -> Rat:
        return self.view.lam(i, z)

    def colored(self, sets: Mapping) -> ColoredSets:
        return ColoredSets(self.algebra, sets)

    # -- canonical construction --------------------------------------------
    def build(self, tbar: ColoredSets | Mapping) -> StateVector:
        if not isinstance(tbar, ColoredSets):
            tbar = self.colored(tbar)
        if tbar.algebra != self.algebra:
            raise FamilyError(f"sets for {tbar.algebra.label()} given to a {self.algebra.label()} builder")
        key = tbar.key()
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        if tbar.is_empty():
            vec = self.view.vacuum.copy()
        else:
            color = max(s for s in self.algebra.colors if tbar.get(s))
            z = max(tbar.get(color))
            vec = self.add_parameter(tbar.without(color, z), color, z)
        self._cache[key] = vec
        return vec

    def add_parameter(self, tbar: ColoredSets, color: int, z) -> StateVector:
        """B with z added to t^color, from the elementary (k = color + 1) recurrence."""
        z = rat(z)
        if not self.algebra.has_color(color):
            raise ValueError(f"color {color} is not legal for {self.algebra.label()}")
        if z in tbar.get(color):
            raise PoleError(f"parameter {rat_str(z)} already present in color {color}", ("repeat", color, z))
        if self.algebra.is_gl:
            return self._add_gl(tbar, color, z)
        if color == 0:
            return self._add_o_zero(tbar, z)
        return self._add_o_positive(tbar, color, z)

    def _normalize(self, out: StateVector, den: Rat) -> StateVector:
        if den == 0:
            raise ZeroNormalization("vanishing normalization in elementary recurrence")
        return out.scaled(ONE / den)

    def _add_gl(self, tbar: ColoredSets, l: int, z: Rat) -> StateVector:
        n, c, alg = self.algebra.n, self.c, self.algebra
        out = StateVector()
        zt = (z,)
        for i in range(1, l + 1):
            for j in range(l + 1, n + 1):
                req = {}
                for s in range(i, l):
                    req[s] = (1, 0)
                for s in range(l + 1, j):
                    req[s] = (0, 1)
                prof = profile_from(tbar, req)
                if not prof.feasible:
                    continue
                for part in enumerate_partitions(tbar, prof):
                    I, II, III = part.I, part.II, part.III
                    coef = sp("g_inv", zt, II.get(l - 1), c) * sp("g_inv", II.get(l + 1), zt, c)
                    for s in range(i, l):
                        coef *= (
                            sp("gamma", I.get(s), II.get(s), c)
                            * sp("h", II.get(s + 1), I.get(s), c)
                            * sp("g_inv", I.get(s), II.get(s - 1), c)
                        )
                    for s in range(l + 1, j):
                        III_s = III.get(s)
                        coef *= (
                            _alpha(self.lam, s, III_s)
                            * sp("gamma", II.get(s), III_s, c)
                            * sp("h", III_s, II.get(s - 1), c)
                            * sp("g_inv", II.get(s + 1), III_s, c)
                        )
                    _accumulate(out, self.view, i, j, z, self.build(part.rest()), coef)
        tl = tbar.get(l)
        den = self.lam(l + 1, z) * sp("h", zt, tl, c) * sp("h", tl, zt, c)
        return self._normalize(out, den)

    def _add_o_positive(self, tbar: ColoredSets, l: int, z: Rat) -> StateVector:
        n, c, alg = self.algebra.n, self.c, self.algebra
        out = StateVector()
        zt = (z,)
        for i in range(-n, l + 1):
            for j in range(l + 1, n + 1):
                req = {}
                for s in alg.colors:
                    a = theta(s - i) + theta(-i - s - 1) if s < l else theta(-i - s - 1)
                    b = 0 if s < l + 1 else theta(j - s - 1)
                    req[s] = (a, b)
                prof = profile_from(tbar, req)
                if not prof.feasible:
                    continue
                for part in enumerate_partitions(tbar, prof):
                    I, II, III = part.I, part.II, part.III
                    coef = (
                        sp("g_inv", zt, II.get(l - 1), c)
                        * sp("h_inv", II.get(l), zt, c)
                        * sp("g_inv", part.I_II.get(l + 1), zt, c)
                    )
                    coef *= gamma_right(max(i, 0), max(l, abs(i)), I, II, alg, c)
                    coef *= gamma_left(l + 1, j, part.I_II, III, self.lam, alg, c)
                    coef *= sigma(i + 1)
                    _accumulate(out, self.view, i, j, z, self.build(part.rest()), coef)
        den = self.lam(l + 1, z) * sp("h", zt, tbar.get(l), c)
        return self._normalize(out, den)

    def _add_o_zero(self, tbar: ColoredSets, z: Rat) -> StateVector:
        n, c, alg = self.algebra.n, self.c, self.algebra
        out = StateVector()
        zt = (z,)
        z0 = (shifted(z, 0, c),)
        for i in range(-n, 1):
            for j in range(1, n + 1):
                req = {}
                for s in alg.colors:
                    req[s] = (theta(-i - s - 1), 0 if s == 0 else theta(j - s - 1))
                prof = profile_from(tbar, req)
                if not prof.feasible:
                    continue
                for part in enumerate_partitions(tbar, prof):
                    I, II, III = part.I, part.II, part.III
                    coef = sp("g_inv", z0, II.get(0), c) * sp("g_inv", part.I_II.get(1), zt, c) * sigma(i + 1)
                    for s in range(0, -i):
                        gk = gamma_kind(s, alg)
                        coef *= (
                            sp(gk, I.get(s), II.get(s), c)
                            * sp("h", II.get(s + 1), I.get(s), c)
                            * sp("g_inv", I.get(s), II.get(s - 1), c)
                        )
                    for s in range(1, j):
                        III_s = III.get(s)
                        left = part.I_II
                        coef *= (
                            _alpha(self.lam, s, III_s)
                            * sp(gamma_kind(s, alg), left.get(s), III_s, c)
                            * sp("h", III_s, left.get(s - 1), c)
                            * sp("g_inv", left.get(s + 1), III_s, c)
                        )
                    _accumulate(out, self.view, i, j, z, self.build(part.rest()), coef)
        den = self.lam(1, z) * sp("h", zt, tbar.get(0), c)
        return self._normalize(out, den)

    # -- general rectangular right-hand side -----------------------------------
    def rhs_rectangular(self, tbar: ColoredSets, l: int, k: int, z, tamper: str | None = None) -> StateVector:
        """(1/mu) sum_{i<=l, j>=k} sum_part sign * Xi * T_{i,j}(z) B(t_II)."""
        alg, c = self.algebra, self.c
        z = rat(z)
        lo = 1 if alg.is_gl else -alg.n
        out = StateVector()
        first = True
        for i in range(lo, l + 1):
            for j in range(k, alg.n + 1):
                prof = cardinality_profile(alg, l, k, i, j, tbar)
                if not prof.feasible:
                    continue
                for part in enumerate_partitions(tbar, prof):
                    coef = xi_coefficient(alg, l, k, i, j, z, part, self.lam, c) * xi_sign(alg, l, k, i, j)
                    if tamper == "xi-sign" and alg.is_o and xi_sign(alg, l, k, i, j) == -1:
                        coef = -coef
                    if tamper == "xi-plus-one" and first:
                        coef += 1
                    first = False
                    _accumulate(out, self.view, i, j, z, self.build(part.rest()), coef)
        m = mu(l, k, z, tbar, self.lam, alg, c)
        if tamper == "xi-sign" and alg.is_gl:
            m = -m
        return out.scaled(ONE / m)

    def lhs_rectangular(self, tbar: ColoredSets, l: int, k: int, z) -> StateVector:
        return self.build(z_extension(self.algebra, tbar, l, k, z, self.c))

    # -- shifted recurrences (second route) ------------------------------------
    def add_shifted(self, tbar: ColoredSets, l: int, z) -> StateVector:
        """B with z_l added to t^l, from the shifted recurrences (0 < l < n) or the l = 0 one."""
        alg = self.algebra
        if not alg.is_o:
            raise FamilyError("shifted recurrences exist for o_{2n+1} only")
        z = rat(z)
        if l == 0:
            return self._shifted_zero(tbar, z)
        if 0 < l < alg.n:
            return self._shifted_positive(tbar, l, z)
        raise ValueError(f"shifted recurrence needs 0 <= l < n, got {l}")

    def _shifted_positive(self, tbar: ColoredSets, l: int, z: Rat) -> StateVector:
        n, c, alg = self.algebra.n, self.c, self.algebra
        zl, zl1, zlm = shifted(z, l, c), shifted(z, l + 1, c), shifted(z, l - 1, c)
        out = StateVector()
        for i in range(-n, -l):
            for j in range(-l, n + 1):
                req = {}
                for s in alg.colors:
                    a = 0 if s < l + 1 else theta(-i - s - 1)
                    b = theta(s + j) + theta(j - s - 1) if s < l else theta(j - s - 1)
                    req[s] = (a, b)
                prof = profile_from(tbar, req)
                if not prof.feasible:
                    continue
                for part in enumerate_partitions(tbar, prof):
                    I, II, III = part.I, part.II, part.III
                    coef = Rat(-1) if j >= l + 1 else ONE
                    coef *= sp("g", I.get(l + 1), (zl1,), c) * sp("h", (zl,), III.get(l), c) * sp("g", (zlm,), III.get(l - 1), c)
                    coef *= gamma_right(l + 1, -i, I, part.II_III, alg, c)
                    coef *= gamma_left(max(-j, 0), max(l, abs(j)), II, III, self.lam, alg, c)
                    coef *= sigma(j)
                    _accumulate(out, self.view, i, j, z, self.build(part.rest()), coef)
        den = (
            self.lam(-l, z)
            * sp("g", tbar.get(l + 1), (zl1,), c)
            * sp("h", tbar.get(l), (zl,), c)
            * sp("h", (zl,), tbar.get(l), c)
            * sp("g", (zlm,), tbar.get(l - 1), c)
        )
        return self._normalize(out, den)

    def _shifted_zero(self, tbar: ColoredSets, z: Rat) -> StateVector:
        n, c, alg = self.algebra.n, self.c, self.algebra
        z1 = shifted(z, 1, c)
        out = StateVector()
        for i in range(-n, 0):
            for j in range(0, n + 1):
                req = {}
                for s in alg.colors:
                    a = 0 if s == 0 else theta(-i - s - 1)
                    # the s = 0 rule is not displayed; theta(j - 1) reproduces the o_3 form
                    req[s] = (a, theta(j - s - 1))
                prof = profile_from(tbar, req)
                if not prof.feasible:
                    continue
                for part in enumerate_partitions(tbar, prof):
                    I, II, III = part.I, part.II, part.III
                    coef = sp("g", I.get(1), (z1,), c) * sp("g", (z,), III.get(0), c) * sigma(j)
                    for s in range(1, -i):
                        rest = part.II_III
                        coef *= (
                            sp(gamma_kind(s, alg), I.get(s), rest.get(s), c)
                            * sp("h", rest.get(s + 1), I.get(s), c)
                            * sp("g_inv", I.get(s), rest.get(s - 1), c)
                        )
                    for s in range(0, j):
                        III_s = III.get(s)
                        coef *= (
                            _alpha(self.lam, s, III_s)
                            * sp(gamma_kind(s, alg), II.get(s), III_s, c)
                            * sp("h", III_s, II.get(s - 1), c)
                            * sp("g_inv", II.get(s + 1), III_s, c)
                        )
                    _accumulate(out, self.view, i, j, z, self.build(part.rest()), coef)
        t0 = tbar.get(0)
        den = self.lam(0, z) * sp("g", tbar.get(1), (z1,), c) * sp("g_inv", (z1,), t0, c) * sp("g", (z,), t0, c)
        return self._normalize(out, den)


def _alpha(lam, s: int, values) -> Rat:
    out = ONE
    for t in values:
        den = lam(s + 1, t)
        if den == 0:
            raise PoleError(f"lambda_{s + 1}({t}) = 0", ("alpha", s, t))
        out *= lam(s, t) / den
    return out


# ---------------------------------------------------------------------------
# module-level entry points


def build_bethe(chain: ChainModel, tbar: ColoredSets | Mapping, builder: BetheBuilder | None = None) -> StateVector:
    return (builder or BetheBuilder(chain)).build(tbar)


def add_parameter(chain: ChainModel, tbar: ColoredSets, color: int, z, builder: BetheBuilder | None = None) -> StateVector:
    return (builder or BetheBuilder(chain)).add_parameter(tbar, color, z)


def add_shifted(chain: ChainModel, tbar: ColoredSets, color: int, z, builder: BetheBuilder | None = None) -> StateVector:
    return (builder or BetheBuilder(chain)).add_shifted(tbar, color, z)


def rhs_rectangular(chain: ChainModel, tbar: ColoredSets, l: int, k: int, z, builder: BetheBuilder | None = None) -> StateVector:
    return (builder or BetheBuilder(chain)).rhs_rectangular(tbar, l, k, z)


# ---------------------------------------------------------------------------
# pre-Bethe operators on rank-1 windows


@dataclass
class PreBetheOperator:
    operator: OperatorMatrix
    block: tuple[int, ...]

    def apply(self, vec) -> StateVector:
        return self.operator.apply(vec)


def _gl2_operator(chain: ChainModel, m: int, values) -> OperatorMatrix:
    c = chain.c
    op = OperatorMatrix.identity(chain.dim)
    scale = ONE
    for t in values:
        op = chain.entry(m, m + 1, t) @ op
        scale *= chain.lam(m + 1, t)
    for a in values:
        for b in values:
            if a != b:
                scale *= (a - b + c) / c
    if scale == 0:
        raise ZeroNormalization("vanishing gl_2 normalization")
    return op.scaled(ONE / scale)


def _o3_operator(chain: ChainModel, values: tuple, memo: dict) -> OperatorMatrix:
    """Recursive operator form of the o_3 relation adding one parameter to color 0."""
    key = tuple(values)
    if key in memo:
        return memo[key]
    if not values:
        op = OperatorMatrix.identity(chain.dim)
    else:
        c = chain.c
        z = max(values)
        rest = tuple(v for v in values if v != z)
        z0 = shifted(z, 0, c)
        op = chain.entry(0, 1, z) @ _o3_operator(chain, rest, memo)
        for a in rest:
            others = tuple(v for v in rest if v != a)
            coef = sp("g", (z0,), (a,), c) * sp("frak_f", (a,), others, c)
            op = op.add_scaled(chain.entry(-1, 1, z) @ _o3_operator(chain, others, memo), -coef)
        den = chain.lam(1, z) * sp("frak_f", (z0,), rest, c)
        if den == 0:
            raise ZeroNormalization("vanishing o_3 normalization")
        op = op.scaled(ONE / den)
    memo[key] = op
    return op


def build_pre_bethe_operator(chain: ChainModel, tbar: ColoredSets, block: tuple[int, ...]) -> PreBetheOperator:
    """Explicit operator P with P|0> = B(tbar) for a rank-1 window.

    gl_2-type window (m, m+1): tbar lives on the color whose simple root is (m, m+1).
    o_3-type window (-1, 0, 1): tbar lives on color 0 of an o-type chain.
    """
    alg = chain.algebra
    block = tuple(block)
    nonempty = [s for s in alg.colors if tbar.get(s)]
    if block == (-1, 0, 1):
        if not alg.is_o:
            raise UnsupportedBlock("o_3 window needs an o-type chain")
        if any(s != 0 for s in nonempty):
            raise UnsupportedBlock("o_3 window carries color 0 only")
        return PreBetheOperator(_o3_operator(chain, tuple(tbar.get(0)), {}), block)
    if len(block) == 2 and block[1] == block[0] + 1:
        m = block[0]
        color = m
        if not (alg.has_color(color) and m >= 1):
            raise UnsupportedBlock(f"window {block} is not a gl_2 window of {alg.label()}")
        if any(s != color for s in nonempty):
            raise UnsupportedBlock(f"gl_2 window {block} carries color {color} only")
        return PreBetheOperator(_gl2_operator(chain, m, tuple(tbar.get(color))), block)
    raise UnsupportedBlock(f"window {block} is not rank one")


# ---------------------------------------------------------------------------
# serialization


def vector_to_json(chain: ChainModel, vec: Mapping) -> dict:
    entries = []
    for b in sorted(vec):
        v = rat(vec[b])
        entries.append({"index": list(chain.decode(b)), "num": str(v.numerator), "den": str(v.denominator)})
    return {"algebra": chain.algebra.family.value, "n": chain.algebra.n, "L": chain.L, "entries": entries}


def vector_from_json(chain: ChainModel, data: Mapping) -> StateVector:
    from .sparse import encode

    out = StateVector()
    for e in data["entries"]:
        out[encode(e["index"], chain.N, chain.algebra.min_index)] = Rat(int(e["num"]), int(e["den"]))
    return out
