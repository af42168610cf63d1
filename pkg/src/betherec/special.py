"""Separately coded special cases of the recurrences.

Every function returns the right-hand side of one displayed relation as a
vector.  Sub-vectors B(t_II) come from the canonical constructor; the
coefficients are written out directly from set products so that agreement
with ``BetheBuilder.rhs_rectangular`` is a genuine cross-check.
"""

from __future__ import annotations

from .algebra import FamilyError
from .bethe import BetheBuilder, hat_block, upper_block
from .colored import ColoredSets, enumerate_partitions, profile_from
from .scalars import ONE, Rat, ZeroNormalization, rat, shifted, sigma, sp, theta
from .sparse import StateVector


def _finish(out: StateVector, den) -> StateVector:
    if den == 0:
        raise ZeroNormalization("vanishing normalization in a special-case formula")
    return out.scaled(ONE / den)


def _alpha(lam, s, values) -> Rat:
    out = ONE
    for t in values:
        out *= lam(s, t) / lam(s + 1, t)
    return out


def _need_gl(b: BetheBuilder) -> None:
    if not b.algebra.is_gl:
        raise FamilyError("formula is stated for gl-type monodromies")


def _need_o(b: BetheBuilder, min_n: int = 1) -> None:
    if not b.algebra.is_o or b.algebra.n < min_n:
        raise FamilyError(f"formula is stated for o_(2n+1) with n >= {min_n}")


# ---------------------------------------------------------------------------
# gl slices of the rectangular recurrence


def lemma_column(b: BetheBuilder, tbar: ColoredSets, l: int, z) -> StateVector:
    """Parameter z added to colors l..n-1, as a sum over T_{i,n}(z)."""
    _need_gl(b)
    n, c, lam = b.algebra.n, b.c, b.lam
    z = rat(z)
    zt = (z,)
    out = StateVector()
    for i in range(1, l + 1):
        prof = profile_from(tbar, {s: (1, 0) for s in range(i, l)})
        if not prof.feasible:
            continue
        for part in enumerate_partitions(tbar, prof):
            I, II = part.I, part.II
            coef = sp("g", zt, I.get(l - 1), c)
            for p in range(i, l):
                coef *= (
                    sp("gamma", I.get(p), II.get(p), c)
                    * sp("h", II.get(p + 1), I.get(p), c)
                    / sp("g", I.get(p), II.get(p - 1), c)
                )
            out.add_scaled(b.view.apply(i, n, z, b.build(part.rest())), coef)
    den = lam(n, z) * sp("g", zt, tbar.get(l - 1), c) * sp("h", tbar.get(l), zt, c) * sp("h", zt, tbar.get(n - 1), c)
    return _finish(out, den)


def lemma_row(b: BetheBuilder, tbar: ColoredSets, k: int, z) -> StateVector:
    """Parameter z added to colors 1..k-1, as a sum over T_{1,j}(z)."""
    _need_gl(b)
    n, c, lam = b.algebra.n, b.c, b.lam
    z = rat(z)
    zt = (z,)
    out = StateVector()
    for j in range(k, n + 1):
        prof = profile_from(tbar, {s: (0, 1) for s in range(k, j)})
        if not prof.feasible:
            continue
        for part in enumerate_partitions(tbar, prof):
            II, III = part.II, part.III
            coef = sp("g", III.get(k), zt, c)
            for p in range(k, j):
                coef *= (
                    _alpha(lam, p, III.get(p))
                    * sp("gamma", II.get(p), III.get(p), c)
                    * sp("h", III.get(p), II.get(p - 1), c)
                    / sp("g", II.get(p + 1), III.get(p), c)
                )
            out.add_scaled(b.view.apply(1, j, z, b.build(part.rest())), coef)
    den = lam(k, z) * sp("h", tbar.get(1), zt, c) * sp("h", zt, tbar.get(k - 1), c) * sp("g", tbar.get(k), zt, c)
    return _finish(out, den)


# ---------------------------------------------------------------------------
# o boundary slices


def _o_mu_boundary(b: BetheBuilder, tbar: ColoredSets, l: int, k: int, z: Rat) -> Rat:
    """Normalization of the two boundary windows, written out from its factors."""
    n, c, lam = b.algebra.n, b.c, b.lam
    zt = (z,)
    t0 = tbar.get(0)
    extra = sp("g", (shifted(z, 1, c),), t0, c) / sp("h", zt, t0, c)
    if (l, k) == (-n + 1, n):
        # psi_{-n+1} phi_n
        zs = shifted(z, n - 1, c)
        psi = sp("g", tbar.get(n - 1), (zs,), c) / sp("g", (zs,), tbar.get(n - 2), c)
        phi = sp("h", zt, tbar.get(n - 1), c)
        return sigma(-l - k) * lam(n, z) * psi * phi * extra
    if (l, k) == (-n, n - 1):
        zs = shifted(z, n, c)
        psi = sp("g", (), (zs,), c) / sp("g", (zs,), tbar.get(n - 1), c)
        phi = sp("h", zt, tbar.get(n - 2), c) * sp("g", tbar.get(n - 1), zt, c)
        return sigma(-l - k) * lam(n - 1, z) * psi * phi * extra
    raise ValueError(f"no boundary slice for window ({l}, {k})")


def boundary_upper(b: BetheBuilder, tbar: ColoredSets, z) -> StateVector:
    """Window (-n+1, n): sum over T_{i,n}(z) with i in {-n, -n+1}."""
    _need_o(b, 2)
    n, c = b.algebra.n, b.c
    z = rat(z)
    zs = (shifted(z, n - 1, c),)
    out = StateVector()
    for i in (-n, -n + 1):
        prof = profile_from(tbar, {n - 1: (theta(-i - n), 0)})
        if not prof.feasible:
            continue
        for part in enumerate_partitions(tbar, prof):
            I, II = part.I, part.II
            top_i, top_ii = I.get(n - 1), II.get(n - 1)
            coef = (
                sp("g", top_i, zs, c)
                * sp("gamma", top_i, top_ii, c)
                / sp("g", top_i, tbar.get(n - 2), c)
            )
            out.add_scaled(b.view.apply(i, n, z, b.build(part.rest())), coef)
    return _finish(out, _o_mu_boundary(b, tbar, -n + 1, n, z))


def boundary_lower(b: BetheBuilder, tbar: ColoredSets, z) -> StateVector:
    """Window (-n, n-1): sum over T_{-n,j}(z) with j in {n-1, n}."""
    _need_o(b, 2)
    n, c, lam = b.algebra.n, b.c, b.lam
    z = rat(z)
    zt = (z,)
    out = StateVector()
    for j in (n - 1, n):
        prof = profile_from(tbar, {n - 1: (0, theta(j - n))})
        if not prof.feasible:
            continue
        for part in enumerate_partitions(tbar, prof):
            II, III = part.II, part.III
            top_ii, top_iii = II.get(n - 1), III.get(n - 1)
            coef = (
                sp("g", top_iii, zt, c)
                * _alpha(lam, n - 1, top_iii)
                * sp("gamma", top_ii, top_iii, c)
                * sp("h", top_iii, tbar.get(n - 2), c)
            )
            out.add_scaled(b.view.apply(-n, j, z, b.build(part.rest())), coef)
    return _finish(out, _o_mu_boundary(b, tbar, -n, n - 1, z))


# ---------------------------------------------------------------------------
# o_3 relations


def o3_double(b: BetheBuilder, tbar: ColoredSets, z) -> StateVector:
    """z and z_0 both added to color 0 of o_3."""
    _need_o(b)
    if b.algebra.n != 1:
        raise FamilyError("o_3 relations need n = 1")
    z = rat(z)
    return b.view.apply(-1, 1, z, b.build(tbar)).scaled(Rat(-2) / b.lam(1, z))


def o3_add(b: BetheBuilder, tbar: ColoredSets, z) -> StateVector:
    """z added to color 0 of o_3."""
    _need_o(b)
    if b.algebra.n != 1:
        raise FamilyError("o_3 relations need n = 1")
    c = b.c
    z = rat(z)
    z0 = (shifted(z, 0, c),)
    t0 = tuple(tbar.get(0))
    out = b.view.apply(0, 1, z, b.build(tbar))
    for a in t0:
        rest = tuple(x for x in t0 if x != a)
        coef = sp("g", z0, (a,), c) * sp("frak_f", (a,), rest, c)
        out.add_scaled(b.view.apply(-1, 1, z, b.build(tbar.without(0, a))), -coef)
    return _finish(out, b.lam(1, z) * sp("frak_f", z0, t0, c))


def o3_add_shifted(b: BetheBuilder, tbar: ColoredSets, z) -> StateVector:
    """z_0 added to color 0 of o_3."""
    _need_o(b)
    if b.algebra.n != 1:
        raise FamilyError("o_3 relations need n = 1")
    c, lam = b.c, b.lam
    z = rat(z)
    t0 = tuple(tbar.get(0))
    out = b.view.apply(-1, 0, z, b.build(tbar)).scaled(-1)
    for a in t0:
        rest = tuple(x for x in t0 if x != a)
        coef = sp("g", (z,), (a,), c) * _alpha(lam, 0, (a,)) * sp("frak_f", rest, (a,), c)
        out.add_scaled(b.view.apply(-1, 1, z, b.build(tbar.without(0, a))), coef)
    return _finish(out, lam(0, z) * sp("frak_f", t0, (z,), c))


# ---------------------------------------------------------------------------
# top-color reductions of the o elementary relations


def top_color(b: BetheBuilder, tbar: ColoredSets, z) -> StateVector:
    """z added to color n-1 (n >= 2), as a sum over T_{i,n}(z)."""
    _need_o(b, 2)
    n, c, lam = b.algebra.n, b.c, b.lam
    z = rat(z)
    zt = (z,)
    out = StateVector()
    for i in range(-n, n):
        req = {}
        for s in b.algebra.colors:
            req[s] = (theta(s - i) + theta(-i - s - 1) if s < n - 1 else theta(-i - s - 1), 0)
        prof = profile_from(tbar, req)
        if not prof.feasible:
            continue
        for part in enumerate_partitions(tbar, prof):
            I, II = part.I, part.II
            coef = Rat(sigma(i + 1)) / (sp("g", zt, II.get(n - 2), c) * sp("h", II.get(n - 1), zt, c))
            coef *= sp("frak_f", I.get(0), II.get(0), c)
            for s in range(1, n):
                coef *= sp("gamma", I.get(s), II.get(s), c)
                coef *= sp("h", II.get(s), I.get(s - 1), c) / sp("g", I.get(s), II.get(s - 1), c)
            out.add_scaled(b.view.apply(i, n, z, b.build(part.rest())), coef)
    return _finish(out, lam(n, z) * sp("h", zt, tbar.get(n - 1), c))


def top_color_shifted(b: BetheBuilder, tbar: ColoredSets, z) -> StateVector:
    """z_{n-1} added to color n-1 (n >= 2), as a sum over T_{-n,j}(z)."""
    _need_o(b, 2)
    n, c, lam = b.algebra.n, b.c, b.lam
    z = rat(z)
    ztop = (shifted(z, n - 1, c),)
    zbelow = (shifted(z, n - 2, c),)
    out = StateVector()
    for j in range(-n + 1, n + 1):
        req = {}
        for s in b.algebra.colors:
            req[s] = (0, theta(s + j) + theta(j - s - 1) if s < n - 1 else theta(j - s - 1))
        prof = profile_from(tbar, req)
        if not prof.feasible:
            continue
        for part in enumerate_partitions(tbar, prof):
            II, III = part.II, part.III
            coef = Rat(-1 if j == n else 1) * sigma(j)
            coef /= sp("h", ztop, II.get(n - 1), c) * sp("g", zbelow, II.get(n - 2), c)
            coef *= _alpha(lam, 0, III.get(0)) * sp("frak_f", II.get(0), III.get(0), c)
            for s in range(1, n):
                coef *= _alpha(lam, s, III.get(s)) * sp("gamma", II.get(s), III.get(s), c)
                coef *= sp("h", III.get(s), II.get(s - 1), c) / sp("g", II.get(s), III.get(s - 1), c)
            out.add_scaled(b.view.apply(-n, j, z, b.build(part.rest())), coef)
    return _finish(out, lam(-n + 1, z) * sp("h", tbar.get(n - 1), ztop, c))


# ---------------------------------------------------------------------------
# reduction to gl_n when color 0 is empty


def _upper_sets(tbar: ColoredSets, gl_builder: BetheBuilder) -> ColoredSets:
    return ColoredSets(gl_builder.algebra, {s: tbar.get(s) for s in range(1, tbar.algebra.n)})


def gl_reduction_rhs(b: BetheBuilder, tbar: ColoredSets, l: int, k: int, z) -> StateVector:
    """The o-vector with z added to colors l..k-1 (0 < l < k <= n, color 0 empty),
    as a gl-type sum over the upper block T_{i,j}, 1 <= i, j <= n."""
    _need_o(b, 2)
    if tbar.get(0):
        raise ValueError("gl reduction needs an empty color 0")
    n, c, lam = b.algebra.n, b.c, b.lam
    if not 0 < l < k <= n:
        raise IndexError(f"need 0 < l < k <= n, got {l}, {k}")
    z = rat(z)
    zt = (z,)
    out = StateVector()
    for i in range(1, l + 1):
        for j in range(k, n + 1):
            req = {s: (1, 0) for s in range(i, l)}
            req.update({s: (0, 1) for s in range(k, j)})
            prof = profile_from(tbar, req)
            if not prof.feasible:
                continue
            for part in enumerate_partitions(tbar, prof):
                I, II, III = part.I, part.II, part.III
                coef = ONE / (sp("g", zt, II.get(l - 1), c) * sp("g", II.get(k), zt, c))
                for s in range(i, l):
                    coef *= (
                        sp("gamma", I.get(s), II.get(s), c)
                        * sp("h", II.get(s + 1), I.get(s), c)
                        / sp("g", I.get(s), II.get(s - 1), c)
                    )
                for s in range(k, j):
                    coef *= (
                        _alpha(lam, s, III.get(s))
                        * sp("gamma", II.get(s), III.get(s), c)
                        * sp("h", III.get(s), II.get(s - 1), c)
                        / sp("g", II.get(s + 1), III.get(s), c)
                    )
                # T_{i,j} with 1 <= i, j <= n is the upper block entry itself
                out.add_scaled(b.view.apply(i, j, z, b.build(part.rest())), coef)
    den = lam(k, z) * sp("h", tbar.get(l), zt, c) * sp("h", zt, tbar.get(k - 1), c)
    return _finish(out, den)


def upper_block_vector(chain, tbar: ColoredSets, builder: BetheBuilder | None = None) -> StateVector:
    """The gl_n constructor run on the upper block, for an o-type collection with empty color 0."""
    gb = builder or BetheBuilder(upper_block(chain))
    return gb.build(_upper_sets(tbar, gb))


def hat_sets(tbar: ColoredSets, c, gl_algebra) -> ColoredSets:
    """Color s' of the hat vector holds t^{n-s'} - c s' + c kappa."""
    alg = tbar.algebra
    n, kap = alg.n, alg.kappa
    return ColoredSets(gl_algebra, {sp_: [x - c * sp_ + c * kap for x in tbar.get(n - sp_)] for sp_ in range(1, n)})


def hat_sign(tbar: ColoredSets) -> int:
    n = tbar.algebra.n
    r = [len(tbar.get(s)) for s in range(n)]
    e = sum(r[s] * r[s + 1] for s in range(1, n - 1)) + sum(r[1:])
    return -1 if e % 2 else 1


def hat_vector(chain, tbar: ColoredSets, set_shift_sign: int = 1) -> StateVector:
    """gl constructor on hat T_{i,j}(z) = T_{i-n-1, j-n-1}(z), at the hat sets.

    ``set_shift_sign = -1`` evaluates the sets with -c kappa instead (control).
    """
    alg = chain.algebra
    n = alg.n
    gb = BetheBuilder(hat_block(chain))
    if set_shift_sign == 1:
        sets = hat_sets(tbar, chain.c, gb.algebra)
    else:
        sets = ColoredSets(
            gb.algebra,
            {s: [x - chain.c * s - chain.c * alg.kappa for x in tbar.get(n - s)] for s in range(1, n)},
        )
    return gb.build(sets)
