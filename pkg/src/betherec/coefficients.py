"""Coefficient functions of the recurrence relations.

``lam`` arguments are eigenvalue evaluators ``lam(i, u) -> Rat``.  Set
arguments are objects with ``.get(color) -> tuple`` (ColoredSets or a
PartitionTriple part view).
"""

from __future__ import annotations

from typing import Callable

from .algebra import AlgebraSpec
from .colored import ColoredSets, PartitionTriple
from .scalars import ONE, PoleError, Rat, ZeroNormalization, gamma_kind, shifted, sigma, sp

Lam = Callable[[int, Rat], Rat]


def alpha(lam: Lam, s: int, values) -> Rat:
    """alpha_s over a set: prod lam_s(t)/lam_{s+1}(t)."""
    out = ONE
    for t in values:
        den = lam(s + 1, t)
        if den == 0:
            raise PoleError(f"lambda_{s + 1}({t}) = 0 in alpha_{s}", ("alpha", s, t))
        out *= lam(s, t) / den
    return out


def omega(side: str, s: int, t_a, t_b, t_prev, t_next, algebra: AlgebraSpec, c) -> Rat:
    """Omega^R(t_I, t_II | prev, next) for side 'R'; Omega^L(t_II, t_I | prev, next) for 'L'."""
    gk = gamma_kind(s, algebra)
    if side == "R":
        return sp(gk, t_a, t_b, c) * sp("h", t_next, t_a, c) * sp("g_inv", t_a, t_prev, c)
    if side == "L":
        return sp(gk, t_a, t_b, c) * sp("h", t_b, t_prev, c) * sp("g_inv", t_next, t_b, c)
    raise ValueError(f"side must be 'L' or 'R', got {side!r}")


def psi(l: int, z, sets, algebra: AlgebraSpec, c) -> Rat:
    n = algebra.n
    z = Rat(z)
    if algebra.is_gl:
        if not 1 <= l < n:
            raise IndexError(f"psi_{l} undefined for gl{n}")
        return sp("g", (z,), sets.get(l - 1), c) * sp("h", sets.get(l), (z,), c)
    if 0 < l < n:
        return sp("g", (z,), sets.get(l - 1), c) * sp("h", sets.get(l), (z,), c)
    if l == 0:
        return sp("g", (shifted(z, 0, c),), sets.get(0), c)
    if -n <= l < 0:
        zs = shifted(z, -l, c)
        return sp("g", sets.get(-l), (zs,), c) * sp("g_inv", (zs,), sets.get(-l - 1), c)
    raise IndexError(f"psi_{l} undefined for o{2 * n + 1}")


def phi(k: int, z, sets, algebra: AlgebraSpec, c) -> Rat:
    n = algebra.n
    z = Rat(z)
    if algebra.is_gl:
        if not 1 < k <= n:
            raise IndexError(f"phi_{k} undefined for gl{n}")
        return sp("h", (z,), sets.get(k - 1), c) * sp("g", sets.get(k), (z,), c)
    if 0 < k <= n:
        return sp("h", (z,), sets.get(k - 1), c) * sp("g", sets.get(k), (z,), c)
    if k == 0:
        return sp("g", (z,), sets.get(0), c)
    if -n < k < 0:
        zs = shifted(z, -k - 1, c)
        return sp("g", (zs,), sets.get(-k - 1), c) * sp("g_inv", sets.get(-k), (zs,), c)
    raise IndexError(f"phi_{k} undefined for o{2 * n + 1}")


def psi_phi(which: str, index: int, z, sets, algebra: AlgebraSpec, c) -> Rat:
    if which == "psi":
        return psi(index, z, sets, algebra, c)
    if which == "phi":
        return phi(index, z, sets, algebra, c)
    raise ValueError(f"which must be 'psi' or 'phi', got {which!r}")


def mu_factors(l: int, k: int, z, tbar: ColoredSets, lam: Lam, algebra: AlgebraSpec, c) -> dict:
    """The normalization factor split into sign, kappa and the remaining pieces."""
    if not l < k:
        raise IndexError(f"need l < k, got {l}, {k}")
    z = Rat(z)
    parts = {
        "sign": 1,
        "kappa": ONE,
        "lambda": lam(k, z),
        "psi": psi(l, z, tbar, algebra, c),
        "phi": phi(k, z, tbar, algebra, c),
        "extra": ONE,
    }
    if algebra.is_o:
        parts["sign"] = sigma(-l - k)
        if k == -l:
            parts["kappa"] = Rat(k) - Rat(1, 2)
        if l < 0 < k:
            t0 = tbar.get(0)
            parts["extra"] = sp("g", (shifted(z, 1, c),), t0, c) * sp("h_inv", (z,), t0, c)
    return parts


def mu(l: int, k: int, z, tbar: ColoredSets, lam: Lam, algebra: AlgebraSpec, c) -> Rat:
    p = mu_factors(l, k, z, tbar, lam, algebra, c)
    value = p["sign"] * p["kappa"] * p["lambda"] * p["psi"] * p["phi"] * p["extra"]
    if value == 0:
        raise ZeroNormalization(f"mu^{k}_{l} vanishes at z={z}")
    return value


def gamma_right(a: int, b: int, left, right, algebra: AlgebraSpec, c) -> Rat:
    """prod_{s=a}^{b-1} Omega^R_s(left^s, right^s | right^{s-1}, right^{s+1})."""
    out = ONE
    for s in range(a, b):
        ls = left.get(s)
        if ls:
            out *= omega("R", s, ls, right.get(s), right.get(s - 1), right.get(s + 1), algebra, c)
    return out


def gamma_left(a: int, b: int, left, right, lam: Lam, algebra: AlgebraSpec, c) -> Rat:
    """prod_{s=a}^{b-1} alpha_s(right^s) Omega^L_s(left^s, right^s | left^{s-1}, left^{s+1})."""
    out = ONE
    for s in range(a, b):
        rs = right.get(s)
        if rs:
            out *= alpha(lam, s, rs) * omega("L", s, left.get(s), rs, left.get(s - 1), left.get(s + 1), algebra, c)
    return out


def xi_coefficient(algebra: AlgebraSpec, l: int, k: int, i: int, j: int, z, part: PartitionTriple, lam: Lam, c) -> Rat:
    """Xi^{l,k}_{i,j}(z; t_I, t_II, t_III) without the o-type sign factor."""
    z = Rat(z)
    I, II, III = part.I, part.II, part.III
    if algebra.is_gl:
        out = sp("g", (z,), I.get(l - 1), c) * sp("g", III.get(k), (z,), c)
        for s in range(i, l):
            out *= omega("R", s, I.get(s), II.get(s), II.get(s - 1), II.get(s + 1), algebra, c)
        for s in range(k, j):
            out *= alpha(lam, s, III.get(s)) * omega("L", s, II.get(s), III.get(s), II.get(s - 1), II.get(s + 1), algebra, c)
        return out
    n = algebra.n
    out = psi(l, z, I, algebra, c) * phi(k, z, III, algebra, c)
    out *= gamma_right(0, n, I, part.II_III, algebra, c)
    out *= gamma_left(0, n, II, III, lam, algebra, c)
    return out


def xi_sign(algebra: AlgebraSpec, l: int, k: int, i: int, j: int) -> int:
    if algebra.is_gl:
        return 1
    out = 1
    if l >= 0:
        out *= sigma(-i)
    if k <= 0:
        out *= sigma(j)
    return out


def rectangular_windows(algebra: AlgebraSpec) -> list[tuple[int, int]]:
    idx = range(1, algebra.n + 1) if algebra.is_gl else range(-algebra.n, algebra.n + 1)
    return [(l, k) for l in idx for k in idx if l < k]


def z_extension(algebra: AlgebraSpec, tbar: ColoredSets, l: int, k: int, z, c) -> ColoredSets:
    """The collection produced by the Z^k_l operator."""
    z = Rat(z)
    out = tbar
    if algebra.is_gl:
        for s in range(l, k):
            out = out.with_added(s, z)
        return out
    u_colors: range = range(0)
    v_colors: range = range(0)
    w_colors: range = range(0)
    if l >= 0:
        u_colors = range(l, k)
    elif k <= 0:
        v_colors = range(-k, -l)
    elif k >= -l:
        w_colors = range(0, -l)
        u_colors = range(-l, k)
    else:
        w_colors = range(0, k)
        v_colors = range(k, -l)
    for s in w_colors:
        out = out.with_added(s, z).with_added(s, shifted(z, s, c))
    for s in u_colors:
        out = out.with_added(s, z)
    for s in v_colors:
        out = out.with_added(s, shifted(z, s, c))
    return out
