"""Exact checks of the recurrences, special cases, on-shell property and embeddings.

Every check compares two exact objects and produces a ``CheckReport``.  A
report's config carries ``nonzero``: whether the compared vector was nonzero,
so that callers can tell genuine agreements from 0 = 0.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import special
from .algebra import AlgebraSpec, FamilyError
from .bethe import BetheBuilder, build_pre_bethe_operator
from .chain import (
    ChainModel,
    ConfigError,
    ZeroModeTable,
    cartan_and_color,
    check_cartan,
    check_rtt,
    check_yang_baxter,
    check_zero_mode_commutators,
    zero_modes,
)
from .coefficients import alpha, mu, omega, rectangular_windows, z_extension
from .colored import ColoredSets, enumerate_partitions, profile_from
from .report import CheckReport, combine
from .sampling import Sampler, SamplingExhausted, with_retries
from .scalars import ONE, ZERO, PoleError, Rat, rat, rat_str, shifted, sp
from .sparse import OperatorMatrix, StateVector, format_witness


class DegenerateRoots(PoleError):
    """Solved twists are zero or undefined for the chosen roots."""


# ---------------------------------------------------------------------------
# helpers


def vector_witness(chain: ChainModel, lhs: Mapping, rhs: Mapping) -> dict | None:
    """First differing coefficient of two vectors, or None if they are equal."""
    diff = StateVector(lhs).first_difference(rhs)
    if diff is None:
        return None
    idx, a, b = diff
    return format_witness(idx, a, b, chain.N, chain.L, chain.algebra.min_index)


def compare_vectors(check: str, chain: ChainModel, config: dict, lhs: Mapping, rhs: Mapping, start=None) -> CheckReport:
    cfg = chain.describe() | config | {"nonzero": bool(lhs) or bool(rhs)}
    return CheckReport.make(check, cfg, vector_witness(chain, lhs, rhs), start)


def _sets_json(tbar: ColoredSets) -> dict:
    return tbar.to_json()


def _is_nonzero(report: CheckReport) -> bool:
    return bool(report.config.get("nonzero"))


def count_nonzero(reports: Iterable[CheckReport]) -> int:
    return sum(1 for r in reports if r.passed and _is_nonzero(r))


def random_twists(algebra: AlgebraSpec, sampler: Sampler) -> dict[int, Rat]:
    """Generic twists; o-type ones respect chi_0 = 1 and chi_i chi_{-i} = 1."""
    if algebra.is_gl:
        return {i: sampler.ratio() for i in algebra.indices}
    chi = {0: ONE}
    for i in range(1, algebra.n + 1):
        x = sampler.ratio()
        chi[i], chi[-i] = x, ONE / x
    return chi


def sample_chain(
    algebra: AlgebraSpec,
    L: int,
    sampler: Sampler,
    c=None,
    twists: str = "random",
    sites: Iterable[str] | None = None,
    cap: int = 100,
) -> ChainModel:
    """Seeded chain with distinct inhomogeneities; resamples on invalid configurations."""
    last = None
    for _ in range(cap):
        cc = rat(c) if c is not None else sampler.ratio(5)
        xi = sampler.distinct(L)
        chi = random_twists(algebra, sampler) if twists == "random" else None
        try:
            return ChainModel(algebra, xi, chi, cc, sites=sites)
        except ConfigError as exc:
            last = exc
    raise SamplingExhausted(f"no valid chain after {cap} attempts: {last}")


def sample_sets(algebra: AlgebraSpec, cards: Mapping[int, int], sampler: Sampler) -> ColoredSets:
    """Distinct parameters; all values across colors are distinct as well."""
    total = sum(cards.values())
    values = iter(sampler.distinct(total))
    return ColoredSets(algebra, {s: [next(values) for _ in range(k)] for s, k in cards.items() if k})


# ---------------------------------------------------------------------------
# structure


def verify_structure(chain: ChainModel, points: list[tuple[Rat, Rat]]) -> list[CheckReport]:
    """RTT at every point pair of the chain."""
    return [check_rtt(chain, u, v) for u, v in points]


def verify_yang_baxter(algebra: AlgebraSpec, triples: list[tuple[Rat, Rat, Rat]], c) -> list[CheckReport]:
    return [check_yang_baxter(algebra, u, v, w, c) for u, v, w in triples]


# ---------------------------------------------------------------------------
# rectangular recurrence


def verify_rectangular(
    chain: ChainModel,
    tbar: ColoredSets,
    l: int,
    k: int,
    z,
    tamper: str | None = None,
    builder: BetheBuilder | None = None,
) -> CheckReport:
    """B(Z^k_l t) from the constructor against the rectangular right-hand side."""
    start = time.perf_counter()
    b = builder or BetheBuilder(chain)
    z = rat(z)
    lhs = b.lhs_rectangular(tbar, l, k, z)
    rhs = b.rhs_rectangular(tbar, l, k, z, tamper=tamper)
    config = {"l": l, "k": k, "z": rat_str(z), "sets": _sets_json(tbar)}
    if tamper:
        config["tamper"] = tamper
    return compare_vectors("rectangular", chain, config, lhs, rhs, start)


# ---------------------------------------------------------------------------
# separately coded slices


def _slice_reports(chain, b, tbar, z, name, l, k, special_vec) -> list[CheckReport]:
    lhs = b.lhs_rectangular(tbar, l, k, z)
    rhs = b.rhs_rectangular(tbar, l, k, z)
    config = {"slice": name, "l": l, "k": k, "z": rat_str(z), "sets": _sets_json(tbar)}
    return [
        compare_vectors("slice-vs-constructor", chain, config, special_vec, lhs),
        compare_vectors("slice-vs-general", chain, config, special_vec, rhs),
    ]


def verify_lemma_slices(chain: ChainModel, tbar: ColoredSets, z, builder: BetheBuilder | None = None) -> CheckReport:
    """Column/row slices (gl) or boundary slices (o), each against constructor and general formula."""
    start = time.perf_counter()
    b = builder or BetheBuilder(chain)
    alg = chain.algebra
    z = rat(z)
    n = alg.n
    subs: list[CheckReport] = []
    if alg.is_gl:
        for l in range(1, n):
            subs += _slice_reports(chain, b, tbar, z, "column", l, n, special.lemma_column(b, tbar, l, z))
        for k in range(2, n + 1):
            subs += _slice_reports(chain, b, tbar, z, "row", 1, k, special.lemma_row(b, tbar, k, z))
    else:
        if n < 2:
            raise FamilyError("boundary slices need n >= 2")
        subs += _slice_reports(chain, b, tbar, z, "boundary-upper", -n + 1, n, special.boundary_upper(b, tbar, z))
        subs += _slice_reports(chain, b, tbar, z, "boundary-lower", -n, n - 1, special.boundary_lower(b, tbar, z))
    config = chain.describe() | {"z": rat_str(z), "sets": _sets_json(tbar), "nonzero": any(_is_nonzero(r) for r in subs)}
    out = combine("lemma-slices", config, subs, start)
    out.details["subreports"] = subs
    return out


def verify_special_cases_o(chain: ChainModel, tbar: ColoredSets, z, builder: BetheBuilder | None = None) -> CheckReport:
    """Elementary classes, shifted two-route check and the displayed o special cases."""
    start = time.perf_counter()
    alg = chain.algebra
    if not alg.is_o:
        raise FamilyError("special cases are stated for o_(2n+1)")
    b = builder or BetheBuilder(chain)
    c, n = chain.c, alg.n
    z = rat(z)
    base = {"z": rat_str(z), "sets": _sets_json(tbar)}
    subs: list[CheckReport] = []
    for l in range(n):
        # u-type class: z added to color l
        target = b.build(tbar.with_added(l, z))
        subs.append(compare_vectors("class-u", chain, base | {"color": l}, target, b.rhs_rectangular(tbar, l, l + 1, z)))
        # v-type class: z_l added to color l, by three routes
        target = b.build(tbar.with_added(l, shifted(z, l, c)))
        cfg = base | {"color": l}
        subs.append(compare_vectors("class-v", chain, cfg, target, b.rhs_rectangular(tbar, -l - 1, -l, z)))
        subs.append(compare_vectors("shifted-two-route", chain, cfg, b.add_shifted(tbar, l, z), target))
    if n == 1:
        z0 = shifted(z, 0, c)
        subs.append(compare_vectors("o3-double", chain, base, special.o3_double(b, tbar, z), b.build(tbar.with_added(0, z).with_added(0, z0))))
        subs.append(compare_vectors("o3-add", chain, base, special.o3_add(b, tbar, z), b.build(tbar.with_added(0, z))))
        subs.append(compare_vectors("o3-add-shifted", chain, base, special.o3_add_shifted(b, tbar, z), b.build(tbar.with_added(0, z0))))
    else:
        top = b.build(tbar.with_added(n - 1, z))
        subs.append(compare_vectors("top-color", chain, base, special.top_color(b, tbar, z), top))
        top_s = b.build(tbar.with_added(n - 1, shifted(z, n - 1, c)))
        subs.append(compare_vectors("top-color-shifted", chain, base, special.top_color_shifted(b, tbar, z), top_s))
    config = chain.describe() | base | {"nonzero": any(_is_nonzero(r) for r in subs)}
    out = combine("special-o", config, subs, start)
    out.details["subreports"] = subs
    return out


# ---------------------------------------------------------------------------
# zero modes, grading and normalization anchors


def zero_mode_action(builder: BetheBuilder, modes_chi: Mapping[int, Rat], tbar: ColoredSets, l: int) -> StateVector:
    """Partition sum for T_{l+1,l}[0] B(t): only |t^l_I| = 1 terms."""
    b, alg, c = builder, builder.algebra, builder.c
    out = StateVector()
    prev, nxt = tbar.get(l - 1), tbar.get(l + 1)
    prof = profile_from(tbar, {l: (1, 0)})
    if not prof.feasible:
        return out
    for part in enumerate_partitions(tbar, prof):
        I, II = part.I.get(l), part.II.get(l)
        coef = modes_chi[l + 1] * alpha(b.lam, l, I) * omega("L", l, II, I, prev, nxt, alg, c)
        coef -= modes_chi[l] * omega("R", l, I, II, prev, nxt, alg, c)
        out.add_scaled(b.build(part.rest()), coef)
    return out


def verify_zero_mode_action(
    chain: ChainModel, tbar: ColoredSets, builder: BetheBuilder | None = None, modes: ZeroModeTable | None = None
) -> CheckReport:
    start = time.perf_counter()
    b = builder or BetheBuilder(chain)
    modes = modes or zero_modes(chain)
    v = b.build(tbar)
    subs = []
    for l in chain.algebra.colors:
        lhs = modes[(l + 1, l)].apply(v)
        rhs = zero_mode_action(b, chain.chi, tbar, l)
        subs.append(compare_vectors("zero-mode-action-l", chain, {"l": l, "sets": _sets_json(tbar)}, lhs, rhs))
    config = chain.describe() | {"sets": _sets_json(tbar), "nonzero": any(_is_nonzero(r) for r in subs)}
    return combine("zero-mode-action", config, subs, start)


def verify_color_grading(
    chain: ChainModel, tbar: ColoredSets, builder: BetheBuilder | None = None, modes: ZeroModeTable | None = None
) -> CheckReport:
    """t_s B(t) = |t^s| B(t) for every color."""
    start = time.perf_counter()
    b = builder or BetheBuilder(chain)
    _, t_ops = cartan_and_color(chain, modes)
    v = b.build(tbar)
    witness = None
    for s in chain.algebra.colors:
        witness = vector_witness(chain, t_ops[s].apply(v), v.scaled(len(tbar.get(s))))
        if witness:
            witness["color"] = s
            break
    config = chain.describe() | {"sets": _sets_json(tbar), "nonzero": bool(v)}
    return CheckReport.make("color-grading", config, witness, start)


def verify_normalization_anchor(chain: ChainModel, tbar: ColoredSets, z, builder: BetheBuilder | None = None) -> CheckReport:
    """T_{1,n}(z) B = mu B(u) (gl) and T_{-n,n}(z) B = mu B(w) (o), built by elementary additions."""
    start = time.perf_counter()
    b = builder or BetheBuilder(chain)
    alg = chain.algebra
    z = rat(z)
    lo, hi = (1, alg.n) if alg.is_gl else (-alg.n, alg.n)
    m = mu(lo, hi, z, tbar, b.lam, alg, chain.c)
    lhs = chain.apply(lo, hi, z, b.build(tbar))
    rhs = b.build(z_extension(alg, tbar, lo, hi, z, chain.c)).scaled(m)
    return compare_vectors("normalization-anchor", chain, {"z": rat_str(z), "sets": _sets_json(tbar)}, lhs, rhs, start)


def verify_order_independence(chain: ChainModel, tbar: ColoredSets) -> CheckReport:
    """Building through every insertion order of the last two parameters gives one vector."""
    start = time.perf_counter()
    ref = BetheBuilder(chain).build(tbar)
    witness = None
    items = [(s, x) for s in chain.algebra.colors for x in tbar.get(s)]
    for s, x in items:
        b = BetheBuilder(chain)
        rest = tbar.without(s, x)
        vec = b.add_parameter(rest, s, x)
        witness = vector_witness(chain, vec, ref)
        if witness:
            witness["last"] = [s, rat_str(x)]
            break
    config = chain.describe() | {"sets": _sets_json(tbar), "nonzero": bool(ref)}
    return CheckReport.make("order-independence", config, witness, start)


# ---------------------------------------------------------------------------
# on-shell


@dataclass
class OnShellSolution:
    roots: ColoredSets
    chi: dict[int, Rat]
    residuals: dict[int, Rat] = field(default_factory=dict)
    chain: ChainModel | None = None

    def to_json(self) -> dict:
        return {
            "roots": self.roots.to_json(),
            "chi": {str(i): rat_str(v) for i, v in sorted(self.chi.items())},
            "residuals": {str(s): rat_str(v) for s, v in sorted(self.residuals.items())},
        }


def _root(roots: ColoredSets, s: int) -> tuple:
    return tuple(roots.get(s)) if roots.algebra.has_color(s) else ()


def bethe_residuals(chain: ChainModel, roots: ColoredSets) -> dict[int, Rat]:
    """LHS - RHS of every Bethe equation, one root per color."""
    alg, c = chain.algebra, chain.c
    out = {}
    for s in alg.colors:
        (t,) = _root(roots, s)
        rhs = sp("f", _root(roots, s + 1), (t,), c) / sp("f", (t,), _root(roots, s - 1), c)
        out[s] = chain.alpha(s, t) - rhs
    return out


def solve_on_shell_twists(chain: ChainModel, roots: ColoredSets) -> OnShellSolution:
    """Twists making the chosen roots (one per color) satisfy the Bethe equations."""
    alg, c = chain.algebra, chain.c
    if any(len(roots.get(s)) != 1 for s in alg.colors):
        raise ValueError("twist solving needs exactly one root per color")
    unit = ChainModel(alg, chain.xi, None, c, sites=chain.sites)

    def ratio(s: int) -> Rat:
        """chi_s / chi_{s+1} forced by the s-th equation."""
        (t,) = _root(roots, s)
        try:
            rhs = sp("f", _root(roots, s + 1), (t,), c) / sp("f", (t,), _root(roots, s - 1), c)
            value = rhs * unit.lam(s + 1, t) / unit.lam(s, t)
        except ZeroDivisionError as exc:
            raise DegenerateRoots(f"color {s}: undefined twist ratio") from exc
        if value == 0:
            raise DegenerateRoots(f"color {s}: vanishing twist ratio")
        return value

    chi: dict[int, Rat] = {}
    if alg.is_gl:
        chi[alg.n] = ONE
        for s in range(alg.n - 1, 0, -1):
            chi[s] = chi[s + 1] * ratio(s)
    else:
        chi[0] = ONE
        for s in range(alg.n):
            chi[s + 1] = chi[s] / ratio(s)
        for i in range(1, alg.n + 1):
            chi[-i] = ONE / chi[i]
    solved = chain.with_chi(chi)
    residuals = bethe_residuals(solved, roots)
    return OnShellSolution(roots, chi, residuals, solved)


def transfer_eigenvalue(chain: ChainModel, roots: ColoredSets, z) -> Rat:
    """tau(z; t) with t^0 = t^n = empty (gl) or t^n = empty (o)."""
    alg, c = chain.algebra, chain.c
    z = rat(z)
    zt = (z,)
    n = alg.n
    if alg.is_gl:
        return sum(
            (chain.lam(s, z) * sp("f", _root(roots, s), zt, c) * sp("f", zt, _root(roots, s - 1), c) for s in range(1, n + 1)),
            ZERO,
        )
    t0 = _root(roots, 0)
    out = chain.lam(0, z) * sp("f", t0, (shifted(z, 0, c),), c) * sp("f", zt, t0, c)
    for s in range(1, n + 1):
        ts, tp = _root(roots, s), _root(roots, s - 1)
        out += chain.lam(s, z) * sp("f", ts, zt, c) * sp("f", zt, tp, c)
        out += chain.lam(-s, z) * sp("f", tp, (shifted(z, s - 1, c),), c) * sp("f", (shifted(z, s, c),), ts, c)
    return out


def verify_on_shell(solution: OnShellSolution, points: Iterable) -> CheckReport:
    start = time.perf_counter()
    chain, roots = solution.chain, solution.roots
    witness = None
    if any(solution.residuals.values()):
        witness = {"reason": "nonzero Bethe residual", "residuals": solution.to_json()["residuals"]}
    v = BetheBuilder(chain).build(roots)
    pts = [rat(z) for z in points]
    if witness is None:
        for z in pts:
            lhs = chain.transfer(z).apply(v)
            witness = vector_witness(chain, lhs, v.scaled(transfer_eigenvalue(chain, roots, z)))
            if witness:
                witness["z"] = rat_str(z)
                break
    config = chain.describe() | {
        "roots": roots.to_json(),
        "points": [rat_str(z) for z in pts],
        "nonzero": bool(v),
    }
    return CheckReport.make("on-shell", config, witness, start)


# ---------------------------------------------------------------------------
# embeddings


def _gl_blocks(alg: AlgebraSpec, a: int) -> list[tuple[int, int]]:
    return [(1, a), (a + 1, alg.n)]


def _o_blocks(alg: AlgebraSpec, a: int) -> list[tuple[int, int]]:
    return [(-a, a), (a + 1, alg.n), (-alg.n, -a - 1)]


def embedding_blocks(alg: AlgebraSpec, a: int) -> list[tuple[int, int]]:
    """Diagonal index windows of the embedding at color a."""
    return _gl_blocks(alg, a) if alg.is_gl else _o_blocks(alg, a)


def _in_block(i: int, j: int, blocks) -> bool:
    return any(lo <= i <= hi and lo <= j <= hi for lo, hi in blocks)


def window_accesses(chain: ChainModel, tbar: ColoredSets, a: int, z) -> dict:
    """Entries T_{i,j} touched by the constructor and by every rectangular relation inside one block."""
    alg = chain.algebra
    blocks = embedding_blocks(alg, a)
    touched: dict[tuple[int, int], set] = {}
    z = rat(z)
    with chain.recording() as rec:
        BetheBuilder(chain).build(tbar)
    touched[("build",)] = set(rec)
    for lo, hi in blocks:
        for l, k in rectangular_windows(alg):
            if lo <= l < k <= hi:
                b = BetheBuilder(chain)
                with chain.recording() as rec:
                    b.lhs_rectangular(tbar, l, k, z)
                    b.rhs_rectangular(tbar, l, k, z)
                touched[(l, k)] = set(rec)
    return touched


def verify_window_confinement(chain: ChainModel, tbar: ColoredSets, a: int, z) -> CheckReport:
    """No T_{i,j} outside the diagonal blocks is referenced when t^a is empty."""
    start = time.perf_counter()
    blocks = embedding_blocks(chain.algebra, a)
    touched = window_accesses(chain, tbar, a, z)
    outside = sorted({ij for acc in touched.values() for ij in acc if not _in_block(*ij, blocks)})
    total = sum(len(acc) for acc in touched.values())
    witness = {"outside": [list(ij) for ij in outside]} if outside else None
    config = chain.describe() | {
        "a": a,
        "z": rat_str(rat(z)),
        "sets": _sets_json(tbar),
        "blocks": [list(bk) for bk in blocks],
        "relations": len(touched),
        "nonzero": total > 0,
    }
    return CheckReport.make("window-confinement", config, witness, start)


def _block_operator(chain: ChainModel, tbar: ColoredSets, colors: range, window: tuple[int, ...] | None):
    """Pre-Bethe operator of the colors in one block, or None when that block carries nothing."""
    sub = ColoredSets(chain.algebra, {s: tbar.get(s) for s in colors if tbar.get(s)})
    if sub.is_empty():
        return None
    if window is None:
        raise FamilyError("block is not rank one")
    return build_pre_bethe_operator(chain, sub, window)


def _product_report(check: str, chain: ChainModel, tbar: ColoredSets, a: int, ops: list, start) -> CheckReport:
    vac = chain.vacuum
    target = BetheBuilder(chain).build(tbar)
    subs = []
    orders = [ops, list(reversed(ops))] if len(ops) > 1 else [ops]
    for order_index, order in enumerate(orders):
        vec = vac
        for op in reversed(order):
            vec = op.apply(vec)
        cfg = {"a": a, "order": order_index, "sets": _sets_json(tbar)}
        subs.append(compare_vectors(check + "-order", chain, cfg, vec, target))
    config = chain.describe() | {"a": a, "sets": _sets_json(tbar), "nonzero": bool(target)}
    return combine(check, config, subs, start)


def verify_embedding_gl(chain: ChainModel, tbar: ColoredSets, a: int, z=None) -> list[CheckReport]:
    """Product of the two block pre-Bethe operators on |0>, both orders; plus window confinement."""
    start = time.perf_counter()
    alg = chain.algebra
    if not alg.is_gl:
        raise FamilyError("gl embedding needs a gl chain")
    if tbar.get(a):
        raise ValueError(f"embedding at color {a} needs t^{a} empty")
    n = alg.n
    low_window = (1, 2) if a == 2 else None
    high_window = (a + 1, a + 2) if n - a == 2 else None
    reports = []
    try:
        ops = [
            op
            for op in (
                _block_operator(chain, tbar, range(1, a), low_window),
                _block_operator(chain, tbar, range(a + 1, n), high_window),
            )
            if op is not None
        ]
    except FamilyError:
        ops = None
    if ops is not None:
        reports.append(_product_report("embedding-gl-product", chain, tbar, a, ops, start))
    if z is not None:
        reports.append(verify_window_confinement(chain, tbar, a, z))
    return reports


def verify_embedding_o(chain: ChainModel, tbar: ColoredSets, a: int, z=None) -> list[CheckReport]:
    """o_3 operator on the middle block times gl_2 operator on the upper block; plus window confinement."""
    start = time.perf_counter()
    alg = chain.algebra
    if not alg.is_o:
        raise FamilyError("o embedding needs an o chain")
    if a < 1 or tbar.get(a):
        raise ValueError(f"embedding at color {a} needs a >= 1 and t^{a} empty")
    n = alg.n
    low_window = (-1, 0, 1) if a == 1 else None
    high_window = (a + 1, a + 2) if n - a == 2 else None
    reports = []
    try:
        ops = [
            op
            for op in (
                _block_operator(chain, tbar, range(0, a), low_window),
                _block_operator(chain, tbar, range(a + 1, n), high_window),
            )
            if op is not None
        ]
    except FamilyError:
        ops = None
    if ops is not None:
        # the o_3 factor acts last
        reports.append(_product_report("embedding-o-product", chain, tbar, a, ops, start))
    if z is not None:
        reports.append(verify_window_confinement(chain, tbar, a, z))
    return reports


# ---------------------------------------------------------------------------
# gl reductions of o vectors


def verify_reduction_gl(chain: ChainModel, tbar: ColoredSets, z, builder: BetheBuilder | None = None) -> CheckReport:
    """gl-type recurrences from the upper block, upper-block vector and hat relation, for t^0 empty."""
    start = time.perf_counter()
    alg = chain.algebra
    if not alg.is_o:
        raise FamilyError("gl reduction needs an o chain")
    if tbar.get(0):
        raise ValueError("gl reduction needs t^0 empty")
    b = builder or BetheBuilder(chain)
    z = rat(z)
    n = alg.n
    base = {"z": rat_str(z), "sets": _sets_json(tbar)}
    subs = []
    for l in range(1, n):
        for k in range(l + 1, n + 1):
            rhs = special.gl_reduction_rhs(b, tbar, l, k, z)
            lhs = b.build(z_extension(alg, tbar, l, k, z, chain.c))
            subs.append(compare_vectors("gl-reduction-recurrence", chain, base | {"l": l, "k": k}, lhs, rhs))
    ovec = b.build(tbar)
    subs.append(compare_vectors("upper-block-vector", chain, base, special.upper_block_vector(chain, tbar), ovec))
    sign = special.hat_sign(tbar)
    subs.append(compare_vectors("hat-relation", chain, base | {"sign": sign}, special.hat_vector(chain, tbar), ovec.scaled(sign)))
    config = chain.describe() | base | {"nonzero": bool(ovec)}
    out = combine("reduction-gl", config, subs, start)
    out.details["subreports"] = subs
    return out


# ---------------------------------------------------------------------------
# twist rescaling


def rescaled_chain(chain: ChainModel, sampler: Sampler) -> ChainModel:
    """Same chain with fresh generic twists (o constraints respected)."""
    return chain.with_chi(random_twists(chain.algebra, sampler))


def verify_twist_rescaling(chain: ChainModel, tbar: ColoredSets, l: int, k: int, z, sampler: Sampler) -> CheckReport:
    """The rectangular check has the same outcome after rescaling the twists."""
    start = time.perf_counter()
    first = verify_rectangular(chain, tbar, l, k, z)
    other = rescaled_chain(chain, sampler)
    second = verify_rectangular(other, tbar, l, k, z)
    witness = None
    if first.status != second.status or not first.passed:
        witness = {"original": first.status, "rescaled": second.status, "witness": first.witness or second.witness}
    config = chain.describe() | {
        "rescaled_chi": other.describe()["chi"],
        "l": l,
        "k": k,
        "z": rat_str(rat(z)),
        "sets": _sets_json(tbar),
        "nonzero": _is_nonzero(first),
    }
    return CheckReport.make("twist-rescaling", config, witness, start)


__all__ = [
    "DegenerateRoots",
    "OnShellSolution",
    "bethe_residuals",
    "compare_vectors",
    "count_nonzero",
    "embedding_blocks",
    "random_twists",
    "rescaled_chain",
    "sample_chain",
    "sample_sets",
    "solve_on_shell_twists",
    "transfer_eigenvalue",
    "vector_witness",
    "verify_color_grading",
    "verify_embedding_gl",
    "verify_embedding_o",
    "verify_lemma_slices",
    "verify_normalization_anchor",
    "verify_on_shell",
    "verify_order_independence",
    "verify_rectangular",
    "verify_reduction_gl",
    "verify_special_cases_o",
    "verify_structure",
    "verify_twist_rescaling",
    "verify_window_confinement",
    "verify_yang_baxter",
    "window_accesses",
    "zero_mode_action",
]
