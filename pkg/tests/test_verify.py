"""Rectangular recurrences, zero modes, on-shell vectors and embeddings."""

import pytest

from betherec.algebra import gl, o_odd
from betherec.bethe import BetheBuilder
from betherec.chain import zero_modes
from betherec.coefficients import rectangular_windows
from betherec.colored import ColoredSets
from betherec.sampling import Sampler
from betherec.verify import (
    count_nonzero,
    solve_on_shell_twists,
    verify_color_grading,
    verify_embedding_gl,
    verify_embedding_o,
    verify_normalization_anchor,
    verify_on_shell,
    verify_order_independence,
    verify_rectangular,
    verify_structure,
    verify_twist_rescaling,
    verify_window_confinement,
    verify_yang_baxter,
    verify_zero_mode_action,
)

from conftest import make_chain, params_for, sets_for

MIXED_GL4 = ("fundamental", "dual", "fundamental")


def point(ch, seed, k=1):
    return params_for(ch, 8 + k, seed + 1000)[-1]


def test_structure_wrappers():
    ch = make_chain(gl(2), 2, seed=0)
    u, v = ch.sample_points(2)
    assert all(r.passed for r in verify_structure(ch, [(u, v)]))
    assert all(r.passed for r in verify_yang_baxter(gl(2), [(u, v, u + 1)], ch.c))


@pytest.mark.parametrize(
    "alg,L,cards",
    [
        (gl(3), 3, {1: 2, 2: 1}),
        (gl(4), 3, {1: 1, 2: 1, 3: 1}),
        (o_odd(1), 3, {0: 2}),
        (o_odd(2), 3, {0: 1, 1: 1}),
        (o_odd(3), 2, {2: 1}),
    ],
    ids=["gl3", "gl4", "o3", "o5", "o7"],
)
def test_rectangular_all_windows(alg, L, cards):
    ch = make_chain(alg, L, seed=2)
    t = sets_for(ch, cards, 2)
    z = point(ch, 2)
    builder = BetheBuilder(ch)
    reports = [verify_rectangular(ch, t, l, k, z, builder=builder) for l, k in rectangular_windows(alg)]
    assert all(r.passed for r in reports), [r.witness for r in reports if not r.passed]
    assert count_nonzero(reports) > 0


@pytest.mark.parametrize("tamper", ["xi-sign", "xi-plus-one"])
@pytest.mark.parametrize("alg,cards,window", [(gl(3), {1: 1, 2: 1}, (1, 3)), (o_odd(2), {0: 1, 1: 1}, (0, 2))])
def test_tampered_recurrence_fails_with_witness(tamper, alg, cards, window):
    ch = make_chain(alg, 3, seed=4)
    t = sets_for(ch, cards, 4)
    found = False
    for l, k in rectangular_windows(alg):
        rep = verify_rectangular(ch, t, l, k, point(ch, 4), tamper=tamper)
        if rep.failed:
            assert rep.witness
            found = True
    assert found


@pytest.mark.parametrize(
    "alg,L,cards,sites",
    [
        (gl(3), 3, {1: 2, 2: 1}, None),
        (gl(4), 3, {1: 1, 3: 1}, MIXED_GL4),
        (o_odd(1), 2, {0: 2}, None),
        (o_odd(2), 3, {0: 1, 1: 1}, None),
    ],
    ids=["gl3", "gl4-mixed", "o3", "o5"],
)
def test_zero_mode_layer(alg, L, cards, sites):
    ch = make_chain(alg, L, seed=7, sites=sites)
    t = sets_for(ch, cards, 7)
    modes = zero_modes(ch)
    b = BetheBuilder(ch)
    assert b.build(t)
    for rep in (
        verify_zero_mode_action(ch, t, b, modes),
        verify_color_grading(ch, t, b, modes),
        verify_normalization_anchor(ch, t, point(ch, 7), b),
        verify_order_independence(ch, t),
    ):
        assert rep.passed, (rep.check, rep.witness)


@pytest.mark.parametrize("alg", [gl(2), gl(3), o_odd(1), o_odd(2)], ids=lambda a: a.label())
def test_on_shell_eigenvector(alg):
    ch = make_chain(alg, 2, seed=3, twists="unit")
    roots = sets_for(ch, {s: 1 for s in alg.colors}, 3)
    sol = solve_on_shell_twists(ch, roots)
    assert not any(sol.residuals.values())
    pts = params_for(ch, 12, 9)[-3:]
    rep = verify_on_shell(sol, pts)
    assert rep.passed and rep.config["nonzero"], rep.witness


def test_on_shell_control_with_off_shell_twists():
    alg = gl(3)
    ch = make_chain(alg, 2, seed=3, twists="unit")
    roots = sets_for(ch, {1: 1, 2: 1}, 3)
    sol = solve_on_shell_twists(ch, roots)
    sol.chain = sol.chain.with_chi({i: v * (i + 1) for i, v in sol.chi.items()})
    from betherec.verify import bethe_residuals

    sol.residuals = bethe_residuals(sol.chain, roots)
    assert verify_on_shell(sol, params_for(ch, 10, 1)[-2:]).failed


def test_gl_embedding_both_orders_and_confinement():
    ch = make_chain(gl(4), 3, seed=1, sites=MIXED_GL4)
    t = sets_for(ch, {1: 1, 3: 1}, 1)
    reports = verify_embedding_gl(ch, t, 2, z=point(ch, 1))
    assert len(reports) == 2
    assert all(r.passed for r in reports), [r.witness for r in reports]
    assert reports[0].config["nonzero"]


def test_o_embedding_and_confinement():
    ch = make_chain(o_odd(3), 2, seed=1)
    t = sets_for(ch, {2: 1}, 1)
    reports = verify_embedding_o(ch, t, 1, z=point(ch, 1))
    assert reports and all(r.passed for r in reports), [r.witness for r in reports]


def test_embedding_needs_empty_color():
    ch = make_chain(gl(4), 3, seed=1)
    with pytest.raises(ValueError):
        verify_embedding_gl(ch, sets_for(ch, {2: 1}, 1), 2)


def test_confinement_control_with_nonempty_color():
    ch = make_chain(gl(3), 3, seed=2)
    t = sets_for(ch, {1: 1, 2: 1}, 2)
    rep = verify_window_confinement(ch, t, 1, point(ch, 2))
    assert rep.failed and rep.witness["outside"]


def test_twist_rescaling():
    ch = make_chain(o_odd(2), 2, seed=6)
    t = sets_for(ch, {1: 1}, 6)
    rep = verify_twist_rescaling(ch, t, 0, 2, point(ch, 6), Sampler(6))
    assert rep.passed, rep.witness
