import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from betherec.algebra import gl, o_odd
from betherec.chain import (
    ChainModel,
    ConfigError,
    build_r_matrix,
    build_transfer,
    central_element_check,
    check_cartan,
    check_rtt,
    check_vacuum,
    check_yang_baxter,
    check_zero_mode_commutators,
    zero_modes,
)
from betherec.scalars import Rat
from betherec.sparse import OperatorMatrix, encode

from conftest import make_chain

ALGEBRAS = [gl(2), gl(3), o_odd(1), o_odd(2)]
vals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_gl2_r_matrix_hand_entries():
    # R = I + c P/(u - v); u - v = 2, c = 1
    R = build_r_matrix(gl(2), Rat(3), Rat(1), Rat(1)).entries()
    e = lambda a, b: encode([a, b], 2, 1)
    assert R[(e(1, 1), e(1, 1))] == Rat(3, 2)
    assert R[(e(1, 2), e(1, 2))] == 1
    assert R[(e(2, 1), e(1, 2))] == Rat(1, 2)
    assert len(R) == 6


@pytest.mark.parametrize("alg", ALGEBRAS + [gl(4), o_odd(3)], ids=lambda a: a.label())
@given(u=vals, v=vals, c=vals)
def test_r_matrix_unitarity(alg, u, v, c):
    # R(u,v) R(v,u) = (1 - c^2/(u-v)^2) I
    assume(u != v and c != 0 and alg.is_gl or (u != v and c != 0 and abs(u - v) != c * alg.kappa))
    U, V, C = Rat(u), Rat(v), Rat(c)
    prod = build_r_matrix(alg, U, V, C).compose(build_r_matrix(alg, V, U, C))
    scale = 1 - C * C / ((U - V) * (U - V))
    assert prod.entries() == OperatorMatrix.identity(alg.N ** 2, scale).entries()


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_yang_baxter_and_sign_control(alg):
    rep = check_yang_baxter(alg, Rat(1, 3), Rat(-2), Rat(5, 7), Rat(3, 2))
    assert rep.passed, rep.witness
    if alg.is_o:
        bad = check_yang_baxter(alg, Rat(1, 3), Rat(-2), Rat(5, 7), Rat(3, 2), q_sign=-1)
        assert bad.failed and bad.witness


def test_config_validation():
    with pytest.raises(ConfigError):
        ChainModel(gl(2), [0, 0])
    with pytest.raises(ConfigError):
        ChainModel(gl(2), [0], c=0)
    with pytest.raises(ConfigError):
        ChainModel(o_odd(1), [0], {-1: 2, 0: 1, 1: 2})
    with pytest.raises(ConfigError):
        ChainModel(o_odd(1), [0], {-1: 2, 0: 3, 1: Rat(1, 2)})
    with pytest.raises(ConfigError):
        ChainModel(o_odd(1), [0], sites=["dual"])
    with pytest.raises(ConfigError):
        ChainModel(o_odd(1), [0, Rat(1, 2)])  # differ by c*kappa = 1/2
    with pytest.raises(ConfigError):
        ChainModel(gl(2), [0], sites=["other"])


def test_gl2_single_site_monodromy_by_hand():
    # T(u) = D (I + c P/(u - xi)); T_12 e_1 = chi_1 c/(u - xi) e_2
    ch = ChainModel(gl(2), [0], {1: Rat(2), 2: Rat(5)}, c=1)
    out = ch.apply(1, 2, Rat(1, 3), ch.basis_vector([1]))
    assert out == {encode([2], 2, 1): Rat(6)}
    assert ch.lam(1, Rat(1, 3)) == 2 * 4 and ch.lam(2, Rat(1, 3)) == 5


@pytest.mark.parametrize(
    "alg,L,sites",
    [(gl(2), 2, None), (gl(3), 2, None), (gl(3), 2, ("fundamental", "dual")), (o_odd(1), 2, None), (o_odd(2), 2, None)],
    ids=["gl2", "gl3", "gl3-mixed", "o3", "o5"],
)
def test_vacuum_and_lambda_two_routes(alg, L, sites):
    ch = make_chain(alg, L, seed=4, sites=sites)
    pts = ch.sample_points(3)
    assert check_vacuum(ch, pts).passed
    for z in pts:
        for i in alg.indices:
            assert ch.lam(i, z) == ch.lam_from_slice(i, z)
    expected = [alg.min_index] * L if sites is None else [1 if k == "fundamental" else alg.n for k in sites]
    assert ch.decode(ch.vacuum_index) == tuple(expected)


@pytest.mark.parametrize(
    "alg,L,sites",
    [(gl(2), 2, None), (gl(3), 2, None), (gl(2), 2, ("dual", "fundamental")), (o_odd(1), 2, None), (o_odd(2), 1, None)],
    ids=["gl2", "gl3", "gl2-mixed", "o3", "o5"],
)
def test_rtt_and_zero_entry_control(alg, L, sites):
    ch = make_chain(alg, L, seed=9, sites=sites)
    u, v = ch.sample_points(2)
    rep = check_rtt(ch, u, v)
    assert rep.passed, rep.witness
    bad = check_rtt(ch, u, v, zero_entry=(alg.min_index, alg.indices[-1]))
    assert bad.failed and bad.witness


def test_transposed_lax_breaks_rtt():
    ch = make_chain(gl(3), 2, seed=2)
    bad = ChainModel(ch.algebra, ch.xi, ch.chi, ch.c, lax_variant="transposed")
    u, v = ch.sample_points(2)
    assert check_rtt(bad, u, v).failed


@pytest.mark.parametrize("alg", ALGEBRAS, ids=lambda a: a.label())
def test_transfer_matrices_commute(alg):
    ch = make_chain(alg, 2, seed=3)
    u, v = ch.sample_points(2)
    a, b = build_transfer(ch, u), build_transfer(ch, v)
    assert a.compose(b).entries() == b.compose(a).entries()


@pytest.mark.parametrize("n", [1, 2])
def test_o_central_element_is_scalar(n):
    ch = make_chain(o_odd(n), 2, seed=5)
    for z in ch.sample_points(2):
        assert central_element_check(ch, z).passed


@pytest.mark.parametrize(
    "alg,sites",
    [(gl(2), None), (gl(3), None), (gl(3), ("dual", "fundamental")), (o_odd(1), None), (o_odd(2), None)],
    ids=["gl2", "gl3", "gl3-mixed", "o3", "o5"],
)
def test_zero_mode_commutators_and_cartan(alg, sites):
    ch = make_chain(alg, 2, seed=6, sites=sites)
    modes = zero_modes(ch)
    v = ch.sample_points(1)[0]
    rep = check_zero_mode_commutators(ch, v, modes)
    assert rep.passed, rep.witness
    assert check_cartan(ch, v, modes).passed


def test_zero_mode_commutator_control_with_wrong_twists():
    ch = make_chain(gl(3), 2, seed=6)
    modes = zero_modes(ch)
    wrong = {i: x + 1 for i, x in ch.chi.items()}
    rep = check_zero_mode_commutators(ch, ch.sample_points(1)[0], modes, chi_rhs=wrong)
    assert rep.failed


def test_describe_lists_sites_only_when_mixed():
    assert "sites" not in make_chain(gl(2), 2, seed=1).describe()
    assert make_chain(gl(2), 2, seed=1, sites=("fundamental", "dual")).describe()["sites"] == ["fundamental", "dual"]
