"""Constructor tests: hand oracles, worked fixtures and two-route operator forms."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betherec.algebra import gl, o_odd
from betherec.bethe import BetheBuilder, UnsupportedBlock, build_pre_bethe_operator, vector_from_json, vector_to_json
from betherec.chain import ChainModel
from betherec.colored import ColoredSets
from betherec.scalars import Rat, frak_f, g, h
from betherec.sparse import encode

from conftest import apply_word, combination, make_chain, params_for, sets_for


def test_gl2_single_site_vector():
    ch = ChainModel(gl(2), [0], None, c=1)
    vec = BetheBuilder(ch).build({1: ["1/3"]})
    assert vec == {encode([2], 2, 1): Rat(3)}


def test_gl2_two_site_vector_by_hand():
    # T_12(t)|11> = chi_1 [(1 + p2) p1 |21> + p2 |12>], p_a = c/(t - xi_a); divide by lambda_2 = chi_2
    ch = ChainModel(gl(2), [0, 1], {1: Rat(2), 2: Rat(3)}, c=1)
    vec = BetheBuilder(ch).build({1: ["1/2"]})
    assert vec == {encode([2, 1], 2, 1): Rat(-4, 3), encode([1, 2], 2, 1): Rat(-4, 3)}


def test_empty_sets_give_vacuum():
    ch = make_chain(o_odd(2), 2, seed=1)
    assert BetheBuilder(ch).build({}) == ch.vacuum


def _gl4_words(t1, t2, t3, fourth):
    return [
        [(2, 3, t2), (1, 2, t1), (3, 4, t3)],
        [(1, 3, t2), (3, 4, t3), (2, 2, t1)],
        [(2, 4, t2), (1, 2, t1), (3, 3, t3)],
        fourth,
    ]


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_gl4_one_parameter_per_color_fixture(seed):
    ch = make_chain(gl(4), 3, seed=seed)
    t1, t2, t3 = params_for(ch, 3, seed)
    c, lam = ch.c, ch.lam
    vec = BetheBuilder(ch).build({1: [t1], 2: [t2], 3: [t3]})
    assert vec
    pref = 1 / (lam(2, t1) * lam(3, t2) * lam(4, t3) * g(t2, t1, c) * g(t3, t2, c))
    coefs = [1, g(t2, t1, c), g(t3, t2, c), g(t2, t1, c) * g(t3, t2, c)]

    def display(fourth):
        words = _gl4_words(t1, t2, t3, fourth)
        return combination((pref * k, apply_word(ch, w)) for k, w in zip(coefs, words))

    corrected = [(1, 4, t2), (3, 3, t3), (2, 2, t1)]
    printed = [(1, 4, t2), (3, 2, t3), (1, 1, t1)]
    assert display(corrected) == vec
    assert not apply_word(ch, printed)
    assert display(printed) != vec


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_o5_short_fixture(seed):
    ch = make_chain(o_odd(2), 3, seed=seed)
    t0, t1 = params_for(ch, 2, seed)
    c, lam = ch.c, ch.lam
    vec = BetheBuilder(ch).build({0: [t0], 1: [t1]})
    assert vec
    expected = combination(
        [(1, apply_word(ch, [(0, 1, t0), (1, 2, t1)])), (g(t1, t0, c), apply_word(ch, [(0, 2, t0), (1, 1, t1)]))]
    ).scaled(1 / (lam(1, t0) * lam(2, t1) * g(t1, t0, c)))
    assert expected == vec


def _o5_long(ch, t01, t02, t1, corrected):
    c, lam = ch.c, ch.lam
    x = g(t1, t02, c)
    y = x * g(t02, t01 + c / 2, c)
    w = g(t1, t01, c) * h(t1, t02, c) * (g(t1, t02, c) if corrected else 1)
    terms = [
        (1, [(0, 1, t01), (0, 1, t02), (1, 2, t1)]),
        (x, [(0, 1, t01), (0, 2, t02), (1, 1, t1)]),
        (y, [(-2, 1, t01), (1, 1, t02), (2, 2, t1)]),
        (y * h(t1, t02, c), [(-1, 1, t01), (1, 2, t1), (1, 1, t02)]),
        (w, [(0, 2, t01), (0, 1, t02), (1, 1, t1)]),
        (w * g(t02, t01 + c / 2, c), [(-1, 2, t01), (1, 1, t02), (1, 1, t1)]),
    ]
    pref = 1 / (lam(1, t01) * lam(1, t02) * lam(2, t1) * frak_f(t01 + c / 2, t02, c) * g(t1, t01, c) * g(t1, t02, c))
    return combination((pref * k, apply_word(ch, word)) for k, word in terms)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_o5_long_fixture_both_orders(seed):
    ch = make_chain(o_odd(2), 3, seed=seed)
    a, b, t1 = params_for(ch, 3, seed)
    builder = BetheBuilder(ch)
    vec = builder.build({0: [a, b], 1: [t1]})
    assert vec
    for t01, t02 in [(a, b), (b, a)]:
        assert _o5_long(ch, t01, t02, t1, corrected=True) == vec
        assert _o5_long(ch, t01, t02, t1, corrected=False) != vec


@pytest.mark.parametrize("seed", [1, 2])
def test_gl3_two_parameter_fixture(seed):
    ch = make_chain(gl(3), 3, seed=seed)
    a, b, t2 = params_for(ch, 3, seed)
    c, lam = ch.c, ch.lam
    vec = BetheBuilder(ch).build({1: [a, b], 2: [t2]})
    assert vec
    from betherec.scalars import f

    terms = [
        (1, [(1, 2, b), (1, 2, a), (2, 3, t2)]),
        (lam(2, t2) * g(t2, a, c) * f(a, b, c), [(1, 3, a), (1, 2, b)]),
        (lam(2, t2) * g(t2, b, c) * f(b, a, c), [(1, 3, b), (1, 2, a)]),
    ]
    pref = 1 / (lam(2, a) * lam(2, b) * lam(3, t2) * h(a, b, c) * h(b, a, c) * g(t2, a, c) * g(t2, b, c))
    assert combination((pref * k, apply_word(ch, w)) for k, w in terms) == vec


@pytest.mark.parametrize("alg,m,L", [(gl(2), 1, 3), (gl(3), 1, 2), (gl(3), 2, 3), (o_odd(2), 1, 2)])
@settings(max_examples=8)
@given(seed=st.integers(0, 10_000), r=st.integers(1, 3))
def test_rank_one_window_operator_matches_constructor(alg, m, L, seed, r):
    ch = make_chain(alg, L, seed=seed)
    t = sets_for(ch, {m: r}, seed)
    op = build_pre_bethe_operator(ch, t, (m, m + 1))
    assert op.apply(ch.vacuum) == BetheBuilder(ch).build(t)


@settings(max_examples=6)
@given(seed=st.integers(0, 10_000), r=st.integers(1, 3))
def test_o3_window_operator_matches_constructor(seed, r):
    alg = o_odd(1)
    ch = make_chain(alg, 2, seed=seed)
    t = sets_for(ch, {0: r}, seed)
    op = build_pre_bethe_operator(ch, t, (-1, 0, 1))
    assert op.apply(ch.vacuum) == BetheBuilder(ch).build(t)


def test_unsupported_windows():
    ch = make_chain(gl(3), 2, seed=0)
    with pytest.raises(UnsupportedBlock):
        build_pre_bethe_operator(ch, ColoredSets(gl(3)), (1, 3))
    with pytest.raises(UnsupportedBlock):
        build_pre_bethe_operator(ch, ColoredSets(gl(3)), (-1, 0, 1))


@settings(max_examples=10)
@given(seed=st.integers(0, 10_000))
def test_json_round_trip(seed):
    ch = make_chain(o_odd(1), 2, seed=seed)
    vec = BetheBuilder(ch).build(sets_for(ch, {0: 2}, seed))
    data = vector_to_json(ch, vec)
    assert vector_from_json(ch, data) == vec
    assert all("/" not in e["num"] and int(e["den"]) > 0 for e in data["entries"])
