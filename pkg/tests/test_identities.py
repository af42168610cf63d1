from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from betherec.identities import IDENTITY_NAMES, INPUTS, evaluate_identity, sample_identity, simp_chain, verify_scalar_identity
from betherec.sampling import Sampler
from betherec.scalars import PoleError

vals = st.fractions(min_value=-30, max_value=30, max_denominator=20)


# independent Fraction-based oracle
def F(u, v, c):
    return (u - v + c) / (u - v)


def G(u, v, c):
    return c / (u - v)


def H(u, v, c):
    return (u - v + c) / c


def FF(u, v, c):
    return (u - v + c / 2) / (u - v)


def prod(fn, xs, ys, c):
    out = Fraction(1)
    for x in xs:
        for y in ys:
            out *= fn(x, y, c)
    return out


def shift(z, s, c):
    return z - c * (s - Fraction(1, 2))


def oracle(name, p, c):
    if name == "simp":
        z, a, b = p["z"], p["a"], p["b"]
        return G(z, a, c) * (H(b, a, c) - F(b, z, c) / G(b, a, c)) - G(z, b, c)
    if name == "ApB0":
        z, t = p["z"], p["t"]
        return F(t, z, c) - F(z, t, c) / F(shift(z, 1, c), t, c) + G(shift(z, 0, c), t, c)
    if name == "ApB1":
        q, x, y1, y2 = p["q"], p["x"], p["y1"], p["y2"]
        tot = 0
        for a, b in ((y1, y2), (y2, y1)):
            tot += H(q, a, c) / G(a, x, c) * G(a, b, c) / H(b, a, c) - H(a, x, c) / G(q, a, c) * G(b, a, c) / H(a, b, c)
        return tot
    if name == "ApB2":
        z, t, xs = p["z"], p["t"], (p["x1"], p["x2"])
        gz = prod(G, [z], xs, c)
        return gz * (prod(H, [t], xs, c) - F(t, z, c) / prod(G, [t], xs, c) - H(t, z, c)) - G(z, t, c)
    if name == "ApB3":
        z, q, xs = p["z"], p["q"], (p["x1"], p["x2"])
        y1, y2 = p["y1"], p["y2"]
        tot = 0
        for a, b in ((y1, y2), (y2, y1)):
            tot += H(b, z, c) * (
                prod(H, [a], xs, c) / G(q, a, c) * G(b, a, c) / H(a, b, c)
                - F(a, z, c) * H(q, a, c) / prod(G, [a], xs, c) * G(a, b, c) / H(b, a, c)
            )
        return tot - prod(G, [z], (y1, y2), c) * H(q, z, c) / prod(G, [z], xs, c)
    if name == "ApB4":
        z, x, y1, y2 = p["z"], p["x"], p["y1"], p["y2"]
        z0, z1 = shift(z, 0, c), shift(z, 1, c)
        tot = 0
        for a, b in ((y1, y2), (y2, y1)):
            tot += G(b, z0, c) / G(x, a, c) * (FF(a, b, c) * F(x, a, c) * F(z, a, c) / F(z1, a, c) - FF(b, a, c))
        return tot - prod(G, [z], (y1, y2), c) * H(x, z, c)
    raise KeyError(name)


@pytest.mark.parametrize("name", IDENTITY_NAMES)
@given(data=st.data())
def test_identity_vanishes_in_fraction_oracle_and_package(name, data):
    p = {k: data.draw(vals, label=k) for k in INPUTS[name]}
    c = data.draw(vals.filter(lambda x: x != 0), label="c")
    try:
        ref = oracle(name, p, c)
    except ZeroDivisionError:
        assume(False)
    assert ref == 0
    lhs, rhs = evaluate_identity(name, {k: str(v) for k, v in p.items()}, str(c))
    assert lhs == rhs


def test_frozen_apb0_point():
    # z=1, t=3, c=1: f(3,1) - f(1,3)/f(1/2,3) = 3/2 - 5/6 = 2/3 = -g(3/2, 3)
    lhs, rhs = evaluate_identity("ApB0", {"z": 1, "t": 3}, 1)
    assert lhs == rhs == Fraction(2, 3)


def test_simp_chain_members_coincide():
    members = simp_chain({"z": "1/3", "a": "2", "b": "-5/7"}, "3/2")
    assert len(set(members)) == 1


def test_pole_raises():
    with pytest.raises(PoleError):
        evaluate_identity("ApB0", {"z": 1, "t": 1}, 1)
    with pytest.raises(KeyError):
        evaluate_identity("ApB1", {"q": 1}, 1)


@pytest.mark.parametrize("name", IDENTITY_NAMES)
def test_sampled_identity_reports_pass(name):
    sampler = Sampler(11)
    for k in range(20):
        rep = sample_identity(name, sampler.child(name, k))
        assert rep.passed, rep.witness


def test_report_records_inputs():
    rep = verify_scalar_identity("ApB0", {"z": 1, "t": 3}, 1)
    assert rep.passed and rep.config["inputs"] == {"t": "3", "z": "1"}
