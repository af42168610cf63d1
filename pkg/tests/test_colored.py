from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from betherec.algebra import gl, o_odd
from betherec.colored import (
    ColoredSets,
    InfeasibleProfile,
    ParamSet,
    cardinality_profile,
    enumerate_partitions,
    profile_from,
)
from betherec.scalars import Rat


def test_param_set_sorted_and_distinct():
    assert tuple(ParamSet([Rat(3), Rat(1)])) == (Rat(1), Rat(3))
    with pytest.raises(ValueError):
        ParamSet([Rat(1), Rat(1)])


def test_colored_sets_validation_and_updates():
    alg = gl(3)
    t = ColoredSets(alg, {1: ["1/2"], 2: []})
    assert t.cardinalities() == {1: 1, 2: 0}
    with pytest.raises(ValueError):
        ColoredSets(alg, {3: [1]})
    with pytest.raises(ValueError):
        ColoredSets(o_odd(1), {1: [1]})
    u = t.with_added(2, 5)
    assert u.get(2) == (Rat(5),)
    assert u.without(2, 5) == t
    with pytest.raises(KeyError):
        t.without(1, 7)
    assert t.to_json() == {"1": ["1/2"]}
    assert ColoredSets(o_odd(2), {0: [1], 1: [2]}).total == 2


@given(st.integers(0, 4), st.integers(0, 4), st.integers(0, 4))
def test_partition_count_is_multinomial(r, a, b):
    alg = gl(3)
    t = ColoredSets(alg, {1: [Rat(x) for x in range(r)]})
    prof = profile_from(t, {1: (a, b)})
    if a + b > r:
        assert not prof.feasible
        with pytest.raises(InfeasibleProfile):
            list(enumerate_partitions(t, prof))
        return
    parts = list(enumerate_partitions(t, prof))
    assert len(parts) == comb(r, a) * comb(r - a, b)
    for p in parts:
        p.check()
        assert len(p.I.get(1)) == a and len(p.III.get(1)) == b


def test_gl_profile_follows_step_functions():
    alg = gl(4)
    t = ColoredSets(alg, {1: [1, 2], 2: [3], 3: [4, 5]})
    # window (2,3), i=1, j=4: colour 1 loses one to I, colour 3 one to III
    prof = cardinality_profile(alg, 2, 3, 1, 4, t)
    assert prof.as_dict() == {1: (1, 0), 3: (0, 1)}
    assert cardinality_profile(alg, 2, 3, 2, 3, t).as_dict() == {}
    with pytest.raises(IndexError):
        cardinality_profile(alg, 2, 3, 3, 4, t)


def test_o_profile_for_lower_window():
    alg = o_odd(1)
    t = ColoredSets(alg, {0: [1, 2, 3]})
    # window (-1,0): theta(l) = 0 empties part I; j = 1 puts one parameter in III
    assert cardinality_profile(alg, -1, 0, -1, 1, t).as_dict() == {0: (0, 1)}
    assert cardinality_profile(alg, -1, 0, -1, 0, t).as_dict() == {}
    # window (0,1), i = -1: theta(-i-s-1) = 1 puts one parameter in I
    assert cardinality_profile(alg, 0, 1, -1, 1, t).as_dict() == {0: (1, 0)}
