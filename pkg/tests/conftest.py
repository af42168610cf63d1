"""Shared helpers: seeded chains, operator words and hypothesis profile."""

from __future__ import annotations

from hypothesis import HealthCheck, settings

from betherec.sampling import Sampler
from betherec.sparse import StateVector
from betherec.verify import sample_chain

settings.register_profile(
    "exact",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("exact")


def make_chain(alg, L, seed, c=None, sites=None, twists="random"):
    return sample_chain(alg, L, Sampler(seed), c=c, twists=twists, sites=sites)


def apply_word(chain, ops, vec=None) -> StateVector:
    """Apply T_{i1,j1}(z1) T_{i2,j2}(z2) ... (leftmost first in ``ops``) to ``vec``."""
    out = chain.vacuum if vec is None else vec
    for i, j, z in reversed(ops):
        out = chain.apply(i, j, z, out)
    return out


def combination(terms) -> StateVector:
    out = StateVector()
    for coef, vec in terms:
        out.add_scaled(vec, coef)
    return out


def params_for(chain, count, seed):
    """Distinct rationals that avoid the chain's inhomogeneities."""
    return Sampler(seed).child("params").distinct(count, avoid=chain.xi)


def sets_for(chain, cards, seed):
    from betherec.colored import ColoredSets

    values = iter(params_for(chain, sum(cards.values()), seed))
    return ColoredSets(chain.algebra, {s: [next(values) for _ in range(k)] for s, k in cards.items() if k})
