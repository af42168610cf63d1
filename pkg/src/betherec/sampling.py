"""Seeded sampling of generic rational points with bounded retries."""

from __future__ import annotations

import random
from typing import Callable, Iterable, TypeVar

from .scalars import PoleError, Rat, ZeroNormalization

BOUND = 64
MAX_ATTEMPTS = 100

T = TypeVar("T")


class SamplingExhausted(RuntimeError):
    """No pole-free sample was found within the attempt cap."""


class Sampler:
    """Deterministic source of rationals with |numerator|, denominator <= BOUND."""

    def __init__(self, seed: int, bound: int = BOUND):
        self.seed = seed
        self.bound = bound
        self.rng = random.Random(seed)

    def rational(self, nonzero: bool = False) -> Rat:
        while True:
            x = Rat(self.rng.randint(-self.bound, self.bound), self.rng.randint(1, self.bound))
            if x or not nonzero:
                return x

    def distinct(self, count: int, avoid: Iterable = ()) -> list[Rat]:
        seen = set(avoid)
        out: list[Rat] = []
        while len(out) < count:
            x = self.rational()
            if x not in seen:
                seen.add(x)
                out.append(x)
        return out

    def ratio(self, top: int = 9) -> Rat:
        """Nonzero positive rational with small terms, used for twists."""
        return Rat(self.rng.randint(1, top), self.rng.randint(1, top))

    def child(self, *labels) -> "Sampler":
        """Independent sampler whose stream depends only on the seed and the labels."""
        return Sampler(hash_seed(self.seed, *labels), self.bound)


def hash_seed(seed: int, *labels) -> int:
    """Stable (process-independent) derived seed."""
    import hashlib

    text = repr((seed,) + tuple(str(x) for x in labels)).encode()
    return int.from_bytes(hashlib.sha256(text).digest()[:8], "big")


def with_retries(attempt: Callable[[Sampler], T], sampler: Sampler, cap: int = MAX_ATTEMPTS) -> T:
    """Call attempt(sampler) until it avoids every pole; raise after ``cap`` tries."""
    last = None
    for _ in range(cap):
        try:
            return attempt(sampler)
        except (PoleError, ZeroNormalization, ZeroDivisionError) as exc:
            last = exc
    raise SamplingExhausted(f"no generic sample after {cap} attempts: {last}")
