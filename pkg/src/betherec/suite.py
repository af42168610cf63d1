"""Deterministic test matrix behind ``betherec check``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import verify as V
from .algebra import AlgebraSpec, gl, o_odd
from .bethe import BetheBuilder
from .chain import ChainModel, ConfigError, central_element_check, check_cartan, check_vacuum, check_zero_mode_commutators, zero_modes
from .coefficients import rectangular_windows
from .identities import IDENTITY_NAMES, sample_identity
from .report import CheckReport, combine
from .sampling import Sampler, SamplingExhausted, with_retries
from .scalars import rat, rat_str

SUITES = (
    "rmatrix",
    "rtt",
    "zeromodes",
    "recurrence",
    "lemmas",
    "special-o",
    "onshell",
    "embeddings",
    "reduction",
    "scalar-identities",
)


@dataclass
class SuiteConfig:
    suite: str = "all"
    seed: int = 0
    c: object = None
    algebra: str | None = None
    n: int | None = None
    tamper: str | None = None
    identity_points: int = 100
    extra: dict = field(default_factory=dict)

    def selected(self) -> list[str]:
        if self.suite == "all":
            return list(SUITES)
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}; choose from {('all',) + SUITES}")
        return [self.suite]

    def wants(self, alg: AlgebraSpec) -> bool:
        if self.algebra is not None and alg.family.value != self.algebra:
            return False
        return self.n is None or alg.n == self.n


def cardinality_grid(alg: AlgebraSpec, top: int) -> list[dict[int, int]]:
    return [dict(zip(alg.colors, cards)) for cards in itertools.product(range(top + 1), repeat=len(alg.colors))]


def _label(alg: AlgebraSpec, *rest) -> tuple:
    return (alg.label(),) + rest


def _instance(check: str, sampler: Sampler, attempt: Callable[[Sampler], CheckReport | list]) -> list[CheckReport]:
    try:
        out = with_retries(attempt, sampler)
    except SamplingExhausted as exc:
        return [CheckReport.skipped(check, {"sampler": sampler.seed}, str(exc))]
    return out if isinstance(out, list) else [out]


class SuiteRunner:
    def __init__(self, config: SuiteConfig):
        self.config = config
        self.root = Sampler(config.seed)
        self._chains: dict[tuple, ChainModel] = {}
        self._modes: dict[tuple, object] = {}

    # -- shared fixtures ------------------------------------------------------
    def chain(self, alg: AlgebraSpec, L: int, sites: tuple[str, ...] | None = None) -> ChainModel:
        key = (alg.label(), L, sites)
        if key not in self._chains:
            sampler = self.root.child("chain", *key)
            self._chains[key] = V.sample_chain(alg, L, sampler, c=self.config.c, sites=sites)
        return self._chains[key]

    def modes(self, chain: ChainModel):
        key = (chain.algebra.label(), chain.L, chain.sites)
        if key not in self._modes:
            self._modes[key] = zero_modes(chain)
        return self._modes[key]

    def sampler(self, *labels) -> Sampler:
        return self.root.child(*labels)

    def algebras(self, specs: Iterable[AlgebraSpec]) -> list[AlgebraSpec]:
        return [a for a in specs if self.config.wants(a)]

    # -- suites ---------------------------------------------------------------
    def rmatrix(self) -> list[CheckReport]:
        out = []
        for alg in self.algebras([gl(2), gl(3), gl(4), o_odd(1), o_odd(2), o_odd(3)]):
            for rep in range(5):
                s = self.sampler("rmatrix", alg.label(), rep)

                def attempt(s, alg=alg):
                    u, v, w = s.distinct(3)
                    c = self.config.c if self.config.c is not None else s.ratio(5)
                    return V.verify_yang_baxter(alg, [(u, v, w)], c)

                out += _instance("yang-baxter", s, attempt)
        return out

    def rtt(self) -> list[CheckReport]:
        out = []
        grid = [(gl(n), L) for n in (2, 3, 4) for L in (1, 2, 3)]
        grid += [(o_odd(n), L) for n in (1, 2, 3) for L in (1, 2, 3)]
        for alg, L in grid:
            if not self.config.wants(alg):
                continue
            ch = self.chain(alg, L)
            for rep in range(5):
                s = self.sampler("rtt", alg.label(), L, rep)

                def attempt(s, ch=ch):
                    u, v = s.distinct(2, avoid=ch.xi)
                    return V.verify_structure(ch, [(u, v)])

                out += _instance("rtt", s, attempt)
            out.append(check_vacuum(ch, ch.sample_points(3)))
            if alg.is_o:
                out += _instance("central-element", self.sampler("central", alg.label(), L), lambda s, ch=ch: central_element_check(ch, s.rational()))
        return out

    def zeromodes(self) -> list[CheckReport]:
        out = []
        grid = [(gl(2), 3, 2), (gl(3), 3, 1), (gl(4), 2, 1), (o_odd(1), 3, 2), (o_odd(2), 2, 1), (o_odd(3), 2, 1)]
        for alg, L, top in grid:
            if not self.config.wants(alg):
                continue
            ch = self.chain(alg, L)
            modes = self.modes(ch)
            s = self.sampler("zeromodes", alg.label(), L)
            out += _instance("zero-modes", s, lambda s, ch=ch: check_zero_mode_commutators(ch, s.rational(), modes))
            out += _instance("cartan", s, lambda s, ch=ch: check_cartan(ch, s.rational(), modes))
            b = BetheBuilder(ch)
            for cards in cardinality_grid(alg, top):
                if not any(cards.values()):
                    continue
                s = self.sampler("zeromodes-vectors", alg.label(), L, tuple(cards.items()))

                def attempt(s, ch=ch, cards=cards, b=b):
                    t = V.sample_sets(ch.algebra, cards, s)
                    z = s.rational()
                    return [
                        V.verify_zero_mode_action(ch, t, b, modes),
                        V.verify_color_grading(ch, t, b, modes),
                        V.verify_normalization_anchor(ch, t, z, b),
                        V.verify_order_independence(ch, t),
                    ]

                out += _instance("zero-mode-action", s, attempt)
        return out

    def rectangular_grid(self) -> list[tuple[AlgebraSpec, int, int]]:
        """(algebra, L, max cardinality per color) of the rectangular matrix."""
        return [
            (gl(3), 3, 2),
            (gl(4), 3, 1),
            (o_odd(1), 3, 2),
            (o_odd(2), 3, 2),
            (o_odd(3), 2, 1),
        ]

    def recurrence(self) -> list[CheckReport]:
        out = []
        for alg, L, top in self.rectangular_grid():
            if not self.config.wants(alg):
                continue
            ch = self.chain(alg, L)
            b = BetheBuilder(ch)
            for l, k in rectangular_windows(alg):
                for cards in cardinality_grid(alg, top):
                    s = self.sampler("recurrence", alg.label(), L, l, k, tuple(cards.items()))

                    def attempt(s, ch=ch, cards=cards, l=l, k=k, b=b):
                        t = V.sample_sets(ch.algebra, cards, s)
                        return V.verify_rectangular(ch, t, l, k, s.rational(), tamper=self.config.tamper, builder=b)

                    out += _instance("rectangular", s, attempt)
            # twist rescaling leaves the outcome unchanged
            windows = rectangular_windows(alg)
            l, k = windows[len(windows) // 2]
            s = self.sampler("rescaling", alg.label(), L)
            cards = {col: 1 for col in alg.colors}

            def attempt(s, ch=ch, cards=cards, l=l, k=k):
                t = V.sample_sets(ch.algebra, cards, s)
                return V.verify_twist_rescaling(ch, t, l, k, s.rational(), s)

            out += _instance("twist-rescaling", s, attempt)
        return out

    def lemmas(self) -> list[CheckReport]:
        out = []
        for alg, L, top in [(gl(3), 3, 2), (gl(4), 3, 1), (o_odd(2), 3, 2), (o_odd(3), 2, 1)]:
            if not self.config.wants(alg):
                continue
            ch = self.chain(alg, L)
            b = BetheBuilder(ch)
            for cards in cardinality_grid(alg, top):
                s = self.sampler("lemmas", alg.label(), L, tuple(cards.items()))

                def attempt(s, ch=ch, cards=cards, b=b):
                    return V.verify_lemma_slices(ch, V.sample_sets(ch.algebra, cards, s), s.rational(), b)

                out += _instance("lemma-slices", s, attempt)
        return out

    def special_o(self) -> list[CheckReport]:
        out = []
        for alg, L, top in [(o_odd(1), 2, 2), (o_odd(1), 3, 2), (o_odd(2), 3, 1), (o_odd(3), 2, 1)]:
            if not self.config.wants(alg):
                continue
            ch = self.chain(alg, L)
            b = BetheBuilder(ch)
            for cards in cardinality_grid(alg, top):
                s = self.sampler("special-o", alg.label(), L, tuple(cards.items()))

                def attempt(s, ch=ch, cards=cards, b=b):
                    return V.verify_special_cases_o(ch, V.sample_sets(ch.algebra, cards, s), s.rational(), b)

                out += _instance("special-o", s, attempt)
        return out

    def onshell(self) -> list[CheckReport]:
        out = []
        for alg in self.algebras([gl(2), gl(3), o_odd(1), o_odd(2), o_odd(3)]):
            base = self.chain(alg, 2)
            s = self.sampler("onshell", alg.label())

            def attempt(s, base=base, alg=alg):
                roots = V.sample_sets(alg, {col: 1 for col in alg.colors}, s)
                sol = V.solve_on_shell_twists(base, roots)
                return V.verify_on_shell(sol, s.distinct(3, avoid=base.xi))

            out += _instance("on-shell", s, attempt)
        return out

    def embeddings(self) -> list[CheckReport]:
        out = []
        mixed = ("fundamental", "dual", "fundamental")
        gl_cases = [
            (gl(4), 3, mixed, 2, {1: 1, 3: 1}),
            (gl(4), 3, mixed, 2, {1: 2, 3: 1}),
            (gl(4), 3, None, 2, {1: 1}),
            (gl(3), 3, None, 2, {1: 2}),
            (gl(3), 2, ("fundamental", "dual"), 1, {2: 1}),
        ]
        for alg, L, sites, a, cards in gl_cases:
            if not self.config.wants(alg):
                continue
            ch = self.chain(alg, L, sites)
            s = self.sampler("embedding-gl", alg.label(), L, sites, a, tuple(cards.items()))

            def attempt(s, ch=ch, cards=cards, a=a):
                return V.verify_embedding_gl(ch, V.sample_sets(ch.algebra, cards, s), a, s.rational())

            out += _instance("embedding-gl", s, attempt)
        o_cases = [
            (o_odd(3), 2, 1, {0: 1, 2: 1}),
            (o_odd(3), 2, 1, {2: 1}),
            (o_odd(3), 2, 1, {2: 2}),
            (o_odd(3), 2, 2, {0: 1, 1: 1}),
            (o_odd(2), 3, 1, {0: 1}),
            (o_odd(2), 3, 1, {0: 2}),
        ]
        for alg, L, a, cards in o_cases:
            if not self.config.wants(alg):
                continue
            ch = self.chain(alg, L)
            s = self.sampler("embedding-o", alg.label(), L, a, tuple(cards.items()))

            def attempt(s, ch=ch, cards=cards, a=a):
                return V.verify_embedding_o(ch, V.sample_sets(ch.algebra, cards, s), a, s.rational())

            out += _instance("embedding-o", s, attempt)
        return out

    def reduction(self) -> list[CheckReport]:
        out = []
        cases = [
            (o_odd(2), 3, {1: 1}),
            (o_odd(2), 3, {1: 2}),
            (o_odd(3), 2, {1: 1, 2: 1}),
            (o_odd(3), 2, {2: 1}),
            (o_odd(3), 2, {2: 2}),
            (o_odd(3), 3, {1: 1, 2: 1}),
        ]
        for alg, L, cards in cases:
            if not self.config.wants(alg):
                continue
            ch = self.chain(alg, L)
            b = BetheBuilder(ch)
            s = self.sampler("reduction", alg.label(), L, tuple(cards.items()))

            def attempt(s, ch=ch, cards=cards, b=b):
                return V.verify_reduction_gl(ch, V.sample_sets(ch.algebra, cards, s), s.rational(), b)

            out += _instance("reduction-gl", s, attempt)
        return out

    def scalar_identities(self) -> list[CheckReport]:
        out = []
        for name in IDENTITY_NAMES:
            subs = []
            for rep in range(self.config.identity_points):
                s = self.sampler("identity", name, rep)
                try:
                    subs.append(sample_identity(name, s, self.config.c))
                except SamplingExhausted as exc:
                    subs.append(CheckReport.skipped(f"identity-{name}", {"rep": rep}, str(exc)))
            config = {"identity": name, "points": len(subs), "passed": sum(r.passed for r in subs)}
            if self.config.c is not None:
                config["c"] = rat_str(rat(self.config.c))
            out.append(combine(f"identity-{name}", config, subs))
        return out

    # -- driver ---------------------------------------------------------------
    def run(self) -> list[CheckReport]:
        table = {
            "rmatrix": self.rmatrix,
            "rtt": self.rtt,
            "zeromodes": self.zeromodes,
            "recurrence": self.recurrence,
            "lemmas": self.lemmas,
            "special-o": self.special_o,
            "onshell": self.onshell,
            "embeddings": self.embeddings,
            "reduction": self.reduction,
            "scalar-identities": self.scalar_identities,
        }
        reports: list[CheckReport] = []
        for name in self.config.selected():
            for r in table[name]():
                r.config = {"suite": name} | r.config
                reports.append(r)
        return sorted(reports, key=lambda r: r.sort_key())


def run_suite(config: SuiteConfig) -> list[CheckReport]:
    if config.c is not None and rat(config.c) == 0:
        raise ConfigError("c must be nonzero")
    return SuiteRunner(config).run()
