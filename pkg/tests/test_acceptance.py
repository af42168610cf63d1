"""Acceptance criteria: each test times its workload, prints one PASS/FAIL line and asserts."""

from __future__ import annotations

import collections
import contextlib
import io
import json
import time

import pytest

from betherec import cli
from betherec.algebra import gl, o_odd
from betherec.bethe import BetheBuilder
from betherec.chain import check_vacuum
from betherec.coefficients import rectangular_windows
from betherec.suite import SuiteConfig, run_suite
from betherec.scalars import g
from betherec.verify import verify_special_cases_o

from conftest import apply_word, combination, make_chain, params_for, sets_for
from test_bethe import _gl4_words, _o5_long

SEED = 0


@pytest.fixture
def verdict(capsys):
    """Print one line per criterion outside pytest's capture."""

    def emit(number: int, ok: bool, seconds: float, limit: float | None, note: str = "") -> None:
        within = limit is None or seconds < limit
        status = "PASS" if ok and within else "FAIL"
        budget = f"{seconds:.1f}s" if limit is None else f"{seconds:.1f}s of {limit:.0f}s"
        with capsys.disabled():
            print(f"\nCRITERION {number} {status} ({budget}) {note}".rstrip())
        assert ok, note
        assert within, f"{seconds:.1f}s exceeds {limit}s"

    return emit


def run(suite: str, **kw):
    return run_suite(SuiteConfig(suite=suite, seed=SEED, **kw))


def failures(reports) -> list:
    return [(r.check, r.config, r.witness) for r in reports if not r.passed]


def test_criterion_1_structural_layer(verdict):
    start = time.perf_counter()
    reports = run("rmatrix") + run("rtt")
    elapsed = time.perf_counter() - start
    yb = collections.Counter(r.config["algebra"] for r in reports if r.check == "yang-baxter")
    rtt = collections.Counter((r.config["algebra"], r.config["L"]) for r in reports if r.check == "rtt")
    labels = [a.label() for a in (gl(2), gl(3), gl(4), o_odd(1), o_odd(2), o_odd(3))]
    coverage = all(yb[a] >= 5 for a in labels) and all(rtt[(a, L)] >= 5 for a in labels for L in (1, 2, 3))
    bad = failures(reports)
    verdict(1, coverage and not bad, elapsed, 30, f"yang-baxter={sum(yb.values())} rtt={sum(rtt.values())} failed={len(bad)}")


def test_criterion_2_zero_mode_layer(verdict):
    start = time.perf_counter()
    reports = run("zeromodes")
    grid = [(gl(2), 3), (gl(3), 3), (gl(4), 2), (o_odd(1), 3), (o_odd(2), 2), (o_odd(3), 2)]
    for alg, L in grid:
        ch = make_chain(alg, L, seed=SEED)
        reports.append(check_vacuum(ch, ch.sample_points(3)))
    elapsed = time.perf_counter() - start
    kinds = {r.check for r in reports}
    needed = {"zero-modes", "cartan", "zero-mode-action", "color-grading", "vacuum"}
    bad = failures(reports)
    verdict(2, needed <= kinds and not bad, elapsed, 60, f"checks={len(reports)} failed={len(bad)}")


def _fixture_mismatches(seed: int) -> list[str]:
    out = []
    ch = make_chain(gl(4), 3, seed=seed)
    t1, t2, t3 = params_for(ch, 3, seed)
    c, lam = ch.c, ch.lam
    vec = BetheBuilder(ch).build({1: [t1], 2: [t2], 3: [t3]})
    pref = 1 / (lam(2, t1) * lam(3, t2) * lam(4, t3) * g(t2, t1, c) * g(t3, t2, c))
    coefs = [1, g(t2, t1, c), g(t3, t2, c), g(t2, t1, c) * g(t3, t2, c)]
    words = _gl4_words(t1, t2, t3, [(1, 4, t2), (3, 3, t3), (2, 2, t1)])
    if not vec or combination((pref * k, apply_word(ch, w)) for k, w in zip(coefs, words)) != vec:
        out.append("gl4 one parameter per color")

    ch = make_chain(o_odd(2), 3, seed=seed)
    t0, t1 = params_for(ch, 2, seed)
    c, lam = ch.c, ch.lam
    vec = BetheBuilder(ch).build({0: [t0], 1: [t1]})
    short = combination(
        [(1, apply_word(ch, [(0, 1, t0), (1, 2, t1)])), (g(t1, t0, c), apply_word(ch, [(0, 2, t0), (1, 1, t1)]))]
    ).scaled(1 / (lam(1, t0) * lam(2, t1) * g(t1, t0, c)))
    if not vec or short != vec:
        out.append("o5 short")

    a, b, t1 = params_for(ch, 3, seed + 50)
    vec = BetheBuilder(ch).build({0: [a, b], 1: [t1]})
    if not vec or any(_o5_long(ch, x, y, t1, corrected=True) != vec for x, y in [(a, b), (b, a)]):
        out.append("o5 long")

    for L, cards in [(2, {0: 1}), (3, {0: 1}), (3, {0: 2})]:
        ch = make_chain(o_odd(1), L, seed=seed)
        t = sets_for(ch, cards, seed)
        z = params_for(ch, sum(cards.values()) + 1, seed + 7)[-1]
        if not verify_special_cases_o(ch, t, z).passed:
            out.append(f"o3 relations L={L} {cards}")
    return out


def test_criterion_3_regression_fixtures(verdict):
    start = time.perf_counter()
    bad = [m for seed in (1, 2, 3) for m in _fixture_mismatches(seed)]
    elapsed = time.perf_counter() - start
    verdict(3, not bad, elapsed, 10, f"mismatches={bad}")


def test_criterion_4_gl_recurrence(verdict):
    start = time.perf_counter()
    reports = run("recurrence", algebra="gl")
    elapsed = time.perf_counter() - start
    rect = [r for r in reports if r.check == "rectangular"]
    windows = {(r.config["algebra"], r.config["l"], r.config["k"]) for r in rect}
    expected = {(a.label(), l, k) for a in (gl(3), gl(4)) for l, k in rectangular_windows(a)}
    nonzero = sum(bool(r.config.get("nonzero")) for r in rect)
    bad = failures(reports)
    ok = len(rect) >= 60 and windows == expected and not bad
    verdict(4, ok, elapsed, 300, f"instances={len(rect)} nonzero={nonzero} failed={len(bad)}")


def test_criterion_5_o_recurrence(verdict):
    start = time.perf_counter()
    reports = run("recurrence", algebra="o") + run("special-o")
    elapsed = time.perf_counter() - start
    rect = [r for r in reports if r.check == "rectangular"]
    windows = collections.Counter((r.config["algebra"], r.config["l"], r.config["k"]) for r in rect)
    per_algebra = collections.Counter(a for a, _, _ in windows)
    covered = all(per_algebra[a.label()] == len(rectangular_windows(a)) for a in (o_odd(1), o_odd(2), o_odd(3)))
    special = [r for r in reports if r.check == "special-o"]
    nonzero = sum(bool(r.config.get("nonzero")) for r in rect)
    bad = failures(reports)
    note = f"windows={dict(per_algebra)} instances={len(rect)} nonzero={nonzero} special={len(special)} failed={len(bad)}"
    verdict(5, covered and special and not bad, elapsed, 600, note)


def test_criterion_6_identities_and_lemmas(verdict):
    start = time.perf_counter()
    reports = run("scalar-identities") + run("lemmas")
    elapsed = time.perf_counter() - start
    ids = {r.config["identity"]: r.config["passed"] for r in reports if r.check.startswith("identity-")}
    enough = set(ids) == {"simp", "ApB0", "ApB1", "ApB2", "ApB3", "ApB4"} and min(ids.values()) >= 100
    lemmas = [r for r in reports if r.check == "lemma-slices"]
    bad = failures(reports)
    verdict(6, enough and lemmas and not bad, elapsed, 30, f"identity points={ids} lemma checks={len(lemmas)}")


def test_criterion_7_on_shell(verdict):
    start = time.perf_counter()
    reports = run("onshell")
    elapsed = time.perf_counter() - start
    seen = {r.config["algebra"] for r in reports if r.passed and len(r.config["points"]) >= 3}
    need = {"gl2", "gl3", "o3", "o5"}
    bad = failures(reports)
    verdict(7, need <= seen and not bad, elapsed, 60, f"algebras={sorted(seen)} failed={len(bad)}")


def test_criterion_8_embeddings_and_reduction(verdict):
    start = time.perf_counter()
    reports = run("embeddings") + run("reduction")
    elapsed = time.perf_counter() - start
    by = collections.defaultdict(lambda: [0, 0])
    for r in reports:
        by[r.check][0] += 1
        by[r.check][1] += bool(r.config.get("nonzero"))
    needed = {"embedding-gl-product", "embedding-o-product", "window-confinement", "reduction-gl"}
    gl_case = any(
        r.check == "embedding-gl-product" and r.config["algebra"] == "gl4" and r.config["a"] == 2 and r.config.get("nonzero")
        for r in reports
    )
    o_case = any(r.check == "embedding-o-product" and r.config["algebra"] == "o7" and r.config["a"] == 1 for r in reports)
    reduced = {r.config["algebra"] for r in reports if r.check == "reduction-gl" and r.config.get("nonzero")}
    bad = failures(reports)
    ok = needed <= set(by) and gl_case and o_case and {"o5", "o7"} <= reduced and not bad
    vacuous = "" if by["embedding-o-product"][1] else " o-product cases all vanish"
    counts = {k: f"{v[1]}/{v[0]} nonzero" for k, v in sorted(by.items())}
    verdict(8, ok, elapsed, 300, f"{counts} failed={len(bad)}{vacuous}")


def _check_all(seed: int) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = cli.main(["check", "--suite", "all", "--seed", str(seed)])
    return code, buf.getvalue()


def test_criterion_9_determinism(verdict, monkeypatch):
    monkeypatch.delenv(cli.SEED_ENV, raising=False)
    monkeypatch.delenv(cli.OUT_ENV, raising=False)
    start = time.perf_counter()
    code_a, first = _check_all(5)
    code_b, second = _check_all(5)
    code_c, other = _check_all(6)
    elapsed = time.perf_counter() - start

    def outcomes(text):
        return collections.Counter((r["config"]["suite"], r["check"], r["status"]) for r in json.loads(text))

    same_bytes = first == second
    same_outcomes = outcomes(first) == outcomes(other) and code_a == code_c
    note = f"byte-identical={same_bytes} same outcomes across seeds={same_outcomes} exit={code_a},{code_b},{code_c}"
    verdict(9, same_bytes and same_outcomes and code_a == code_b == 0, elapsed, None, note)
