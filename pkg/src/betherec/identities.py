"""Scalar rational identities used by the inductive proofs of the recurrences."""

from __future__ import annotations

import time
from typing import Callable, Mapping

from .report import CheckReport
from .sampling import Sampler, with_retries
from .scalars import PoleError, Rat, rat, rat_str, shifted, sp

IDENTITY_NAMES = ("simp", "ApB0", "ApB1", "ApB2", "ApB3", "ApB4")

INPUTS = {
    "simp": ("z", "a", "b"),
    "ApB0": ("z", "t"),
    "ApB1": ("q", "x", "y1", "y2"),
    "ApB2": ("z", "t", "x1", "x2"),
    "ApB3": ("z", "q", "x1", "x2", "y1", "y2"),
    "ApB4": ("z", "x", "y1", "y2"),
}


def _fn(kind: str, c: Rat) -> Callable:
    def evaluate(u, v):
        left = u if isinstance(u, tuple) else (u,)
        right = v if isinstance(v, tuple) else (v,)
        return sp(kind, left, right, c)

    return evaluate


def _sym(expr: Callable, y1, y2) -> Rat:
    return expr(y1, y2) + expr(y2, y1)


def _simp(p, c):
    f, g, h = _fn("f", c), _fn("g", c), _fn("h", c)
    z, a, b = p["z"], p["a"], p["b"]
    chain = [
        g(z, a) * (h(b, a) - f(b, z) / g(b, a)),
        g(z, a) / g(b, a) * (f(b, a) - f(b, z)),
        g(z, a) / g(b, a) * (g(b, a) - g(b, z)),
        g(z, a) * g(b, a) * g(b, z) / (g(b, a) * g(a, z)),
        g(z, b),
    ]
    return chain[0], chain[-1], chain


def _apb0(p, c):
    f, g = _fn("f", c), _fn("g", c)
    z, t = p["z"], p["t"]
    z0, z1 = shifted(z, 0, c), shifted(z, 1, c)
    return f(t, z) - f(z, t) / f(z1, t), -g(z0, t), None


def _apb1(p, c):
    g, h = _fn("g", c), _fn("h", c)
    q, x = p["q"], p["x"]

    def term(y1, y2):
        return h(q, y1) / g(y1, x) * g(y1, y2) / h(y2, y1) - h(y1, x) / g(q, y1) * g(y2, y1) / h(y1, y2)

    return _sym(term, p["y1"], p["y2"]), Rat(0), None


def _apb2(p, c):
    f, g, h = _fn("f", c), _fn("g", c), _fn("h", c)
    z, t = p["z"], p["t"]
    xs = (p["x1"], p["x2"])
    return g(z, xs) * (h(t, xs) - f(t, z) / g(t, xs) - h(t, z)), g(z, t), None


def _apb3(p, c):
    f, g, h = _fn("f", c), _fn("g", c), _fn("h", c)
    z, q = p["z"], p["q"]
    xs, ys = (p["x1"], p["x2"]), (p["y1"], p["y2"])

    def term(y1, y2):
        return h(y2, z) * (
            h(y1, xs) / g(q, y1) * g(y2, y1) / h(y1, y2) - f(y1, z) * h(q, y1) / g(y1, xs) * g(y1, y2) / h(y2, y1)
        )

    return _sym(term, *ys), g(z, ys) * h(q, z) / g(z, xs), None


def _apb4(p, c):
    f, g, h, ff = _fn("f", c), _fn("g", c), _fn("h", c), _fn("frak_f", c)
    z, x = p["z"], p["x"]
    z0, z1 = shifted(z, 0, c), shifted(z, 1, c)
    ys = (p["y1"], p["y2"])

    def term(y1, y2):
        return g(y2, z0) / g(x, y1) * (ff(y1, y2) * f(x, y1) * f(z, y1) / f(z1, y1) - ff(y2, y1))

    return _sym(term, *ys), g(z, ys) * h(x, z), None


_EVALUATORS = {"simp": _simp, "ApB0": _apb0, "ApB1": _apb1, "ApB2": _apb2, "ApB3": _apb3, "ApB4": _apb4}


def evaluate_identity(name: str, inputs: Mapping, c) -> tuple[Rat, Rat]:
    """(lhs, rhs) of the identity; PoleError at a pole."""
    if name not in _EVALUATORS:
        raise KeyError(f"unknown identity {name!r}")
    missing = [k for k in INPUTS[name] if k not in inputs]
    if missing:
        raise KeyError(f"identity {name} needs inputs {missing}")
    p = {k: rat(v) for k, v in inputs.items()}
    c = rat(c)
    if c == 0:
        raise ValueError("c must be nonzero")
    try:
        lhs, rhs, _ = _EVALUATORS[name](p, c)
    except ZeroDivisionError as exc:
        if isinstance(exc, PoleError):
            raise
        raise PoleError(f"{name}: division by zero at {inputs}") from exc
    return lhs, rhs


def simp_chain(inputs: Mapping, c) -> list[Rat]:
    """All members of the chain of equalities; they must coincide."""
    p = {k: rat(v) for k, v in inputs.items()}
    return _simp(p, rat(c))[2]


def verify_scalar_identity(name: str, inputs: Mapping, c) -> CheckReport:
    start = time.perf_counter()
    lhs, rhs = evaluate_identity(name, inputs, c)
    witness = None
    if name == "simp":
        members = simp_chain(inputs, c)
        if len(set(members)) != 1:
            witness = {"chain": [rat_str(m) for m in members]}
    if witness is None and lhs != rhs:
        witness = {"lhs": rat_str(lhs), "rhs": rat_str(rhs)}
    config = {"identity": name, "c": rat_str(rat(c)), "inputs": {k: rat_str(rat(v)) for k, v in sorted(inputs.items())}}
    return CheckReport.make(f"identity-{name}", config, witness, start)


def sample_identity(name: str, sampler: Sampler, c=None) -> CheckReport:
    """One check at a pole-free seeded point."""

    def attempt(s: Sampler) -> CheckReport:
        cc = c if c is not None else s.rational(nonzero=True)
        values = s.distinct(len(INPUTS[name]))
        return verify_scalar_identity(name, dict(zip(INPUTS[name], values)), cc)

    return with_retries(attempt, sampler)
