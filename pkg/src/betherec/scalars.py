"""Exact rational scalars and the elementary rational functions.

All values are ``gmpy2.mpq``.  Products over parameter sets follow the
empty-set convention: a product with an empty side equals one.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

import gmpy2

from .algebra import AlgebraSpec

Rat = gmpy2.mpq
ZERO = Rat(0)
ONE = Rat(1)
HALF = Rat(1, 2)


class PoleError(ZeroDivisionError):
    """A rational function was evaluated at one of its poles."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ZeroNormalization(ArithmeticError):
    """A normalization factor that must be inverted vanished."""


def rat(x) -> Rat:
    """Coerce int, str ("p/q"), Fraction or mpq to an exact rational."""
    if isinstance(x, type(ONE)):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Rat(x)
    if isinstance(x, Fraction):
        return Rat(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        if "/" in s:
            p, q = s.split("/", 1)
            q = int(q)
            if q == 0:
                raise ZeroDivisionError(f"zero denominator in {x!r}")
            return Rat(int(p), q)
        return Rat(int(s))
    if type(x).__name__ == "mpz":
        return Rat(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def rat_str(x: Rat) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _diff(u: Rat, v: Rat, kind: str) -> Rat:
    d = u - v
    if d == 0:
        raise PoleError(f"{kind}({u},{v}) has a pole at coincident arguments", (kind, u, v))
    return d


def f(u, v, c) -> Rat:
    return (u - v + c) / _diff(u, v, "f")


def g(u, v, c) -> Rat:
    return c / _diff(u, v, "g")


def h(u, v, c) -> Rat:
    return (u - v + c) / c


def frak_f(u, v, c) -> Rat:
    return (u - v + c / 2) / _diff(u, v, "frak_f")


def gamma(u, v, c) -> Rat:
    """g(u,v)/h(v,u) = c^2/((u-v)(v-u+c))."""
    d = _diff(u, v, "gamma")
    e = v - u + c
    if e == 0:
        raise PoleError(f"gamma({u},{v}) has a pole at v-u+c=0", ("gamma", u, v))
    return c * c / (d * e)


def g_inv(u, v, c) -> Rat:
    """1/g(u,v) = (u-v)/c, a polynomial: coincident arguments give zero."""
    return (u - v) / c


def h_inv(u, v, c) -> Rat:
    e = u - v + c
    if e == 0:
        raise PoleError(f"1/h({u},{v}) has a pole", ("h_inv", u, v))
    return c / e


_KINDS = {
    "f": f,
    "g": g,
    "h": h,
    "frak_f": frak_f,
    "gamma": gamma,
    "g_inv": g_inv,
    "h_inv": h_inv,
}


def rational_fn(kind: str, u, v, c) -> Rat:
    try:
        fn = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown rational function kind {kind!r}") from None
    return fn(rat(u), rat(v), rat(c))


def gamma_kind(s: int, algebra: AlgebraSpec) -> str:
    """gamma_s: frak_f for the o-type color 0, gamma otherwise."""
    return "frak_f" if (algebra.is_o and s == 0) else "gamma"


def f_kind(s: int, algebra: AlgebraSpec) -> str:
    return "frak_f" if (algebra.is_o and s == 0) else "f"


def f_colored(s: int, u, v, algebra: AlgebraSpec, c) -> Rat:
    if not algebra.has_color(s):
        raise ValueError(f"color {s} is not legal for {algebra.label()}")
    return rational_fn(f_kind(s, algebra), u, v, c)


Side = Union[Rat, int, Iterable]


def _as_tuple(x) -> tuple:
    if isinstance(x, (tuple, list, frozenset, set)):
        return tuple(x)
    if hasattr(x, "elements"):
        return tuple(x.elements)
    return (x,)


def set_product(kind: str, left: Side, right: Side, c) -> Rat:
    """Product of kind(u, v) over all u in left, v in right."""
    fn = _KINDS[kind]
    out = ONE
    for u in _as_tuple(left):
        for v in _as_tuple(right):
            out *= fn(u, v, c)
    return out


def sp(kind: str, left, right, c) -> Rat:
    """Fast path of set_product for tuples of mpq (no coercion)."""
    if not left or not right:
        return ONE
    fn = _KINDS[kind]
    out = ONE
    for u in left:
        for v in right:
            out *= fn(u, v, c)
    return out


def shifted(z, s: int, c) -> Rat:
    """z_s = z - c(s - 1/2)."""
    return rat(z) - rat(c) * (Rat(s) - HALF)


def theta(m: int) -> int:
    return 1 if m >= 0 else 0


def sigma(m: int) -> int:
    return 2 * theta(m - 1) - 1
