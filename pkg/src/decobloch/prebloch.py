"""Formal sums of cross-ratio symbols ``[z]`` and their regulators."""

from __future__ import annotations

import cmath
from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Union

from sympy import factorint

from .kernel import bloch_wigner_D
from .wedge import WedgeSum, wedge_linear

Number = Union[complex, float, int, Fraction]

DEGENERATE_TOL = 1e-12
KEY_DIGITS = 12

MINUS_ONE = "-1"


def is_degenerate(z: Number | None) -> bool:
    """True for the symbols ``[0] = [1] = [inf]``, which are zero."""
    if z is None:
        return True
    if isinstance(z, Fraction):
        return z == 0 or z == 1
    z = complex(z)
    if not cmath.isfinite(z):
        return True
    return abs(z) <= DEGENERATE_TOL or abs(z - 1) <= DEGENERATE_TOL or abs(z) >= 1 / DEGENERATE_TOL


def value_key(z: Number) -> Hashable:
    """Exact key for rationals, a rounded ``(re, im)`` pair otherwise."""
    if isinstance(z, (Fraction, int)) and not isinstance(z, bool):
        return Fraction(z)
    z = complex(z)
    return (round(z.real, KEY_DIGITS) + 0.0, round(z.imag, KEY_DIGITS) + 0.0)


class PreBlochSum:
    """Integer-weighted multiset of symbols ``[z]`` with degenerate symbols dropped."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Number | None, int]] = ()):
        acc: dict[Hashable, list] = {}
        for z, n in terms:
            if n == 0 or is_degenerate(z):
                continue
            k = value_key(z)
            if k in acc:
                acc[k][1] += n
            else:
                acc[k] = [z, n]
        self._terms = {k: (v[0], v[1]) for k, v in acc.items() if v[1] != 0}

    @classmethod
    def symbol(cls, z: Number) -> PreBlochSum:
        return cls([(z, 1)])

    def __iter__(self) -> Iterator[tuple[Number, int]]:
        return iter(self._terms.values())

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: PreBlochSum) -> PreBlochSum:
        return PreBlochSum([*self, *other])

    def __neg__(self) -> PreBlochSum:
        return PreBlochSum((z, -n) for z, n in self)

    def __sub__(self, other: PreBlochSum) -> PreBlochSum:
        return self + (-other)

    def scale(self, n: int) -> PreBlochSum:
        return PreBlochSum((z, k * n) for z, k in self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PreBlochSum):
            return NotImplemented
        return {k: n for k, (_, n) in self._terms.items()} == {k: n for k, (_, n) in other._terms.items()}

    def __repr__(self) -> str:
        inner = " ".join(f"{n:+d}[{z}]" for z, n in self)
        return f"PreBlochSum({inner or '0'})"


def five_term_terms(x: Number, y: Number) -> PreBlochSum:
    """``[x] - [y] + [y/x] - [(1-1/x)/(1-1/y)] + [(1-x)/(1-y)]``."""
    if is_degenerate(x) or is_degenerate(y):
        raise ValueError("five term relation needs x, y outside {0, 1, inf}")
    return PreBlochSum(
        [
            (x, 1),
            (y, -1),
            (y / x, 1),
            ((1 - 1 / x) / (1 - 1 / y), -1),
            ((1 - x) / (1 - y), 1),
        ]
    )


def six_symmetries(z: Number) -> list[tuple[Number, int]]:
    """``[z] = [1/(1-z)] = [1-1/z] = -[1/z] = -[z/(z-1)] = -[1-z]``."""
    if is_degenerate(z):
        raise ValueError(f"no cross-ratio symmetries for degenerate z={z!r}")
    return [
        (z, 1),
        (1 / (1 - z), 1),
        (1 - 1 / z, 1),
        (1 / z, -1),
        (z / (z - 1), -1),
        (1 - z, -1),
    ]


def nu(s: PreBlochSum) -> WedgeSum:
    """``[z] -> z ^ (1-z)`` with each value an opaque symbol."""
    return WedgeSum((value_key(z), value_key(1 - z), n) for z, n in s)


def _rational_exponents(q: Fraction) -> dict[Hashable, int]:
    exps: dict[Hashable, int] = {}
    if q < 0:
        exps[MINUS_ONE] = 1
        q = -q
    for p, e in factorint(q.numerator).items():
        exps[p] = exps.get(p, 0) + e
    for p, e in factorint(q.denominator).items():
        exps[p] = exps.get(p, 0) - e
    return {p: e for p, e in exps.items() if e != 0 and p != 1}


def nu_rational(s: PreBlochSum) -> WedgeSum:
    """``nu`` in the exterior square of Q^x, computed exactly by factoring.

    Q^x is ``{+-1} x`` free on the primes, so pairs involving ``-1`` are
    2-torsion and their coefficients are reduced mod 2.
    """
    total = WedgeSum()
    for z, n in s:
        if not isinstance(z, Fraction):
            raise TypeError("nu_rational needs Fraction symbols")
        total = total + wedge_linear(_rational_exponents(z), _rational_exponents(1 - z)).scale(n)
    return WedgeSum((a, b, k % 2 if MINUS_ONE in (a, b) else k) for a, b, k in total)


def evaluate_volume(s: PreBlochSum) -> float:
    """The Bloch-Wigner regulator ``sum n D(z)``."""
    return sum(n * bloch_wigner_D(complex(z)) for z, n in s)
