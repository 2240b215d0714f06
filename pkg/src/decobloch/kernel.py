"""Branch-fixed logarithms, dilogarithms and arithmetic modulo pi^2.

All logarithms use the principal branch with ``-pi < Arg(w) <= pi``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

PI = math.pi
PI2 = math.pi**2
PI_I = complex(0.0, math.pi)

DEFAULT_TOL = 1e-9


class PrecisionWarning(RuntimeWarning):
    """Series evaluation exhausted its term budget before converging."""


def principal_arg(w: complex) -> float:
    w = complex(w)
    if w.imag == 0.0 and w.real < 0.0:
        # atan2 would return -pi for a -0.0 imaginary part
        return PI
    return math.atan2(w.imag, w.real)


def principal_log(w: complex) -> complex:
    """``ln|w| + i Arg(w)`` with ``Arg(w)`` in ``(-pi, pi]``."""
    w = complex(w)
    if w == 0:
        raise ValueError("logarithm of zero")
    return complex(math.log(abs(w)), principal_arg(w))


def half_log_square(w: complex) -> complex:
    """Return ``Log(w**2) / 2``, which does not depend on the sign of ``w``."""
    log_w = principal_log(w)
    arg = log_w.imag
    if arg <= -PI / 2:
        return log_w + PI_I
    if arg <= PI / 2:
        return log_w
    return log_w - PI_I


@lru_cache(maxsize=None)
def _bernoulli(n_max: int) -> tuple[float, ...]:
    # B_1 = -1/2 convention
    b = [Fraction(0)] * (n_max + 1)
    b[0] = Fraction(1)
    for m in range(1, n_max + 1):
        acc = Fraction(0)
        binom = 1
        for k in range(m):
            acc += binom * b[k]
            binom = binom * (m + 1 - k) // (k + 1)
        b[m] = -acc / (m + 1)
    return tuple(float(x) for x in b)


def _li2_bernoulli(z: complex, max_terms: int = 60) -> complex:
    # Li2(z) = sum_n B_n u^(n+1)/(n+1)!, u = -Log(1-z); needs |u| < 2 pi.
    u = -principal_log(1 - z)
    bern = _bernoulli(max_terms)
    total = complex(0.0)
    power = u  # u^(n+1)/(n+1)!
    for n in range(max_terms):
        if n > 1 and n % 2 == 1:
            power = power * u / (n + 2)
            continue
        term = bern[n] * power
        total += term
        power = power * u / (n + 2)
        if n > 2 and abs(term) < 1e-17 * max(1.0, abs(total)):
            return total
    warnings.warn(f"Li2 series did not converge at z={z!r}", PrecisionWarning)
    return total


def li2(z: complex) -> complex:
    """Principal-branch dilogarithm ``-int_0^z Log(1-t)/t dt``.

    The branch cut is ``[1, inf)``; on the cut the value is the limit from
    the upper half plane, consistent with ``Arg(-1) = pi``.
    """
    z = complex(z)
    if z == 0:
        return complex(0.0)
    if z == 1:
        return complex(PI2 / 6)
    if abs(z) > 1.0:
        # inversion: Li2(z) = -Li2(1/z) - pi^2/6 - Log(-z)^2/2
        log_mz = principal_log(-z)
        return -li2(1 / z) - PI2 / 6 - 0.5 * log_mz * log_mz
    if z.real > 0.5:
        # reflection: Li2(z) = pi^2/6 - Log z Log(1-z) - Li2(1-z)
        return PI2 / 6 - principal_log(z) * principal_log(1 - z) - _li2_bernoulli(1 - z)
    return _li2_bernoulli(z)


def rogers_L(z: complex) -> complex:
    """Rogers dilogarithm ``Li2(z) + Log(z) Log(1-z) / 2`` on the fixed branch."""
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError(f"Rogers dilogarithm undefined at z={z!r}")
    return li2(z) + 0.5 * principal_log(z) * principal_log(1 - z)


def bloch_wigner_D(z: complex) -> float:
    """Bloch-Wigner dilogarithm ``Im Li2(z) + Arg(1-z) ln|z|``.

    Zero on the real line (including 0, 1) and at infinity.
    """
    z = complex(z)
    if z.imag == 0.0 or not cmath.isfinite(z):
        return 0.0
    if abs(z) > 1.0:
        return -bloch_wigner_D(1 / z)
    return li2(z).imag + principal_arg(1 - z) * math.log(abs(z))


def _normalize_real(x: float) -> float:
    r = math.fmod(x, PI2)
    if r < 0:
        r += PI2
    if r >= PI2:
        r -= PI2
    return r + 0.0


@dataclass(frozen=True, eq=False)
class ModPiSq:
    """A complex number modulo real integer multiples of pi^2."""

    value: complex

    def __post_init__(self) -> None:
        v = complex(self.value)
        object.__setattr__(self, "value", complex(_normalize_real(v.real), v.imag))

    @property
    def real(self) -> float:
        return self.value.real

    @property
    def imag(self) -> float:
        return self.value.imag

    def __add__(self, other: ModPiSq | complex) -> ModPiSq:
        other_v = other.value if isinstance(other, ModPiSq) else complex(other)
        return ModPiSq(self.value + other_v)

    __radd__ = __add__

    def __sub__(self, other: ModPiSq | complex) -> ModPiSq:
        other_v = other.value if isinstance(other, ModPiSq) else complex(other)
        return ModPiSq(self.value - other_v)

    def __neg__(self) -> ModPiSq:
        return ModPiSq(-self.value)

    def __mul__(self, n: int) -> ModPiSq:
        if not isinstance(n, int):
            raise TypeError("ModPiSq can only be scaled by integers")
        return ModPiSq(self.value * n)

    __rmul__ = __mul__

    def distance(self, other: ModPiSq | complex = 0) -> float:
        """Distance in the quotient ``C / pi^2 Z``."""
        d = (self - other).value
        re = min(d.real, PI2 - d.real)
        return math.hypot(re, d.imag)

    def isclose(self, other: ModPiSq | complex, tol: float = DEFAULT_TOL) -> bool:
        return self.distance(other) <= tol

    def key(self, ndigits: int = 9) -> tuple[float, float]:
        re = round(self.real, ndigits)
        if re >= round(PI2, ndigits):
            re = 0.0
        return (re + 0.0, round(self.imag, ndigits) + 0.0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ModPiSq):
            return self.key() == other.key()
        if isinstance(other, (int, float, complex)):
            return self.key() == ModPiSq(other).key()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"ModPiSq({self.value.real:.12g}{self.value.imag:+.12g}j)"


def lhat(z: complex, p: int, q: int) -> ModPiSq:
    """``L(z) + (pi i/2)(q Log z + p Log(1-z)) - pi^2/6`` mod pi^2."""
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError(f"lhat undefined at z={z!r}")
    middle = 0.5 * PI_I * (q * principal_log(z) + p * principal_log(1 - z))
    return ModPiSq(rogers_L(z) + middle - PI2 / 6)


def complex_volume_from_modpisq(v: ModPiSq) -> tuple[float, float]:
    """Split ``v = i (Vol + i CS)`` into ``(Vol, CS mod pi^2)``."""
    return v.imag, _normalize_real(-v.real)
