"""Reference values computed without the package code.

mpmath supplies an independent dilogarithm; numpy Gauss-Legendre and
scipy quad evaluate the defining integral directly.
"""

import cmath
import math

import mpmath
import numpy as np
from scipy import integrate

mpmath.mp.dps = 30


def li2_mpmath(z: complex) -> complex:
    return complex(mpmath.polylog(2, mpmath.mpc(z.real, z.imag)))


def rogers_mpmath(z: complex) -> complex:
    return li2_mpmath(z) + 0.5 * cmath.log(z) * cmath.log(1 - z)


def bloch_wigner_mpmath(z: complex) -> float:
    zz = mpmath.mpc(z.real, z.imag)
    return float(mpmath.im(mpmath.polylog(2, zz)) + mpmath.arg(1 - zz) * mpmath.log(abs(zz)))


def bloch_wigner_clausen(theta: float) -> float:
    """``D(e^{i theta}) = Cl_2(theta)``, summed as ``sum sin(n theta)/n^2`` in mpmath."""
    return float(mpmath.clsin(2, theta))


_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(200)
_S = 0.5 * (_NODES + 1.0)
_W = 0.5 * _WEIGHTS


def li2_gauss(z: np.ndarray) -> np.ndarray:
    """``-int_0^1 Log(1 - s z)/s ds`` for an array of ``|z| <= 0.95``."""
    z = np.asarray(z, dtype=complex)[..., None]
    integrand = -np.log(1.0 - _S * z) / _S
    return integrand @ _W


def rogers_gauss(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return li2_gauss(z) + 0.5 * np.log(z) * np.log(1 - z)


def rogers_quad(z: complex) -> complex:
    """Adaptive quadrature of the defining integral along the segment from 0 to z."""

    def part(s: float, imag: bool) -> float:
        v = -cmath.log(1 - s * z) / s if s > 0 else z
        return v.imag if imag else v.real

    re = integrate.quad(lambda s: part(s, False), 0, 1, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    im = integrate.quad(lambda s: part(s, True), 0, 1, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    return complex(re, im) + 0.5 * cmath.log(z) * cmath.log(1 - z)


FIGURE_EIGHT_VOLUME = 2 * bloch_wigner_clausen(math.pi / 3)
