"""Concrete G-sets for G = SL(2, C) and the equivariant maps between them.

Models:

* ``VecU``   -- nonzero vectors of C^2 (cosets of U)
* ``PointP`` -- nonzero vectors up to sign (cosets of P)
* ``SymMat`` -- nonzero symmetric 2x2 matrices of determinant zero
* ``PointB`` -- points of the Riemann sphere as projective pairs (cosets of B)

G acts by left multiplication on the first two, by ``g S g^T`` on
``SymMat`` and by fractional linear transformations on ``PointB``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, TypeVar, Union

from .kernel import half_log_square, principal_arg, principal_log

# relative tolerance below which a coordinate or determinant counts as zero
ZERO_TOL = 1e-12
SUBGROUP_TOL = 1e-9
INVARIANT_TOL = 1e-9


class DegenerateError(ValueError):
    """Two decorations or ideal points that must be distinct coincide."""


def _is_small(x: complex, scale: float) -> bool:
    return abs(x) <= ZERO_TOL * scale


def _sign_normal(entries: Sequence[complex]) -> tuple[complex, ...]:
    """Pick the sign whose first nonzero entry has Arg in (-pi/2, pi/2]."""
    scale = max(abs(e) for e in entries)
    for e in entries:
        if not _is_small(e, scale):
            # Arg in (-pi/2, pi/2] read off the signs, so ties near the
            # imaginary axis do not depend on atan2 rounding
            if abs(e.real) <= ZERO_TOL * abs(e):
                keep = e.imag > 0
            else:
                keep = e.real > 0
            if keep:
                return tuple(complex(x) + 0j for x in entries)
            return tuple(-complex(x) + 0j for x in entries)
    raise ValueError("zero vector has no sign normal form")


@dataclass(frozen=True)
class VecU:
    x: complex
    y: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", complex(self.x))
        object.__setattr__(self, "y", complex(self.y))
        if self.x == 0 and self.y == 0:
            raise ValueError("VecU must be nonzero")

    def __neg__(self) -> VecU:
        return VecU(-self.x, -self.y)

    def norm(self) -> float:
        return math.hypot(abs(self.x), abs(self.y))


@dataclass(frozen=True)
class PointP:
    """A nonzero vector up to sign, stored in sign normal form."""

    x: complex
    y: complex

    def __post_init__(self) -> None:
        x, y = complex(self.x), complex(self.y)
        if x == 0 and y == 0:
            raise ValueError("PointP must be nonzero")
        x, y = _sign_normal((x, y))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def norm(self) -> float:
        return math.hypot(abs(self.x), abs(self.y))

    def isclose(self, other: PointP, tol: float = INVARIANT_TOL) -> bool:
        scale = max(self.norm(), other.norm())
        plus = max(abs(self.x - other.x), abs(self.y - other.y))
        minus = max(abs(self.x + other.x), abs(self.y + other.y))
        return min(plus, minus) <= tol * scale

    def as_list(self) -> list[list[float]]:
        return [[self.x.real, self.x.imag], [self.y.real, self.y.imag]]


@dataclass(frozen=True)
class SymMat:
    """The symmetric matrix ((r, t), (t, s)) with r s = t^2."""

    r: complex
    s: complex
    t: complex

    def __post_init__(self) -> None:
        r, s, t = complex(self.r), complex(self.s), complex(self.t)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        scale = max(abs(r), abs(s), abs(t))
        if scale == 0:
            raise ValueError("SymMat must be nonzero")
        if abs(r * s - t * t) > INVARIANT_TOL * scale**2:
            raise ValueError(f"SymMat determinant is not zero: r*s - t^2 = {r * s - t * t}")

    def isclose(self, other: SymMat, tol: float = INVARIANT_TOL) -> bool:
        scale = max(abs(self.r), abs(self.s), abs(self.t), abs(other.r), abs(other.s), abs(other.t))
        diff = max(abs(self.r - other.r), abs(self.s - other.s), abs(self.t - other.t))
        return diff <= tol * scale


@dataclass(frozen=True)
class PointB:
    """A point ``[z1 : z2]`` of the projective line.

    Stored with the larger coordinate scaled to 1, so infinity is ``(1, 0)``
    and every finite z is ``(z, 1)`` or ``(1, 1/z)``.
    """

    z1: complex
    z2: complex

    def __post_init__(self) -> None:
        z1, z2 = complex(self.z1), complex(self.z2)
        if z1 == 0 and z2 == 0:
            raise ValueError("PointB must be nonzero")
        if abs(z2) >= abs(z1):
            z1, z2 = z1 / z2, 1 + 0j
        else:
            z1, z2 = 1 + 0j, z2 / z1
        object.__setattr__(self, "z1", z1)
        object.__setattr__(self, "z2", z2)

    @classmethod
    def from_complex(cls, z: complex) -> PointB:
        if cmath.isinf(z):
            return cls(1, 0)
        return cls(z, 1)

    @classmethod
    def infinity(cls) -> PointB:
        return cls(1, 0)

    @property
    def is_infinity(self) -> bool:
        return self.z2 == 0

    @property
    def value(self) -> complex:
        if self.z2 == 0:
            return complex("inf")
        return self.z1 / self.z2

    def isclose(self, other: PointB, tol: float = INVARIANT_TOL) -> bool:
        return abs(self.z1 * other.z2 - self.z2 * other.z1) <= tol


@dataclass(frozen=True)
class SL2:
    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, complex(getattr(self, name)))
        scale = max(1.0, max(abs(self.a * self.d), abs(self.b * self.c)))
        if abs(self.det() - 1) > INVARIANT_TOL * scale:
            raise ValueError(f"SL2 determinant is {self.det()}, not 1")

    @classmethod
    def identity(cls) -> SL2:
        return cls(1, 0, 0, 1)

    @classmethod
    def normalized(cls, a: complex, b: complex, c: complex, d: complex) -> SL2:
        """Scale an invertible matrix into SL2 (either square root)."""
        det = a * d - b * c
        if det == 0:
            raise DegenerateError("singular matrix")
        k = cmath.sqrt(det)
        return cls(a / k, b / k, c / k, d / k)

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: SL2) -> SL2:
        return SL2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> SL2:
        return SL2(self.d, -self.b, -self.c, self.a)

    def __neg__(self) -> SL2:
        return SL2(-self.a, -self.b, -self.c, -self.d)

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def max_abs_diff(self, other: SL2) -> float:
        return max(abs(u - v) for u, v in zip(self.entries(), other.entries()))

    def isclose(self, other: SL2, tol: float = INVARIANT_TOL) -> bool:
        return self.max_abs_diff(other) <= tol


@dataclass(frozen=True)
class PSL2:
    """An element of PSL(2, C); the representative is in sign normal form."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self) -> None:
        entries = _sign_normal(tuple(complex(getattr(self, n)) for n in "abcd"))
        for name, value in zip("abcd", entries):
            object.__setattr__(self, name, value)

    @classmethod
    def from_sl2(cls, g: SL2) -> PSL2:
        return cls(g.a, g.b, g.c, g.d)

    def lift(self) -> SL2:
        return SL2(self.a, self.b, self.c, self.d)

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: PSL2) -> PSL2:
        return PSL2.from_sl2(self.lift() @ other.lift())

    def inverse(self) -> PSL2:
        return PSL2(self.d, -self.b, -self.c, self.a)

    def distance(self, other: PSL2) -> float:
        plus = max(abs(u - v) for u, v in zip(self.entries(), other.entries()))
        minus = max(abs(u + v) for u, v in zip(self.entries(), other.entries()))
        return min(plus, minus)

    def isclose(self, other: PSL2, tol: float = INVARIANT_TOL) -> bool:
        return self.distance(other) <= tol

    def is_identity(self, tol: float = INVARIANT_TOL) -> bool:
        return self.isclose(PSL2(1, 0, 0, 1), tol)


# -- subgroup predicates ------------------------------------------------------

Matrix = Union[SL2, PSL2]


def in_B(g: Matrix, tol: float = SUBGROUP_TOL) -> bool:
    return abs(g.c) <= tol


def in_U(g: Matrix, tol: float = SUBGROUP_TOL) -> bool:
    return in_B(g, tol) and abs(g.a - 1) <= tol and abs(g.d - 1) <= tol


def in_P(g: Matrix, tol: float = SUBGROUP_TOL) -> bool:
    if not in_B(g, tol):
        return False
    return (abs(g.a - 1) <= tol and abs(g.d - 1) <= tol) or (
        abs(g.a + 1) <= tol and abs(g.d + 1) <= tol
    )


def in_T(g: Matrix, tol: float = SUBGROUP_TOL) -> bool:
    return abs(g.b) <= tol and abs(g.c) <= tol


def is_counterdiagonal(g: Matrix, tol: float = SUBGROUP_TOL) -> bool:
    return abs(g.a) <= tol and abs(g.d) <= tol


# -- pairings -----------------------------------------------------------------

Decoration = Union[VecU, PointP]


def det_pair(v: Decoration, w: Decoration) -> complex:
    """``det((v), (w)) = v1 w2 - v2 w1``; for ``PointP`` only defined up to sign."""
    return v.x * w.y - v.y * w.x


def det2_pointP(p: Decoration, q: Decoration) -> complex:
    d = det_pair(p, q)
    return d * d


def _check_nondegenerate(d: complex, v: Decoration, w: Decoration) -> None:
    if _is_small(d, v.norm() * w.norm()):
        raise DegenerateError(f"decorations {v} and {w} lie over the same ideal point")


def dH(p: Decoration, q: Decoration) -> complex:
    """Half logarithm of the squared determinant; symmetric and sign-blind."""
    d = det_pair(p, q)
    _check_nondegenerate(d, p, q)
    return half_log_square(d)


def DS(A: SymMat, B: SymMat) -> complex:
    return A.r * B.s - 2 * A.t * B.t + B.r * A.s


def dH_sym(A: SymMat, B: SymMat) -> complex:
    """``Log(DS(A, B)) / 2`` with the principal branch."""
    ds = DS(A, B)
    scale = max(abs(A.r), abs(A.s), abs(A.t)) * max(abs(B.r), abs(B.s), abs(B.t))
    if _is_small(ds, scale):
        raise DegenerateError("symmetric matrices lie over the same ideal point")
    return 0.5 * principal_log(ds)


# -- maps between the models --------------------------------------------------

def rho_iso(p: PointP) -> SymMat:
    return SymMat(p.x * p.x, p.y * p.y, p.x * p.y)


def _principal_sqrt(w: complex) -> complex:
    if w == 0:
        return 0j
    return cmath.rect(math.sqrt(abs(w)), principal_arg(w) / 2)


def rho_inv(A: SymMat) -> PointP:
    x = _principal_sqrt(A.r)
    scale = max(abs(A.r), abs(A.s), abs(A.t))
    if abs(x) ** 2 > ZERO_TOL * scale:
        y = A.t / x
    else:
        x = 0j
        y = _principal_sqrt(A.s)
    return PointP(x, y)


def proj_U_to_P(v: VecU) -> PointP:
    return PointP(v.x, v.y)


def h_P_to_B(p: PointP) -> PointB:
    return PointB(p.x, p.y)


def hopf_U_to_B(v: VecU) -> PointB:
    """The Hopf map ``(x, y) -> x / y``."""
    return PointB(v.x, v.y)


def hbar_Sym_to_B(A: SymMat) -> PointB:
    # r/t = t/s; use whichever pair is better conditioned
    if abs(A.r) >= abs(A.s):
        return PointB(A.r, A.t)
    return PointB(A.t, A.s)


T = TypeVar("T", VecU, PointP, SymMat, PointB)


def act(g: SL2 | PSL2, x: T) -> T:
    """Left action of ``g`` on any of the four models."""
    a, b, c, d = g.a, g.b, g.c, g.d
    if isinstance(x, (VecU, PointP)):
        return type(x)(a * x.x + b * x.y, c * x.x + d * x.y)
    if isinstance(x, PointB):
        return PointB(a * x.z1 + b * x.z2, c * x.z1 + d * x.z2)
    if isinstance(x, SymMat):
        # g S g^T
        r = a * a * x.r + 2 * a * b * x.t + b * b * x.s
        t = a * c * x.r + (a * d + b * c) * x.t + b * d * x.s
        s = c * c * x.r + 2 * c * d * x.t + d * d * x.s
        return SymMat(r, s, t)
    raise TypeError(f"cannot act on {type(x).__name__}")


def _pdet(u: PointB, v: PointB) -> complex:
    return u.z1 * v.z2 - u.z2 * v.z1


def cross_ratio(z0: PointB, z1: PointB, z2: PointB, z3: PointB) -> complex:
    """``(z0-z3)(z1-z2) / ((z0-z2)(z1-z3))``; zero if any two points coincide."""
    pts = (z0, z1, z2, z3)
    dets = {}
    for i in range(4):
        for j in range(i + 1, 4):
            dets[i, j] = _pdet(pts[i], pts[j])
            if _is_small(dets[i, j], 1.0):
                return 0j
    return dets[0, 3] * dets[1, 2] / (dets[0, 2] * dets[1, 3])


def find_transporter(p: VecU, q: VecU) -> SL2:
    """An element of SL2 sending ``p`` to ``q`` (explicit case formulas)."""
    x, y = p.x, p.y
    z, w = q.x, q.y
    x_zero = _is_small(x, p.norm())
    if not x_zero:
        if not _is_small(w, q.norm()):
            return SL2((z * w + x * y) / (x * w), -x / w, w / x, 0)
        return SL2(z / x, 0, -y / z, x / z)
    if not _is_small(z, q.norm()):
        return SL2(0, z / y, -y / z, w / y)
    return SL2(y / w, z / y, 0, w / y)


def mobius_normalizer(a: PointB, b: PointB, c: PointB) -> PSL2:
    """The element of PSL2 sending ``a -> inf``, ``b -> 0``, ``c -> 1``."""
    if any(_is_small(_pdet(u, v), 1.0) for u, v in ((a, b), (a, c), (b, c))):
        raise DegenerateError("normalizing points must be pairwise distinct")
    # rows are the linear forms vanishing at b and at a
    lam = _pdet(c, a)
    mu = _pdet(c, b)
    g = SL2.normalized(lam * b.z2, -lam * b.z1, mu * a.z2, -mu * a.z1)
    return PSL2.from_sl2(g)


def _ideal_points_distinct(t: Sequence[PointP]) -> None:
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            _check_nondegenerate(det_pair(t[i], t[j]), t[i], t[j])


def canonical_decorated_simplex(t: Sequence[PointP]) -> tuple[PointP, ...]:
    """Unique representative of the G-orbit of a decorated simplex (or face).

    The first three ideal points are moved to ``inf, 0, 1``. The image is
    computed from the G-invariant pairwise determinants, so the known zero
    coordinates come out exactly zero.
    """
    if len(t) < 3:
        raise ValueError("need at least three decorations")
    _ideal_points_distinct(t)
    d01 = det_pair(t[0], t[1])
    d02 = det_pair(t[0], t[2])
    d12 = det_pair(t[1], t[2])
    alpha = cmath.sqrt(-d01 * d02 / d12)
    beta = d01 / alpha
    gamma = d02 / alpha
    out = [PointP(alpha, 0), PointP(0, beta), PointP(gamma, gamma)]
    for v in t[3:]:
        # det(v0', v') = alpha*y, det(v1', v') = -beta*x
        out.append(PointP(-det_pair(t[1], v) / beta, det_pair(t[0], v) / alpha))
    return tuple(out)


def canonical_via_normalizer(t: Sequence[PointP]) -> tuple[PointP, ...]:
    """Same orbit representative, computed by applying the Moebius normalizer."""
    _ideal_points_distinct(t)
    g = mobius_normalizer(*(h_P_to_B(p) for p in t[:3]))
    return tuple(act(g, p) for p in t)


def canonical_key(t: Sequence[PointP], ndigits: int = 9) -> tuple[float, ...]:
    """Hashable sign-blind key of a canonical tuple, on a 10^-ndigits grid."""
    key: list[float] = []
    for p in t:
        A = rho_iso(p)
        for v in (A.r, A.s, A.t):
            key.extend((round(v.real, ndigits) + 0.0, round(v.imag, ndigits) + 0.0))
    return tuple(key)


def tuples_isclose(s: Sequence[PointP], t: Sequence[PointP], tol: float = INVARIANT_TOL) -> bool:
    return len(s) == len(t) and all(p.isclose(q, tol) for p, q in zip(s, t))
