"""Flattened ideal simplices, the map sigma-tilde and the L-hat regulator.

A flattening of an ideal simplex with shape ``z`` is a triple
``(w0, w1, w2)`` with ``w0 + w1 + w2 = 0``, ``w0 = Log z + p pi i`` and
``w1 = -Log(1 - z) + q pi i``. It is written ``[z; p, q]``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from .configuration import (
    PointP,
    SymMat,
    VecU,
    cross_ratio,
    dH,
    dH_sym,
    h_P_to_B,
    hopf_U_to_B,
)
from .kernel import PI_I, ModPiSq, lhat, principal_log
from .wedge import WedgeSum, wedge_linear

SUM_TOL = 1e-12
SHAPE_TOL = 1e-9
FLATTENING_TOL = 1e-9
LHAT_TOL = 1e-8
INTEGER_TOL = 1e-6
REAL_SNAP = 1e-12


class FlatteningError(ValueError):
    """A log-parameter triple that is not a flattening."""


@dataclass(frozen=True)
class Flattening:
    w0: complex
    w1: complex
    w2: complex

    def __post_init__(self) -> None:
        for name in ("w0", "w1", "w2"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        total = self.w0 + self.w1 + self.w2
        scale = max(1.0, abs(self.w0), abs(self.w1), abs(self.w2))
        if abs(total) > FLATTENING_TOL * scale:
            raise FlatteningError(f"log parameters sum to {total}, not 0")

    def as_tuple(self) -> tuple[complex, complex, complex]:
        return (self.w0, self.w1, self.w2)

    @property
    def shape(self) -> complex:
        return zpq_from_flattening(self)[0]

    def isclose(self, other: Flattening, tol: float = SHAPE_TOL) -> bool:
        return all(abs(a - b) <= tol for a, b in zip(self.as_tuple(), other.as_tuple()))


def flattening_from_zpq(z: complex, p: int, q: int) -> Flattening:
    z = complex(z)
    if z == 0 or z == 1:
        raise ValueError(f"no flattening for degenerate shape z={z!r}")
    w0 = principal_log(z) + p * PI_I
    w1 = -principal_log(1 - z) + q * PI_I
    return Flattening(w0, w1, -w0 - w1)


def _nearest_int(x: float, what: str) -> int:
    n = round(x)
    if abs(x - n) > INTEGER_TOL:
        raise FlatteningError(f"{what} is not an integer multiple of pi*i (residue {x - n:.3g})")
    return int(n)


def zpq_from_flattening(f: Flattening) -> tuple[complex, int, int]:
    """Recover ``(z, p, q)`` from the log parameters.

    ``z = +-exp(w0)`` and ``1 - z = +-exp(-w1)``; exactly one sign choice is
    consistent for a genuine flattening.
    """
    e0 = cmath.exp(f.w0)
    e1 = cmath.exp(-f.w1)
    best = None
    for s0 in (1, -1):
        for s1 in (1, -1):
            resid = abs(s0 * e0 + s1 * e1 - 1) / max(1.0, abs(e0), abs(e1))
            if best is None or resid < best[0]:
                best = (resid, s0 * e0)
    assert best is not None
    resid, z = best
    if abs(z.imag) <= REAL_SNAP * abs(z):
        # keep real shapes on the Arg = pi side of the cut, as flattening_from_zpq does
        z = complex(z.real, 0.0)
    if resid > SHAPE_TOL:
        raise FlatteningError(f"log parameters do not determine a shape (residual {resid:.3g})")
    if abs(z) <= SHAPE_TOL or abs(1 - z) <= SHAPE_TOL:
        raise FlatteningError("recovered shape is degenerate")
    p = _nearest_int(((f.w0 - principal_log(z)) / PI_I).real, "w0 - Log z")
    q = _nearest_int(((f.w1 + principal_log(1 - z)) / PI_I).real, "w1 + Log(1-z)")
    return z, p, q


# -- sigma tilde ---------------------------------------------------------------

def _sigma_from_pairs(h: Callable[[int, int], complex]) -> Flattening:
    w0 = h(0, 3) + h(1, 2) - h(0, 2) - h(1, 3)
    w1 = h(0, 2) + h(1, 3) - h(0, 1) - h(2, 3)
    w2 = h(0, 1) + h(2, 3) - h(0, 3) - h(1, 2)
    return Flattening(w0, w1, w2)


def _check_four(t: Sequence) -> None:
    if len(t) != 4:
        raise ValueError(f"expected a 4-tuple, got {len(t)} entries")


def sigma_tilde_U(t: Sequence[VecU]) -> Flattening:
    _check_four(t)
    return _sigma_from_pairs(lambda i, j: dH(t[i], t[j]))


def sigma_tilde_P(t: Sequence[PointP]) -> Flattening:
    _check_four(t)
    return _sigma_from_pairs(lambda i, j: dH(t[i], t[j]))


def sigma_tilde_sym(t: Sequence[SymMat]) -> Flattening:
    _check_four(t)
    return _sigma_from_pairs(lambda i, j: dH_sym(t[i], t[j]))


def shape_of_U(t: Sequence[VecU]) -> complex:
    return cross_ratio(*(hopf_U_to_B(v) for v in t))


def shape_of_P(t: Sequence[PointP]) -> complex:
    return cross_ratio(*(h_P_to_B(p) for p in t))


# -- flattening condition ------------------------------------------------------

# (edge, [(sign, face, slot)]) read off from the ten displayed equations
FLATTENING_EQUATIONS: tuple[tuple[tuple[int, int], tuple[tuple[int, int, int], ...]], ...] = (
    ((0, 1), ((1, 2, 0), (-1, 3, 0), (1, 4, 0))),
    ((0, 2), ((-1, 1, 0), (-1, 3, 2), (1, 4, 2))),
    ((1, 2), ((1, 0, 0), (-1, 3, 1), (1, 4, 1))),
    ((1, 3), ((1, 0, 2), (1, 2, 1), (1, 4, 2))),
    ((2, 3), ((1, 0, 1), (-1, 1, 1), (1, 4, 0))),
    ((2, 4), ((1, 0, 2), (-1, 1, 2), (-1, 3, 0))),
    ((3, 4), ((1, 0, 0), (-1, 1, 0), (1, 2, 0))),
    ((3, 0), ((-1, 1, 2), (1, 2, 2), (1, 4, 1))),
    ((4, 0), ((-1, 1, 1), (1, 2, 1), (-1, 3, 1))),
    ((4, 1), ((1, 0, 1), (1, 2, 2), (-1, 3, 2))),
)


def flattening_condition(fs: Sequence[Flattening]) -> list[complex]:
    """Residuals of the ten edge equations for the flattenings of the five faces.

    ``fs[i]`` flattens the face that omits vertex ``i``.
    """
    if len(fs) != 5:
        raise ValueError("flattening condition needs exactly five flattenings")
    w = [f.as_tuple() for f in fs]
    return [sum(sign * w[face][slot] for sign, face, slot in eqn) for _, eqn in FLATTENING_EQUATIONS]


def faces(t: Sequence) -> list[tuple]:
    """``d_i t`` for each ``i``: the tuple with entry ``i`` removed."""
    return [tuple(x for k, x in enumerate(t) if k != i) for i in range(len(t))]


# -- nu hat and mu -------------------------------------------------------------

def _edge_symbol(i: Hashable, j: Hashable) -> str:
    a, b = sorted((str(i), str(j)))
    return f"e{a}{b}" if len(a) == len(b) == 1 else f"e{a},{b}"


def _lin(terms: Iterable[tuple[Hashable, int]]) -> dict[Hashable, int]:
    out: dict[Hashable, int] = {}
    for k, n in terms:
        out[k] = out.get(k, 0) + n
    return {k: n for k, n in out.items() if n}


def _numeric_symbol(w: complex, ndigits: int = 12) -> tuple[float, float] | None:
    if abs(w) <= SUM_TOL:
        return None
    return (round(w.real, ndigits) + 0.0, round(w.imag, ndigits) + 0.0)


def nu_hat(f: Flattening) -> WedgeSum:
    """``(w0, w1, w2) -> w0 ^ w1`` with numeric values as opaque symbols.

    For inspection only: numerically equal values share a symbol, but no
    linear relations among values are visible.
    """
    a, b = _numeric_symbol(f.w0), _numeric_symbol(f.w1)
    if a is None or b is None:
        return WedgeSum()
    return WedgeSum([(a, b, 1)])


def sigma_tilde_symbolic(labels: Sequence[Hashable]) -> tuple[dict[Hashable, int], ...]:
    """sigma-tilde of a labelled 4-tuple with each ``dH(v_i, v_j)`` a symbol ``e_ij``."""
    _check_four(labels)

    def e(i: int, j: int) -> str:
        return _edge_symbol(labels[i], labels[j])

    w0 = _lin([(e(0, 3), 1), (e(1, 2), 1), (e(0, 2), -1), (e(1, 3), -1)])
    w1 = _lin([(e(0, 2), 1), (e(1, 3), 1), (e(0, 1), -1), (e(2, 3), -1)])
    w2 = _lin([(e(0, 1), 1), (e(2, 3), 1), (e(0, 3), -1), (e(1, 2), -1)])
    return w0, w1, w2


def nu_hat_symbolic(labels: Sequence[Hashable]) -> WedgeSum:
    w0, w1, _ = sigma_tilde_symbolic(labels)
    return wedge_linear(w0, w1)


def mu_symbolic(labels: Sequence[Hashable]) -> WedgeSum:
    """``e01^e02 - e01^e12 + e02^e12`` on a labelled triple."""
    if len(labels) != 3:
        raise ValueError("mu takes a 3-tuple")
    a, b, c = labels
    e01, e02, e12 = _edge_symbol(a, b), _edge_symbol(a, c), _edge_symbol(b, c)
    return WedgeSum([(e01, e02, 1), (e01, e12, -1), (e02, e12, 1)])


def mu(t: Sequence[PointP]) -> WedgeSum:
    """Numeric ``mu`` on a decorated triangle; values are opaque symbols."""
    if len(t) != 3:
        raise ValueError("mu takes a 3-tuple")
    h01, h02, h12 = dH(t[0], t[1]), dH(t[0], t[2]), dH(t[1], t[2])
    s01, s02, s12 = (_numeric_symbol(h) for h in (h01, h02, h12))
    terms = []
    for a, b, n in ((s01, s02, 1), (s01, s12, -1), (s02, s12, 1)):
        if a is not None and b is not None:
            terms.append((a, b, n))
    return WedgeSum(terms)


def wedge_square_defect(labels: Sequence[Hashable]) -> WedgeSum:
    """``nu_hat(sigma(T)) - mu(boundary T)`` for a labelled 4-tuple; zero when the square commutes."""
    out = nu_hat_symbolic(labels)
    for i, face in enumerate(faces(labels)):
        out = out - mu_symbolic(face).scale((-1) ** i)
    return out


def wedge_cycle_defect(labels: Sequence[Hashable]) -> WedgeSum:
    """``sum (-1)^i nu_hat(sigma(d_i T))`` for a labelled 5-tuple."""
    if len(labels) != 5:
        raise ValueError("need a 5-tuple")
    out = WedgeSum()
    for i, face in enumerate(faces(labels)):
        out = out + nu_hat_symbolic(face).scale((-1) ** i)
    return out


# -- sums and L hat ------------------------------------------------------------

class ExtendedSum:
    """Integer-weighted list of flattenings (no relations are imposed)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[tuple[int, Flattening]] = ()):
        self.terms: list[tuple[int, Flattening]] = [(int(n), f) for n, f in terms if n != 0]

    def __iter__(self) -> Iterator[tuple[int, Flattening]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: ExtendedSum) -> ExtendedSum:
        return ExtendedSum([*self.terms, *other.terms])

    def __neg__(self) -> ExtendedSum:
        return ExtendedSum((-n, f) for n, f in self.terms)

    @classmethod
    def from_zpq(cls, terms: Iterable[tuple[int, complex, int, int]]) -> ExtendedSum:
        return cls((n, flattening_from_zpq(z, p, q)) for n, z, p, q in terms)

    def __repr__(self) -> str:
        return f"ExtendedSum({self.terms!r})"


def transfer_relation(z: complex, p: int, q: int, p2: int, q2: int) -> ExtendedSum:
    """``[z;p,q] + [z;p',q'] - [z;p,q'] - [z;p',q]``, zero in the extended group."""
    return ExtendedSum.from_zpq([(1, z, p, q), (1, z, p2, q2), (-1, z, p, q2), (-1, z, p2, q)])


def lhat_flattening(f: Flattening) -> ModPiSq:
    z, p, q = zpq_from_flattening(f)
    return lhat(z, p, q)


def lhat_sum(s: ExtendedSum) -> ModPiSq:
    total = ModPiSq(0)
    for n, f in s:
        total = total + lhat_flattening(f) * n
    return total


def five_term_flattenings(t: Sequence[VecU | PointP]) -> list[Flattening]:
    """sigma-tilde of the five faces of a 5-tuple of decorations."""
    if len(t) != 5:
        raise ValueError("need a 5-tuple")
    sigma = sigma_tilde_U if isinstance(t[0], VecU) else sigma_tilde_P
    return [sigma(face) for face in faces(t)]


def lifted_five_term_sum(t: Sequence[VecU | PointP]) -> ExtendedSum:
    return ExtendedSum(((-1) ** i, f) for i, f in enumerate(five_term_flattenings(t)))


__all__ = [
    "Flattening",
    "ExtendedSum",
    "FlatteningError",
    "FLATTENING_EQUATIONS",
    "flattening_from_zpq",
    "zpq_from_flattening",
    "sigma_tilde_U",
    "sigma_tilde_P",
    "sigma_tilde_sym",
    "shape_of_U",
    "shape_of_P",
    "flattening_condition",
    "faces",
    "nu_hat",
    "mu",
    "sigma_tilde_symbolic",
    "nu_hat_symbolic",
    "mu_symbolic",
    "wedge_square_defect",
    "wedge_cycle_defect",
    "transfer_relation",
    "lhat_flattening",
    "lhat_sum",
    "five_term_flattenings",
    "lifted_five_term_sum",
]
