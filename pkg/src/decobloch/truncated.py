"""Truncated simplices: edge labelings equivalent to decorated simplices.

A tuple ``(v_0, ..., v_n)`` of decorations with pairwise distinct ideal
points determines, for each ordered pair ``i != j``, the vertex label

    g^{ij} = ((a_i, a_j / D_ij), (c_i, c_j / D_ij)),   D_ij = det(v_i, v_j),

and from it the edge labels ``g_ij = (g^{ij})^{-1} g^{ji}`` (long edges,
counterdiagonal) and ``alpha^i_jk = (g^{ij})^{-1} g^{ik}`` (short edges,
upper unitriangular). Everything is taken in PSL(2, C).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from .configuration import (
    PSL2,
    SL2,
    DegenerateError,
    PointP,
    canonical_decorated_simplex,
    cross_ratio,
    det_pair,
    h_P_to_B,
    is_counterdiagonal,
)

VALIDATION_TOL = 1e-12
RESIDUAL_TOL = 1e-9


class LabelingError(ValueError):
    """An edge labeling violating one of the truncated-simplex conditions."""


def _det(p: PointP, q: PointP) -> complex:
    d = det_pair(p, q)
    if abs(d) <= 1e-12 * p.norm() * q.norm():
        raise DegenerateError(f"decorations {p} and {q} lie over the same ideal point")
    return d


def decorate_pair(p: PointP, q: PointP) -> tuple[PSL2, PSL2]:
    """The unique coset representatives whose quotient is counterdiagonal."""
    d = _det(p, q)
    first = PSL2(p.x, q.x / d, p.y, q.y / d)
    second = PSL2(q.x, p.x / -d, q.y, p.y / -d)
    return first, second


def vertex_label(t: Sequence[PointP], i: int, j: int) -> SL2:
    d = _det(t[i], t[j])
    return SL2(t[i].x, t[j].x / d, t[i].y, t[j].y / d)


def alpha_entry(t: Sequence[PointP], i: int, j: int, k: int) -> complex:
    """Upper-right entry of ``alpha^i_jk``: ``det(v_k, v_j) / (det(v_i, v_j) det(v_i, v_k))``."""
    return det_pair(t[k], t[j]) / (_det(t[i], t[j]) * _det(t[i], t[k]))


def _unitriangular(x: complex) -> PSL2:
    return PSL2(1, x, 0, 1)


def _counterdiagonal(c: complex) -> PSL2:
    return PSL2(0, -1 / c, c, 0)


@dataclass
class EdgeLabeling:
    """Short edges ``alpha^i_jk`` keyed ``(i, j, k)``; long edges ``g_ij`` keyed ``(i, j)``."""

    n_vertices: int
    short_edges: dict[tuple[int, int, int], PSL2] = field(default_factory=dict)
    long_edges: dict[tuple[int, int], PSL2] = field(default_factory=dict)

    def validation_errors(self, tol: float = VALIDATION_TOL) -> list[str]:
        errors = []
        for key, a in self.short_edges.items():
            if not (abs(a.c) <= tol and abs(a.a - 1) <= tol and abs(a.d - 1) <= tol):
                errors.append(f"short edge {key} is not in P")
        for key, g in self.long_edges.items():
            if not is_counterdiagonal(g, tol):
                errors.append(f"long edge {key} is not counterdiagonal")
        n = self.n_vertices
        for i, j, k in permutations(range(n), 3):
            # hexagonal face i, j, k
            prod = (
                self.short_edges[i, j, k]
                @ self.long_edges[i, k]
                @ self.short_edges[k, i, j]
                @ self.long_edges[k, j]
                @ self.short_edges[j, k, i]
                @ self.long_edges[j, i]
            )
            if not prod.is_identity(tol * _scale(prod)):
                errors.append(f"edge labels around face {(i, j, k)} do not multiply to 1")
            # triangle cutting off vertex i
            tri = self.short_edges[i, j, k] @ self.short_edges[i, k, j]
            if not tri.is_identity(tol * _scale(tri)):
                errors.append(f"short edges at vertex {i} between {j}, {k} are not inverse")
        for l in range(n):
            for i, j, k in permutations([m for m in range(n) if m != l], 3):
                tri = self.short_edges[l, i, j] @ self.short_edges[l, j, k] @ self.short_edges[l, k, i]
                if not tri.is_identity(tol * _scale(tri)):
                    errors.append(f"short edges at vertex {l} around {(i, j, k)} do not multiply to 1")
        return errors

    def validate(self, tol: float = VALIDATION_TOL) -> None:
        errors = self.validation_errors(tol)
        if errors:
            raise LabelingError("; ".join(errors))

    def isclose(self, other: EdgeLabeling, tol: float = RESIDUAL_TOL) -> bool:
        if self.n_vertices != other.n_vertices:
            return False
        if self.short_edges.keys() != other.short_edges.keys() or self.long_edges.keys() != other.long_edges.keys():
            return False
        return all(self.short_edges[k].isclose(other.short_edges[k], tol * _scale(self.short_edges[k])) for k in self.short_edges) and all(
            self.long_edges[k].isclose(other.long_edges[k], tol * _scale(self.long_edges[k])) for k in self.long_edges
        )


def _scale(g: PSL2) -> float:
    return max(1.0, max(abs(e) for e in g.entries()))


def edge_labeling_from_tuple(t: Sequence[PointP]) -> EdgeLabeling:
    n = len(t)
    labeling = EdgeLabeling(n)
    for i, j in permutations(range(n), 2):
        labeling.long_edges[i, j] = _counterdiagonal(_det(t[i], t[j]))
    for i, j, k in permutations(range(n), 3):
        labeling.short_edges[i, j, k] = _unitriangular(alpha_entry(t, i, j, k))
    return labeling


def edge_labeling_by_products(t: Sequence[PointP]) -> EdgeLabeling:
    """Same labeling computed as quotients of vertex labels (independent route)."""
    n = len(t)
    labeling = EdgeLabeling(n)
    g = {(i, j): vertex_label(t, i, j) for i, j in permutations(range(n), 2)}
    for i, j in permutations(range(n), 2):
        labeling.long_edges[i, j] = PSL2.from_sl2(g[i, j].inverse() @ g[j, i])
    for i, j, k in permutations(range(n), 3):
        labeling.short_edges[i, j, k] = PSL2.from_sl2(g[i, j].inverse() @ g[i, k])
    return labeling


def _unitriangular_entry(a: PSL2) -> complex:
    # representative with +1 diagonal
    return a.b / a.a


def _counterdiagonal_entry(g: PSL2) -> complex:
    return g.c


def tuple_from_edge_labeling(e: EdgeLabeling) -> tuple[PointP, ...]:
    """Rebuild the decorations, up to G, from a valid labeling.

    Fix ``v_0 = [1, 0]`` and ``v_1 = [0, c(g_01)]``; then ``c(g_0k) = +-c_k``
    and ``alpha^0_1k = a_k / c_k``. The result is returned in canonical form.
    """
    e.validate()
    n = e.n_vertices
    if n < 3:
        raise LabelingError("need at least three vertices")
    c01 = _counterdiagonal_entry(e.long_edges[0, 1])
    vs = [PointP(1, 0), PointP(0, c01)]
    for k in range(2, n):
        ck = _counterdiagonal_entry(e.long_edges[0, k])
        ratio = _unitriangular_entry(e.short_edges[0, 1, k])
        vs.append(PointP(ck * ratio, ck))
    return canonical_decorated_simplex(vs)


def c_squared_check(t: Sequence[PointP]) -> dict[str, float]:
    """Residuals of ``c(g_ij)^2 = det(v_i, v_j)^2`` and the squared shape formulas."""
    if len(t) != 4:
        raise ValueError("c_squared_check needs a 4-tuple")
    e = edge_labeling_by_products(t)
    c2 = {}
    out: dict[str, float] = {}
    for i in range(4):
        for j in range(i + 1, 4):
            c = e.long_edges[i, j].c
            d2 = _det(t[i], t[j]) ** 2
            c2[i, j] = c * c
            out[f"c2_{i}{j}"] = abs(c * c - d2) / abs(d2)
    z = cross_ratio(*(h_P_to_B(p) for p in t))
    if z == 0:
        raise DegenerateError("coincident ideal points")
    formulas = {
        "z2": (c2[0, 3] * c2[1, 2] / (c2[0, 2] * c2[1, 3]), z * z),
        "inv_1mz_2": (c2[1, 3] * c2[0, 2] / (c2[0, 1] * c2[2, 3]), (1 / (1 - z)) ** 2),
        "1mz_over_z_2": (c2[0, 1] * c2[2, 3] / (c2[0, 3] * c2[1, 2]), ((1 - z) / z) ** 2),
    }
    for name, (lhs, rhs) in formulas.items():
        out[name] = abs(lhs - rhs) / max(1.0, abs(rhs))
    return out


__all__ = [
    "EdgeLabeling",
    "LabelingError",
    "VALIDATION_TOL",
    "decorate_pair",
    "vertex_label",
    "alpha_entry",
    "edge_labeling_from_tuple",
    "edge_labeling_by_products",
    "tuple_from_edge_labeling",
    "c_squared_check",
]
