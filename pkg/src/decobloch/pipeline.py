"""Chains of decorated ideal simplices and the invariants computed from them."""

from __future__ import annotations

import json
from importlib import resources
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable, Sequence, Union

from .configuration import (
    DegenerateError,
    PointP,
    act,
    canonical_decorated_simplex,
    det_pair,
    tuples_isclose,
    SL2,
)
from .extended import ExtendedSum, flattening_from_zpq, lhat_sum, shape_of_P, sigma_tilde_P, zpq_from_flattening
from .kernel import ModPiSq, complex_volume_from_modpisq, lhat
from .prebloch import PreBlochSum, evaluate_volume
from .truncated import c_squared_check, edge_labeling_from_tuple

FORMAT_VERSION = 1
DEFAULT_TOL = 1e-9
CONSISTENCY_TOL = 1e-8
FLAT_TOL = 1e-12


class ChainFormatError(ValueError):
    """Malformed chain file; the message names the offending location."""


class ConsistencyError(RuntimeError):
    """The two volume formulas disagree."""


# -- chain types ---------------------------------------------------------------

@dataclass(frozen=True)
class DecoratedSimplex:
    sign: int
    vertices: tuple[PointP, PointP, PointP, PointP]
    cusps: tuple[str | None, ...] = (None, None, None, None)


@dataclass
class DecoratedChain:
    terms: list[DecoratedSimplex] = field(default_factory=list)

    def __post_init__(self) -> None:
        for index, term in enumerate(self.terms):
            check_simplex(term.vertices, index)

    @classmethod
    def from_tuples(cls, items: Iterable[tuple[int, Sequence[PointP]]]) -> DecoratedChain:
        return cls([DecoratedSimplex(int(s), tuple(t)) for s, t in items])

    def __len__(self) -> int:
        return len(self.terms)

    def transformed(self, g: SL2) -> DecoratedChain:
        return DecoratedChain(
            [DecoratedSimplex(t.sign, tuple(act(g, p) for p in t.vertices), t.cusps) for t in self.terms]
        )

    def reversed(self) -> DecoratedChain:
        return DecoratedChain([DecoratedSimplex(-t.sign, t.vertices, t.cusps) for t in self.terms])

    def __add__(self, other: DecoratedChain) -> DecoratedChain:
        return DecoratedChain([*self.terms, *other.terms])


@dataclass(frozen=True)
class ShapeTerm:
    sign: int
    z: complex
    p: int
    q: int


@dataclass
class ShapeChain:
    terms: list[ShapeTerm] = field(default_factory=list)

    def __post_init__(self) -> None:
        for index, term in enumerate(self.terms):
            if term.z == 0 or term.z == 1:
                raise DegenerateError(f"tetrahedron {index}: degenerate shape {term.z}")

    def __len__(self) -> int:
        return len(self.terms)


Chain = Union[DecoratedChain, ShapeChain]


def check_simplex(vertices: Sequence[PointP], index: int | None = None) -> None:
    where = "" if index is None else f"tetrahedron {index}: "
    if len(vertices) != 4:
        raise ValueError(f"{where}expected 4 vertices, got {len(vertices)}")
    for i in range(4):
        for j in range(i + 1, 4):
            d = det_pair(vertices[i], vertices[j])
            if abs(d) <= 1e-12 * vertices[i].norm() * vertices[j].norm():
                raise DegenerateError(f"{where}vertices {i} and {j} lie over the same ideal point")


# -- file format -----------------------------------------------------------------

def _complex(value: Any, where: str) -> complex:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)
    ):
        raise ChainFormatError(f"{where}: expected [re, im], got {value!r}")
    return complex(value[0], value[1])


def _sign(value: Any, where: str) -> int:
    if value not in (1, -1) or isinstance(value, bool):
        raise ChainFormatError(f"{where}: sign must be 1 or -1, got {value!r}")
    return int(value)


def _int(value: Any, where: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise ChainFormatError(f"{where}: expected an integer, got {value!r}")
    return value


def _load_json(path: str | Path) -> tuple[dict, str]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ChainFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ChainFormatError(f"{path}: top level must be an object")
    if data.get("format_version") != FORMAT_VERSION:
        raise ChainFormatError(f"{path}: format_version must be {FORMAT_VERSION}, got {data.get('format_version')!r}")
    mode = data.get("mode")
    if mode not in ("decorated", "shapes"):
        raise ChainFormatError(f"{path}: mode must be 'decorated' or 'shapes', got {mode!r}")
    if not isinstance(data.get("tetrahedra"), list):
        raise ChainFormatError(f"{path}: 'tetrahedra' must be a list")
    return data, mode


def decorated_from_dict(data: dict) -> DecoratedChain:
    terms = []
    for index, tet in enumerate(data["tetrahedra"]):
        where = f"tetrahedra[{index}]"
        if not isinstance(tet, dict):
            raise ChainFormatError(f"{where}: expected an object")
        sign = _sign(tet.get("sign"), f"{where}.sign")
        vertices = tet.get("vertices")
        if not isinstance(vertices, list) or len(vertices) != 4:
            raise ChainFormatError(f"{where}.vertices: expected 4 vertices")
        points, cusps = [], []
        for k, vertex in enumerate(vertices):
            vwhere = f"{where}.vertices[{k}]"
            if not isinstance(vertex, dict) or "decoration" not in vertex:
                raise ChainFormatError(f"{vwhere}: expected an object with 'decoration'")
            dec = vertex["decoration"]
            if not isinstance(dec, list) or len(dec) != 2:
                raise ChainFormatError(f"{vwhere}.decoration: expected two complex coordinates")
            x = _complex(dec[0], f"{vwhere}.decoration[0]")
            y = _complex(dec[1], f"{vwhere}.decoration[1]")
            if x == 0 and y == 0:
                raise ChainFormatError(f"{vwhere}.decoration: zero vector")
            points.append(PointP(x, y))
            cusp = vertex.get("cusp")
            if cusp is not None and not isinstance(cusp, str):
                raise ChainFormatError(f"{vwhere}.cusp: expected a string")
            cusps.append(cusp)
        check_simplex(points, index)
        terms.append(DecoratedSimplex(sign, tuple(points), tuple(cusps)))
    return DecoratedChain(terms)


def shapes_from_dict(data: dict) -> ShapeChain:
    terms = []
    for index, tet in enumerate(data["tetrahedra"]):
        where = f"tetrahedra[{index}]"
        if not isinstance(tet, dict):
            raise ChainFormatError(f"{where}: expected an object")
        sign = _sign(tet.get("sign"), f"{where}.sign")
        z = _complex(tet.get("z"), f"{where}.z")
        if z == 0 or z == 1:
            raise DegenerateError(f"tetrahedron {index}: degenerate shape {z}")
        terms.append(ShapeTerm(sign, z, _int(tet.get("p", 0), f"{where}.p"), _int(tet.get("q", 0), f"{where}.q")))
    return ShapeChain(terms)


FIXTURES = ("figure_eight", "figure_eight_rescaled")


def fixture_path(name: str = "figure_eight") -> Path:
    """Path of a bundled chain file, e.g. ``figure_eight``."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return Path(str(resources.files("decobloch") / "data" / f"{name}.json"))


def load_fixture(name: str = "figure_eight") -> Chain:
    return load_chain(fixture_path(name))


def parse_decorated(path: str | Path) -> DecoratedChain:
    data, mode = _load_json(path)
    if mode != "decorated":
        raise ChainFormatError(f"{path}: expected mode 'decorated', got {mode!r}")
    return decorated_from_dict(data)


def parse_shapes(path: str | Path) -> ShapeChain:
    data, mode = _load_json(path)
    if mode != "shapes":
        raise ChainFormatError(f"{path}: expected mode 'shapes', got {mode!r}")
    return shapes_from_dict(data)


def load_chain(path: str | Path) -> Chain:
    data, mode = _load_json(path)
    if mode == "decorated":
        return decorated_from_dict(data)
    return shapes_from_dict(data)


def _c(z: complex) -> list[float]:
    return [z.real, z.imag]


def chain_to_dict(chain: Chain) -> dict:
    if isinstance(chain, ShapeChain):
        tets = [{"sign": t.sign, "z": _c(t.z), "p": t.p, "q": t.q} for t in chain.terms]
        return {"format_version": FORMAT_VERSION, "mode": "shapes", "tetrahedra": tets}
    tets = []
    for t in chain.terms:
        vertices = []
        for p, cusp in zip(t.vertices, t.cusps):
            vertex: dict[str, Any] = {"decoration": [_c(p.x), _c(p.y)]}
            if cusp is not None:
                vertex["cusp"] = cusp
            vertices.append(vertex)
        tets.append({"sign": t.sign, "vertices": vertices})
    return {"format_version": FORMAT_VERSION, "mode": "decorated", "tetrahedra": tets}


# -- chain algebra -----------------------------------------------------------------

def _merge(items: Iterable[tuple[int, tuple[PointP, ...]]], tol: float) -> list[tuple[int, tuple[PointP, ...]]]:
    """Add coefficients of G-congruent canonical tuples; drop zero totals."""
    merged: list[list] = []
    for coef, t in items:
        for slot in merged:
            if tuples_isclose(slot[1], t, tol):
                slot[0] += coef
                break
        else:
            merged.append([coef, t])
    return [(c, t) for c, t in merged if c != 0]


def canonical_faces(vertices: Sequence[PointP]) -> list[tuple[int, tuple[PointP, ...]]]:
    out = []
    for i in range(len(vertices)):
        face = tuple(v for k, v in enumerate(vertices) if k != i)
        out.append(((-1) ** i, canonical_decorated_simplex(face)))
    return out


def boundary(c: DecoratedChain, tol: float = DEFAULT_TOL) -> list[tuple[int, tuple[PointP, ...]]]:
    """Signed faces modulo G, with congruent faces cancelled."""
    items = []
    for term in c.terms:
        for sign, face in canonical_faces(term.vertices):
            items.append((term.sign * sign, face))
    return _merge(items, tol)


def is_flat(z: complex) -> bool:
    return abs(z.imag) <= FLAT_TOL * max(1.0, abs(z))


def beta_B(c: DecoratedChain) -> PreBlochSum:
    return PreBlochSum((shape_of_P(t.vertices), t.sign) for t in c.terms)


def shapes(c: DecoratedChain) -> list[tuple[int, complex]]:
    return [(t.sign, shape_of_P(t.vertices)) for t in c.terms]


def flat_simplices(c: DecoratedChain) -> list[int]:
    return [i for i, t in enumerate(c.terms) if is_flat(shape_of_P(t.vertices))]


def beta_P(c: DecoratedChain, tol: float = DEFAULT_TOL) -> list[tuple[int, tuple[PointP, ...]]]:
    return _merge(((t.sign, canonical_decorated_simplex(t.vertices)) for t in c.terms), tol)


def psl_fundamental_class(c: DecoratedChain) -> ExtendedSum:
    return ExtendedSum((t.sign, sigma_tilde_P(t.vertices)) for t in c.terms)


def shape_chain_class(c: ShapeChain) -> ExtendedSum:
    return ExtendedSum((t.sign, flattening_from_zpq(t.z, t.p, t.q)) for t in c.terms)


def lhat_value(c: Chain) -> ModPiSq:
    if isinstance(c, ShapeChain):
        total = ModPiSq(0)
        for t in c.terms:
            total = total + lhat(t.z, t.p, t.q) * t.sign
        return total
    return lhat_sum(psl_fundamental_class(c))


def complex_volume(c: Chain, check: bool = True) -> tuple[float, float]:
    """``(Vol, CS mod pi^2)`` from the L-hat value of the fundamental class."""
    vol, cs = complex_volume_from_modpisq(lhat_value(c))
    if check and isinstance(c, DecoratedChain):
        bw = evaluate_volume(beta_B(c))
        if abs(vol - bw) > CONSISTENCY_TOL:
            raise ConsistencyError(f"Im(L-hat) = {vol!r} but sum of D(z) = {bw!r}")
    return vol, cs


# -- report --------------------------------------------------------------------------

@dataclass
class InvariantReport:
    mode: str
    bloch_terms: list[tuple[int, complex]] = field(default_factory=list)
    beta_P_canonical: list[tuple[int, tuple[PointP, ...]]] = field(default_factory=list)
    flattenings: list[tuple[int, tuple[complex, complex, complex]]] = field(default_factory=list)
    zpq: list[tuple[int, complex, int, int]] = field(default_factory=list)
    volume: float = 0.0
    cs: float = 0.0
    bloch_wigner_volume: float = 0.0
    cycle_residual: int = 0
    checks: dict[str, bool | None] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and all(v is not False for v in self.checks.values())

    def fail(self, check: str, message: str) -> None:
        self.checks[check] = False
        self.failures.append(message)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "ok": self.ok,
            "volume": self.volume,
            "cs": self.cs,
            "bloch_wigner_volume": self.bloch_wigner_volume,
            "cycle_residual": self.cycle_residual,
            "bloch_terms": [{"sign": s, "z": _c(z)} for s, z in self.bloch_terms],
            "beta_P_canonical": [
                {"coefficient": c, "vertices": [p.as_list() for p in t]} for c, t in self.beta_P_canonical
            ],
            "flattenings": [{"sign": s, "w": [_c(w) for w in ws]} for s, ws in self.flattenings],
            "zpq": [{"sign": s, "z": _c(z), "p": p, "q": q} for s, z, p, q in self.zpq],
            "checks": self.checks,
            "failures": self.failures,
            "warnings": self.warnings,
        }


def verify(c: Chain, tol: float = DEFAULT_TOL) -> InvariantReport:
    """Run every check that applies to the chain and collect failures."""
    if isinstance(c, ShapeChain):
        return _verify_shapes(c)
    report = InvariantReport(mode="decorated")
    for i, t in enumerate(c.terms):
        try:
            check_simplex(t.vertices, i)
        except DegenerateError as exc:
            report.fail("nondegenerate", str(exc))
    if report.checks.get("nondegenerate") is False:
        return report
    report.checks["nondegenerate"] = True

    report.bloch_terms = shapes(c)
    for i in flat_simplices(c):
        report.warnings.append(f"tetrahedron {i} is flat (real shape {report.bloch_terms[i][1]})")

    residual = boundary(c, tol)
    report.cycle_residual = sum(abs(n) for n, _ in residual)
    report.checks["cycle"] = report.cycle_residual == 0
    if residual:
        report.failures.append(f"boundary does not cancel: {report.cycle_residual} unmatched faces")

    report.beta_P_canonical = beta_P(c, tol)
    fclass = psl_fundamental_class(c)
    report.flattenings = [(n, f.as_tuple()) for n, f in fclass]
    report.checks["flattenings"] = True
    for i, ((n, f), (_, z)) in enumerate(zip(fclass, report.bloch_terms)):
        try:
            zz, p, q = zpq_from_flattening(f)
        except ValueError as exc:
            report.fail("flattenings", f"tetrahedron {i}: {exc}")
            continue
        report.zpq.append((n, zz, p, q))
        if abs(zz - z) > tol * max(1.0, abs(z)):
            report.fail("flattenings", f"tetrahedron {i}: flattening shape {zz} differs from cross-ratio {z}")

    report.checks["truncated"] = True
    report.checks["c_squared"] = True
    for i, t in enumerate(c.terms):
        errors = edge_labeling_from_tuple(t.vertices).validation_errors()
        if errors:
            report.fail("truncated", f"tetrahedron {i}: {errors[0]}")
        worst = max(c_squared_check(t.vertices).values())
        if worst > tol:
            report.fail("c_squared", f"tetrahedron {i}: c^2 = det^2 residual {worst:.3g}")

    vol, cs = complex_volume(c, check=False)
    report.volume, report.cs = vol, cs
    report.bloch_wigner_volume = evaluate_volume(beta_B(c))
    consistent = abs(vol - report.bloch_wigner_volume) <= CONSISTENCY_TOL
    report.checks["volume_consistency"] = consistent
    if not consistent:
        report.failures.append(
            f"Im(L-hat) volume {vol:.12g} disagrees with Bloch-Wigner volume {report.bloch_wigner_volume:.12g}"
        )
    return report


def _verify_shapes(c: ShapeChain) -> InvariantReport:
    report = InvariantReport(mode="shapes")
    report.bloch_terms = [(t.sign, t.z) for t in c.terms]
    for i, (_, z) in enumerate(report.bloch_terms):
        if is_flat(z):
            report.warnings.append(f"tetrahedron {i} is flat (real shape {z})")
    fclass = shape_chain_class(c)
    report.flattenings = [(n, f.as_tuple()) for n, f in fclass]
    report.zpq = [(t.sign, t.z, t.p, t.q) for t in c.terms]
    report.volume, report.cs = complex_volume(c)
    report.bloch_wigner_volume = evaluate_volume(PreBlochSum((t.z, t.sign) for t in c.terms))
    report.checks["cycle"] = None
    report.checks["flattening_condition"] = None
    report.warnings.append("shape input carries no gluing data: cycle and flattening-condition checks not possible")
    return report


def invariants(c: Chain) -> InvariantReport:
    """Invariants only, without failing on verification problems."""
    return verify(c)


def canonicalize(c: DecoratedChain) -> DecoratedChain:
    return DecoratedChain(
        [DecoratedSimplex(t.sign, canonical_decorated_simplex(t.vertices), t.cusps) for t in c.terms]
    )


__all__ = [
    "ChainFormatError",
    "ConsistencyError",
    "DecoratedSimplex",
    "DecoratedChain",
    "ShapeTerm",
    "ShapeChain",
    "InvariantReport",
    "parse_decorated",
    "parse_shapes",
    "load_chain",
    "chain_to_dict",
    "boundary",
    "beta_B",
    "beta_P",
    "psl_fundamental_class",
    "complex_volume",
    "verify",
    "canonicalize",
    "fixture_path",
    "load_fixture",
]
