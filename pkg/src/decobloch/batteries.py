"""Randomized identity checks, shared by the ``selftest`` command."""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Callable

from .configuration import (
    SL2,
    DS,
    PointB,
    PointP,
    VecU,
    act,
    canonical_decorated_simplex,
    cross_ratio,
    dH,
    h_P_to_B,
    det2_pointP,
    det_pair,
    in_P,
    rho_iso,
    tuples_isclose,
)
from .extended import (
    faces,
    flattening_condition,
    lhat_sum,
    lifted_five_term_sum,
    sigma_tilde_P,
    wedge_cycle_defect,
    wedge_square_defect,
)
from .kernel import bloch_wigner_D
from .pipeline import complex_volume, fixture_path, parse_decorated, verify
from .truncated import c_squared_check, edge_labeling_from_tuple, tuple_from_edge_labeling

MIN_DET = 1e-3


@dataclass
class CheckResult:
    name: str
    ok: bool
    worst: float
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{status} {self.name}: worst {self.worst:.3g}{extra}"


def random_complex(rng: random.Random) -> complex:
    return complex(rng.uniform(-1, 1), rng.uniform(-1, 1))


def random_vectors(rng: random.Random, n: int, min_det: float = MIN_DET) -> list[VecU]:
    """``n`` vectors with entries in the unit square and pairwise ``|det| > min_det``."""
    while True:
        vs = [VecU(random_complex(rng), random_complex(rng)) for _ in range(n)]
        if all(abs(det_pair(vs[i], vs[j])) > min_det for i in range(n) for j in range(i + 1, n)):
            return vs


def random_points(rng: random.Random, n: int, min_det: float = MIN_DET) -> list[PointP]:
    return [PointP(v.x, v.y) for v in random_vectors(rng, n, min_det)]


def random_sl2(rng: random.Random) -> SL2:
    """A unit-scale element: random entries, rescaled to determinant one."""
    while True:
        a, b, c, d = (random_complex(rng) for _ in range(4))
        det = a * d - b * c
        if abs(det) > 0.1:
            return SL2.normalized(a, b, c, d)


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


def flattening_condition_suite(rng: random.Random, n: int = 500, tol: float = 1e-9) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        t = random_vectors(rng, 5)
        fs = [sigma_tilde_P([PointP(v.x, v.y) for v in face]) for face in faces(t)]
        worst = max(worst, max(abs(r) for r in flattening_condition(fs)))
    return CheckResult("flattening condition", worst < tol, worst)


def lhat_five_term_suite(rng: random.Random, n: int = 500, tol: float = 1e-8) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        worst = max(worst, lhat_sum(lifted_five_term_sum(random_vectors(rng, 5))).distance())
    return CheckResult("lifted five-term under L-hat", worst < tol, worst)


def symbolic_wedge_suite() -> CheckResult:
    square = wedge_square_defect(range(4))
    cycle = wedge_cycle_defect(range(5))
    bad = len(square) + len(cycle)
    return CheckResult("symbolic wedge identities", bad == 0, float(bad), "exact")


def regulator_five_term_suite(rng: random.Random, n: int = 500, tol: float = 1e-10) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        pts = [PointB.from_complex(complex(rng.gauss(0, 1), rng.gauss(0, 1))) for _ in range(5)]
        total = 0.0
        for i, face in enumerate(faces(pts)):
            total += (-1) ** i * bloch_wigner_D(cross_ratio(*face))
        worst = max(worst, abs(total))
    return CheckResult("Bloch-Wigner five-term", worst < tol, worst)


def invariance_suite(rng: random.Random, n: int = 100, tol: float = 1e-9) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        g = random_sl2(rng)
        t = random_points(rng, 4)
        gt = [act(g, p) for p in t]
        worst = max(worst, _rel(det2_pointP(gt[0], gt[1]), det2_pointP(t[0], t[1])))
        worst = max(worst, _rel(dH(gt[0], gt[1]), dH(t[0], t[1])))
        A, B = rho_iso(t[2]), rho_iso(t[3])
        worst = max(worst, _rel(DS(act(g, A), act(g, B)), DS(A, B)))
        v, w = VecU(t[0].x, t[0].y), VecU(t[1].x, t[1].y)
        worst = max(worst, _rel(det_pair(act(g, v), act(g, w)), det_pair(v, w)))
        z = cross_ratio(*(h_P_to_B(p) for p in t))
        gz = cross_ratio(*(h_P_to_B(p) for p in gt))
        worst = max(worst, _rel(gz, z))
        f, gf = sigma_tilde_P(t), sigma_tilde_P(gt)
        worst = max(worst, max(_rel(a, b) for a, b in zip(gf.as_tuple(), f.as_tuple())))
        if not edge_labeling_from_tuple(gt).isclose(edge_labeling_from_tuple(t), tol):
            worst = max(worst, 1.0)
        if not tuples_isclose(canonical_decorated_simplex(gt), canonical_decorated_simplex(t), tol):
            worst = max(worst, 1.0)
    return CheckResult("G-invariance", worst < tol, worst)


def truncated_suite(rng: random.Random, n: int = 200) -> CheckResult:
    worst = 0.0
    failures = 0
    for _ in range(n):
        t = random_points(rng, 4)
        labeling = edge_labeling_from_tuple(t)
        failures += len(labeling.validation_errors(1e-12))
        if not tuples_isclose(tuple_from_edge_labeling(labeling), canonical_decorated_simplex(t)):
            failures += 1
        worst = max(worst, max(c_squared_check(t).values()))
    ok = failures == 0 and worst < 1e-9
    return CheckResult("truncated round-trip", ok, worst, f"{failures} failures")


def conjugation_suite(rng: random.Random, n: int = 100, threshold: float = 1e-6) -> CheckResult:
    """``g h g^-1`` leaves P whenever ``g`` is not upper triangular and ``h != I`` is unipotent."""
    smallest = float("inf")
    for _ in range(n):
        while True:
            g = random_sl2(rng)
            if abs(g.c) > 1e-3:
                break
        x = random_complex(rng)
        while abs(x) < 1e-3:
            x = random_complex(rng)
        h = SL2(1, x, 0, 1)
        k = g @ h @ g.inverse()
        offending = max(abs(k.c), min(max(abs(k.a - 1), abs(k.d - 1)), max(abs(k.a + 1), abs(k.d + 1))))
        if in_P(k):
            offending = 0.0
        smallest = min(smallest, offending)
    return CheckResult("conjugation lemma", smallest > threshold, smallest, "smallest offending entry")


FIGURE_EIGHT_VOLUME = 2 * bloch_wigner_D(cmath.exp(1j * cmath.pi / 3))


def fixture_suite(tol: float = 1e-9) -> CheckResult:
    worst = 0.0
    notes = []
    for name in ("figure_eight", "figure_eight_rescaled"):
        chain = parse_decorated(fixture_path(name))
        report = verify(chain, tol)
        if not report.ok:
            notes.append(f"{name}: {'; '.join(report.failures)}")
            worst = max(worst, 1.0)
        vol, cs = complex_volume(chain)
        worst = max(worst, abs(vol - FIGURE_EIGHT_VOLUME))
        cs_err = min(cs, math.pi**2 - cs)
        if cs_err > 1e-6:
            notes.append(f"{name}: cs = {cs}")
            worst = max(worst, cs_err)
    return CheckResult("figure-eight fixtures", worst < tol and not notes, worst, "; ".join(notes))


def run_all(seed: int = 0, scale: float = 1.0, symbolic: bool = True) -> list[CheckResult]:
    """Every battery; ``scale`` shrinks the sample counts for quick runs."""
    rng = random.Random(seed)

    def k(n: int) -> int:
        return max(1, int(n * scale))

    suites: list[Callable[[], CheckResult]] = [
        lambda: flattening_condition_suite(rng, k(500)),
        lambda: lhat_five_term_suite(rng, k(500)),
        lambda: regulator_five_term_suite(rng, k(500)),
        lambda: invariance_suite(rng, k(100)),
        lambda: truncated_suite(rng, k(200)),
        lambda: conjugation_suite(rng, k(100)),
        fixture_suite,
    ]
    if symbolic:
        suites.insert(2, symbolic_wedge_suite)
    return [suite() for suite in suites]
