"""Regenerate the figure-eight fixtures in src/decobloch/data/.

Two ordered tetrahedra, signs +1 and -1, with faces glued order-preservingly:
face i of tetrahedron 0 goes to face (2, 3, 0, 1)[i] of tetrahedron 1. This
gives one cusp and two edge classes. Each tetrahedron is decorated from
Ptolemy coordinates on its edges, one value per edge class: 1 and a root x
of x^2 - x + 1 = 0.
"""

import cmath
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from decobloch.configuration import SL2, PointP, act  # noqa: E402
from decobloch.pipeline import DecoratedChain, DecoratedSimplex, chain_to_dict  # noqa: E402

X = cmath.exp(-1j * cmath.pi / 3)
# signed Ptolemy coordinates (c01, c02, c03, c12, c13, c23)
PTOLEMY = [
    (1, X, 1, X, X, -1),
    (X, 1, X, -1, -1, X),
]
SIGNS = [1, -1]


def decorate(c01, c02, c03, c12, c13, c23):
    assert abs(c03 * c12 + c01 * c23 - c02 * c13) < 1e-12
    return [PointP(1, 0), PointP(0, c01), PointP(-c12 / c01, c02), PointP(-c13 / c01, c03)]


def chain(scale=1.0, moves=None):
    terms = []
    for k, (sign, coords) in enumerate(zip(SIGNS, PTOLEMY)):
        vs = [PointP(scale * v.x, scale * v.y) for v in decorate(*coords)]
        if moves:
            vs = [act(moves[k], v) for v in vs]
        terms.append(DecoratedSimplex(sign, tuple(vs), ("c0",) * 4))
    return DecoratedChain(terms)


def main():
    out = ROOT / "src" / "decobloch" / "data"
    first = chain_to_dict(chain())
    first["name"] = "figure-eight knot complement"
    moves = [SL2.normalized(2, 1j, 0.5, 3), SL2.normalized(1, -2 + 1j, 0.25j, 1)]
    second = chain_to_dict(chain(scale=1.7 * cmath.exp(0.4j), moves=moves))
    second["name"] = "figure-eight knot complement, rescaled cusp decoration"
    for name, data in (("figure_eight.json", first), ("figure_eight_rescaled.json", second)):
        (out / name).write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
