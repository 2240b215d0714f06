"""Invariants of cusped hyperbolic 3-manifolds from decorated ideal triangulations.

Decorations are points of ``(C^2 - 0)/+-1``; a signed list of decorated
tetrahedra gives the Bloch invariant, the class of decorated simplices,
a fundamental class of flattenings and, through the extended Rogers
dilogarithm, the complex volume.
"""

from .configuration import (
    PSL2,
    SL2,
    DegenerateError,
    PointB,
    PointP,
    SymMat,
    VecU,
    act,
    canonical_decorated_simplex,
    cross_ratio,
    det_pair,
    dH,
)
from .extended import ExtendedSum, Flattening, flattening_condition, sigma_tilde_P, sigma_tilde_U
from .kernel import ModPiSq, bloch_wigner_D, lhat, li2, rogers_L
from .pipeline import (
    ChainFormatError,
    DecoratedChain,
    InvariantReport,
    ShapeChain,
    beta_B,
    beta_P,
    boundary,
    complex_volume,
    load_chain,
    load_fixture,
    psl_fundamental_class,
    verify,
)
from .prebloch import PreBlochSum, evaluate_volume
from .truncated import EdgeLabeling, edge_labeling_from_tuple, tuple_from_edge_labeling
from .wedge import WedgeSum

__version__ = "0.1.0"
