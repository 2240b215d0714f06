import math
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from decobloch.batteries import random_points, random_sl2, random_vectors
from decobloch.configuration import PointP, VecU, act, proj_U_to_P, rho_iso
from decobloch.extended import (
    FLATTENING_EQUATIONS,
    ExtendedSum,
    Flattening,
    FlatteningError,
    faces,
    five_term_flattenings,
    flattening_condition,
    flattening_from_zpq,
    lhat_sum,
    lifted_five_term_sum,
    mu,
    mu_symbolic,
    nu_hat,
    nu_hat_symbolic,
    shape_of_P,
    shape_of_U,
    sigma_tilde_P,
    sigma_tilde_sym,
    sigma_tilde_U,
    transfer_relation,
    wedge_cycle_defect,
    wedge_square_defect,
    zpq_from_flattening,
)
from decobloch.kernel import PI, ModPiSq
from decobloch.wedge import WedgeSum

LN2 = math.log(2)
EXAMPLE = [VecU(1, 0), VecU(0, 1), VecU(1, 1), VecU(1, 2)]

shapes = st.complex_numbers(min_magnitude=0.05, max_magnitude=20, allow_nan=False, allow_infinity=False).filter(
    lambda z: abs(z - 1) > 0.05
)


# -- [z; p, q] -------------------------------------------------------------------

def test_flattening_from_zpq_examples():
    f = flattening_from_zpq(2, 0, 0)
    assert f.isclose(Flattening(LN2, -1j * PI, -LN2 + 1j * PI), 1e-15)
    f = flattening_from_zpq(0.5, 0, 0)
    assert f.isclose(Flattening(-LN2, LN2, 0), 1e-15)
    with pytest.raises(ValueError):
        flattening_from_zpq(1, 0, 0)


def test_zpq_examples():
    z, p, q = zpq_from_flattening(Flattening(LN2, -1j * PI, -LN2 + 1j * PI))
    assert abs(z - 2) < 1e-15 and (p, q) == (0, 0)
    z, p, q = zpq_from_flattening(Flattening(LN2 + 1j * PI, -1j * PI, -LN2))
    assert abs(z - 2) < 1e-15 and (p, q) == (1, 0)


@given(shapes, st.integers(-6, 6), st.integers(-6, 6))
def test_zpq_round_trip(z, p, q):
    f = flattening_from_zpq(z, p, q)
    got = zpq_from_flattening(f)
    assert abs(got[0] - z) <= 1e-9 * max(1, abs(z))
    assert flattening_from_zpq(*got).isclose(f, 1e-9)
    if z.imag == 0 or abs(z.imag) > 1e-9 * abs(z):
        assert got[1:] == (p, q)


@pytest.mark.parametrize("z", [2, -3, 5.5, -0.25])
def test_zpq_round_trip_real_shapes(z):
    for p in range(-3, 4):
        for q in range(-3, 4):
            got = zpq_from_flattening(flattening_from_zpq(z, p, q))
            assert got[1:] == (p, q)


def test_flattening_rejects_bad_triples():
    with pytest.raises(FlatteningError):
        Flattening(1, 1, 1)
    # sums to zero, but the exponentials are not z and 1 - z
    with pytest.raises(FlatteningError):
        zpq_from_flattening(Flattening(0.3, 0.9j, -0.3 - 0.9j))
    # right shape, but w0 off by half of pi i
    with pytest.raises(FlatteningError):
        zpq_from_flattening(Flattening(LN2 + 0.5j * PI, 0.5j * PI, -LN2 - 1j * PI))


# -- sigma tilde ------------------------------------------------------------------

def test_sigma_tilde_example():
    f = sigma_tilde_U(EXAMPLE)
    assert f.isclose(Flattening(LN2, 0, -LN2), 1e-15)
    assert abs(shape_of_U(EXAMPLE) - 2) < 1e-15
    fp = sigma_tilde_P([proj_U_to_P(v) for v in EXAMPLE])
    assert fp == f


def test_sigma_tilde_models_agree(rng):
    for _ in range(200):
        vs = random_vectors(rng, 4)
        ps = [proj_U_to_P(v) for v in vs]
        f_u = sigma_tilde_U(vs)
        f_p = sigma_tilde_P(ps)
        f_s = sigma_tilde_sym([rho_iso(p) for p in ps])
        assert f_u.isclose(f_p, 1e-12)
        assert f_s.isclose(f_p, 1e-12)
        flipped = [PointP(-p.x, -p.y) for p in ps]
        assert sigma_tilde_P(flipped) == f_p
        signs = [VecU(-v.x, -v.y) if k % 2 else v for k, v in enumerate(vs)]
        assert sigma_tilde_U(signs).isclose(f_u, 1e-12)


def test_sigma_tilde_properties(rng):
    for _ in range(200):
        t = random_points(rng, 4)
        f = sigma_tilde_P(t)
        assert abs(sum(f.as_tuple())) < 1e-12
        z = shape_of_P(t)
        assert abs(f.shape - z) <= 1e-9 * max(1, abs(z))
        g = random_sl2(rng)
        assert sigma_tilde_P([act(g, p) for p in t]).isclose(f, 1e-9)


# -- flattening condition ----------------------------------------------------------

# Slot of an edge inside a tetrahedron: 0 for {01, 23}, 1 for {03, 12}, 2 for {02, 13}.
SLOT = {(0, 1): 0, (2, 3): 0, (0, 3): 1, (1, 2): 1, (0, 2): 2, (1, 3): 2}


def generated_equation(a, b):
    terms = []
    for face in range(5):
        if face in (a, b):
            continue
        local = [v for v in range(5) if v != face]
        i, j = sorted((local.index(a), local.index(b)))
        terms.append((1 if face % 2 == 0 else -1, face, SLOT[i, j]))
    return sorted(terms, key=lambda t: t[1])


def test_equations_match_combinatorial_rule():
    edges = [e for e, _ in FLATTENING_EQUATIONS]
    assert sorted(tuple(sorted(e)) for e in edges) == list(combinations(range(5), 2))
    for (a, b), eqn in FLATTENING_EQUATIONS:
        assert sorted(eqn, key=lambda t: t[1]) == generated_equation(a, b)


def test_equations_listed_in_reading_order():
    assert [e for e, _ in FLATTENING_EQUATIONS] == [
        (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (3, 0), (4, 0), (4, 1)
    ]


def test_flattening_condition_on_sigma_images(rng):
    for _ in range(100):
        fs = five_term_flattenings(random_vectors(rng, 5))
        assert max(abs(r) for r in flattening_condition(fs)) < 1e-9


def test_flattening_condition_generic_failure():
    fs = [flattening_from_zpq(z, 0, 0) for z in (2, 3j, -1 + 1j, 0.5 + 2j, 4 - 1j)]
    assert max(abs(r) for r in flattening_condition(fs)) > 0.1


def test_flattening_condition_perturbation(rng):
    fs = five_term_flattenings(random_vectors(rng, 5))
    face, slot, other = 2, 1, 0
    w = list(fs[face].as_tuple())
    w[slot] += 1j * PI
    w[other] -= 1j * PI
    bumped = list(fs)
    bumped[face] = Flattening(*w)
    res = flattening_condition(bumped)
    for (edge, eqn), r in zip(FLATTENING_EQUATIONS, res):
        involved = any(f == face and s in (slot, other) for _, f, s in eqn)
        assert (abs(r) > 1) == involved, edge


def test_flattening_condition_needs_five():
    with pytest.raises(ValueError):
        flattening_condition([flattening_from_zpq(2, 0, 0)] * 4)


# -- wedges -------------------------------------------------------------------------

def test_nu_hat_zero_convention():
    assert nu_hat(Flattening(LN2, 0, -LN2)).is_zero()
    assert not nu_hat(flattening_from_zpq(2, 0, 0)).is_zero()


def test_nu_hat_symbolic_expansion():
    got = nu_hat_symbolic(range(4))
    w0 = {"e03": 1, "e12": 1, "e02": -1, "e13": -1}
    w1 = {"e02": 1, "e13": 1, "e01": -1, "e23": -1}
    expected = WedgeSum((a, b, m * n) for a, m in w0.items() for b, n in w1.items())
    assert got == expected
    symbols = {s for a, b, _ in got for s in (a, b)}
    assert symbols == {"e01", "e02", "e03", "e12", "e13", "e23"}


def test_square_commutes_symbolically():
    assert wedge_square_defect(range(4)).is_zero()
    assert wedge_square_defect("abcd").is_zero()


def test_cycle_identity_symbolically():
    assert wedge_cycle_defect(range(5)).is_zero()
    # the alternating sum of mu over the faces of the faces is zero on its own
    total = WedgeSum()
    for i, face in enumerate(faces(range(5))):
        for j, sub in enumerate(faces(face)):
            total = total + mu_symbolic(sub).scale((-1) ** (i + j))
    assert total.is_zero()


def test_mu_numeric_runs(rng):
    t = random_points(rng, 3)
    assert len(mu(t)) == 3


# -- L hat on extended sums -----------------------------------------------------

def test_lhat_sum_empty():
    assert lhat_sum(ExtendedSum()) == ModPiSq(0)


def test_transfer_relation_vanishes(rng):
    for _ in range(50):
        z = complex(rng.gauss(0, 2), rng.gauss(0, 2))
        p, q, p2, q2 = (rng.randint(-4, 4) for _ in range(4))
        assert lhat_sum(transfer_relation(z, p, q, p2, q2)).isclose(ModPiSq(0), 1e-12)


def test_lifted_five_term(rng):
    worst = 0.0
    for _ in range(200):
        worst = max(worst, lhat_sum(lifted_five_term_sum(random_vectors(rng, 5))).distance())
    assert worst < 1e-8


def test_lifted_five_term_for_points(rng):
    t = random_points(rng, 5)
    assert lhat_sum(lifted_five_term_sum(t)).distance() < 1e-8


def test_wrong_flattenings_break_five_term(rng):
    fs = five_term_flattenings(random_vectors(rng, 5))
    z, p, q = zpq_from_flattening(fs[0])
    fs[0] = flattening_from_zpq(z, p + 1, q)
    total = lhat_sum(ExtendedSum(((-1) ** i, f) for i, f in enumerate(fs)))
    assert total.distance() > 1e-3

