import pytest

from decobloch.batteries import random_points, random_sl2
from decobloch.configuration import (
    PSL2,
    DegenerateError,
    PointP,
    act,
    canonical_decorated_simplex,
    det_pair,
    in_P,
    is_counterdiagonal,
    tuples_isclose,
)
from decobloch.truncated import (
    EdgeLabeling,
    LabelingError,
    alpha_entry,
    c_squared_check,
    decorate_pair,
    edge_labeling_by_products,
    edge_labeling_from_tuple,
    tuple_from_edge_labeling,
    vertex_label,
)

WORKED = (PointP(1, 0), PointP(0, 1), PointP(1, 1), PointP(1, 2))


def test_decorate_pair_example():
    first, second = decorate_pair(PointP(1, 0), PointP(0, 1))
    assert first.is_identity(1e-15)
    assert second.isclose(PSL2(0, -1, 1, 0), 1e-15)


def test_decorate_pair_quotient_is_counterdiagonal(rng):
    for _ in range(100):
        p, q = random_points(rng, 2)
        first, second = decorate_pair(p, q)
        quotient = first.inverse() @ second
        d = det_pair(p, q)
        assert quotient.isclose(PSL2(0, -1 / d, d, 0), 1e-12 * max(1, abs(d), 1 / abs(d)))
        # sign flips of either decoration leave both classes unchanged
        f2, s2 = decorate_pair(PointP(-p.x, -p.y), q)
        assert f2.isclose(first, 1e-12) and s2.isclose(second, 1e-12)


def test_decorate_pair_degenerate():
    with pytest.raises(DegenerateError):
        decorate_pair(PointP(1, 2), PointP(-2, -4))


def test_worked_example():
    e = edge_labeling_from_tuple(WORKED)
    assert e.long_edges[0, 1].isclose(PSL2(0, -1, 1, 0), 1e-15)
    # det(v2, v1) = 1*1 - 1*0 = 1, det(v0, v1) = det(v0, v2) = 1
    assert det_pair(WORKED[2], WORKED[1]) == 1
    assert alpha_entry(WORKED, 0, 1, 2) == 1
    assert e.short_edges[0, 1, 2].isclose(PSL2(1, 1, 0, 1), 1e-15)
    assert abs(e.long_edges[0, 1].c ** 2 - det_pair(WORKED[0], WORKED[1]) ** 2) < 1e-15
    back = tuple_from_edge_labeling(e)
    assert tuples_isclose(back, canonical_decorated_simplex(WORKED), 1e-12)
    assert edge_labeling_from_tuple(back).isclose(e, 1e-12)


def test_two_routes_agree_and_validate(rng):
    for _ in range(100):
        t = random_points(rng, 4)
        e = edge_labeling_from_tuple(t)
        assert e.validation_errors(1e-12) == []
        assert e.isclose(edge_labeling_by_products(t), 1e-9)
        for a in e.short_edges.values():
            assert in_P(a)
        for g in e.long_edges.values():
            assert is_counterdiagonal(g)


def test_vertex_label_has_det_one(rng):
    t = random_points(rng, 3)
    assert abs(vertex_label(t, 0, 2).det() - 1) < 1e-12


def test_labeling_invariant_under_G(rng):
    for _ in range(100):
        t = random_points(rng, 4)
        g = random_sl2(rng)
        assert edge_labeling_from_tuple([act(g, p) for p in t]).isclose(edge_labeling_from_tuple(t), 1e-9)


def test_round_trip(rng):
    for _ in range(100):
        t = random_points(rng, 4)
        e = edge_labeling_from_tuple(t)
        back = tuple_from_edge_labeling(e)
        assert tuples_isclose(back, canonical_decorated_simplex(t), 1e-9)
        assert edge_labeling_from_tuple(back).isclose(e, 1e-9)


def test_round_trip_on_triangles_and_pentachora(rng):
    for n in (3, 5):
        t = random_points(rng, n)
        e = edge_labeling_from_tuple(t)
        assert e.validation_errors(1e-12) == []
        assert tuples_isclose(tuple_from_edge_labeling(e), canonical_decorated_simplex(t), 1e-9)


def test_invalid_labeling_rejected():
    e = edge_labeling_from_tuple(WORKED)
    broken = EdgeLabeling(e.n_vertices, dict(e.short_edges), dict(e.long_edges))
    broken.long_edges[0, 1] = PSL2(1, -1, 1, 0)
    assert any("not counterdiagonal" in msg for msg in broken.validation_errors())
    with pytest.raises(LabelingError):
        tuple_from_edge_labeling(broken)
    bad_short = EdgeLabeling(e.n_vertices, dict(e.short_edges), dict(e.long_edges))
    bad_short.short_edges[0, 1, 2] = PSL2(1, 5, 0, 1)
    assert any("do not multiply" in msg or "not inverse" in msg for msg in bad_short.validation_errors())


def test_c_squared(rng):
    res = c_squared_check(WORKED)
    assert res["c2_01"] == 0
    assert len(res) == 9
    for _ in range(200):
        assert max(c_squared_check(random_points(rng, 4)).values()) < 1e-9


def test_c_squared_degenerate():
    with pytest.raises(DegenerateError):
        c_squared_check((PointP(1, 0), PointP(2, 0), PointP(1, 1), PointP(1, 2)))
    with pytest.raises(ValueError):
        c_squared_check(WORKED[:3])
