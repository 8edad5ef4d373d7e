"""map_spaces のユニットテスト."""

import numpy as np
import pytest

from errors import SpaceMismatchError
from hausdorff import PointSet
from map_spaces import (
    MapTable,
    busemann_delta_p,
    compose,
    delta_p_equivalence_check,
    holder_membership,
    inverse,
    is_isometry,
    kuratowski_delta,
    similarity_coefficient,
)
from spaces import Euclidean

PLANE = Euclidean(2)
DOMAIN = PointSet.of(PLANE, [(0.0, 0.0), (1.0, 0.0), (0.0, 2.0), (3.0, 1.0), (-1.0, -1.0)])


def _make_constant(value, domain=DOMAIN):
    return MapTable.of(domain, PLANE, np.tile(np.asarray(value, dtype=float), (len(domain), 1)))


def _make_linear(matrix, domain=DOMAIN):
    return MapTable.of(domain, PLANE, domain.data @ np.asarray(matrix, dtype=float).T)


def test_constant_maps_delta_p():
    f, g = _make_constant((0.0, 0.0)), _make_constant((3.0, 4.0))
    # p が定義域の点なら重みの最大は e^0
    assert busemann_delta_p(f, g, (0.0, 0.0)) == pytest.approx(5.0)
    # 定義域から離れた基点では最も近い点の重みが効く
    assert busemann_delta_p(f, g, (0.0, -3.0)) == pytest.approx(5.0 * np.exp(-np.sqrt(5.0)))


def test_delta_p_base_point_change():
    rng = np.random.default_rng(60)
    for _ in range(10):
        f = MapTable.of(DOMAIN, PLANE, rng.normal(size=(5, 2)))
        g = MapTable.of(DOMAIN, PLANE, rng.normal(size=(5, 2)))
        p, q = rng.normal(size=(2, 2))
        assert delta_p_equivalence_check(f, g, p, q)["pass"]


def test_kuratowski_delta_of_constant_maps():
    f, g = _make_constant((0.0, 0.0)), _make_constant((1.0, 0.0))
    series = kuratowski_delta(f, g, (0.0, 0.0), [1.0, 2.0, 4.0])
    assert series.terms == [1.0, 1.0, 1.0]
    assert series.value == pytest.approx((1.0 - 2.0**-3) * 0.5)
    assert series.tail_bound == 2.0**-3


def test_kuratowski_delta_empty_ball_contributes_zero():
    f, g = _make_constant((0.0, 0.0)), _make_constant((1.0, 0.0))
    series = kuratowski_delta(f, g, (100.0, 100.0), [1.0, 2.0])
    assert series.value == 0.0
    assert series.terms == [0.0, 0.0]


def test_kuratowski_delta_rejects_bad_radii():
    f = _make_constant((0.0, 0.0))
    for radii in ([], [1.0, 1.0], [-1.0, 2.0]):
        with pytest.raises(ValueError):
            kuratowski_delta(f, f, (0.0, 0.0), radii)


def test_holder_membership_of_scaling():
    f = _make_linear([[2.0, 0.0], [0.0, 2.0]])
    assert holder_membership(f, 2.0, 1.0)
    assert not holder_membership(f, 1.9, 1.0)
    with pytest.raises(ValueError):
        holder_membership(f, 1.0, 1.5)


def test_similarity_coefficient():
    assert similarity_coefficient(_make_linear([[2.0, 0.0], [0.0, 2.0]])) == pytest.approx(2.0)
    assert similarity_coefficient(_make_linear([[2.0, 0.0], [0.0, 1.0]])) is None
    with pytest.raises(ValueError):
        similarity_coefficient(MapTable.of(DOMAIN.subset([0]), PLANE, [(0.0, 0.0)]))


def test_rotation_is_isometry():
    c, s = np.cos(0.7), np.sin(0.7)
    assert is_isometry(_make_linear([[c, -s], [s, c]]))
    assert not is_isometry(_make_linear([[3.0, 0.0], [0.0, 3.0]]))


def test_compose_and_inverse():
    f = _make_linear([[2.0, 0.0], [0.0, 2.0]])
    back = inverse(f)
    identity = compose(back, f)
    np.testing.assert_allclose(identity.values, DOMAIN.data)
    # 合成すると相似係数は掛け算になる
    g = _make_linear([[0.0, -3.0], [3.0, 0.0]], back.domain)
    assert similarity_coefficient(compose(g, f)) == pytest.approx(6.0)


def test_compose_requires_values_in_domain():
    f = _make_linear([[2.0, 0.0], [0.0, 2.0]])
    with pytest.raises(ValueError):
        compose(f, f)


def test_map_table_validation():
    with pytest.raises(ValueError):
        MapTable.of(DOMAIN, PLANE, [(0.0, 0.0)])
    other = PointSet.of(PLANE, DOMAIN.data + 5.0)
    with pytest.raises(SpaceMismatchError):
        busemann_delta_p(_make_constant((0.0, 0.0)), _make_constant((0.0, 0.0), other), (0.0, 0.0))


def test_map_table_to_dict():
    data = _make_constant((1.0, 2.0)).to_dict()
    assert data["codomain"] == "euclidean:2"
    assert data["values"][0] == [1.0, 2.0]
