"""generate のユニットテスト."""

import numpy as np
import pytest

from bodies import ConvexBody
from generate import generate, sample_points
from hausdorff import PointSet
from map_spaces import MapTable, similarity_coefficient
from spaces import Euclidean, KleinBall, path_graph_space, validate_finite_metric

PLANE = Euclidean(2)
KLEIN = KleinBall(1.0, 1.0, 2)


def test_same_seed_same_instance():
    a = generate(PLANE, "uniform_points", {"n": 6}, seed=1)
    b = generate(PLANE, "uniform_points", {"n": 6}, seed=1)
    c = generate(PLANE, "uniform_points", {"n": 6}, seed=2)
    np.testing.assert_array_equal(a["points"], b["points"])
    assert not np.array_equal(a["points"], c["points"])
    assert a["metadata"]["seed"] == 1
    assert "PCG64" in a["metadata"]["rng"]


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        generate(PLANE, "uniform_points", {"n": 0})
    with pytest.raises(ValueError):
        generate(PLANE, "uniform_points", {"size": 3})
    with pytest.raises(ValueError):
        generate(PLANE, "spiral")
    with pytest.raises(ValueError):
        generate(path_graph_space(3), "uniform_points")


def test_as_metric_is_a_valid_distance_matrix():
    payload = generate(Euclidean(3), "uniform_points", {"n": 7, "as_metric": True}, seed=3)
    assert validate_finite_metric(payload["distance_matrix"]).size == 7


@pytest.mark.parametrize("kind", ["uniform_points", "clustered"])
def test_klein_points_stay_inside_fraction(kind):
    payload = generate(KLEIN, kind, seed=4)
    norms = np.linalg.norm(payload["points"], axis=1)
    assert np.all(norms <= 0.95 + 1e-12)


def test_convex_hull_payload_builds_body():
    payload = generate(PLANE, "convex_hull", {"n": 10}, seed=5)
    body = ConvexBody.from_dict(PLANE, payload["body"])
    assert body.kind == "hull"
    with pytest.raises(ValueError):
        generate(PLANE, "convex_hull", {"n": 2}, seed=5)
    with pytest.raises(ValueError):
        generate(KLEIN, "convex_hull", seed=5)


def test_map_table_is_similarity():
    payload = generate(PLANE, "map_table", {"n": 6, "scale": 3.0}, seed=6)
    table = MapTable.of(PointSet.of(PLANE, payload["domain"]), PLANE, payload["values"])
    assert similarity_coefficient(table) == pytest.approx(3.0)


def test_nnet_pair_has_equal_sizes():
    payload = generate(KLEIN, "nnet_pair", {"n": 5}, seed=7)
    assert payload["S"].shape == payload["T"].shape == (5, 2)


def test_sample_points_requires_ordered_bounds():
    with pytest.raises(ValueError):
        sample_points(PLANE, 3, np.random.default_rng(0), low=1.0, high=-1.0)
