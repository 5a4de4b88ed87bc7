import io

import numpy as np
import pytest

from conftest import lower_hull, lower_tail_points, reciprocal_weights
from specscale import fixtures
from specscale.algebra import OperatorTuple, linear_combination, max_norm
from specscale.oracle import oracle_support, sample_unit_ball
from specscale.scale import (
    exposed_face,
    export_extremes_csv,
    extreme_point_cloud,
    isotrace_slice,
    scale_dimension,
    support_value,
    waterfill,
)
from specscale.spectral import SpectralPair


def test_support_value_zero_operators():
    zt = fixtures.zero_tuple(n=1, dim=2)
    alpha = support_value(zt, SpectralPair(1.0, np.array([1.0])))
    assert alpha == pytest.approx(-1.0, abs=1e-12)


def test_support_value_reciprocal(reciprocal8):
    alpha = support_value(reciprocal8, SpectralPair(0.6, np.array([1.0])))
    w = reciprocal_weights(8)
    expected = sum(
        w[k - 1] * (1.0 / k - 0.6) for k in range(1, 9) if 1.0 / k <= 0.6
    )
    assert alpha == pytest.approx(expected, abs=1e-12)
    # cross-check against the sampled minimum of <(-s,t), x>
    points = sample_unit_ball(reciprocal8, 500, seed=2)
    sampled_min = float(np.min(-0.6 * points[:, 0] + points[:, 1]))
    assert alpha == pytest.approx(sampled_min, abs=1e-9)


def test_support_value_pauli_axis(pauli):
    # tr(sigma_x p) for the negative spectral projection p = (1 - sigma_x)/2
    # equals -tr(p) = -1/2; the sampled minimum and the exact support agree.
    alpha = support_value(pauli, SpectralPair(0.0, np.array([1.0, 0.0])))
    assert alpha == pytest.approx(-0.5, abs=1e-12)
    assert alpha == pytest.approx(-oracle_support(pauli, [0.0, -1.0, 0.0]), abs=1e-12)
    points = sample_unit_ball(pauli, 2000, seed=4)
    sampled_min = float(np.min(points[:, 1]))
    assert alpha <= sampled_min + 1e-9
    assert sampled_min - alpha < 5e-3


def test_exposed_face_gap_level_is_a_point(two_point):
    face = exposed_face(two_point, SpectralPair(0.5, np.array([1.0])))
    assert face.dimension == 0
    np.testing.assert_allclose(face.vertices[0], [0.5, 0.0], atol=1e-12)
    np.testing.assert_allclose(face.vertices[1], face.vertices[0], atol=1e-12)


def test_exposed_face_eigenvalue_level_is_a_segment(reciprocal8):
    face = exposed_face(reciprocal8, SpectralPair(1.0 / 3.0, np.array([1.0])))
    assert face.dimension == 1
    assert max_norm(face.interval.gap()) > 0.5


def test_exposed_face_pauli_bottom_segment(pauli):
    face = exposed_face(pauli, SpectralPair(-1.0, np.array([1.0, 0.0])))
    assert face.dimension == 1
    np.testing.assert_allclose(face.vertices[0], [0.0, 0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(face.vertices[1], [0.5, -0.5, 0.0], atol=1e-12)


def test_extreme_cloud_two_point_square(two_point):
    cloud = extreme_point_cloud(two_point, 32)
    expected = {(0.0, 0.0), (0.5, 0.0), (0.5, 0.5), (1.0, 0.5)}
    got = {tuple(np.round(p, 10)) for p in cloud.points}
    assert got == expected


def test_extreme_cloud_zero_operators():
    zt = fixtures.zero_tuple(n=2, dim=2)
    cloud = extreme_point_cloud(zt, 32)
    got = {tuple(np.round(p, 10)) for p in cloud.points}
    assert got == {(0.0, 0.0, 0.0), (1.0, 0.0, 0.0)}


def test_extreme_cloud_reciprocal_lower_chain(reciprocal8):
    cloud = extreme_point_cloud(reciprocal8, 16)
    assert len(cloud) == 16
    expected = lower_tail_points(8)
    for row in expected:
        dist = np.linalg.norm(cloud.points - row, axis=1)
        assert dist.min() <= 1e-9


def test_slope_law_reciprocal(reciprocal8):
    cloud = extreme_point_cloud(reciprocal8, 16)
    lower = lower_hull(cloud.points)
    slopes = np.diff(lower[:, 1]) / np.diff(lower[:, 0])
    np.testing.assert_allclose(
        slopes, sorted(1.0 / k for k in range(1, 9)), atol=1e-9
    )


def test_scale_dimension_with_identity_operator(pauli):
    alg = pauli.algebra
    b2 = alg.identity()
    optuple = OperatorTuple(alg, (pauli.operators[0], b2))
    result = scale_dimension(optuple)
    assert result.dimension == 2
    assert len(result.relations) == 1
    t, s = result.relations[0]
    b_t = linear_combination(optuple, t)
    assert max_norm(b_t - s * alg.identity()) <= 1e-8


def test_scale_dimension_pauli_full(pauli):
    result = scale_dimension(pauli)
    assert result.dimension == 3
    assert result.relations == ()


def test_scale_dimension_affine_dependency(pauli):
    alg = pauli.algebra
    b1 = pauli.operators[0]
    b2 = 2.0 * b1 + 3.0 * alg.identity()
    optuple = OperatorTuple(alg, (b1, b2))
    result = scale_dimension(optuple)
    assert result.dimension == 2
    t, s = result.relations[0]
    assert max_norm(linear_combination(optuple, t) - s * alg.identity()) <= 1e-8


def test_degenerate_scale_is_flat_along_relations(pauli):
    alg = pauli.algebra
    optuple = OperatorTuple(
        alg, (pauli.operators[0], 2.0 * pauli.operators[0] + 3.0 * alg.identity())
    )
    t, s = scale_dimension(optuple).relations[0]
    plus = support_value(optuple, SpectralPair(s, t))
    minus = support_value(optuple, SpectralPair(-s, -t))
    assert plus == pytest.approx(0.0, abs=1e-8)
    assert minus == pytest.approx(0.0, abs=1e-8)


def test_isotrace_endpoints(pauli):
    assert np.allclose(isotrace_slice(pauli, 0.0, 64).points, [[0.0, 0.0]])
    top = isotrace_slice(pauli, 1.0, 64).points
    traces = [pauli.algebra.trace(b) for b in pauli.operators]
    np.testing.assert_allclose(top, [traces], atol=1e-12)
    with pytest.raises(ValueError):
        isotrace_slice(pauli, 1.5)


def test_isotrace_pauli_half_is_a_circle(pauli):
    sl = isotrace_slice(pauli, 0.5, 720)
    radii = np.linalg.norm(sl.points, axis=1)
    np.testing.assert_allclose(radii, 0.5, atol=1e-6)
    assert len(sl.points) == 720


def test_isotrace_slice_points_lie_in_the_scale(commuting):
    sl = isotrace_slice(commuting, 0.4, 64)
    rng = np.random.default_rng(12)
    for _ in range(60):
        u = rng.standard_normal(3)
        u /= np.linalg.norm(u)
        h = oracle_support(commuting, u)
        lifted = np.column_stack(
            [np.full(len(sl.points), 0.4), sl.points]
        )
        assert np.max(lifted @ u) <= h + 1e-9


def test_waterfill_respects_budget(commuting):
    a = waterfill(commuting, np.array([0.3, -0.8]), 0.37)
    assert commuting.algebra.trace(a) == pytest.approx(0.37, abs=1e-12)
    w = np.concatenate([np.linalg.eigvalsh(b) for b in a.blocks])
    assert w.min() >= -1e-12 and w.max() <= 1.0 + 1e-12


@pytest.mark.parametrize("name", ["reciprocal8", "two_point", "pauli", "commuting"])
def test_support_consistency_and_touching(name, request):
    optuple = request.getfixturevalue(name)
    cloud = extreme_point_cloud(optuple, 32)
    rng = np.random.default_rng(21)
    for _ in range(40):
        u = rng.standard_normal(optuple.n + 1)
        t = u[1:]
        if np.linalg.norm(t) < 1e-3:
            continue
        pair = SpectralPair(-u[0], t)
        face = exposed_face(optuple, pair)
        dist = face.hyperplane.signed_distance(cloud.points)
        assert dist.min() >= -1e-8
        touch = face.hyperplane.signed_distance(face.vertices)
        assert np.max(np.abs(touch)) <= 1e-8


@pytest.mark.parametrize("name", ["pauli", "blockpair"])
def test_oracle_containment_in_sampled_halfspaces(name, request):
    optuple = request.getfixturevalue(name)
    points = sample_unit_ball(optuple, 400, seed=5)[:2000]
    rng = np.random.default_rng(31)
    for _ in range(25):
        u = rng.standard_normal(optuple.n + 1)
        t = u[1:]
        if np.linalg.norm(t) < 1e-3:
            continue
        pair = SpectralPair(-u[0], t)
        alpha = support_value(optuple, pair)
        vals = points @ pair.normal_vector()
        assert vals.min() >= alpha - 1e-8


def test_extremes_csv_roundtrip(two_point):
    cloud = extreme_point_cloud(two_point, 16)
    buf = io.StringIO()
    export_extremes_csv(cloud, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "x0,x1,proj_id,proj_trace"
    assert len(lines) == 1 + len(cloud)
    first = lines[1].split(",")
    assert float(first[0]) in (0.0, 0.5, 1.0)
