import numpy as np
import pytest

from specscale import fixtures
from specscale.algebra import max_norm
from specscale.errors import DegenerateFaceError
from specscale.faces import FaceHandle, normal_cone
from specscale.scale import exposed_face, extreme_point_cloud
from specscale.spectral import OrderInterval, SpectralPair
from specscale.structure import (
    SAMPLING_INCOMPLETE,
    abelian_verdict,
    detect_central,
    detect_gap,
    isolated_extremes_to_center,
    report_json,
)


def scalar_block_interval(blockpair):
    z = blockpair.algebra.diagonal(np.array([0.0, 0.0, 1.0]))
    return OrderInterval(z, z)


def test_detect_central_scalar_block_vertex(blockpair):
    interval = scalar_block_interval(blockpair)
    cone = normal_cone(blockpair, interval, 128)
    report = detect_central(blockpair, FaceHandle(interval), cone)
    assert report.central
    assert report.rank == 2
    assert report.commutator_norm <= 1e-12
    t_parts = np.array([p.t for p in report.independent_normals])
    assert np.linalg.matrix_rank(t_parts, tol=1e-8) == 2


def test_no_nontrivial_central_detection_in_a_factor(pauli):
    rng = np.random.default_rng(2)
    alg = pauli.algebra
    for _ in range(20):
        u = rng.standard_normal(3)
        if np.linalg.norm(u[1:]) < 1e-3:
            continue
        face = exposed_face(pauli, SpectralPair(-u[0], u[1:]))
        lower_t = alg.trace(face.interval.lower)
        upper_t = alg.trace(face.interval.upper)
        if max_norm(face.interval.lower) <= 1e-10 and max_norm(
            face.interval.upper - alg.identity()
        ) <= 1e-10:
            continue
        cone = normal_cone(pauli, face.interval, 64)
        report = detect_central(pauli, FaceHandle(face.interval), cone)
        if report.central:
            # only the trivial endpoints 0 and 1 can be central in a factor
            for p in (face.interval.lower, face.interval.upper):
                trace_p = alg.trace(p)
                assert trace_p <= 1e-10 or trace_p >= 1.0 - 1e-10


def test_detect_central_insufficient_normals_is_not_an_error(pauli):
    p = 0.5 * (pauli.algebra.identity() + pauli.operators[0])
    interval = OrderInterval(p, p)
    cone = normal_cone(pauli, interval, 64)
    report = detect_central(pauli, FaceHandle(interval), cone)
    assert not report.central
    assert report.rank < 2


def test_detect_central_rejects_whole_scale(blockpair):
    whole = OrderInterval(
        blockpair.algebra.zero(), blockpair.algebra.identity()
    )
    with pytest.raises(DegenerateFaceError):
        cone = normal_cone(blockpair, whole, 16)


def test_detect_gap_two_point(two_point):
    face = exposed_face(two_point, SpectralPair(0.5, np.array([1.0])))
    cone = normal_cone(two_point, face.interval, 64)
    gaps = detect_gap(two_point, FaceHandle(face.interval), cone)
    assert len(gaps) == 1
    assert gaps[0].s1 == pytest.approx(0.0, abs=1e-12)
    assert gaps[0].s2 == pytest.approx(1.0, abs=1e-12)


def test_detect_gap_reciprocal_vertex(reciprocal8):
    face = exposed_face(reciprocal8, SpectralPair(5.0 / 12.0, np.array([1.0])))
    cone = normal_cone(reciprocal8, face.interval, 64)
    gaps = detect_gap(reciprocal8, FaceHandle(face.interval), cone)
    by_t = {tuple(np.sign(g.t)): g for g in gaps}
    plus = by_t[(1.0,)]
    assert plus.s1 == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert plus.s2 == pytest.approx(1.0 / 2.0, abs=1e-12)


def test_detect_gap_empty_for_facet(commuting):
    face = exposed_face(commuting, SpectralPair(-1.0, np.array([0.0, -1.0])))
    cone = normal_cone(commuting, face.interval, 64)
    assert detect_gap(commuting, FaceHandle(face.interval), cone) == []


def test_isolated_extremes_reciprocal_all_central(reciprocal8):
    cloud = extreme_point_cloud(reciprocal8, 32)
    reports = isolated_extremes_to_center(
        reciprocal8, cloud, certified_complete=True
    )
    assert len(reports) == 16
    assert all(r.is_central for r in reports)


def test_isolated_extremes_pauli_only_apexes(pauli):
    cloud = extreme_point_cloud(pauli, 256)
    reports = isolated_extremes_to_center(pauli, cloud, iso_radius=0.05)
    points = np.array([r.point for r in reports])
    assert len(reports) == 2
    assert np.min(np.linalg.norm(points - np.array([0.0, 0.0, 0.0]), axis=1)) <= 1e-10
    assert np.min(np.linalg.norm(points - np.array([1.0, 0.0, 0.0]), axis=1)) <= 1e-10
    assert all(r.is_central for r in reports)


def test_isolated_extremes_zero_tuple():
    zt = fixtures.zero_tuple(n=2, dim=2)
    cloud = extreme_point_cloud(zt, 16)
    reports = isolated_extremes_to_center(zt, cloud)
    assert len(reports) == 2
    assert all(r.is_central for r in reports)


def test_abelian_verdict_commuting(commuting):
    verdict = abelian_verdict(commuting, directions=64)
    assert verdict.geometric and verdict.algebraic
    assert verdict.extreme_count == 14
    assert verdict.max_commutator == 0.0
    assert verdict.n_dim == 4


def test_abelian_verdict_pauli(pauli):
    verdict = abelian_verdict(pauli, directions=64)
    assert not verdict.geometric and not verdict.algebraic
    assert verdict.extreme_count == SAMPLING_INCOMPLETE
    assert verdict.cloud_counts[1] > verdict.cloud_counts[0]
    assert verdict.max_commutator == pytest.approx(2.0, abs=1e-12)


def test_abelian_verdict_blockpair(blockpair):
    verdict = abelian_verdict(blockpair, directions=64)
    assert not verdict.geometric and not verdict.algebraic
    assert verdict.cloud_counts[1] > verdict.cloud_counts[0]


def test_abelian_verdict_single_operator(reciprocal8):
    verdict = abelian_verdict(reciprocal8, directions=32)
    assert verdict.geometric and verdict.algebraic
    assert verdict.extreme_count == 16


def test_report_json_schema(commuting):
    verdict = abelian_verdict(commuting, directions=32)
    payload = report_json(verdict=verdict)
    assert payload["abelian"] == {"geometric": True, "algebraic": True}
    assert set(payload) >= {"abelian", "central_projections", "gaps"}
