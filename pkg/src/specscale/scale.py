"""The spectral scale as a convex body.

Support values and exposed faces come straight from the spectral
calculus: for a pair ``(s, t)`` the hyperplane

    -s x_0 + <t, (x_1..x_n)> = alpha,   alpha = tr((b_t - s) p)

supports the scale from below, touching it exactly on the image of the
order interval ``[p_minus, p_plus]`` of the interval projections of
``b_t`` at ``s``.  Sweeping ``s`` across the spectrum of ``b_t`` for a
direction sample therefore enumerates extreme points and exposed faces
without ever building the body itself.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import algebra, sampling, spectral
from .algebra import Compression, max_norm, psi
from .errors import InvariantViolation
from .spectral import OrderInterval, SpectralPair

POINT_DEDUP_TOL = 1e-8
PROJECTION_MATCH_TOL = 1e-6
RELATION_TOL = 1e-8


@dataclass(frozen=True)
class SupportHyperplane:
    """A supporting hyperplane ``<(-s, t), x> = alpha`` with the scale above."""

    pair: SpectralPair
    alpha: float

    def signed_distance(self, points):
        """``<(-s,t), x> - alpha`` per row; nonnegative on the scale."""
        pts = np.atleast_2d(points)
        return pts @ self.pair.normal_vector() - self.alpha


@dataclass(frozen=True)
class ExposedFace:
    hyperplane: SupportHyperplane
    interval: OrderInterval
    vertices: np.ndarray  # rows psi(p_minus), psi(p_plus)
    dimension: int

    @property
    def pair(self):
        return self.hyperplane.pair

    @property
    def alpha(self):
        return self.hyperplane.alpha


@dataclass(frozen=True)
class ScaleDimension:
    dimension: int
    relations: tuple  # of (t, s) with b_t = s * identity


@dataclass(frozen=True)
class IsotraceSlice:
    level: float
    points: np.ndarray  # (m, n) cross-section coordinates


def _support_data(optuple, pair, cluster_tol=None, eig_eq_tol=None):
    b_t = algebra.linear_combination(optuple, pair.t)
    interval = spectral.interval_projections_of(
        optuple.algebra, b_t, pair.s, cluster_tol=cluster_tol, eig_eq_tol=eig_eq_tol
    )
    alg = optuple.algebra
    shifted = b_t - pair.s * alg.identity()
    alpha_plus = alg.trace(_herm_product(shifted, interval.upper))
    alpha_minus = alg.trace(_herm_product(shifted, interval.lower))
    gap_weight = alg.trace(interval.upper) - alg.trace(interval.lower)
    eff_tol = (spectral.EIG_EQ_TOL if eig_eq_tol is None else eig_eq_tol) * max(
        1.0, max_norm(b_t)
    )
    # The two traces agree exactly in exact arithmetic; with s inside the
    # eigenvalue-equality band they can differ by at most band * gap weight.
    if abs(alpha_plus - alpha_minus) > 1e-9 + eff_tol * max(gap_weight, 0.0):
        raise InvariantViolation(
            "support value differs between the two interval projections: "
            f"{alpha_plus!r} vs {alpha_minus!r}"
        )
    return interval, alpha_plus


def _herm_product(a, b):
    return algebra._raw(
        [(m + m.conj().T) / 2.0 for m in algebra.operator_product(a, b)]
    )


def support_value(optuple, pair, cluster_tol=None, eig_eq_tol=None):
    """``tr((b_t - s) p_plus)``: the minimum of ``<(-s,t), x>`` over the scale."""
    _, alpha = _support_data(optuple, pair, cluster_tol, eig_eq_tol)
    return alpha


def face_dimension_of_interval(optuple, interval):
    """Affine dimension of the image of an order interval.

    Zero for a point; otherwise the cut-down scale of ``upper - lower``
    has the same dimension as the image (the cut-down map is an affine
    isomorphism onto it).
    """
    if interval.is_point():
        return 0
    comp = Compression(optuple, interval.gap())
    return scale_dimension(comp.tuple).dimension


def exposed_face(optuple, pair, cluster_tol=None, eig_eq_tol=None):
    """The face cut out by the supporting hyperplane of ``(s, t)``.

    The face is the image of the order interval of the interval
    projections; it is a single exposed point exactly when the two
    projections coincide.
    """
    interval, alpha = _support_data(optuple, pair, cluster_tol, eig_eq_tol)
    vertices = np.vstack(
        [psi(optuple, interval.lower), psi(optuple, interval.upper)]
    )
    dim = face_dimension_of_interval(optuple, interval)
    return ExposedFace(
        hyperplane=SupportHyperplane(pair=pair, alpha=alpha),
        interval=interval,
        vertices=vertices,
        dimension=dim,
    )


def scale_dimension(optuple, tol=RELATION_TOL):
    """Dimension of the linear span of the scale, with the affine relations.

    Relations ``b_t = s 1`` are read off the null space of the Gram matrix
    of the trace-centered operators; each candidate is verified directly
    in operator norm before it is counted.  Every relation flattens the
    scale by one dimension.
    """
    alg = optuple.algebra
    n = optuple.n
    one = alg.identity()
    traces = np.array([alg.trace(b) for b in optuple.operators])
    centered = [b - traces[i] * one for i, b in enumerate(optuple.operators)]
    gram = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            gram[i, j] = gram[j, i] = alg.inner(centered[i], centered[j])
    w, v = np.linalg.eigh(gram)
    scale_ref = max(1.0, float(w[-1]) if n else 1.0)
    relations = []
    for k in range(n):
        if w[k] <= 1e-12 * scale_ref:
            t = v[:, k]
            s = float(traces @ t)
            b_t = algebra.linear_combination(optuple, t)
            if max_norm(b_t - s * one) <= tol:
                relations.append((t, s))
    return ScaleDimension(
        dimension=n + 1 - len(relations), relations=tuple(relations)
    )


def _cloud_t_directions(n, directions):
    """Unique direction parts from a sphere sample in R^{n+1}."""
    if isinstance(directions, (int, np.integer)):
        dirs = sampling.unit_directions(n + 1, int(directions))
    else:
        dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    seen = {}
    for u in dirs:
        t = u[1:] if u.shape[0] == n + 1 else u
        norm = np.linalg.norm(t)
        if norm <= 1e-9:
            continue
        t = t / norm
        key = tuple(np.round(t, 9))
        if key not in seen:
            seen[key] = t
    return list(seen.values())


class ExtremePointCloud:
    """Deduplicated extreme points ``psi(p)`` with their projections."""

    def __init__(self, n):
        self.points = np.empty((0, n + 1))
        self.projections = []

    def add(self, point, projection):
        if len(self.projections):
            dist = np.linalg.norm(self.points - point, axis=1)
            for idx in np.flatnonzero(dist <= POINT_DEDUP_TOL):
                if (
                    max_norm(self.projections[idx] - projection)
                    <= PROJECTION_MATCH_TOL
                ):
                    return int(idx)
        self.points = np.vstack([self.points, point])
        self.projections.append(projection)
        return len(self.projections) - 1

    def __len__(self):
        return len(self.projections)

    def __iter__(self):
        return iter(zip(self.points, self.projections))


def extreme_point_cloud(
    optuple, directions=sampling.DEFAULT_DIRECTIONS, cluster_tol=None, eig_eq_tol=None
):
    """Sample extreme points ``psi(p_minus), psi(p_plus)`` over directions.

    For every sampled direction part ``t`` the cut level sweeps all
    eigenvalue clusters of ``b_t`` and the gap midpoints, so every
    distinct interval projection for that ``t`` is reached.  Points are
    deduplicated; a pair merges only when both the coordinates and the
    projections agree.
    """
    alg = optuple.algebra
    cloud = ExtremePointCloud(optuple.n)
    for t in _cloud_t_directions(optuple.n, directions):
        b_t = algebra.linear_combination(optuple, t)
        info = spectral.decompose(alg, b_t, cluster_tol=cluster_tol)
        eff_tol = (
            spectral.EIG_EQ_TOL if eig_eq_tol is None else eig_eq_tol
        ) * max(1.0, max_norm(b_t))
        for s in sampling.eigenvalue_sweep(info.values):
            interval = spectral.interval_from_spectrum(alg, info, s, eff_tol)
            for p in (interval.lower, interval.upper):
                cloud.add(psi(optuple, p), p)
    return cloud


def waterfill(optuple, direction, level, cluster_tol=None):
    """Maximizer of ``tr(b_u a)`` over ``0 <= a <= 1`` with ``tr(a) = level``.

    Fills eigenprojections of ``b_u`` from the largest eigenvalue down,
    putting a fractional coefficient on the marginal cluster once the
    trace budget runs out.
    """
    if not 0.0 <= level <= 1.0:
        raise ValueError(f"trace level must be in [0, 1], got {level}")
    alg = optuple.algebra
    b_u = algebra.linear_combination(optuple, direction)
    info = spectral.decompose(alg, b_u, cluster_tol=cluster_tol)
    order = np.argsort(-info.values)
    a = alg.zero()
    budget = level
    for idx in order:
        if budget <= 0.0:
            break
        c = info.clusters[idx]
        take = min(1.0, budget / c.trace_weight)
        a = a + take * c.projection
        budget -= take * c.trace_weight
    return a


def isotrace_slice(optuple, level, resolution=720, cluster_tol=None):
    """Cross-section of the scale at trace coordinate ``level``.

    Each boundary point is found exactly by the water-filling maximizer
    along one direction in R^n; for ``n = 2`` the angular sweep returns
    the boundary polygon in order, for other ``n`` the result is a point
    sample of the boundary.
    """
    if not 0.0 <= level <= 1.0:
        raise ValueError(f"trace level must be in [0, 1], got {level}")
    n = optuple.n
    if n == 1:
        dirs = np.array([[1.0], [-1.0]])
    elif n == 2:
        theta = np.linspace(0.0, 2.0 * np.pi, resolution, endpoint=False)
        dirs = np.column_stack([np.cos(theta), np.sin(theta)])
    else:
        dirs = sampling.unit_directions(n, resolution)
    rows = []
    for u in dirs:
        a = waterfill(optuple, u, level, cluster_tol=cluster_tol)
        rows.append(psi(optuple, a)[1:])
    points = np.array(rows)
    keep = [0]
    for i in range(1, len(points)):
        if np.all(np.linalg.norm(points[keep] - points[i], axis=1) > 1e-12):
            keep.append(i)
    return IsotraceSlice(level=float(level), points=points[keep])


def export_extremes_csv(cloud, fh):
    """Write the cloud as RFC-4180 CSV: x0..xn, projection id and trace."""
    n_plus_1 = cloud.points.shape[1]
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([f"x{i}" for i in range(n_plus_1)] + ["proj_id", "proj_trace"])
    for idx, (point, proj) in enumerate(cloud):
        trace = float(sum(np.trace(b).real for b in proj.blocks))
        writer.writerow(
            [format(x, ".17g") for x in point] + [idx, format(trace, ".17g")]
        )


def export_hull_obj(optuple, fh, samples=4096, seed=0):
    """Triangulated OBJ mesh of the sampled hull of the scale (n = 2 only)."""
    from . import oracle  # local import; oracle does not import this module

    if optuple.n != 2:
        raise ValueError("OBJ export requires a two-operator tuple (3D scale)")
    points = oracle.sample_unit_ball(optuple, samples, seed=seed)
    hull = oracle.PointCloudHull(points)
    if hull.simplices is None:
        raise ValueError("hull triangulation unavailable for this point cloud")
    verts = hull.hull_points
    for v in verts:
        fh.write("v " + " ".join(format(x, ".17g") for x in v) + "\n")
    for tri in hull.simplices:
        fh.write("f " + " ".join(str(i + 1) for i in tri) + "\n")
