"""Clustered eigendecomposition and spectral interval projections.

Two tolerances govern everything here.  ``cluster_tol`` merges
numerically split eigenvalues into one cluster; ``eig_eq_tol`` decides
whether a cut level ``s`` counts as an eigenvalue, which is what
separates the closed-interval projection ``p_plus`` (spectrum in
``(-inf, s]``) from the open-interval projection ``p_minus`` (spectrum in
``(-inf, s)``).  Both scale with ``max(1, |a|)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import HermitianOperator, _raw, max_norm
from .errors import NumericalError, ShapeError

CLUSTER_TOL = 1e-9
EIG_EQ_TOL = 1e-8
PROJECTION_TOL = 1e-8


@dataclass(frozen=True)
class SpectralPair:
    """A cut level ``s`` and a nonzero direction ``t`` in R^n."""

    s: float
    t: np.ndarray

    def __post_init__(self):
        t = algebra.require_direction(self.t)
        t.flags.writeable = False
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "s", float(self.s))

    def normal_vector(self):
        """The hyperplane normal ``(-s, t)`` in R^{n+1}."""
        return np.concatenate(([-self.s], self.t))


@dataclass(frozen=True)
class EigenCluster:
    value: float
    multiplicity: int
    trace_weight: float
    projection: HermitianOperator


@dataclass(frozen=True)
class SpectrumInfo:
    """Clustered spectrum of a self-adjoint operator.

    The cluster projections are mutually orthogonal, sum to the identity
    and reconstruct the operator as ``sum(value * projection)``.
    """

    clusters: tuple

    @property
    def values(self):
        return np.array([c.value for c in self.clusters])

    @property
    def projections(self):
        return [c.projection for c in self.clusters]


def decompose(alg, a, cluster_tol=None):
    """Eigendecompose ``a`` blockwise and merge eigenvalues across blocks.

    Eigenvalues closer than the (scaled) cluster tolerance are chained
    into a single cluster whose projection sums the corresponding rank-one
    projectors.
    """
    alg.require(a)
    tol = (CLUSTER_TOL if cluster_tol is None else cluster_tol) * max(
        1.0, max_norm(a)
    )
    entries = []  # (eigenvalue, block index, eigenvector)
    for j, b in enumerate(a.blocks):
        try:
            w, v = np.linalg.eigh(b)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"eigensolver failed: {exc}", block=j) from exc
        for k in range(len(w)):
            entries.append((float(w[k]), j, v[:, k]))
    entries.sort(key=lambda e: e[0])

    clusters = []
    group = [entries[0]]
    for e in entries[1:]:
        if e[0] - group[-1][0] <= tol:
            group.append(e)
        else:
            clusters.append(group)
            group = [e]
    clusters.append(group)

    dims = alg.dims
    out = []
    for group in clusters:
        blocks = [np.zeros((d, d), dtype=complex) for d in dims]
        for _, j, vec in group:
            blocks[j] += np.outer(vec, vec.conj())
        proj = _raw([(m + m.conj().T) / 2.0 for m in blocks])
        value = float(np.mean([e[0] for e in group]))
        out.append(
            EigenCluster(
                value=value,
                multiplicity=len(group),
                trace_weight=alg.trace(proj),
                projection=proj,
            )
        )
    return SpectrumInfo(tuple(out))


@dataclass(frozen=True)
class OrderInterval:
    """A pair of projections ``lower <= upper`` naming a face candidate."""

    lower: HermitianOperator
    upper: HermitianOperator

    def __post_init__(self):
        if self.lower.dims != self.upper.dims:
            raise ShapeError("interval endpoints live in different algebras")
        for name, p in (("lower", self.lower), ("upper", self.upper)):
            if not is_projection(p):
                raise ShapeError(f"{name} endpoint is not a projection")
        if not projection_leq(self.lower, self.upper):
            raise ShapeError("interval endpoints are not ordered")

    def gap(self):
        """The projection ``upper - lower``."""
        return self.upper - self.lower

    def is_point(self, alg=None, tol=PROJECTION_TOL):
        return max_norm(self.upper - self.lower) <= tol


def is_projection(p, tol=PROJECTION_TOL):
    for b in p.blocks:
        if b.size and float(np.max(np.abs(b @ b - b))) > tol:
            return False
    return True


def projection_leq(p, q, tol=PROJECTION_TOL):
    """Projection order ``p <= q``, tested as ``|pq - p| <= tol``."""
    return all(
        float(np.max(np.abs(x @ y - x))) <= tol if x.size else True
        for x, y in zip(p.blocks, q.blocks)
    )


def interval_from_spectrum(alg, info, s, eff_tol):
    """Interval projections for a cut level, from a clustered spectrum.

    ``eff_tol`` is the already-scaled equality band deciding whether a
    cluster sitting at ``s`` belongs to the closed-interval projection.
    """
    lower_blocks = [np.zeros((d, d), dtype=complex) for d in alg.dims]
    upper_blocks = [np.zeros((d, d), dtype=complex) for d in alg.dims]
    for c in info.clusters:
        if c.value <= s + eff_tol:
            for acc, b in zip(upper_blocks, c.projection.blocks):
                acc += b
        if c.value < s - eff_tol:
            for acc, b in zip(lower_blocks, c.projection.blocks):
                acc += b
    return OrderInterval(_raw(lower_blocks), _raw(upper_blocks))


def interval_projections_of(alg, b_op, s, cluster_tol=None, eig_eq_tol=None):
    """Interval projections of a single self-adjoint operator at level s."""
    info = decompose(alg, b_op, cluster_tol=cluster_tol)
    tol = (EIG_EQ_TOL if eig_eq_tol is None else eig_eq_tol) * max(
        1.0, max_norm(b_op)
    )
    return interval_from_spectrum(alg, info, s, tol)


def interval_projections(optuple, pair, cluster_tol=None, eig_eq_tol=None):
    """The projections ``(p_minus, p_plus)`` of ``b_t`` at level ``s``.

    ``p_plus`` collects eigenclusters with value ``<= s`` (within the
    equality band), ``p_minus`` those strictly below.  When no cluster
    sits in the band the two coincide.
    """
    b_t = algebra.linear_combination(optuple, pair.t)
    return interval_projections_of(
        optuple.algebra, b_t, pair.s, cluster_tol=cluster_tol, eig_eq_tol=eig_eq_tol
    )


def eigengap_of(alg, a, s1, s2, cluster_tol=None):
    """True when no clustered eigenvalue of ``a`` lies in ``(s1, s2)``."""
    if not s1 < s2:
        raise ValueError(f"need s1 < s2, got {s1} >= {s2}")
    values = decompose(alg, a, cluster_tol=cluster_tol).values
    return not np.any((values > s1) & (values < s2))
