"""Recursive facial calculus: cut-downs, facial complexes, normal cones.

A face of the scale is named by an order interval ``[q_minus, q_plus]``
of projections.  Faces of positive dimension are scales in their own
right once the tuple is cut down to the range of ``q_plus - q_minus``
with the trace rescaled; iterating that cut-down is what reaches faces
no single hyperplane exposes.  The normal cone of a face is probed
through the order test: ``(-s, t)`` supports the face exactly when
``p_minus <= q_minus`` and ``q_plus <= p_plus`` for the interval
projections of ``b_t`` at ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra, sampling, scale, spectral
from .algebra import Compression, HermitianOperator, max_norm, psi
from .errors import (
    DegenerateFaceError,
    FaceChainError,
    InvariantViolation,
    MinimalFaceError,
)
from .spectral import OrderInterval, SpectralPair

PROJ_ORDER_TOL = 1e-8
CUT_TRACE_TOL = 1e-10


@dataclass(frozen=True)
class CutDown:
    """A face's ambient data plus its cut-down scale.

    ``tuple`` is the compressed system over the rescaled trace; the face
    is recovered as ``base_point + trace_r * psi_r(x)`` for ``x`` in the
    compressed positive unit ball.
    """

    r: HermitianOperator
    tuple: algebra.OperatorTuple
    trace_r: float
    base_point: np.ndarray
    lower: HermitianOperator
    compression: Compression

    def embed(self, x):
        return self.compression.embed(x)

    def lift(self, x):
        """Ambient operator ``q_minus + r x r`` for cut-down ``x``."""
        return self.lower + self.compression.embed(x)


@dataclass(frozen=True)
class FaceHandle:
    """An order interval naming a face, with its complex when known."""

    interval: OrderInterval
    complex: object = None

    @property
    def lower(self):
        return self.interval.lower

    @property
    def upper(self):
        return self.interval.upper


@dataclass(frozen=True)
class ComplexLevel:
    pair: SpectralPair
    cut_operator: HermitianOperator  # ambient r_{i-1} b_t r_{i-1}
    q_minus: HermitianOperator  # ambient embedding
    q_plus: HermitianOperator
    r: HermitianOperator  # q_plus - q_minus, ambient


@dataclass(frozen=True)
class FacialComplex:
    pairs: tuple
    levels: tuple
    terminated_early: bool = False
    termination_level: int | None = None


@dataclass(frozen=True)
class NormalConeSample:
    """Members of the normal cone found by sampling, with the degree.

    ``degree`` is the rank of the member span, a lower bound for the true
    degree; ``exact`` marks the diagonal-algebra case where that rank
    meets the polytope value ``(n + 1) - dim(face)``.
    """

    members: np.ndarray  # (k, n+1) unit normals (-s, t)
    pairs: tuple
    degree: int
    exact: bool


def in_generated_algebra(optuple, op, basis=None, tol=1e-6):
    """Whether ``op`` lies in the algebra generated by the tuple.

    Expands against a trace-orthonormal basis and measures the residual;
    face endpoint projections always pass since interval projections are
    polynomials in the ``b_t`` they come from.
    """
    if basis is None:
        basis = algebra.generated_algebra_basis(optuple)
    inner = optuple.algebra.inner
    residual = op
    for e in basis:
        residual = residual - inner(e, op) * e
    return max_norm(residual) <= tol


def intervals_equal(a, b, tol=PROJ_ORDER_TOL):
    return (
        max_norm(a.lower - b.lower) <= tol and max_norm(a.upper - b.upper) <= tol
    )


def interval_contains(outer, inner, tol=PROJ_ORDER_TOL):
    """``outer.lower <= inner.lower <= inner.upper <= outer.upper``."""
    return spectral.projection_leq(
        outer.lower, inner.lower, tol
    ) and spectral.projection_leq(inner.upper, outer.upper, tol)


def _is_proper(optuple, interval, tol=PROJ_ORDER_TOL):
    one = optuple.algebra.identity()
    whole = max_norm(interval.lower) <= tol and max_norm(interval.upper - one) <= tol
    return not whole


def _require_proper(optuple, interval):
    if not _is_proper(optuple, interval):
        raise DegenerateFaceError(
            "the whole scale is not a proper face; cut it with a hyperplane first"
        )


def cut_down(optuple, interval):
    """Compress the tuple to the range of ``upper - lower``.

    The compressed system is a tuple over a normalized trace, so all the
    scale machinery applies to it directly.
    """
    r = interval.gap()
    if optuple.algebra.trace(r) <= CUT_TRACE_TOL:
        raise DegenerateFaceError(
            "face is an extreme point; there is nothing to cut down to"
        )
    comp = Compression(optuple, r)
    return CutDown(
        r=r,
        tuple=comp.tuple,
        trace_r=comp.trace_r,
        base_point=psi(optuple, interval.lower),
        lower=interval.lower,
        compression=comp,
    )


def face_dimension(optuple, interval):
    """Affine dimension of the face named by the interval."""
    return scale.face_dimension_of_interval(optuple, interval)


class _CompressionStack:
    """Composition of successive cut-downs with ambient embedding."""

    def __init__(self, optuple):
        self.parent = optuple
        self.stack = []

    @property
    def tuple(self):
        return self.stack[-1].tuple if self.stack else self.parent

    def push(self, r):
        comp = Compression(self.tuple, r)
        self.stack.append(comp)
        return comp

    def restrict(self, op):
        for comp in self.stack:
            op = comp.restrict(op)
        return op

    def embed(self, op):
        for comp in reversed(self.stack):
            op = comp.embed(op)
        return op


def build_facial_complex(optuple, pairs, cluster_tol=None, eig_eq_tol=None):
    """Run the inductive cut-down construction for a pair sequence.

    Level one takes the interval projections of ``b_{t_1}`` at ``s_1``;
    every later level compresses ``b_{t_i}`` by the previous gap
    projection, takes interval projections inside the cut-down algebra,
    and keeps going while the gaps stay nonzero.  A vanishing gap stops
    the construction early and is flagged.
    """
    pairs = tuple(pairs)
    if not pairs:
        raise ValueError("need at least one spectral pair")
    alg = optuple.algebra
    stack = _CompressionStack(optuple)
    levels = []
    terminated = False
    term_level = None
    for i, pair in enumerate(pairs):
        current = stack.tuple
        b_t = algebra.linear_combination(optuple, pair.t)
        b_cut = stack.restrict(b_t)
        interval = spectral.interval_projections_of(
            current.algebra,
            b_cut,
            pair.s,
            cluster_tol=cluster_tol,
            eig_eq_tol=eig_eq_tol,
        )
        r_local = interval.gap()
        levels.append(
            ComplexLevel(
                pair=pair,
                cut_operator=stack.embed(b_cut),
                q_minus=stack.embed(interval.lower),
                q_plus=stack.embed(interval.upper),
                r=stack.embed(r_local),
            )
        )
        if i + 1 == len(pairs):
            break
        if current.algebra.trace(r_local) <= CUT_TRACE_TOL:
            terminated = True
            term_level = i + 1
            break
        stack.push(r_local)
    return FacialComplex(
        pairs=pairs,
        levels=tuple(levels),
        terminated_early=terminated,
        termination_level=term_level,
    )


def face_from_complex(optuple, fcomplex):
    """Assemble the face handle from a facial complex.

    The lower endpoint stacks the per-level lower projections; the upper
    endpoint adds the last level's gap on top.
    """
    q_minus = optuple.algebra.zero()
    for level in fcomplex.levels:
        q_minus = q_minus + level.q_minus
    q_plus = q_minus + fcomplex.levels[-1].r
    interval = OrderInterval(q_minus, q_plus)
    return FaceHandle(interval=interval, complex=fcomplex)


def _commutant_directions(optuple, interval, tol=1e-9):
    """Orthonormal basis of ``{t : [b_t, q_minus] = [b_t, q_plus] = 0}``.

    Commutation with both endpoints is necessary for ``(-s, t)`` to
    support the face, so restricting candidate directions to this
    subspace loses no members and finds one-ray cones exactly.
    """
    cols = []
    for b in optuple.operators:
        col = []
        for q in (interval.lower, interval.upper):
            for x, y in zip(b.blocks, q.blocks):
                c = (x @ y - y @ x).ravel()
                col.append(c.real)
                col.append(c.imag)
        cols.append(np.concatenate(col))
    mat = np.column_stack(cols)
    _, svals, vt = np.linalg.svd(mat, full_matrices=True)
    scale_ref = max(1.0, float(svals[0]) if len(svals) else 1.0)
    null_mask = np.ones(optuple.n, dtype=bool)
    null_mask[: len(svals)] = svals <= tol * scale_ref
    return vt[null_mask]


def _candidate_directions(optuple, interval, directions):
    basis = _commutant_directions(optuple, interval)
    if basis.shape[0] == 0:
        return []
    raw = scale._cloud_t_directions(optuple.n, directions)
    seen = {}
    for t in list(basis) + raw:
        proj = basis.T @ (basis @ t)
        norm = np.linalg.norm(proj)
        if norm <= 1e-9:
            continue
        proj = proj / norm
        for cand in (proj, -proj):
            key = tuple(np.round(cand, 9))
            if key not in seen:
                seen[key] = cand
    return list(seen.values())


def normal_cone(
    optuple,
    interval,
    directions=sampling.DEFAULT_DIRECTIONS,
    cluster_tol=None,
    eig_eq_tol=None,
):
    """Sample the normal cone of a proper face through the order test.

    Candidate direction parts are the extreme-point sampling scheme
    projected onto the subspace commuting with both endpoint projections
    (a necessary condition for membership, and what pins down one-ray
    cones exactly); for every ``t`` the cut level sweeps the spectrum of
    ``b_t`` including gap midpoints, which is what picks up multiple
    supporting levels across a spectral gap.
    """
    _require_proper(optuple, interval)
    alg = optuple.algebra
    members = []
    pairs = []
    for t in _candidate_directions(optuple, interval, directions):
        b_t = algebra.linear_combination(optuple, t)
        info = spectral.decompose(alg, b_t, cluster_tol=cluster_tol)
        eff_tol = (
            spectral.EIG_EQ_TOL if eig_eq_tol is None else eig_eq_tol
        ) * max(1.0, max_norm(b_t))
        for s in sampling.eigenvalue_sweep(info.values):
            cand = spectral.interval_from_spectrum(alg, info, s, eff_tol)
            if spectral.projection_leq(
                cand.lower, interval.lower, PROJ_ORDER_TOL
            ) and spectral.projection_leq(
                interval.upper, cand.upper, PROJ_ORDER_TOL
            ):
                normal = np.concatenate(([-s], t))
                members.append(normal / np.linalg.norm(normal))
                pairs.append(SpectralPair(s=s, t=t))
    members = np.array(members) if members else np.empty((0, optuple.n + 1))
    degree = int(np.linalg.matrix_rank(members, tol=1e-8)) if len(members) else 0
    exact = False
    if all(d == 1 for d in alg.dims):
        polytope_degree = optuple.n + 1 - face_dimension(optuple, interval)
        exact = degree == polytope_degree
    return NormalConeSample(
        members=members, pairs=tuple(pairs), degree=degree, exact=exact
    )


def is_sharp(optuple, interval, directions=sampling.DEFAULT_DIRECTIONS):
    """True when the face is supported by two independent hyperplanes."""
    return normal_cone(optuple, interval, directions).degree >= 2


def block_decomposition_checks(optuple, interval, pair):
    """Violations of the three-block form of ``b_t`` for a cone member.

    For ``(-s, t)`` in the normal cone of the face, ``b_t`` must be block
    diagonal with spectrum at most ``s`` under ``q_minus``, exactly ``s``
    on the gap, at least ``s`` above ``q_plus``, and must commute with
    both endpoints.  Returns the measured violations, all of which should
    be at tolerance level.
    """
    b_t = algebra.linear_combination(optuple, pair.t)
    s = pair.s
    q_minus, q_plus = interval.lower, interval.upper
    r = interval.gap()
    out = {
        "commutator_lower": algebra.commutator_norm(b_t, q_minus),
        "commutator_upper": algebra.commutator_norm(b_t, q_plus),
    }
    lower_eigs = _restricted_eigs(b_t, q_minus)
    out["lower_excess"] = max(float(lower_eigs.max(initial=-np.inf)) - s, 0.0)
    upper_eigs = _restricted_eigs(b_t, _complement(optuple.algebra, q_plus))
    out["upper_deficit"] = max(s - float(upper_eigs.min(initial=np.inf)), 0.0)
    mid = [
        rb @ bb @ rb - s * rb for rb, bb in zip(r.blocks, b_t.blocks)
    ]
    out["gap_mismatch"] = max(
        (float(np.max(np.abs(m))) for m in mid if m.size), default=0.0
    )
    return out


def _complement(alg, p):
    return alg.identity() - p


def _restricted_eigs(op, proj, rank_tol=1e-6):
    """Eigenvalues of ``op`` compressed to the range of ``proj``."""
    eigs = []
    for pb, ob in zip(proj.blocks, op.blocks):
        w, v = np.linalg.eigh(pb)
        cols = w > 1.0 - rank_tol
        if not np.any(cols):
            continue
        V = v[:, cols]
        eigs.append(np.linalg.eigvalsh(V.conj().T @ ob @ V))
    return np.concatenate(eigs) if eigs else np.array([])


def minimal_exposed_face(
    optuple, interval, directions=sampling.DEFAULT_DIRECTIONS
):
    """Smallest sampled exposed face containing the given face.

    Sums the unit normals found in the cone sample; the combined
    direction supports the intersection of the sampled faces, which
    contains the input.  Fails when no member is found or the combined
    direction has no ``t`` component.
    """
    cone = normal_cone(optuple, interval, directions)
    if not len(cone.members):
        raise MinimalFaceError(
            "no supporting directions found; refine the direction sample"
        )
    combined = cone.members.sum(axis=0)
    t_bar = combined[1:]
    if np.linalg.norm(t_bar) <= 1e-10:
        raise MinimalFaceError(
            "combined normal is a pure trace direction; refine the sample"
        )
    face = scale.exposed_face(optuple, SpectralPair(s=-combined[0], t=t_bar))
    if not interval_contains(face.interval, interval):
        raise InvariantViolation(
            "input face is not inside the exposed face of its combined normal"
        )
    return face


def minimal_exposed_chain(
    optuple, interval, directions=sampling.DEFAULT_DIRECTIONS
):
    """Nested exposed faces descending to the given face.

    The first handle is exposed in the scale; each later one is exposed
    in the cut-down scale of its predecessor, transported back to the
    ambient algebra.  The chain ends when the current exposed face equals
    the target, which takes at most ``n + 1`` levels for a genuine face.
    """
    _require_proper(optuple, interval)
    stack = _CompressionStack(optuple)
    base = optuple.algebra.zero()
    current_target = interval
    handles = []
    for _ in range(optuple.n + 2):
        exposed = minimal_exposed_face(stack.tuple, current_target, directions)
        lower_amb = base + stack.embed(exposed.interval.lower)
        upper_amb = base + stack.embed(exposed.interval.upper)
        handles.append(
            FaceHandle(interval=OrderInterval(lower_amb, upper_amb))
        )
        if intervals_equal(exposed.interval, current_target):
            return handles
        p_minus, p_plus = exposed.interval.lower, exposed.interval.upper
        base = base + stack.embed(p_minus)
        comp = stack.push(exposed.interval.gap())
        current_target = OrderInterval(
            comp.restrict(current_target.lower - p_minus),
            comp.restrict(current_target.upper - p_minus),
        )
    raise FaceChainError(
        f"chain did not stabilize within {optuple.n + 2} levels"
    )
