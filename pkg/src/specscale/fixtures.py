"""Reference operator tuples used by the tests and the demos.

All four are desk-scale and chosen so that the interesting geometric
phenomena (spectrum slopes, zonotope facets, continuum extreme points,
hidden vertices, central block projections) are decidable by hand or by
the exhaustive oracle.
"""

from __future__ import annotations

import numpy as np

from .algebra import FiniteAlgebra, HermitianOperator, OperatorTuple

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)


def reciprocal_diagonal(d=8):
    """Single operator diag(1, 1/2, ..., 1/d) with geometric trace weights.

    Block weights 2^{-k} renormalized by 1/(1 - 2^{-d}) so the trace is
    exactly normalized.  The scale is a polygon whose lower-boundary
    segment slopes are exactly the eigenvalues 1/k.
    """
    norm = 1.0 - 2.0 ** (-d)
    blocks = tuple((1, 2.0 ** (-k) / norm) for k in range(1, d + 1))
    alg = FiniteAlgebra(blocks)
    op = HermitianOperator([[[1.0 / k]] for k in range(1, d + 1)])
    return OperatorTuple(alg, (op,))


def two_point(weights=(0.5, 0.5)):
    """Single operator diag(0, 1) on two weighted one-dimensional blocks."""
    alg = FiniteAlgebra(((1, weights[0]), (1, weights[1])))
    op = HermitianOperator([[[0.0]], [[1.0]]])
    return OperatorTuple(alg, (op,))


def pauli_pair():
    """(sigma_x, sigma_z) in the 2x2 factor with the normalized trace.

    The scale is the bicone over a disk: two cone apexes at the images of
    0 and 1 joined along an equator circle of extreme points, so the
    generated algebra is as noncommutative as it gets.
    """
    alg = FiniteAlgebra(((2, 0.5),))
    return OperatorTuple(
        alg, (HermitianOperator([SIGMA_X]), HermitianOperator([SIGMA_Z]))
    )


def commuting_diagonals():
    """A commuting pair of diagonals; the scale is a 3D zonotope.

    Joint eigenvalue columns are pairwise distinct, so the generated
    algebra is the full diagonal algebra of dimension four.
    """
    alg = FiniteAlgebra(tuple((1, 0.25) for _ in range(4)))
    b1 = HermitianOperator([[[1.0]], [[2.0]], [[3.0]], [[4.0]]])
    b2 = HermitianOperator([[[1.0]], [[1.0]], [[0.0]], [[0.0]]])
    return OperatorTuple(alg, (b1, b2))


def block_with_scalars():
    """A noncommuting 2x2 block next to a scalar block.

    Block one carries (sigma_x, sigma_z); block two the scalars (3, 5).
    The scalar block's projection is central, its image is an isolated
    extreme point exposed by directions with independent t-parts, and the
    Minkowski-sum geometry produces extreme points of the scale that no
    single hyperplane exposes.
    """
    alg = FiniteAlgebra(((2, 0.25), (1, 0.5)))
    b1 = HermitianOperator([SIGMA_X, [[3.0]]])
    b2 = HermitianOperator([SIGMA_Z, [[5.0]]])
    return OperatorTuple(alg, (b1, b2))


def zero_tuple(n=1, dim=2):
    """n zero operators on one block; the scale collapses to a segment."""
    alg = FiniteAlgebra(((dim, 1.0 / dim),))
    zero = HermitianOperator([np.zeros((dim, dim))])
    return OperatorTuple(alg, tuple(zero for _ in range(n)))


def hidden_vertex_data(positive_root=True):
    """Tangency direction of the scalar segment in ``block_with_scalars``.

    Returns ``(t, s)`` with ``|t| = 1`` and ``3 t_0 + 5 t_1 = 1``: along
    ``-t`` the bottom eigenvalue of the 2x2 block ties with the scalar
    block, which is what hides one endpoint of the corresponding cone
    ruling from every supporting hyperplane.
    """
    phi = np.arctan2(5.0, 3.0)
    delta = np.arccos(1.0 / np.sqrt(34.0))
    theta = phi - delta if positive_root else phi + delta
    t = np.array([np.cos(theta), np.sin(theta)])
    return t, 1.0
