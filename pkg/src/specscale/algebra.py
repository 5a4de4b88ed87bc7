"""Block-diagonal operator algebras with a normalized faithful trace.

The ambient algebra is a finite direct sum of full matrix blocks
``M = (+)_j M_{d_j}``.  A positive weight ``c_j`` per block defines the
trace ``tr(a) = sum_j c_j Tr(A_j)``; the weights are normalized so that
``tr(1) = 1``, which makes the trace a faithful tracial state.  A tuple
``(b_1, ..., b_n)`` of self-adjoint elements together with the trace
defines the map

    psi(a) = (tr(a), tr(b_1 a), ..., tr(b_n a))

whose image of the positive unit ball ``{a : 0 <= a <= 1}`` is the
spectral scale, the compact convex body the rest of the package studies.
"""

from __future__ import annotations

import json
from collections import namedtuple
from dataclasses import dataclass

import numpy as np

from .errors import (
    HermitianError,
    IngestError,
    MembershipError,
    ShapeError,
    ZeroDirectionError,
)

# Ingestion tolerances.  Inputs are symmetrized after passing the
# self-adjointness check, so downstream eigensolvers always see exactly
# Hermitian matrices.
HERMITIAN_TOL = 1e-10
TRACE_NORMALIZATION_TOL = 1e-12
MEMBERSHIP_TOL = 1e-10

Block = namedtuple("Block", ["dim", "weight"])


class HermitianOperator:
    """A self-adjoint element, stored as one complex matrix per block.

    Construction checks ``max|A - A*| <= herm_tol`` per block and then
    symmetrizes, so stored blocks are exactly Hermitian.  Instances are
    immutable; the block arrays are marked read-only.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks, herm_tol=HERMITIAN_TOL):
        mats = []
        for j, raw in enumerate(blocks):
            a = np.array(raw, dtype=complex)
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise ShapeError(f"block {j} is not a square matrix: shape {a.shape}")
            deviation = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
            if deviation > herm_tol:
                raise HermitianError(
                    f"block {j} deviates from self-adjointness by {deviation:.3e}"
                )
            a = (a + a.conj().T) / 2.0
            a.flags.writeable = False
            mats.append(a)
        object.__setattr__(self, "blocks", tuple(mats))

    @property
    def dims(self):
        return tuple(b.shape[0] for b in self.blocks)

    def __add__(self, other):
        return _combine(self, other, 1.0)

    def __sub__(self, other):
        return _combine(self, other, -1.0)

    def __neg__(self):
        return HermitianOperator([-b for b in self.blocks], herm_tol=np.inf)

    def __rmul__(self, scalar):
        return HermitianOperator(
            [float(scalar) * b for b in self.blocks], herm_tol=np.inf
        )

    __mul__ = __rmul__

    def __repr__(self):
        return f"HermitianOperator(dims={self.dims})"


def _combine(a, b, sign):
    if a.dims != b.dims:
        raise ShapeError(f"block shapes differ: {a.dims} vs {b.dims}")
    return HermitianOperator(
        [x + sign * y for x, y in zip(a.blocks, b.blocks)], herm_tol=np.inf
    )


def _raw(blocks):
    """Wrap already-Hermitian per-block arrays without re-checking."""
    return HermitianOperator(blocks, herm_tol=np.inf)


def max_norm(op):
    """Largest absolute matrix entry across blocks."""
    return max(
        (float(np.max(np.abs(b))) for b in op.blocks if b.size), default=0.0
    )


def operator_product(a, b):
    """Blockwise product ``a b`` as raw arrays (not Hermitian in general)."""
    if a.dims != b.dims:
        raise ShapeError(f"block shapes differ: {a.dims} vs {b.dims}")
    return [x @ y for x, y in zip(a.blocks, b.blocks)]


def commutator_norm(a, b):
    """max-norm of ``ab - ba``."""
    return max(
        (
            float(np.max(np.abs(x @ y - y @ x)))
            for x, y in zip(a.blocks, b.blocks)
            if x.size
        ),
        default=0.0,
    )


@dataclass(frozen=True)
class FiniteAlgebra:
    """A direct sum of matrix blocks with trace weights summing to one."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(Block(int(d), float(c)) for d, c in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks:
            raise ShapeError("algebra needs at least one block")
        for j, (d, c) in enumerate(blocks):
            if d < 1:
                raise ShapeError(f"block {j} has non-positive dimension {d}")
            if c <= 0:
                raise ShapeError(f"block {j} has non-positive weight {c}")
        total = sum(c * d for d, c in blocks)
        if abs(total - 1.0) > TRACE_NORMALIZATION_TOL:
            raise ShapeError(
                f"trace normalization sum(c_j d_j) = {total!r} is not 1"
            )

    @property
    def dims(self):
        return tuple(b.dim for b in self.blocks)

    @property
    def weights(self):
        return tuple(b.weight for b in self.blocks)

    @property
    def total_dim(self):
        return sum(b.dim for b in self.blocks)

    def conforms(self, op):
        return op.dims == self.dims

    def require(self, op):
        if not self.conforms(op):
            raise ShapeError(
                f"operator blocks {op.dims} do not match algebra blocks {self.dims}"
            )

    def identity(self):
        return _raw([np.eye(d, dtype=complex) for d in self.dims])

    def zero(self):
        return _raw([np.zeros((d, d), dtype=complex) for d in self.dims])

    def diagonal(self, entries):
        """Operator with the given real diagonal, split across blocks."""
        entries = np.asarray(entries, dtype=float)
        if entries.size != self.total_dim:
            raise ShapeError(
                f"expected {self.total_dim} diagonal entries, got {entries.size}"
            )
        out, k = [], 0
        for d in self.dims:
            out.append(np.diag(entries[k : k + d]).astype(complex))
            k += d
        return _raw(out)

    def trace(self, op):
        self.require(op)
        return float(
            sum(c * np.trace(b).real for (d, c), b in zip(self.blocks, op.blocks))
        )

    def inner(self, a, b):
        """Trace inner product ``tr(a* b)``, real for self-adjoint arguments."""
        self.require(a)
        self.require(b)
        return float(
            sum(
                c * np.sum(x.conj() * y).real
                for (d, c), x, y in zip(self.blocks, a.blocks, b.blocks)
            )
        )


@dataclass(frozen=True)
class OperatorTuple:
    """An algebra together with the defining self-adjoint tuple."""

    algebra: FiniteAlgebra
    operators: tuple

    def __post_init__(self):
        ops = tuple(self.operators)
        object.__setattr__(self, "operators", ops)
        if not ops:
            raise ShapeError("operator tuple must contain at least one operator")
        for op in ops:
            self.algebra.require(op)

    @property
    def n(self):
        return len(self.operators)


def trace(optuple_or_alg, a):
    alg = getattr(optuple_or_alg, "algebra", optuple_or_alg)
    return alg.trace(a)


def is_contraction(alg, a, tol=MEMBERSHIP_TOL):
    """True when the spectrum of ``a`` lies in ``[-tol, 1 + tol]``."""
    alg.require(a)
    for w in (np.linalg.eigvalsh(b) for b in a.blocks):
        if w.size and (w.min() < -tol or w.max() > 1.0 + tol):
            return False
    return True


def psi(optuple, a, check_membership=False):
    """Trace-pairing image ``(tr(a), tr(b_1 a), ..., tr(b_n a))``.

    With ``check_membership`` the spectrum of ``a`` is required to lie in
    ``[0, 1]`` up to tolerance, i.e. ``a`` must be in the positive unit
    ball whose image is the spectral scale.
    """
    alg = optuple.algebra
    alg.require(a)
    if check_membership and not is_contraction(alg, a):
        raise MembershipError("operator is not in the positive unit ball")
    out = np.empty(optuple.n + 1)
    out[0] = alg.trace(a)
    for i, b in enumerate(optuple.operators):
        out[i + 1] = sum(
            c * np.sum(x * y.T).real
            for (d, c), x, y in zip(alg.blocks, b.blocks, a.blocks)
        )
    return out


def linear_combination(optuple, t):
    """The operator ``t_1 b_1 + ... + t_n b_n``."""
    t = np.asarray(t, dtype=float)
    if t.shape != (optuple.n,):
        raise ShapeError(f"direction has shape {t.shape}, expected ({optuple.n},)")
    blocks = [np.zeros((d, d), dtype=complex) for d in optuple.algebra.dims]
    for coeff, op in zip(t, optuple.operators):
        for acc, b in zip(blocks, op.blocks):
            acc += coeff * b
    return _raw(blocks)


def require_direction(t, tol=1e-12):
    t = np.asarray(t, dtype=float).ravel()
    if np.linalg.norm(t) <= tol:
        raise ZeroDirectionError("spectral pair needs a nonzero direction t")
    return t


def generated_algebra_basis(optuple, tol=1e-10, max_rounds=None):
    """Trace-orthonormal self-adjoint basis of the algebra generated by
    the tuple and the identity.

    The real span of the self-adjoint part is closed under the
    symmetrized product ``(xy + yx)/2`` and ``(xy - yx)/(2i)``; iterating
    these on a growing orthonormal set stabilizes in finitely many rounds.
    The basis size equals the complex dimension of the generated algebra.
    """
    alg = optuple.algebra
    basis = []

    def try_add(candidate_blocks):
        cand = _raw([np.array(b) for b in candidate_blocks])
        for e in basis:
            coeff = alg.inner(e, cand)
            cand = cand - coeff * e
        norm2 = alg.inner(cand, cand)
        if norm2 > tol:
            basis.append((1.0 / np.sqrt(norm2)) * cand)
            return True
        return False

    try_add(alg.identity().blocks)
    for op in optuple.operators:
        try_add(op.blocks)

    cap = max_rounds or sum(d * d for d in alg.dims) + 1
    for _ in range(cap):
        grew = False
        snapshot = list(basis)
        for x in snapshot:
            for y in snapshot:
                prod = [p @ q for p, q in zip(x.blocks, y.blocks)]
                sym = [(m + m.conj().T) / 2.0 for m in prod]
                antisym = [(m - m.conj().T) / 2j for m in prod]
                grew |= try_add(sym)
                grew |= try_add(antisym)
        if not grew:
            break
    return basis


class Compression:
    """Cut-down of a tuple to the range of a projection ``r``.

    Holds the compressed tuple over the rescaled trace ``tr_r = tr / tr(r)``
    together with the per-block isometries needed to embed compressed
    operators back into the ambient algebra.
    """

    def __init__(self, optuple, r, rank_tol=1e-6):
        alg = optuple.algebra
        alg.require(r)
        self.parent = optuple
        self.r = r
        self.trace_r = alg.trace(r)
        if self.trace_r <= 1e-10:
            raise ShapeError("projection has (numerically) zero trace")
        isometries = []
        new_blocks = []
        kept = []
        for j, ((d, c), rb) in enumerate(zip(alg.blocks, r.blocks)):
            w, v = np.linalg.eigh(rb)
            cols = w > 1.0 - rank_tol
            if np.any((w > rank_tol) & (w < 1.0 - rank_tol)):
                raise ShapeError(f"block {j} of r is not a projection")
            k = int(cols.sum())
            if k == 0:
                isometries.append(None)
                continue
            V = v[:, cols]
            isometries.append(V)
            new_blocks.append(Block(k, c / self.trace_r))
            kept.append(j)
        self.isometries = isometries
        self.kept_blocks = kept
        sub_alg = FiniteAlgebra(tuple(new_blocks))
        ops = []
        for op in optuple.operators:
            comp = [
                isometries[j].conj().T @ op.blocks[j] @ isometries[j] for j in kept
            ]
            ops.append(_raw([(m + m.conj().T) / 2.0 for m in comp]))
        self.tuple = OperatorTuple(sub_alg, tuple(ops))

    def restrict(self, op):
        """Compress an ambient operator into the cut-down coordinates."""
        self.parent.algebra.require(op)
        comp = [
            self.isometries[j].conj().T @ op.blocks[j] @ self.isometries[j]
            for j in self.kept_blocks
        ]
        return _raw([(m + m.conj().T) / 2.0 for m in comp])

    def embed(self, op):
        """Embed a cut-down operator back into the ambient algebra."""
        if op.dims != self.tuple.algebra.dims:
            raise ShapeError("operator does not live in the cut-down algebra")
        blocks = [
            np.zeros((d, d), dtype=complex) for d in self.parent.algebra.dims
        ]
        for local, j in enumerate(self.kept_blocks):
            V = self.isometries[j]
            blocks[j] = V @ op.blocks[local] @ V.conj().T
        return _raw([(m + m.conj().T) / 2.0 for m in blocks])


# ---------------------------------------------------------------------------
# JSON ingestion.  Schema (field names are part of the interface):
#
#   {"blocks": [{"weight": number, "dim": integer,
#                "operators": [matrix, ...]}, ...]}
#
# where matrix is a dim x dim array of [re, im] pairs and every block lists
# the same number of operators, in the same order.
# ---------------------------------------------------------------------------


def _matrix_from_json(node, dim, path):
    if not isinstance(node, list) or len(node) != dim:
        raise IngestError(f"expected {dim} matrix rows", path)
    out = np.empty((dim, dim), dtype=complex)
    for i, row in enumerate(node):
        if not isinstance(row, list) or len(row) != dim:
            raise IngestError(f"expected {dim} entries", f"{path}[{i}]")
        for k, entry in enumerate(row):
            if (
                not isinstance(entry, list)
                or len(entry) != 2
                or not all(isinstance(x, (int, float)) for x in entry)
            ):
                raise IngestError(
                    "matrix entry must be a [re, im] pair", f"{path}[{i}][{k}]"
                )
            out[i, k] = complex(entry[0], entry[1])
    return out


def tuple_from_json(source):
    """Build an OperatorTuple from the JSON ingestion schema.

    ``source`` may be a JSON string or an already-decoded object.  Raises
    IngestError with a field path on malformed input, HermitianError on
    non-self-adjoint operator matrices.
    """
    if isinstance(source, (str, bytes)):
        try:
            obj = json.loads(source)
        except json.JSONDecodeError as exc:
            raise IngestError(f"invalid JSON: {exc}") from exc
    else:
        obj = source
    if not isinstance(obj, dict) or "blocks" not in obj:
        raise IngestError("top-level object must contain 'blocks'")
    raw_blocks = obj["blocks"]
    if not isinstance(raw_blocks, list) or not raw_blocks:
        raise IngestError("must be a non-empty list", "blocks")

    specs, per_block_ops = [], []
    n_ops = None
    for j, node in enumerate(raw_blocks):
        path = f"blocks[{j}]"
        if not isinstance(node, dict):
            raise IngestError("block must be an object", path)
        for key in ("weight", "dim", "operators"):
            if key not in node:
                raise IngestError(f"missing field '{key}'", path)
        dim = node["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise IngestError("dim must be a positive integer", f"{path}.dim")
        weight = node["weight"]
        if not isinstance(weight, (int, float)) or weight <= 0:
            raise IngestError("weight must be a positive number", f"{path}.weight")
        ops = node["operators"]
        if not isinstance(ops, list) or not ops:
            raise IngestError(
                "operators must be a non-empty list", f"{path}.operators"
            )
        if n_ops is None:
            n_ops = len(ops)
        elif len(ops) != n_ops:
            raise IngestError(
                f"expected {n_ops} operators, found {len(ops)}",
                f"{path}.operators",
            )
        mats = [
            _matrix_from_json(m, dim, f"{path}.operators[{i}]")
            for i, m in enumerate(ops)
        ]
        specs.append(Block(dim, float(weight)))
        per_block_ops.append(mats)

    try:
        alg = FiniteAlgebra(tuple(specs))
    except ShapeError as exc:
        raise IngestError(str(exc), "blocks") from exc
    operators = tuple(
        HermitianOperator([per_block_ops[j][i] for j in range(len(specs))])
        for i in range(n_ops)
    )
    return OperatorTuple(alg, operators)


def tuple_to_json(optuple):
    """Serialize to the ingestion schema (plain python object)."""
    blocks = []
    for j, (d, c) in enumerate(optuple.algebra.blocks):
        mats = []
        for op in optuple.operators:
            b = op.blocks[j]
            mats.append(
                [[[b[i, k].real, b[i, k].imag] for k in range(d)] for i in range(d)]
            )
        blocks.append({"weight": c, "dim": d, "operators": mats})
    return {"blocks": blocks}


def load_tuple(path):
    with open(path, "r", encoding="utf-8") as fh:
        return tuple_from_json(fh.read())


def save_tuple(optuple, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(tuple_to_json(optuple), fh)
        fh.write("\n")
