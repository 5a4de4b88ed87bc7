"""Deterministic direction sampling on spheres.

Directions come from an unscrambled Halton sequence pushed through the
inverse normal CDF and normalized, which gives a reproducible,
reasonably well-spread set on the unit sphere; the signed coordinate
axes are always prepended.  The sequence is extensible: asking for more
directions yields a superset of a shorter request, which the sampling
escalation logic relies on.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc

DEFAULT_DIRECTIONS = 256


def axis_directions(dim):
    eye = np.eye(dim)
    return np.concatenate([eye, -eye], axis=0)


def unit_directions(dim, count=DEFAULT_DIRECTIONS):
    """``2*dim`` axis directions followed by ``count`` quasi-random ones."""
    out = [axis_directions(dim)]
    if count > 0:
        halton = qmc.Halton(d=dim, scramble=False, seed=None)
        halton.fast_forward(1)  # skip the origin-adjacent first point
        u = halton.random(count)
        g = ndtri(np.clip(u, 1e-12, 1.0 - 1e-12))
        norms = np.linalg.norm(g, axis=1)
        norms[norms == 0] = 1.0
        out.append(g / norms[:, None])
    return np.concatenate(out, axis=0)


def eigenvalue_sweep(values, pad=1.0):
    """Cut levels hitting every interval projection of a spectrum.

    Returns the sorted cluster values themselves, the midpoints of
    consecutive gaps, and one level below the minimum and above the
    maximum.
    """
    values = np.sort(np.asarray(values, dtype=float))
    levels = [values[0] - pad]
    for i, v in enumerate(values):
        levels.append(v)
        if i + 1 < len(values):
            levels.append(0.5 * (v + values[i + 1]))
    levels.append(values[-1] + pad)
    return np.array(levels)
