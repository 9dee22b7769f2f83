"""Adaptive panel quadrature with an embedded Gauss pair.

Integrands here are oscillatory (factors like 1 - cos(omega t)), so callers
seed the panel edges with the cosine half-periods and any other structure
they know about (cutoff multiples, tabulation knots); panels whose 7- vs
15-point Gauss estimates disagree are then bisected until the summed error
estimate meets the tolerance.
"""

from __future__ import annotations

import heapq

import numpy as np

from .errors import QuadratureError

_X7, _W7 = np.polynomial.legendre.leggauss(7)
_X15, _W15 = np.polynomial.legendre.leggauss(15)


def _panel_estimates(f, lo: np.ndarray, hi: np.ndarray):
    """Vectorized (I15, |I15 - I7|) over panels [lo_i, hi_i]."""
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    nodes7 = mid[:, None] + half[:, None] * _X7[None, :]
    nodes15 = mid[:, None] + half[:, None] * _X15[None, :]
    f7 = f(nodes7.ravel()).reshape(nodes7.shape)
    f15 = f(nodes15.ravel()).reshape(nodes15.shape)
    i7 = half * (f7 @ _W7)
    i15 = half * (f15 @ _W15)
    return i15, np.abs(i15 - i7)


def integrate_adaptive(f, edges, tol: float, max_panels: int = 20000):
    """Integrate ``f`` over the union of panels defined by ``edges``.

    Returns (value, error_estimate).  Raises :class:`QuadratureError`
    carrying the partial estimate if the panel budget is exhausted before
    the summed error estimate drops below ``tol``.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) <= 0):
        raise ValueError("edges must be strictly ascending with >= 2 entries")
    lo = edges[:-1]
    hi = edges[1:]
    values, errors = _panel_estimates(f, lo, hi)

    # max-heap on the error estimate (heapq is a min-heap, negate)
    heap = [(-e, a, b, v) for e, a, b, v in zip(errors, lo, hi, values)]
    heapq.heapify(heap)
    total = float(np.sum(values))
    total_err = float(np.sum(errors))
    n_panels = len(heap)

    while total_err > tol and n_panels < max_panels:
        neg_err, a, b, v = heapq.heappop(heap)
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            # panel no longer splittable at float resolution
            heapq.heappush(heap, (0.0, a, b, v))
            continue
        subs_lo = np.array([a, mid])
        subs_hi = np.array([mid, b])
        vals, errs = _panel_estimates(f, subs_lo, subs_hi)
        total += float(vals.sum() - v)
        total_err += float(errs.sum() + neg_err)
        for e2, a2, b2, v2 in zip(errs, subs_lo, subs_hi, vals):
            heapq.heappush(heap, (-e2, a2, b2, v2))
        n_panels += 1

    if total_err > tol:
        raise QuadratureError(
            f"quadrature error estimate {total_err:.3e} above tolerance {tol:.3e} "
            f"after {n_panels} panels",
            estimate=total,
            error=total_err,
        )
    return total, total_err
