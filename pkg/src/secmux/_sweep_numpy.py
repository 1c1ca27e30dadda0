"""Pure-numpy backend for the power-split parameter sweep.

This mirrors ``_sweep_kernel`` (the compiled extension) exactly: same grid
traversal order, same closed forms, same candidate-vertex enumeration and
feasibility tolerance, so the two backends produce interchangeable point
sets.  It is the fallback selected at import when the extension is not
built, and the baseline of the backend benchmark.
"""

from __future__ import annotations

import numpy as np

FEAS_TOL = 1e-9

BACKEND_NAME = "numpy"


def profile_values(tau1, tau2, p1, p2, b1, t1, m1, b2, t2, m2):
    """The sixteen single-letter mutual informations of a parameter point.

    Broadcasts over array-valued split parameters.  Returns a dict keyed
    by the profile field names used by ``gaussian.MiProfile``.
    """
    msg1 = b1 * t1 * p1
    art1 = b1 * (1.0 - t1) * p1
    com1 = m1 * msg1
    prv1 = msg1 - com1
    msg2 = b2 * t2 * p2
    art2 = b2 * (1.0 - t2) * p2
    com2 = m2 * msg2
    prv2 = msg2 - com2
    tau1sq = tau1 * tau1
    tau2sq = tau2 * tau2

    den1 = 1.0 + art1 + tau1sq * (art2 + prv2)
    den2 = 1.0 + art2 + tau2sq * (art1 + prv1)
    half = 0.5

    return {
        "a1": half * np.log1p(prv1 / den1),
        "b1": half * np.log1p((prv1 + tau1sq * com2) / den1),
        "c1": half * np.log1p(msg1 / den1),
        "d1": half * np.log1p((msg1 + tau1sq * com2) / den1),
        "e1": half * np.log1p(msg1 / (1.0 + art1 + tau1sq * (art2 + msg2))),
        "g1": half * np.log1p(tau2sq * msg1 / (1.0 + tau2sq * art1 + art2 + msg2)),
        "h1": half * np.log1p(msg1 / (1.0 + art1 + tau1sq * art2)),
        "s1": half * np.log1p(tau2sq * msg1 / (1.0 + tau2sq * art1 + art2)),
        "a2": half * np.log1p(prv2 / den2),
        "b2": half * np.log1p((prv2 + tau2sq * com1) / den2),
        "c2": half * np.log1p(msg2 / den2),
        "d2": half * np.log1p((msg2 + tau2sq * com1) / den2),
        "e2": half * np.log1p(msg2 / (1.0 + art2 + tau2sq * (art1 + msg1))),
        "g2": half * np.log1p(tau1sq * msg2 / (1.0 + tau1sq * art2 + art1 + msg1)),
        "h2": half * np.log1p(msg2 / (1.0 + art2 + tau2sq * art1)),
        "s2": half * np.log1p(tau1sq * msg2 / (1.0 + tau1sq * art2 + art1)),
    }


def caps_from_profile(prof, secure: bool):
    """Constraint caps (K1..K5) of the rate polygon at each point.

    K1: x cap, K2: y cap, K3: x+y cap, K4: 2x+y cap, K5: x+2y cap.  For
    the secret-rate region the caps are shifted by the leakage terms.
    """
    k1 = np.minimum(prof["c1"], prof["a1"] + prof["b2"])
    k2 = np.minimum(prof["c2"], prof["a2"] + prof["b1"])
    k3 = np.minimum(
        np.minimum(prof["d1"] + prof["a2"], prof["a1"] + prof["d2"]),
        prof["b1"] + prof["b2"],
    )
    k4 = prof["d1"] + prof["a1"] + prof["b2"]
    k5 = prof["d2"] + prof["a2"] + prof["b1"]
    if secure:
        s1, s2 = prof["s1"], prof["s2"]
        k1 = k1 - s1
        k2 = k2 - s2
        k3 = k3 - s1 - s2
        k4 = k4 - 2.0 * s1 - s2
        k5 = k5 - s1 - 2.0 * s2
    return k1, k2, k3, k4, k5


def candidate_vertices(k1, k2, k3, k4, k5):
    """Feasible vertices of {x,y >= 0, x<=K1, y<=K2, x+y<=K3, 2x+y<=K4,
    x+2y<=K5} for each cap vector, flattened into one (n, 2) array.

    The candidate list enumerates every intersection of two non-parallel
    boundary lines; infeasible caps (any K < 0) yield no points.
    """
    zero = np.zeros_like(k1)
    xs = np.stack(
        [
            zero, zero, zero, zero, zero,
            k1, k3, 0.5 * k4, k5,
            k1, k1, k1, k1,
            k3 - k2, 0.5 * (k4 - k2), k5 - 2.0 * k2,
            k4 - k3, 2.0 * k3 - k5, (2.0 * k4 - k5) / 3.0,
        ]
    )
    ys = np.stack(
        [
            zero, k2, k3, k4, 0.5 * k5,
            zero, zero, zero, zero,
            k2, k3 - k1, k4 - 2.0 * k1, 0.5 * (k5 - k1),
            k2, k2, k2,
            2.0 * k3 - k4, k5 - k3, (2.0 * k5 - k4) / 3.0,
        ]
    )
    tol = FEAS_TOL
    feasible = (
        (xs >= -tol)
        & (ys >= -tol)
        & (xs <= k1 + tol)
        & (ys <= k2 + tol)
        & (xs + ys <= k3 + tol)
        & (2.0 * xs + ys <= k4 + tol)
        & (xs + 2.0 * ys <= k5 + tol)
        & (k1 >= -tol)
        & (k2 >= -tol)
        & (k3 >= -tol)
        & (k4 >= -tol)
        & (k5 >= -tol)
    )
    out = np.stack(
        [np.maximum(xs[feasible], 0.0), np.maximum(ys[feasible], 0.0)], axis=1
    )
    return out


def _grid_params(axis: np.ndarray, start: int, stop: int):
    res = len(axis)
    idx = np.arange(start, stop, dtype=np.int64)
    m2 = axis[idx % res]
    idx //= res
    t2 = axis[idx % res]
    idx //= res
    b2 = axis[idx % res]
    idx //= res
    m1 = axis[idx % res]
    idx //= res
    t1 = axis[idx % res]
    idx //= res
    b1 = axis[idx % res]
    return b1, t1, m1, b2, t2, m2


def emit_candidates(tau1, tau2, p1, p2, axis, start, stop, secure, buf):
    """Fill ``buf`` with feasible polygon vertices for grid points in
    [start, stop) of the flattened (b1, t1, m1, b2, t2, m2) grid; returns
    the number of points written."""
    b1, t1, m1, b2, t2, m2 = _grid_params(np.asarray(axis, dtype=np.float64), start, stop)
    prof = profile_values(tau1, tau2, p1, p2, b1, t1, m1, b2, t2, m2)
    caps = caps_from_profile(prof, secure)
    pts = candidate_vertices(*caps)
    count = len(pts)
    buf[:count] = pts
    return count
