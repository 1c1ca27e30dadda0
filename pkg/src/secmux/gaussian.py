"""Rate regions of the two-user Gaussian interference channel under
power-split signaling.

Each transmitter t spends a fraction ``beta_t`` of its power budget,
devotes a fraction ``theta_t`` of that to the message (the rest becomes
transmitter-generated artificial noise) and puts a fraction ``mu_t`` of
the message power on the layer that both receivers decode.  A parameter
point induces sixteen closed-form mutual informations (``MiProfile``),
from which five region constructions follow:

* ``hk_polygon``           -- achievable total-rate region of the point,
* ``secure_secret_polygon``-- secret rates after the leakage penalty,
* ``baseline_inner`` / ``baseline_best`` -- rectangle references that use
  only the private layer,
* ``outer_region``         -- per-point equivocation and rate caps.

``sweep_union`` takes the union over a parameter grid and convexifies it
(time sharing).  The six-parameter grid is walked by a compiled kernel
when available (see ``_backend``); a pure-numpy fallback gives identical
results.  Rectangle-valued regions do not depend on the common-layer
fractions, so their sweeps reduce to the four remaining axes.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np

from . import _backend, _sweep_numpy
from .geometry import RatePolygon, pareto_front

REGION_KINDS = ("hk", "secure_secret", "baseline_inner", "baseline_best", "outer")

__all__ = [
    "REGION_KINDS",
    "GaussianIC",
    "PowerSplit",
    "MiProfile",
    "OuterBound",
    "SweepConfig",
    "mi_profile",
    "hk_polygon",
    "secure_secret_polygon",
    "inner_point_feasible",
    "outer_region",
    "baseline_inner",
    "baseline_best",
    "sweep_union",
    "sweep_backend_name",
]


@dataclass(frozen=True)
class GaussianIC:
    """Channel gains and noise-normalized power budgets.

    Receiver t observes its own signal at unit gain and the other
    transmitter at gain tau_t; both noises have unit variance.
    """

    tau1: float
    tau2: float
    p1: float
    p2: float

    def __post_init__(self):
        if self.p1 < 0 or self.p2 < 0:
            raise ValueError("power budgets must be nonnegative")


@dataclass(frozen=True)
class PowerSplit:
    """Per-transmitter power fractions (beta, theta, mu), each in [0, 1]."""

    beta1: float
    theta1: float
    mu1: float
    beta2: float
    theta2: float
    mu2: float

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{f.name} = {value!r} outside [0, 1]")


@dataclass(frozen=True)
class MiProfile:
    """The sixteen single-letter mutual informations of a parameter point,
    in nats.  For user t (other user o):

    ======  =====================================
    a_t     I(V_t; Y_t | W_1 W_2)   private layer, both common layers known
    b_t     I(W_o V_t; Y_t | W_t)   own signal plus the other common layer
    c_t     I(V_t; Y_t | W_o)       own signal, other common layer known
    d_t     I(W_o V_t; Y_t)         own signal plus other common layer, cold
    e_t     I(V_t; Y_t)             own signal, interference as noise
    g_t     I(V_t; Y_o)             own signal at the other receiver
    h_t     I(V_t; Y_t | V_o)       own signal, other signal known
    s_t     I(V_t; Y_o | V_o)       leakage of the own signal
    ======  =====================================
    """

    a1: float
    b1: float
    c1: float
    d1: float
    e1: float
    g1: float
    h1: float
    s1: float
    a2: float
    b2: float
    c2: float
    d2: float
    e2: float
    g2: float
    h2: float
    s2: float


@dataclass(frozen=True)
class OuterBound:
    """Per-point caps of the outer region: equivocation-rate caps per user
    plus plain rate caps."""

    r1e_cap: float
    r2e_cap: float
    r1_cap: float
    r2_cap: float

    def equivocation_polygon(self) -> RatePolygon:
        return RatePolygon.rectangle(self.r1e_cap, self.r2e_cap)


@dataclass(frozen=True)
class SweepConfig:
    """Grid resolution per split parameter and the common axis bounds."""

    resolution: int = 21
    bounds: tuple[float, float] = (0.0, 1.0)
    chunk_size: int = 1 << 17

    def __post_init__(self):
        if self.resolution < 2:
            raise ValueError("sweep resolution must be at least 2")
        lo, hi = self.bounds
        if not (0.0 <= lo < hi <= 1.0):
            raise ValueError("sweep bounds must satisfy 0 <= lo < hi <= 1")
        if self.chunk_size < 1:
            raise ValueError("chunk size must be positive")

    def axis(self) -> np.ndarray:
        return np.linspace(self.bounds[0], self.bounds[1], self.resolution)


def sweep_backend_name() -> str:
    return _backend.BACKEND_NAME


def mi_profile(channel: GaussianIC, split: PowerSplit) -> MiProfile:
    """Evaluate all sixteen closed forms at one parameter point."""
    values = _sweep_numpy.profile_values(
        channel.tau1,
        channel.tau2,
        channel.p1,
        channel.p2,
        split.beta1,
        split.theta1,
        split.mu1,
        split.beta2,
        split.theta2,
        split.mu2,
    )
    return MiProfile(**{k: float(v) for k, v in values.items()})


def _hk_planes(profile: MiProfile) -> list[tuple[float, float, float]]:
    return [
        (1.0, 0.0, profile.c1),
        (1.0, 0.0, profile.a1 + profile.b2),
        (0.0, 1.0, profile.c2),
        (0.0, 1.0, profile.a2 + profile.b1),
        (1.0, 1.0, profile.d1 + profile.a2),
        (1.0, 1.0, profile.a1 + profile.d2),
        (1.0, 1.0, profile.b1 + profile.b2),
        (2.0, 1.0, profile.d1 + profile.a1 + profile.b2),
        (1.0, 2.0, profile.d2 + profile.a2 + profile.b1),
        (-1.0, 0.0, 0.0),
        (0.0, -1.0, 0.0),
    ]


def hk_polygon(profile: MiProfile) -> RatePolygon:
    """Achievable total-rate polygon of one parameter point: nine rate
    constraints intersected with the nonnegative quadrant."""
    poly = RatePolygon.from_halfplanes(_hk_planes(profile))
    assert poly is not None  # the origin is always feasible
    return poly


def secure_secret_polygon(profile: MiProfile) -> RatePolygon:
    """Secret-rate polygon: the total-rate polygon translated by the
    leakage pair (-s1, -s2) and clipped to the nonnegative quadrant.

    A secret-rate pair (x, y) is feasible exactly when the total-rate pair
    (x + s1, y + s2) is achievable; that witness pair also dominates
    (x, y) componentwise, so no extra constraint is needed.  When the
    clipped translate is empty the region collapses to the origin.
    """
    shifted = []
    for a, b, c in _hk_planes(profile):
        shift = a * profile.s1 + b * profile.s2 if (a > 0 or b > 0) else 0.0
        shifted.append((a, b, c - shift))
    poly = RatePolygon.from_halfplanes(shifted)
    if poly is None:
        return RatePolygon.single_point()
    return poly


def inner_point_feasible(
    profile: MiProfile, r1: float, r2: float, r1e: float, r2e: float
) -> bool:
    """Whether a (total-rate, secret-rate) quadruple is achievable at this
    parameter point: both the totals and the leakage-shifted secret pair
    must be achievable, and secret rates cannot exceed totals."""
    if min(r1, r2, r1e, r2e) < 0:
        raise ValueError("rates must be nonnegative")
    hk = hk_polygon(profile)
    if not hk.contains((r1, r2)):
        return False
    if not hk.contains((r1e + profile.s1, r2e + profile.s2)):
        return False
    return r1e <= r1 + 1e-12 and r2e <= r2 + 1e-12


def outer_region(profile: MiProfile) -> OuterBound:
    """Converse caps at one parameter point.  Each user's equivocation rate
    is capped by the worse of two rate differences (negative differences
    clamp to zero); the plain rates are capped by the interference-as-noise
    mutual informations."""
    r1e = max(min(profile.e1 - profile.g1, profile.h1 - profile.s1), 0.0)
    r2e = max(min(profile.e2 - profile.g2, profile.h2 - profile.s2), 0.0)
    return OuterBound(r1e_cap=r1e, r2e_cap=r2e, r1_cap=profile.e1, r2_cap=profile.e2)


def baseline_inner(profile: MiProfile) -> RatePolygon:
    """Private-layer-only secret rectangle: each user keeps what survives
    the leakage penalty on its interference-as-noise rate."""
    return RatePolygon.rectangle(
        max(profile.e1 - profile.s1, 0.0), max(profile.e2 - profile.s2, 0.0)
    )


def baseline_best(profile: MiProfile) -> RatePolygon:
    """Private-layer-only rectangle without the leakage penalty."""
    return RatePolygon.rectangle(profile.e1, profile.e2)


# ---------------------------------------------------------------------------
# grid sweeps
# ---------------------------------------------------------------------------


def _sweep_hk_like(channel: GaussianIC, cfg: SweepConfig, secure: bool, backend):
    axis = cfg.axis()
    total = cfg.resolution**6
    chunk = min(cfg.chunk_size, total)
    buf = np.empty((19 * chunk, 2), dtype=np.float64)
    front = np.empty((0, 2))
    max_x = 0.0
    max_y = 0.0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        count = _backend.emit_candidates(
            channel.tau1,
            channel.tau2,
            channel.p1,
            channel.p2,
            axis,
            start,
            stop,
            secure,
            buf,
            backend=backend,
        )
        if count == 0:
            continue
        pts = buf[:count]
        max_x = max(max_x, float(pts[:, 0].max()))
        max_y = max(max_y, float(pts[:, 1].max()))
        front = pareto_front(np.concatenate([front, pts]))
    anchors = np.array([[0.0, 0.0], [max_x, 0.0], [0.0, max_y]])
    return RatePolygon.from_vertices(np.concatenate([front, anchors]))


def _sweep_rectangles(channel: GaussianIC, cfg: SweepConfig, kind: str):
    # Rectangle corners are independent of mu1/mu2, so the grid reduces to
    # the four (beta, theta) axes; the union over the full grid is equal.
    axis = cfg.axis()
    b1, t1, b2, t2 = np.meshgrid(axis, axis, axis, axis, indexing="ij")
    prof = _sweep_numpy.profile_values(
        channel.tau1,
        channel.tau2,
        channel.p1,
        channel.p2,
        b1.ravel(),
        t1.ravel(),
        0.0,
        b2.ravel(),
        t2.ravel(),
        0.0,
    )
    if kind == "baseline_inner":
        cx = np.maximum(prof["e1"] - prof["s1"], 0.0)
        cy = np.maximum(prof["e2"] - prof["s2"], 0.0)
    elif kind == "baseline_best":
        cx = prof["e1"]
        cy = prof["e2"]
    else:  # outer
        cx = np.maximum(np.minimum(prof["e1"] - prof["g1"], prof["h1"] - prof["s1"]), 0.0)
        cy = np.maximum(np.minimum(prof["e2"] - prof["g2"], prof["h2"] - prof["s2"]), 0.0)
    corners = np.stack([cx, cy], axis=1)
    front = pareto_front(corners)
    anchors = np.array([[0.0, 0.0], [float(cx.max()), 0.0], [0.0, float(cy.max())]])
    return RatePolygon.from_vertices(np.concatenate([front, anchors]))


def sweep_union(
    channel: GaussianIC, cfg: SweepConfig, region_kind: str, backend=None
) -> RatePolygon:
    """Convex hull of the chosen region over the whole parameter grid.

    Time sharing between parameter points justifies the convexification,
    and the result can only grow when the grid is refined.
    """
    if region_kind not in REGION_KINDS:
        raise ValueError(f"unknown region kind {region_kind!r}; expected one of {REGION_KINDS}")
    if region_kind == "hk":
        return _sweep_hk_like(channel, cfg, secure=False, backend=backend)
    if region_kind == "secure_secret":
        return _sweep_hk_like(channel, cfg, secure=True, backend=backend)
    return _sweep_rectangles(channel, cfg, region_kind)
