"""Exhaustive and randomized verification suites.

Each suite checks one family of inequalities at desk scale and reports the
worst margin it saw.  Margins are oriented so that nonnegative means the
inequality holds; a suite passes when every check does.  The suites are
deterministic given their seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .finite_prob import (
    FiniteConditional,
    FiniteDistribution,
    JointDistribution,
    mutual_information,
    phi,
    phi_slope_at_zero,
    psi,
)
from .hashing import (
    MAX_ENUMERATION_DIM,
    MessageLayout,
    Projection,
    pa_bound_sides,
    two_universal_exhaustive,
)

SUITE_NAMES = (
    "two-universality",
    "pa-bound",
    "psi-leq-phi",
    "phi-slope",
    "phi-concavity",
)

__all__ = ["SUITE_NAMES", "SuiteResult", "run_suite", "run_suites"]


@dataclass
class SuiteResult:
    name: str
    passed: bool
    num_checks: int
    worst_margin: float
    details: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "num_checks": self.num_checks,
            "worst_margin": self.worst_margin,
            "details": self.details,
            "failures": self.failures,
        }


def _compositions(total: int):
    """All tuples of positive integers summing to ``total``."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _compositions(total - first):
            yield (first, *rest)


def _all_projections(dimension: int):
    """Every (layout, index set) pair over ``dimension`` bits."""
    for dummy in range(dimension):
        for secrets in _compositions(dimension - dummy):
            layout = MessageLayout(secrets, dummy)
            n = layout.num_secret
            for mask in range(1, 1 << n):
                index_set = {i + 1 for i in range(n) if mask >> i & 1}
                yield Projection(layout, index_set)


def two_universality_suite(
    max_dim: int = MAX_ENUMERATION_DIM, family_override=None, override_dim: int | None = None
) -> SuiteResult:
    """Exact worst-case collision probabilities for every projection of
    every hashable dimension up to ``max_dim``, against the 2^-m bound.

    ``family_override`` substitutes an explicit matrix family at dimension
    ``override_dim``; the negative-control test uses it to inject a
    singular member and watch the suite fail.
    """
    checks = 0
    worst = math.inf
    failures = []
    equalities = 0
    cache: dict[tuple[int, tuple[int, ...]], Fraction] = {}
    for dim in range(1, max_dim + 1):
        family = family_override if dim == override_dim else None
        for proj in _all_projections(dim):
            key = (dim, proj.bit_positions())
            if key not in cache:
                cache[key] = two_universal_exhaustive(dim, proj, family=family)
            measured = cache[key]
            bound = Fraction(1, 2**proj.projected_bits)
            margin = float(bound - measured)
            checks += 1
            worst = min(worst, margin)
            if measured == bound:
                equalities += 1
            if measured > bound:
                failures.append(
                    f"l={dim} positions={proj.bit_positions()}: "
                    f"collision {measured} exceeds bound {bound}"
                )
    return SuiteResult(
        name="two-universality",
        passed=not failures,
        num_checks=checks,
        worst_margin=worst,
        details={
            "max_dimension": max_dim,
            "equality_cases": equalities,
            "note": "margin is bound minus measured collision probability",
        },
        failures=failures,
    )


def _random_channel(rng, n_inputs, n_outputs, smooth=0.02) -> FiniteConditional:
    rows = rng.random((n_inputs, n_outputs)) + smooth
    rows /= rows.sum(axis=1, keepdims=True)
    return FiniteConditional(rows)


def pa_bound_suite(
    num_channels: int = 100,
    seed: int = 20240,
    rhos=(0.1, 0.5, 1.0),
    dims=(2, 3),
    message_bits=(1, 2),
    output_size: int = 3,
) -> SuiteResult:
    """Exhaustively computed hashing bound: family-average of
    exp(rho * I(hash(L); Z)) against 1 + (|M|/|L|)^rho exp(psi)."""
    rng = np.random.default_rng(seed)
    checks = 0
    worst = math.inf
    failures = []
    for dim in dims:
        uniform = FiniteDistribution.uniform(1 << dim)
        for m_bits in message_bits:
            if m_bits > dim:
                continue
            proj = Projection(MessageLayout((m_bits,), dim - m_bits), {1})
            for _ in range(num_channels):
                channel = _random_channel(rng, 1 << dim, output_size)
                for rho in rhos:
                    lhs, rhs = pa_bound_sides(rho, dim, proj, uniform, channel)
                    margin = rhs - lhs
                    checks += 1
                    worst = min(worst, margin)
                    if margin < -1e-12:
                        failures.append(
                            f"l={dim} m_bits={m_bits} rho={rho}: lhs {lhs} > rhs {rhs}"
                        )
    return SuiteResult(
        name="pa-bound",
        passed=not failures,
        num_checks=checks,
        worst_margin=worst,
        details={"dims": list(dims), "message_bits": list(message_bits)},
        failures=failures,
    )


def psi_phi_suite(trials: int = 1000, seed: int = 20241) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = math.inf
    failures = []
    for _ in range(trials):
        n_l = int(rng.integers(2, 5))
        n_z = int(rng.integers(2, 5))
        inp = rng.random(n_l) + 0.02
        inp = FiniteDistribution(inp / inp.sum())
        channel = _random_channel(rng, n_l, n_z)
        rho = float(rng.uniform(0.01, 0.99))
        margin = phi(rho, channel, inp) - psi(rho, channel, inp)
        worst = min(worst, margin)
        if margin < -1e-12:
            failures.append(f"psi > phi at rho={rho}: margin {margin}")
    return SuiteResult(
        name="psi-leq-phi",
        passed=not failures,
        num_checks=trials,
        worst_margin=worst,
        details={},
        failures=failures,
    )


def phi_slope_suite(
    trials: int = 1000, seed: int = 20242, probe: float = 1e-4, tol: float = 1e-3
) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = math.inf
    failures = []
    for _ in range(trials):
        n_l = int(rng.integers(2, 5))
        n_z = int(rng.integers(2, 5))
        inp = rng.random(n_l) + 0.05
        inp = FiniteDistribution(inp / inp.sum())
        channel = _random_channel(rng, n_l, n_z, smooth=0.05)
        slope = phi_slope_at_zero(channel, inp, probe)
        mi = mutual_information(
            JointDistribution.from_input_and_channel(inp, channel), [0], [1]
        )
        margin = tol - abs(slope - mi)
        worst = min(worst, margin)
        if margin < 0:
            failures.append(f"slope {slope} vs MI {mi}: error beyond {tol}")
    return SuiteResult(
        name="phi-slope",
        passed=not failures,
        num_checks=trials,
        worst_margin=worst,
        details={"probe": probe, "tolerance": tol},
        failures=failures,
    )


def phi_concavity_suite(
    trials: int = 1000, seed: int = 20243, slack: float = 1e-10
) -> SuiteResult:
    rng = np.random.default_rng(seed)
    worst = math.inf
    failures = []
    violations = 0
    for _ in range(trials):
        n_l = int(rng.integers(2, 5))
        n_z = int(rng.integers(2, 5))
        channel = _random_channel(rng, n_l, n_z)
        p = rng.random(n_l) + 0.02
        p = FiniteDistribution(p / p.sum())
        q = rng.random(n_l) + 0.02
        q = FiniteDistribution(q / q.sum())
        rho = float(rng.uniform(0.05, 0.95))
        mid = FiniteDistribution(0.5 * p.probs + 0.5 * q.probs)
        lhs = math.exp(phi(rho, channel, mid))
        rhs = 0.5 * math.exp(phi(rho, channel, p)) + 0.5 * math.exp(
            phi(rho, channel, q)
        )
        margin = lhs - rhs + slack
        worst = min(worst, margin)
        if margin < 0:
            violations += 1
            failures.append(f"midpoint concavity violated at rho={rho}: {lhs} < {rhs}")
    return SuiteResult(
        name="phi-concavity",
        passed=violations == 0,
        num_checks=trials,
        worst_margin=worst,
        details={"slack": slack, "violations": violations},
        failures=failures,
    )


def run_suite(name: str, trials: int = 1000, seed: int = 2024, **kwargs) -> SuiteResult:
    if name == "two-universality":
        return two_universality_suite(**kwargs)
    if name == "pa-bound":
        return pa_bound_suite(seed=seed, **kwargs)
    if name == "psi-leq-phi":
        return psi_phi_suite(trials=trials, seed=seed + 1)
    if name == "phi-slope":
        return phi_slope_suite(trials=trials, seed=seed + 2)
    if name == "phi-concavity":
        return phi_concavity_suite(trials=trials, seed=seed + 3)
    raise ValueError(f"unknown suite {name!r}; expected one of {SUITE_NAMES}")


def run_suites(names=None, trials: int = 1000, seed: int = 2024) -> list[SuiteResult]:
    names = list(names) if names else list(SUITE_NAMES)
    return [run_suite(name, trials=trials, seed=seed) for name in names]
