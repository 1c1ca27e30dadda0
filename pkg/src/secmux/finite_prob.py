"""Exact probability and information-measure arithmetic on finite alphabets.

Everything here works on dense ``float64`` tables and natural-log units
(nats).  Tables are validated on construction: entries must be nonnegative
and sum to one within ``PROB_TOL``; out-of-tolerance inputs are rejected
rather than silently renormalized, so that downstream exactness checks stay
meaningful.

Besides the usual entropy / mutual-information plumbing, the module
provides the two exponent functionals ``psi`` and ``phi`` of a channel and
an input distribution,

    psi(rho) = log sum_{z,l} P_L(l) P_{Z|L}(z|l)^(1+rho) P_Z(z)^(-rho)
    phi(rho) = log sum_z ( sum_l P_L(l) P_{Z|L}(z|l)^(1/(1-rho)) )^(1-rho)

which drive all leakage-exponent bounds in the rest of the package.
``exp(phi)`` is concave in the input distribution and ``psi <= phi`` for
``0 < rho < 1``; both facts are exercised by the verification suites.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

PROB_TOL = 1e-12

__all__ = [
    "PROB_TOL",
    "DistributionError",
    "FiniteDistribution",
    "FiniteConditional",
    "JointDistribution",
    "entropy",
    "mutual_information",
    "conditional_mutual_information",
    "psi",
    "phi",
    "phi_slope_at_zero",
]


class DistributionError(ValueError):
    """An input table violates a probability constraint."""


def _checked_table(values, ndim: int) -> np.ndarray:
    table = np.asarray(values, dtype=np.float64)
    if table.ndim != ndim:
        raise DistributionError(f"expected a {ndim}-d table, got shape {table.shape}")
    if table.size == 0:
        raise DistributionError("empty probability table")
    if not np.all(np.isfinite(table)):
        raise DistributionError("probability table contains non-finite entries")
    if np.any(table < 0):
        raise DistributionError("probability table contains negative entries")
    table = table.copy()
    table.setflags(write=False)
    return table


@dataclass(frozen=True, eq=False)
class FiniteDistribution:
    """A probability vector over a finite alphabet."""

    probs: np.ndarray

    def __init__(self, probs):
        table = _checked_table(probs, ndim=1)
        total = float(table.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise DistributionError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", table)

    @property
    def alphabet_size(self) -> int:
        return self.probs.shape[0]

    @classmethod
    def uniform(cls, size: int) -> "FiniteDistribution":
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def point_mass(cls, size: int, index: int) -> "FiniteDistribution":
        probs = np.zeros(size)
        probs[index] = 1.0
        return cls(probs)


@dataclass(frozen=True, eq=False)
class FiniteConditional:
    """A stochastic matrix: one output distribution per input symbol."""

    rows: np.ndarray

    def __init__(self, rows):
        table = _checked_table(rows, ndim=2)
        sums = table.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > PROB_TOL):
            worst = int(np.argmax(np.abs(sums - 1.0)))
            raise DistributionError(
                f"conditional row {worst} sums to {sums[worst]!r}, not 1"
            )
        object.__setattr__(self, "rows", table)

    @property
    def input_size(self) -> int:
        return self.rows.shape[0]

    @property
    def output_size(self) -> int:
        return self.rows.shape[1]

    def row(self, index: int) -> FiniteDistribution:
        return FiniteDistribution(self.rows[index])

    def output_distribution(self, inp: FiniteDistribution) -> FiniteDistribution:
        """Marginal of the output when the input is drawn from ``inp``."""
        self._check_input(inp)
        return FiniteDistribution(inp.probs @ self.rows)

    def compose(self, post: "FiniteConditional") -> "FiniteConditional":
        """Feed this channel's output through a second stochastic map."""
        if post.input_size != self.output_size:
            raise DistributionError("composition sizes do not match")
        return FiniteConditional(self.rows @ post.rows)

    def _check_input(self, inp: FiniteDistribution) -> None:
        if inp.alphabet_size != self.input_size:
            raise DistributionError(
                f"input alphabet {inp.alphabet_size} does not match "
                f"channel input size {self.input_size}"
            )


@dataclass(frozen=True, eq=False)
class JointDistribution:
    """A joint law over a product alphabet, stored as a dense n-d table."""

    probs: np.ndarray

    def __init__(self, probs):
        table = _checked_table(probs, ndim=np.ndim(probs))
        total = float(table.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise DistributionError(f"joint probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "probs", table)

    @property
    def factor_sizes(self) -> tuple[int, ...]:
        return self.probs.shape

    @property
    def num_factors(self) -> int:
        return self.probs.ndim

    @classmethod
    def from_input_and_channel(
        cls, inp: FiniteDistribution, channel: FiniteConditional
    ) -> "JointDistribution":
        """Joint law of (input, output) for an input fed through a channel."""
        channel._check_input(inp)
        return cls(inp.probs[:, None] * channel.rows)

    def marginal_table(self, factors: Sequence[int]) -> np.ndarray:
        factors = self._check_factors(factors)
        drop = tuple(i for i in range(self.num_factors) if i not in factors)
        table = self.probs.sum(axis=drop) if drop else self.probs
        # Preserve the requested factor order.
        kept = [i for i in range(self.num_factors) if i in factors]
        order = [kept.index(i) for i in factors]
        return np.transpose(table, order) if order != list(range(len(order))) else table

    def marginal(self, factors: Sequence[int]) -> "JointDistribution":
        return JointDistribution(self.marginal_table(factors))

    def _check_factors(self, factors: Sequence[int]) -> tuple[int, ...]:
        factors = tuple(int(i) for i in factors)
        if len(set(factors)) != len(factors):
            raise ValueError(f"repeated factor index in {factors}")
        for i in factors:
            if not 0 <= i < self.num_factors:
                raise ValueError(f"factor index {i} out of range")
        return factors


def _entropy_of_table(table: np.ndarray) -> float:
    positive = table[table > 0]
    return float(-(positive * np.log(positive)).sum())


def entropy(dist) -> float:
    """Shannon entropy in nats; zero-probability terms contribute nothing."""
    if isinstance(dist, FiniteDistribution):
        return _entropy_of_table(dist.probs)
    if isinstance(dist, JointDistribution):
        return _entropy_of_table(dist.probs)
    raise TypeError(f"cannot take the entropy of {type(dist).__name__}")


def _clamp_information(value: float) -> float:
    # Information quantities are nonnegative; absorb float cancellation only.
    if -1e-9 < value < 0.0:
        return 0.0
    return value


def mutual_information(
    joint: JointDistribution, group_a: Sequence[int], group_b: Sequence[int]
) -> float:
    """I(A;B) = H(A) + H(B) - H(A,B) in nats, for disjoint factor groups."""
    a = joint._check_factors(group_a)
    b = joint._check_factors(group_b)
    if set(a) & set(b):
        raise ValueError(f"factor groups {a} and {b} overlap")
    h_a = _entropy_of_table(joint.marginal_table(a))
    h_b = _entropy_of_table(joint.marginal_table(b))
    h_ab = _entropy_of_table(joint.marginal_table(a + b))
    return _clamp_information(h_a + h_b - h_ab)


def conditional_mutual_information(
    joint: JointDistribution,
    group_a: Sequence[int],
    group_b: Sequence[int],
    group_c: Sequence[int],
) -> float:
    """I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C) in nats."""
    a = joint._check_factors(group_a)
    b = joint._check_factors(group_b)
    c = joint._check_factors(group_c)
    if (set(a) & set(b)) or (set(a) & set(c)) or (set(b) & set(c)):
        raise ValueError("factor groups must be pairwise disjoint")
    h_ac = _entropy_of_table(joint.marginal_table(a + c))
    h_bc = _entropy_of_table(joint.marginal_table(b + c))
    h_abc = _entropy_of_table(joint.marginal_table(a + b + c))
    h_c = _entropy_of_table(joint.marginal_table(c)) if c else 0.0
    return _clamp_information(h_ac + h_bc - h_abc - h_c)


def _check_rho(rho: float, *, allow_one: bool) -> float:
    rho = float(rho)
    upper_ok = rho <= 1.0 if allow_one else rho < 1.0
    if not (0.0 < rho and upper_ok):
        bound = "(0, 1]" if allow_one else "(0, 1)"
        raise ValueError(f"rho must lie in {bound}, got {rho!r}")
    return rho


def psi(rho: float, channel: FiniteConditional, inp: FiniteDistribution) -> float:
    """log sum_{z,l} P_L(l) P_{Z|L}(z|l)^(1+rho) P_Z(z)^(-rho).

    Output symbols with P_Z(z) = 0 are excluded from the sum; they carry no
    probability under any input in the support of P_L.  Valid for
    0 < rho <= 1.
    """
    rho = _check_rho(rho, allow_one=True)
    channel._check_input(inp)
    p_z = inp.probs @ channel.rows
    live = p_z > 0
    cols = channel.rows[:, live]
    inner = (inp.probs[:, None] * cols ** (1.0 + rho)).sum(axis=0)
    return float(np.log((inner * p_z[live] ** (-rho)).sum()))


def phi(rho: float, channel: FiniteConditional, inp: FiniteDistribution) -> float:
    """log sum_z ( sum_l P_L(l) P_{Z|L}(z|l)^(1/(1-rho)) )^(1-rho).

    Valid for 0 < rho < 1 only; the inner exponent is singular at rho = 1.
    """
    rho = _check_rho(rho, allow_one=False)
    channel._check_input(inp)
    inner = (inp.probs[:, None] * channel.rows ** (1.0 / (1.0 - rho))).sum(axis=0)
    return float(np.log((inner ** (1.0 - rho)).sum()))


def phi_slope_at_zero(
    channel: FiniteConditional, inp: FiniteDistribution, rho_probe: float
) -> float:
    """phi(rho)/rho at a small probe rho; approaches I(Z;L) as rho -> 0."""
    rho_probe = float(rho_probe)
    if not 0.0 < rho_probe <= 1e-3:
        raise ValueError(f"rho_probe must lie in (0, 1e-3], got {rho_probe!r}")
    return phi(rho_probe, channel, inp) / rho_probe
