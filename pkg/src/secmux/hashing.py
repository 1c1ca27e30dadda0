"""Linear bijections over GF(2) message spaces and exact hashing checks.

Message words of ``l`` bits are hashed by multiplying with an invertible
``l x l`` binary matrix and keeping a subset of the output segments.  For
the family of all invertible matrices this construction is two-universal,
and the package verifies that exhaustively for small ``l``:

* ``two_universal_exhaustive`` measures the worst-case collision
  probability of a projected hash over the whole family, as an exact
  rational number.
* ``pa_bound_sides`` evaluates both sides of the leakage-exponent bound
  for hashed messages observed through a side channel,

      E_f exp(rho * I(hash_f(L); Z))
          <= 1 + (|M| / |L|)^rho * exp(psi(rho, P_{Z|L}, P_L)),

  with the expectation taken exactly over the enumerated family.

Bit convention: segment 1 occupies the most significant bits of a word and
the trailing randomization segment (if any) the least significant bits.
Exhaustive operations refuse dimensions above ``MAX_ENUMERATION_DIM``; the
invertible group at l = 4 already has 20160 elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations

import numpy as np

from .finite_prob import (
    FiniteConditional,
    FiniteDistribution,
    JointDistribution,
    mutual_information,
    psi,
)

MAX_ENUMERATION_DIM = 4

__all__ = [
    "MAX_ENUMERATION_DIM",
    "LinearBijection",
    "MessageLayout",
    "Projection",
    "gf2_rank",
    "gf2_inverse",
    "int_to_bits",
    "bits_to_int",
    "sample_bijection",
    "enumerate_bijections",
    "apply",
    "inverse_apply",
    "matrix_permutation_table",
    "two_universal_exhaustive",
    "pa_bound_sides",
]


# ---------------------------------------------------------------------------
# GF(2) linear algebra on uint8 matrices
# ---------------------------------------------------------------------------


def gf2_rank(matrix: np.ndarray) -> int:
    """Rank over GF(2) by Gaussian elimination with XOR row updates."""
    work = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
    rows, cols = work.shape
    rank = 0
    for col in range(cols):
        pivot = -1
        for r in range(rank, rows):
            if work[r, col]:
                pivot = r
                break
        if pivot < 0:
            continue
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        for r in range(rows):
            if r != rank and work[r, col]:
                work[r] ^= work[rank]
        rank += 1
        if rank == rows:
            break
    return rank


def gf2_inverse(matrix: np.ndarray) -> np.ndarray:
    """Inverse over GF(2); raises ValueError on singular input."""
    mat = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
    n = mat.shape[0]
    if mat.shape != (n, n):
        raise ValueError("matrix must be square")
    aug = np.concatenate([mat, np.eye(n, dtype=np.uint8)], axis=1)
    row = 0
    for col in range(n):
        pivot = -1
        for r in range(row, n):
            if aug[r, col]:
                pivot = r
                break
        if pivot < 0:
            raise ValueError("matrix is singular over GF(2)")
        if pivot != row:
            aug[[row, pivot]] = aug[[pivot, row]]
        for r in range(n):
            if r != row and aug[r, col]:
                aug[r] ^= aug[row]
        row += 1
    return aug[:, n:].copy()


def int_to_bits(value: int, length: int) -> np.ndarray:
    """Bit vector of ``value``, most significant bit first."""
    if not 0 <= value < (1 << length):
        raise ValueError(f"value {value} does not fit in {length} bits")
    return np.array([(value >> (length - 1 - i)) & 1 for i in range(length)], dtype=np.uint8)


def bits_to_int(bits: np.ndarray) -> int:
    out = 0
    for b in np.asarray(bits, dtype=np.uint8):
        out = (out << 1) | int(b & 1)
    return out


# ---------------------------------------------------------------------------
# the bijection family
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinearBijection:
    """An invertible binary matrix acting on l-bit column vectors."""

    matrix: np.ndarray

    def __init__(self, matrix):
        mat = (np.asarray(matrix, dtype=np.uint8) & 1).copy()
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {mat.shape}")
        if gf2_rank(mat) != mat.shape[0]:
            raise ValueError("matrix is not invertible over GF(2)")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def inverse_matrix(self) -> np.ndarray:
        inv = gf2_inverse(self.matrix)
        inv.setflags(write=False)
        return inv

    @cached_property
    def permutation_table(self) -> np.ndarray:
        """Action on all 2^l words encoded as integers (MSB-first)."""
        table = matrix_permutation_table(self.matrix)
        table.setflags(write=False)
        return table

    def apply_int(self, value: int) -> int:
        return int(self.permutation_table[value])

    def inverse_apply_int(self, value: int) -> int:
        return bits_to_int(self.inverse_matrix @ int_to_bits(value, self.dimension) & 1)


def apply(f: LinearBijection, x: np.ndarray) -> np.ndarray:
    """Matrix-vector product over GF(2)."""
    x = np.asarray(x, dtype=np.uint8)
    if x.shape != (f.dimension,):
        raise ValueError(f"vector length {x.shape} does not match dimension {f.dimension}")
    return (f.matrix @ x) & 1


def inverse_apply(f: LinearBijection, y: np.ndarray) -> np.ndarray:
    y = np.asarray(y, dtype=np.uint8)
    if y.shape != (f.dimension,):
        raise ValueError(f"vector length {y.shape} does not match dimension {f.dimension}")
    return (f.inverse_matrix @ y) & 1


def matrix_permutation_table(matrix: np.ndarray) -> np.ndarray:
    """Integer map x -> Mx over all 2^l words for an arbitrary binary matrix.

    Does not require invertibility; singular matrices give non-injective
    maps, which the verification suites use as negative controls.
    """
    mat = np.asarray(matrix, dtype=np.uint8) & 1
    l = mat.shape[0]
    words = np.arange(1 << l, dtype=np.int64)
    shifts = l - 1 - np.arange(l)
    bits = (words[:, None] >> shifts[None, :]) & 1  # (2^l, l), MSB first
    out_bits = (bits @ mat.T) & 1
    return (out_bits << shifts[None, :]).sum(axis=1)


def sample_bijection(dimension: int, seed) -> LinearBijection:
    """Uniformly random invertible matrix, by rejection from uniform bits.

    Exactly uniform over the invertible group; the acceptance probability
    exceeds 0.288 for every dimension.
    """
    if dimension < 1:
        raise ValueError("dimension must be positive")
    rng = np.random.default_rng(seed)
    while True:
        mat = rng.integers(0, 2, size=(dimension, dimension), dtype=np.uint8)
        if gf2_rank(mat) == dimension:
            return LinearBijection(mat)


@lru_cache(maxsize=None)
def _invertible_matrices(dimension: int) -> np.ndarray:
    cells = dimension * dimension
    out = []
    for code in range(1 << cells):
        mat = np.array(
            [
                [(code >> (r * dimension + c)) & 1 for c in range(dimension)]
                for r in range(dimension)
            ],
            dtype=np.uint8,
        )
        if gf2_rank(mat) == dimension:
            out.append(mat)
    stacked = np.stack(out)
    stacked.setflags(write=False)
    return stacked


def enumerate_bijections(dimension: int) -> list[LinearBijection]:
    """All invertible matrices of the given dimension, each exactly once."""
    if dimension < 1:
        raise ValueError("dimension must be positive")
    if dimension > MAX_ENUMERATION_DIM:
        raise ValueError(
            f"refusing to enumerate GL({dimension}, 2); "
            f"the group is too large beyond dimension {MAX_ENUMERATION_DIM}"
        )
    return [LinearBijection(m) for m in _invertible_matrices(dimension)]


# ---------------------------------------------------------------------------
# layouts and projections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MessageLayout:
    """Bit layout of a word: T message segments plus a trailing
    randomization segment.

    Message segments must be nonempty; the randomization segment may have
    zero length, which models configurations without padding randomness.
    """

    secret_lengths: tuple[int, ...]
    dummy_length: int = 0

    def __post_init__(self):
        lengths = tuple(int(k) for k in self.secret_lengths)
        if not lengths or any(k < 1 for k in lengths):
            raise ValueError("every message segment needs at least one bit")
        if self.dummy_length < 0:
            raise ValueError("randomization segment length cannot be negative")
        object.__setattr__(self, "secret_lengths", lengths)
        object.__setattr__(self, "dummy_length", int(self.dummy_length))

    @property
    def num_secret(self) -> int:
        return len(self.secret_lengths)

    @property
    def total_bits(self) -> int:
        return sum(self.secret_lengths) + self.dummy_length

    def segment_offsets(self) -> list[int]:
        """MSB-first bit offset of each segment (including the dummy)."""
        offsets = [0]
        for k in self.secret_lengths:
            offsets.append(offsets[-1] + k)
        return offsets

    def split_int(self, word: int) -> tuple[tuple[int, ...], int]:
        """Decompose a word into (secret segment values, dummy value)."""
        total = self.total_bits
        segments = []
        offset = 0
        for k in self.secret_lengths:
            shift = total - offset - k
            segments.append((word >> shift) & ((1 << k) - 1))
            offset += k
        dummy = word & ((1 << self.dummy_length) - 1) if self.dummy_length else 0
        return tuple(segments), dummy

    def join_int(self, segments, dummy: int = 0) -> int:
        segments = tuple(int(s) for s in segments)
        if len(segments) != self.num_secret:
            raise ValueError("wrong number of message segments")
        word = 0
        for k, value in zip(self.secret_lengths, segments):
            if not 0 <= value < (1 << k):
                raise ValueError(f"segment value {value} does not fit in {k} bits")
            word = (word << k) | value
        if not 0 <= dummy < (1 << max(self.dummy_length, 1)):
            raise ValueError("dummy value out of range")
        return (word << self.dummy_length) | dummy


@dataclass(frozen=True)
class Projection:
    """Selection of a nonempty subset of message segments of a layout."""

    layout: MessageLayout
    index_set: frozenset[int]

    def __init__(self, layout: MessageLayout, index_set):
        idx = frozenset(int(i) for i in index_set)
        if not idx:
            raise ValueError("projection index set must be nonempty")
        if not idx <= set(range(1, layout.num_secret + 1)):
            raise ValueError(
                f"index set {sorted(idx)} must lie within 1..{layout.num_secret}"
            )
        object.__setattr__(self, "layout", layout)
        object.__setattr__(self, "index_set", idx)

    @property
    def projected_bits(self) -> int:
        return sum(self.layout.secret_lengths[i - 1] for i in self.index_set)

    def bit_positions(self) -> tuple[int, ...]:
        """MSB-first positions of the projected bits inside the word."""
        offsets = self.layout.segment_offsets()
        positions = []
        for i in sorted(self.index_set):
            start = offsets[i - 1]
            positions.extend(range(start, start + self.layout.secret_lengths[i - 1]))
        return tuple(positions)

    def apply_int(self, word: int) -> int:
        total = self.layout.total_bits
        out = 0
        for pos in self.bit_positions():
            out = (out << 1) | ((word >> (total - 1 - pos)) & 1)
        return out

    def projection_table(self) -> np.ndarray:
        """Projected value of every l-bit word."""
        total = self.layout.total_bits
        words = np.arange(1 << total, dtype=np.int64)
        out = np.zeros_like(words)
        for pos in self.bit_positions():
            out = (out << 1) | ((words >> (total - 1 - pos)) & 1)
        return out


# ---------------------------------------------------------------------------
# exhaustive family checks
# ---------------------------------------------------------------------------


def _family_tables(dimension, family) -> np.ndarray:
    if family is None:
        family = enumerate_bijections(dimension)
    tables = []
    for member in family:
        if isinstance(member, LinearBijection):
            tables.append(member.permutation_table)
        else:
            tables.append(matrix_permutation_table(member))
    return np.stack(tables)


def two_universal_exhaustive(
    dimension: int, proj: Projection, family=None
) -> Fraction:
    """Worst-case collision probability of the projected hash.

    Returns max over distinct words x1 != x2 of
    Pr_F[ proj(F(x1)) = proj(F(x2)) ] as an exact rational (collision
    counts over the family size).  Two-universality means the result is at
    most 2^-(projected bits).
    """
    if proj.layout.total_bits != dimension:
        raise ValueError("projection layout does not match the hash dimension")
    if dimension > MAX_ENUMERATION_DIM and family is None:
        raise ValueError(
            f"refusing exhaustive check beyond dimension {MAX_ENUMERATION_DIM}"
        )
    tables = _family_tables(dimension, family)
    projected = proj.projection_table()[tables]  # (family, 2^l)
    worst = Fraction(0)
    size = tables.shape[0]
    for x1, x2 in combinations(range(1 << dimension), 2):
        collisions = int(np.count_nonzero(projected[:, x1] == projected[:, x2]))
        worst = max(worst, Fraction(collisions, size))
    return worst


def pa_bound_sides(
    rho: float,
    dimension: int,
    proj: Projection,
    p_l: FiniteDistribution,
    p_zl: FiniteConditional,
    family=None,
) -> tuple[float, float]:
    """Both sides of the hashing leakage-exponent bound, exactly.

    Left side: E_f exp(rho * I(proj(f(L)); Z | F = f)), averaged over the
    enumerated family with each conditional mutual information computed
    from the exact joint table.  Right side:
    1 + (|M|/|L|)^rho * exp(psi(rho, P_{Z|L}, P_L)).  Requires L uniform
    over all 2^l words.
    """
    if proj.layout.total_bits != dimension:
        raise ValueError("projection layout does not match the hash dimension")
    n_words = 1 << dimension
    if p_l.alphabet_size != n_words:
        raise ValueError("input alphabet must cover all 2^l words")
    if not np.allclose(p_l.probs, 1.0 / n_words, rtol=0, atol=1e-12):
        raise ValueError("the bound requires a uniform word distribution")
    if p_zl.input_size != n_words:
        raise ValueError("side channel must be conditioned on the l-bit word")
    if dimension > MAX_ENUMERATION_DIM and family is None:
        raise ValueError(
            f"refusing exhaustive expectation beyond dimension {MAX_ENUMERATION_DIM}"
        )

    tables = _family_tables(dimension, family)
    projected = proj.projection_table()[tables]  # (family, 2^l)
    m_size = 1 << proj.projected_bits

    # One-hot hashed-word indicators turn the per-member joint tables into
    # a single tensor contraction: J_f[m, z] = sum_l 1[m = proj(f(l))] P(l, z).
    one_hot = np.zeros((tables.shape[0], m_size, n_words))
    grid_f, grid_l = np.meshgrid(
        np.arange(tables.shape[0]), np.arange(n_words), indexing="ij"
    )
    one_hot[grid_f, projected, grid_l] = 1.0
    weighted_rows = p_l.probs[:, None] * p_zl.rows
    joints = one_hot @ weighted_rows  # (family, m, z)

    mis = np.array(
        [mutual_information(JointDistribution(j), [0], [1]) for j in joints]
    )
    lhs = float(np.exp(rho * mis).mean())
    ratio = np.exp(rho * (proj.projected_bits - dimension) * np.log(2.0))
    rhs = 1.0 + float(ratio * np.exp(psi(rho, p_zl, p_l)))
    return lhs, rhs
