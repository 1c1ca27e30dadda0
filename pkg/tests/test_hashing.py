import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from secmux.finite_prob import FiniteConditional, FiniteDistribution
from secmux.hashing import (
    LinearBijection,
    MessageLayout,
    Projection,
    apply,
    bits_to_int,
    enumerate_bijections,
    gf2_inverse,
    gf2_rank,
    int_to_bits,
    inverse_apply,
    matrix_permutation_table,
    pa_bound_sides,
    sample_bijection,
    two_universal_exhaustive,
)

# ---------------------------------------------------------------------------
# GF(2) core
# ---------------------------------------------------------------------------


def test_rank_and_inverse_roundtrip():
    rng = np.random.default_rng(7)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        mat = rng.integers(0, 2, (n, n), dtype=np.uint8)
        if gf2_rank(mat) < n:
            with pytest.raises(ValueError):
                gf2_inverse(mat)
            continue
        inv = gf2_inverse(mat)
        assert np.array_equal((mat @ inv) % 2, np.eye(n, dtype=np.uint8))


def test_int_bits_roundtrip():
    for value in range(16):
        assert bits_to_int(int_to_bits(value, 4)) == value


def test_bijection_rejects_singular():
    with pytest.raises(ValueError):
        LinearBijection([[1, 1], [1, 1]])


# ---------------------------------------------------------------------------
# sampling and enumeration
# ---------------------------------------------------------------------------


def test_dimension_one_is_identity():
    family = enumerate_bijections(1)
    assert len(family) == 1
    assert family[0].matrix[0, 0] == 1
    assert sample_bijection(1, seed=0).matrix[0, 0] == 1


def test_group_orders():
    # |GL(l, 2)| = prod_{i<l} (2^l - 2^i): 1, 6, 168, 20160.
    assert len(enumerate_bijections(1)) == 1
    assert len(enumerate_bijections(2)) == 6
    assert len(enumerate_bijections(3)) == 168
    assert len(enumerate_bijections(4)) == 20160


def test_enumeration_refuses_large_dimension():
    with pytest.raises(ValueError):
        enumerate_bijections(5)


def test_sampled_matrix_has_full_rank():
    f = sample_bijection(3, seed=123)
    assert gf2_rank(f.matrix) == 3


def test_sampling_is_uniform_over_gl2():
    # 6000 draws; each of the 6 invertible 2x2 matrices has expected
    # frequency 1/6 with sigma ~ 0.0048, so +-0.03 is beyond 6 sigma.
    family = {m.matrix.tobytes() for m in enumerate_bijections(2)}
    counts = {key: 0 for key in family}
    rng_seed = np.random.SeedSequence(2024).spawn(6000)
    for child in rng_seed:
        counts[sample_bijection(2, seed=child).matrix.tobytes()] += 1
    for key, count in counts.items():
        assert abs(count / 6000 - 1 / 6) < 0.03


# ---------------------------------------------------------------------------
# apply / inverse_apply
# ---------------------------------------------------------------------------


def test_identity_apply():
    f = LinearBijection(np.eye(3, dtype=np.uint8))
    x = np.array([1, 0, 1], dtype=np.uint8)
    assert np.array_equal(apply(f, x), x)


def test_roundtrip_all_vectors():
    for f in enumerate_bijections(3)[::17]:
        for value in range(8):
            x = int_to_bits(value, 3)
            assert np.array_equal(inverse_apply(f, apply(f, x)), x)
            assert f.inverse_apply_int(f.apply_int(value)) == value


def test_hand_worked_matrix():
    f = LinearBijection([[1, 1], [0, 1]])
    assert np.array_equal(apply(f, np.array([1, 0])), np.array([1, 0]))
    assert np.array_equal(apply(f, np.array([0, 1])), np.array([1, 1]))


def test_permutation_table_matches_apply():
    f = sample_bijection(4, seed=5)
    for value in range(16):
        assert f.apply_int(value) == bits_to_int(apply(f, int_to_bits(value, 4)))


# ---------------------------------------------------------------------------
# layouts and projections
# ---------------------------------------------------------------------------


def test_layout_split_join_roundtrip():
    layout = MessageLayout(secret_lengths=(2, 1), dummy_length=1)
    assert layout.total_bits == 4
    for word in range(16):
        segments, dummy = layout.split_int(word)
        assert layout.join_int(segments, dummy) == word


def test_layout_requires_positive_secret_segments():
    with pytest.raises(ValueError):
        MessageLayout(secret_lengths=(), dummy_length=2)
    with pytest.raises(ValueError):
        MessageLayout(secret_lengths=(0, 1), dummy_length=0)


def test_projection_bit_positions_msb_first():
    layout = MessageLayout(secret_lengths=(1, 2), dummy_length=1)
    proj = Projection(layout, {2})
    assert proj.bit_positions() == (1, 2)
    # word bits: [s1 | s2 s2 | d]; 0b0110 has s2 = 0b11.
    assert proj.apply_int(0b0110) == 0b11


def test_projection_rejects_dummy_or_empty():
    layout = MessageLayout(secret_lengths=(1, 1), dummy_length=1)
    with pytest.raises(ValueError):
        Projection(layout, set())
    with pytest.raises(ValueError):
        Projection(layout, {3})


# ---------------------------------------------------------------------------
# two-universality
# ---------------------------------------------------------------------------


def test_two_universal_l2_first_bit():
    proj = Projection(MessageLayout((1,), 1), {1})
    worst = two_universal_exhaustive(2, proj)
    assert worst <= Fraction(1, 2)
    # For the full bijection family the worst case is (2^(l-m)-1)/(2^l-1).
    assert worst == Fraction(1, 3)


def test_two_universal_l3_two_bits():
    proj = Projection(MessageLayout((2,), 1), {1})
    worst = two_universal_exhaustive(3, proj)
    assert worst <= Fraction(1, 4)
    assert worst == Fraction(1, 7)


def test_two_universal_full_projection_no_collisions():
    # Projecting every bit of a bijection leaves an injective map.
    proj = Projection(MessageLayout((3,), 0), {1})
    assert two_universal_exhaustive(3, proj) == Fraction(0)


def test_two_universal_all_subsets_l_le_3():
    for l in (1, 2, 3):
        for m in range(1, l + 1):
            proj = Projection(MessageLayout((m,), l - m), {1})
            worst = two_universal_exhaustive(l, proj)
            assert worst <= Fraction(1, 2**m)


def test_corrupted_family_breaks_the_bound():
    # Injecting a singular matrix inflates collisions: the zero map
    # collides on every pair, so some pair exceeds the 1/2 bound.
    family = [f.matrix for f in enumerate_bijections(2)[:2]]
    family.append(np.zeros((2, 2), dtype=np.uint8))
    proj = Projection(MessageLayout((1,), 1), {1})
    worst = two_universal_exhaustive(2, proj, family=family)
    assert worst > Fraction(1, 2)


def test_refuses_exhaustive_beyond_dim_4():
    proj = Projection(MessageLayout((1,), 4), {1})
    with pytest.raises(ValueError):
        two_universal_exhaustive(5, proj)


# ---------------------------------------------------------------------------
# hashed-word uniformity and segment independence
# ---------------------------------------------------------------------------


def test_hashed_word_uniform_and_segments_independent():
    layout = MessageLayout((1, 1), 1)
    for f in enumerate_bijections(3)[::29]:
        counts = np.zeros((2, 2, 2))
        for word in range(8):
            segments, dummy = layout.split_int(f.apply_int(word))
            counts[segments[0], segments[1], dummy] += 1 / 8
        # Uniform L through a bijection stays uniform, hence the exact
        # joint table of the segments is the product of fair coins.
        assert np.allclose(counts, 1 / 8)


# ---------------------------------------------------------------------------
# the privacy-amplification bound, exhaustively
# ---------------------------------------------------------------------------


def _uniform_words(l):
    return FiniteDistribution.uniform(1 << l)


def test_pa_bound_independent_side_channel():
    l = 2
    proj = Projection(MessageLayout((1,), 1), {1})
    channel = FiniteConditional(np.tile([0.3, 0.7], (4, 1)))
    lhs, rhs = pa_bound_sides(0.5, l, proj, _uniform_words(l), channel)
    assert lhs == pytest.approx(1.0, abs=1e-12)
    assert rhs == pytest.approx(1.0 + 2 ** (-0.5), abs=1e-12)
    assert lhs <= rhs


def test_pa_bound_noisy_first_bit():
    # Z = first bit of the word through a binary symmetric channel.
    l = 2
    proj = Projection(MessageLayout((1,), 1), {1})
    rows = np.zeros((4, 2))
    for word in range(4):
        first = word >> 1
        rows[word] = [0.9, 0.1] if first == 0 else [0.1, 0.9]
    channel = FiniteConditional(rows)
    lhs, rhs = pa_bound_sides(0.5, l, proj, _uniform_words(l), channel)
    assert lhs < rhs


def test_pa_bound_requires_uniform_words():
    l = 2
    proj = Projection(MessageLayout((1,), 1), {1})
    channel = FiniteConditional(np.tile([0.5, 0.5], (4, 1)))
    skewed = FiniteDistribution([0.4, 0.2, 0.2, 0.2])
    with pytest.raises(ValueError):
        pa_bound_sides(0.5, l, proj, skewed, channel)


def test_pa_bound_randomized_small_suite():
    rng = np.random.default_rng(99)
    l = 3
    for m_bits in (1, 2):
        proj = Projection(MessageLayout((m_bits,), l - m_bits), {1})
        for _ in range(10):
            rows = rng.random((8, 3)) + 0.02
            rows /= rows.sum(axis=1, keepdims=True)
            channel = FiniteConditional(rows)
            for rho in (0.1, 0.5, 1.0):
                lhs, rhs = pa_bound_sides(rho, l, proj, _uniform_words(l), channel)
                assert lhs <= rhs + 1e-12


def test_matrix_permutation_table_singular_allowed():
    table = matrix_permutation_table(np.zeros((2, 2), dtype=np.uint8))
    assert np.array_equal(table, np.zeros(4, dtype=np.int64))
