import numpy as np
import pytest
from hypothesis import settings

from secmux.discrete_ic import DiscreteIC, SingleLetterLaw
from secmux.hashing import MessageLayout

settings.register_profile("deterministic", derandomize=True)
settings.load_profile("deterministic")


def bsc_pair_channel(own_flip: float, cross_flip: float) -> DiscreteIC:
    """Binary channel pair: Y1 = X1 + noise(own_flip), Y2 = X1 + X2 +
    noise(cross_flip), with independent noises (all arithmetic mod 2)."""
    table = np.zeros((2, 2, 2, 2))
    for x1 in range(2):
        for x2 in range(2):
            for y1 in range(2):
                p1 = 1 - own_flip if y1 == x1 else own_flip
                for y2 in range(2):
                    p2 = 1 - cross_flip if y2 == x1 ^ x2 else cross_flip
                    table[x1, x2, y1, y2] = p1 * p2
    return DiscreteIC(table)


def reference_law(artificial_flip: float = 0.05) -> SingleLetterLaw:
    """Degenerate U and W layers, uniform binary V per transmitter;
    transmitter 1 randomizes its input through a binary symmetric map."""
    return SingleLetterLaw(
        p_u=[1.0],
        p_wv1_given_u=[[[0.5, 0.5]]],
        p_wv2_given_u=[[[0.5, 0.5]]],
        p_x1_given_v1=[[1 - artificial_flip, artificial_flip],
                       [artificial_flip, 1 - artificial_flip]],
        p_x2_given_v2=[[1.0, 0.0], [0.0, 1.0]],
    )


@pytest.fixture(scope="session")
def ref_channel():
    return bsc_pair_channel(own_flip=0.05, cross_flip=0.1)


@pytest.fixture(scope="session")
def ref_law():
    return reference_law()


@pytest.fixture(scope="session")
def ref_layouts():
    one_plus_dummy = MessageLayout(secret_lengths=(1,), dummy_length=1)
    return (one_plus_dummy, one_plus_dummy)
