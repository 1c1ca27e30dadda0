"""A tiny discrete memoryless interference channel with the full layered
encoder, exact brute-force leakage, and the single-letter leakage bound.

The encoder for transmitter t hashes its T_t messages plus a padding
segment through an invertible GF(2) matrix, splits the result into a
common index e_t and a private index b_t, looks both up in a randomly
generated layered codebook (a shared time-sharing sequence u, common
codewords w, private codewords v) and finally randomizes the channel
input through a per-symbol map P(x|v).

Everything is sized for exact computation: leakage to the unintended
receiver is obtained by summing the full joint law of (selected message
segments, eavesdropped output block), never by estimation.  A guardrail
refuses state spaces beyond ``STATE_SPACE_LIMIT`` joint entries.

Rates are in nats per channel use throughout; message and padding sizes
are specified in bits, so rates are multiples of ln(2)/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .finite_prob import (
    FiniteConditional,
    FiniteDistribution,
    JointDistribution,
    PROB_TOL,
    conditional_mutual_information,
    phi,
)
from .hashing import LinearBijection, MessageLayout, Projection, sample_bijection

STATE_SPACE_LIMIT = 10**7
LN2 = math.log(2.0)

__all__ = [
    "STATE_SPACE_LIMIT",
    "GuardrailError",
    "DiscreteIC",
    "SingleLetterLaw",
    "Codebook",
    "MultiplexCode",
    "EncodeResult",
    "DecodeResult",
    "LeakageReport",
    "generate_codebook",
    "encode",
    "decode_ml",
    "exact_leakage",
    "single_letter_leakage_bound",
    "a_rho",
    "finite_length_leakage_rate_bound",
    "simulate_leakage",
]


class GuardrailError(RuntimeError):
    """The requested exact computation exceeds the brute-force budget."""


# ---------------------------------------------------------------------------
# channel and single-letter law
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DiscreteIC:
    """Transition table P(y1, y2 | x1, x2) over finite alphabets."""

    transition: np.ndarray

    def __init__(self, transition):
        table = np.asarray(transition, dtype=np.float64)
        if table.ndim != 4:
            raise ValueError("transition table must have shape (x1, x2, y1, y2)")
        if np.any(table < 0):
            raise ValueError("transition probabilities must be nonnegative")
        sums = table.sum(axis=(2, 3))
        if np.any(np.abs(sums - 1.0) > PROB_TOL):
            raise ValueError("each (x1, x2) row must sum to 1")
        table = table.copy()
        table.setflags(write=False)
        object.__setattr__(self, "transition", table)

    @property
    def nx1(self) -> int:
        return self.transition.shape[0]

    @property
    def nx2(self) -> int:
        return self.transition.shape[1]

    @property
    def ny1(self) -> int:
        return self.transition.shape[2]

    @property
    def ny2(self) -> int:
        return self.transition.shape[3]

    def y1_given_x(self) -> np.ndarray:
        return self.transition.sum(axis=3)

    def y2_given_x(self) -> np.ndarray:
        return self.transition.sum(axis=2)

    def degrade_eavesdropper(self, stochastic_map) -> "DiscreteIC":
        """Post-compose the second output with a stochastic map."""
        post = np.asarray(stochastic_map, dtype=np.float64)
        if post.shape[0] != self.ny2:
            raise ValueError("map input size must match the second output alphabet")
        return DiscreteIC(np.einsum("abcy,yz->abcz", self.transition, post))


@dataclass(frozen=True, eq=False)
class SingleLetterLaw:
    """The factored input law P(u) P(w1,v1|u) P(x1|v1) P(w2,v2|u) P(x2|v2)."""

    p_u: np.ndarray
    p_wv1_given_u: np.ndarray  # (nu, nw1, nv1)
    p_wv2_given_u: np.ndarray  # (nu, nw2, nv2)
    p_x1_given_v1: np.ndarray  # (nv1, nx1)
    p_x2_given_v2: np.ndarray  # (nv2, nx2)

    def __init__(self, p_u, p_wv1_given_u, p_wv2_given_u, p_x1_given_v1, p_x2_given_v2):
        p_u = np.asarray(p_u, dtype=np.float64)
        FiniteDistribution(p_u)  # validates
        tables = {}
        for name, value, ndim in (
            ("p_wv1_given_u", p_wv1_given_u, 3),
            ("p_wv2_given_u", p_wv2_given_u, 3),
            ("p_x1_given_v1", p_x1_given_v1, 2),
            ("p_x2_given_v2", p_x2_given_v2, 2),
        ):
            table = np.asarray(value, dtype=np.float64)
            if table.ndim != ndim:
                raise ValueError(f"{name} must be {ndim}-dimensional")
            if np.any(table < 0):
                raise ValueError(f"{name} has negative entries")
            sums = table.sum(axis=tuple(range(1, ndim)))
            if np.any(np.abs(sums - 1.0) > PROB_TOL):
                raise ValueError(f"{name} rows must sum to 1")
            table = table.copy()
            table.setflags(write=False)
            tables[name] = table
        p_u = p_u.copy()
        p_u.setflags(write=False)
        object.__setattr__(self, "p_u", p_u)
        for name, table in tables.items():
            object.__setattr__(self, name, table)
        if self.p_wv1_given_u.shape[0] != len(p_u) or self.p_wv2_given_u.shape[0] != len(p_u):
            raise ValueError("conditional tables disagree on the size of U")
        if self.p_wv1_given_u.shape[2] != self.p_x1_given_v1.shape[0]:
            raise ValueError("V1 alphabet mismatch between layers")
        if self.p_wv2_given_u.shape[2] != self.p_x2_given_v2.shape[0]:
            raise ValueError("V2 alphabet mismatch between layers")

    # sizes ------------------------------------------------------------

    @property
    def nu(self) -> int:
        return len(self.p_u)

    def nw(self, t: int) -> int:
        return (self.p_wv1_given_u if t == 1 else self.p_wv2_given_u).shape[1]

    def nv(self, t: int) -> int:
        return (self.p_wv1_given_u if t == 1 else self.p_wv2_given_u).shape[2]

    # derived tables ----------------------------------------------------

    def p_wv(self, t: int) -> np.ndarray:
        return self.p_wv1_given_u if t == 1 else self.p_wv2_given_u

    def p_x_given_v(self, t: int) -> np.ndarray:
        return self.p_x1_given_v1 if t == 1 else self.p_x2_given_v2

    def p_w_given_u(self, t: int) -> np.ndarray:
        return self.p_wv(t).sum(axis=2)

    def p_v_given_wu(self, t: int) -> np.ndarray:
        """(nu, nw, nv); rows with zero-probability (u, w) fall back to
        uniform so sampling never divides by zero."""
        joint = self.p_wv(t)
        marg = joint.sum(axis=2, keepdims=True)
        nv = joint.shape[2]
        safe = np.where(marg > 0, marg, 1.0)
        rows = joint / safe
        uniform = np.full_like(rows, 1.0 / nv)
        return np.where(marg > 0, rows, uniform)

    def p_v_given_u(self, t: int) -> np.ndarray:
        return self.p_wv(t).sum(axis=1)

    def p_uv2(self) -> np.ndarray:
        return self.p_u[:, None] * self.p_v_given_u(2)

    def v_to_y_table(self, channel: DiscreteIC, receiver: int) -> np.ndarray:
        """Exact per-symbol law P(y_receiver | v1, v2) with the artificial
        noise marginalized: (nv1, nv2, ny)."""
        y_given_x = channel.y1_given_x() if receiver == 1 else channel.y2_given_x()
        return np.einsum(
            "ax,by,xyz->abz", self.p_x_given_v(1), self.p_x_given_v(2), y_given_x
        )

    def joint_u_v1_v2_y2(self, channel: DiscreteIC) -> JointDistribution:
        """Exact joint of (U, V1, V2, Y2) for information-measure oracles."""
        t2 = self.v_to_y_table(channel, receiver=2)
        probs = np.einsum(
            "u,ua,ub,abz->uabz", self.p_u, self.p_v_given_u(1), self.p_v_given_u(2), t2
        )
        return JointDistribution(probs)

    def leak_mi(self, channel: DiscreteIC) -> float:
        """I(V1; Y2 | U, V2) in nats, computed exactly."""
        joint = self.joint_u_v1_v2_y2(channel)
        return conditional_mutual_information(joint, [1], [3], [0, 2])


# ---------------------------------------------------------------------------
# codebooks and the layered code
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Codebook:
    """Randomly generated layered codebook for both transmitters."""

    law: SingleLetterLaw
    u_seq: np.ndarray
    w_seqs: tuple[np.ndarray, np.ndarray]  # per t: (2^cb, n)
    v_seqs: tuple[np.ndarray, np.ndarray]  # per t: (2^pb, 2^cb, n)
    n: int
    common_bits: tuple[int, int]
    private_bits: tuple[int, int]

    def word_bits(self, t: int) -> int:
        return self.common_bits[t - 1] + self.private_bits[t - 1]


def generate_codebook(
    law: SingleLetterLaw,
    n: int,
    common_bits: tuple[int, int],
    private_bits: tuple[int, int],
    seed,
) -> Codebook:
    """Draw a layered codebook: u componentwise from P(u), each common
    codeword componentwise from P(w|u), each private codeword from
    P(v|w,u).  Index ranges are exact powers of two; identical seeds give
    bit-identical codebooks."""
    if n < 1:
        raise ValueError("blocklength must be positive")
    for bits in (*common_bits, *private_bits):
        if bits < 0:
            raise ValueError("bit counts cannot be negative")
    rng = np.random.default_rng(seed)
    u_seq = rng.choice(law.nu, size=n, p=law.p_u)
    w_seqs = []
    v_seqs = []
    for t in (1, 2):
        n_e = 1 << common_bits[t - 1]
        n_b = 1 << private_bits[t - 1]
        p_w = law.p_w_given_u(t)
        p_v = law.p_v_given_wu(t)
        w = np.empty((n_e, n), dtype=np.int64)
        for i in range(n):
            w[:, i] = rng.choice(law.nw(t), size=n_e, p=p_w[u_seq[i]])
        v = np.empty((n_b, n_e, n), dtype=np.int64)
        for e in range(n_e):
            for i in range(n):
                v[:, e, i] = rng.choice(
                    law.nv(t), size=n_b, p=p_v[u_seq[i], w[e, i]]
                )
        w.setflags(write=False)
        v.setflags(write=False)
        w_seqs.append(w)
        v_seqs.append(v)
    u_seq.setflags(write=False)
    return Codebook(
        law=law,
        u_seq=u_seq,
        w_seqs=(w_seqs[0], w_seqs[1]),
        v_seqs=(v_seqs[0], v_seqs[1]),
        n=n,
        common_bits=tuple(common_bits),
        private_bits=tuple(private_bits),
    )


@dataclass(frozen=True, eq=False)
class MultiplexCode:
    """Codebook plus per-transmitter hash and message layout.

    The hashed word of transmitter t splits into the common index (the
    leading ``common_bits`` bits) and the private index (the rest).
    """

    codebook: Codebook
    hashes: tuple[LinearBijection, LinearBijection]
    layouts: tuple[MessageLayout, MessageLayout]

    def __post_init__(self):
        for t in (1, 2):
            bits = self.codebook.word_bits(t)
            if self.hashes[t - 1].dimension != bits:
                raise ValueError(f"hash {t} dimension must be {bits} bits")
            if self.layouts[t - 1].total_bits != bits:
                raise ValueError(f"layout {t} must cover {bits} bits")

    def split_word(self, t: int, c: int) -> tuple[int, int]:
        pb = self.codebook.private_bits[t - 1]
        return c >> pb, c & ((1 << pb) - 1)

    def join_word(self, t: int, e: int, b: int) -> int:
        pb = self.codebook.private_bits[t - 1]
        return (e << pb) | b

    def v_sequence(self, t: int, c: int) -> np.ndarray:
        e, b = self.split_word(t, c)
        return self.codebook.v_seqs[t - 1][b, e]


@dataclass(frozen=True)
class EncodeResult:
    x_seq: np.ndarray
    x_law: np.ndarray  # (n, nx) exact per-symbol conditional law
    v_seq: np.ndarray
    word: int
    common_index: int
    private_index: int
    dummy: int


def encode(
    code: MultiplexCode, transmitter: int, messages, dummy: int | None = None, seed=None
) -> EncodeResult:
    """Map messages (plus padding randomness) to a channel-input sample and
    its exact conditional law given the selected codeword."""
    layout = code.layouts[transmitter - 1]
    rng = np.random.default_rng(seed)
    if dummy is None:
        dummy = int(rng.integers(0, 1 << layout.dummy_length)) if layout.dummy_length else 0
    hashed = layout.join_int(messages, dummy)
    word = code.hashes[transmitter - 1].inverse_apply_int(hashed)
    e, b = code.split_word(transmitter, word)
    v_seq = code.codebook.v_seqs[transmitter - 1][b, e]
    p_x = code.codebook.law.p_x_given_v(transmitter)
    x_law = p_x[v_seq]
    x_seq = np.array([rng.choice(p_x.shape[1], p=x_law[i]) for i in range(code.codebook.n)])
    return EncodeResult(
        x_seq=x_seq,
        x_law=x_law,
        v_seq=v_seq,
        word=word,
        common_index=e,
        private_index=b,
        dummy=dummy,
    )


@dataclass(frozen=True)
class DecodeResult:
    segments: tuple[int, ...]
    dummy: int
    common_index: int
    private_index: int
    other_common_index: int
    likelihood: float


def decode_ml(
    code: MultiplexCode, channel: DiscreteIC, receiver: int, y_seq
) -> DecodeResult:
    """Maximum-likelihood decoding of (own common, own private, other
    common) with the other private index marginalized uniformly; ties
    break toward the lexicographically smallest candidate triple."""
    y_seq = np.asarray(y_seq, dtype=np.int64)
    cb = code.codebook
    own, other = receiver, 3 - receiver
    table = cb.law.v_to_y_table(channel, receiver=receiver)  # (v1, v2, y)
    v_own = cb.v_seqs[own - 1]  # (nb, ne, n)
    v_other = cb.v_seqs[other - 1]
    if receiver == 1:
        sym = table[v_own[:, :, None, None, :], v_other[None, None, :, :, :], y_seq]
    else:
        sym = table[v_other[None, None, :, :, :], v_own[:, :, None, None, :], y_seq]
    # sym: (b_own, e_own, b_other, e_other, n)
    lik = sym.prod(axis=-1).mean(axis=2)  # marginalize b_other uniformly
    lik = np.transpose(lik, (1, 0, 2))  # order (e_own, b_own, e_other)
    flat = int(np.argmax(lik))
    ne_other = lik.shape[2]
    nb_own = lik.shape[1]
    e_own, rest = divmod(flat, nb_own * ne_other)
    b_own, e_other = divmod(rest, ne_other)
    word = code.join_word(own, e_own, b_own)
    hashed = code.hashes[own - 1].apply_int(word)
    segments, dummy = code.layouts[own - 1].split_int(hashed)
    return DecodeResult(
        segments=segments,
        dummy=dummy,
        common_index=e_own,
        private_index=b_own,
        other_common_index=e_other,
        likelihood=float(lik[e_own, b_own, e_other]),
    )


# ---------------------------------------------------------------------------
# exact leakage
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LeakageReport:
    """Exact leakage of selected message segments to the other receiver."""

    exact_leakage: float
    equivocation: float
    r_i: float
    r_p: float
    n: int
    index_set: tuple[int, ...]
    bound: float | None = None
    rho_used: float | None = None

    def to_json(self) -> dict:
        return {
            "exact_leakage_nats": self.exact_leakage,
            "equivocation_nats": self.equivocation,
            "rate_selected_nats": self.r_i,
            "rate_word_nats": self.r_p,
            "blocklength": self.n,
            "index_set": list(self.index_set),
            "bound_nats": self.bound,
            "rho_used": self.rho_used,
        }


def _block_law(table: np.ndarray, v1_seq, v2_seq) -> np.ndarray:
    """P(y^n | v1^n, v2^n) flattened over the output block."""
    out = np.array([1.0])
    for v1, v2 in zip(v1_seq, v2_seq):
        out = np.multiply.outer(out, table[v1, v2]).ravel()
    return out


def exact_leakage(
    code: MultiplexCode, channel: DiscreteIC, index_set
) -> LeakageReport:
    """Exact I(selected segments of user 1; eavesdropped block Y2^n) and
    the matching equivocation, by summing over all message words, padding
    values and encoder randomness."""
    layout = code.layouts[0]
    proj = Projection(layout, index_set)
    cb = code.codebook
    l1 = cb.word_bits(1)
    l2 = cb.word_bits(2)
    n_y_block = channel.ny2**cb.n
    state = (1 << l1) * (1 << l2) * n_y_block
    if state > STATE_SPACE_LIMIT:
        raise GuardrailError(
            f"joint state space has {state} entries "
            f"(2^{l1} words x 2^{l2} words x {channel.ny2}^{cb.n} blocks); "
            f"the exact-computation limit is {STATE_SPACE_LIMIT}"
        )
    table = cb.law.v_to_y_table(channel, receiver=2)
    f1 = code.hashes[0]
    k_bits = proj.projected_bits
    joint = np.zeros((1 << k_bits, n_y_block))
    weight = 1.0 / ((1 << l1) * (1 << l2))
    for c1 in range(1 << l1):
        m = proj.apply_int(f1.apply_int(c1))
        v1_seq = code.v_sequence(1, c1)
        for c2 in range(1 << l2):
            v2_seq = code.v_sequence(2, c2)
            joint[m] += weight * _block_law(table, v1_seq, v2_seq)
    joint_dist = JointDistribution(joint)
    from .finite_prob import entropy, mutual_information

    leakage = mutual_information(joint_dist, [0], [1])
    equivocation = entropy(joint_dist) - entropy(joint_dist.marginal([1]))
    return LeakageReport(
        exact_leakage=leakage,
        equivocation=equivocation,
        r_i=k_bits * LN2 / cb.n,
        r_p=l1 * LN2 / cb.n,
        n=cb.n,
        index_set=tuple(sorted(int(i) for i in index_set)),
    )


# ---------------------------------------------------------------------------
# single-letter and finite-length bounds
# ---------------------------------------------------------------------------


def _per_context_phi(law: SingleLetterLaw, channel: DiscreteIC, rho: float):
    """phi evaluated on the (V1 -> Y2) channel for every (u, v2) context,
    weighted by P(U, V2)."""
    table = law.v_to_y_table(channel, receiver=2)
    joint_uv = law.p_uv2()
    joint_uvv = np.einsum("u,ua,ub->uab", law.p_u, law.p_v_given_u(1), law.p_v_given_u(2))
    terms = []
    for u in range(law.nu):
        for v2 in range(law.nv(2)):
            w = joint_uv[u, v2]
            if w <= 0:
                continue
            p_v1 = FiniteDistribution(joint_uvv[u, :, v2] / w)
            chan = FiniteConditional(table[:, v2, :])
            terms.append((w, phi(rho, chan, p_v1)))
    return terms


def single_letter_leakage_bound(
    law: SingleLetterLaw,
    channel: DiscreteIC,
    rho: float,
    r_i: float,
    r_p: float,
    n: int,
) -> float:
    """Upper bound on the family-averaged leakage of selected segments:

        (1/rho) * [ sum_{u,v2} P(u,v2)
                     exp( rho (R_I - R_p) + phi(rho, P_{Y2|V1,v2,u}, P_{V1|v2,u}) ) ]^n

    Valid for 0 < rho < 1 and R_I <= R_p; decays geometrically in n when
    the bracket is below one.
    """
    if r_i > r_p + 1e-12:
        raise ValueError("the selected-segment rate cannot exceed the word rate")
    base = sum(
        w * math.exp(rho * (r_i - r_p) + value)
        for w, value in _per_context_phi(law, channel, rho)
    )
    return base**n / rho


def a_rho(law: SingleLetterLaw, channel: DiscreteIC, rho: float) -> float:
    """(1/rho) log sum_{u,v2} P(u,v2) exp(phi(rho, ...)); approaches
    I(V1; Y2 | U, V2) as rho -> 0."""
    total = sum(w * math.exp(value) for w, value in _per_context_phi(law, channel, rho))
    return math.log(total) / rho


def finite_length_leakage_rate_bound(
    num_messages: int, n: int, rho: float, r_i: float, r_p: float, leak_mi: float
) -> float:
    """Worst-case per-symbol leakage bound at finite blocklength:

        (1 + ln(2 * 2 * 2^T)) / (n rho) + R_I - R_p + leak_mi

    valid in the regime R_I - R_p + leak_mi >= 0 (up to an unquantified
    additive term that vanishes as rho -> 0 and is reported separately,
    never folded into the number)."""
    if num_messages < 1 or n < 1:
        raise ValueError("need at least one message and one channel use")
    if not 0 < rho:
        raise ValueError("rho must be positive")
    overhead = (1.0 + (num_messages + 2) * LN2) / (n * rho)
    return overhead + r_i - r_p + leak_mi


# ---------------------------------------------------------------------------
# sampled ensembles
# ---------------------------------------------------------------------------


def simulate_leakage(
    law: SingleLetterLaw,
    channel: DiscreteIC,
    n: int,
    common_bits: tuple[int, int],
    private_bits: tuple[int, int],
    layouts: tuple[MessageLayout, MessageLayout],
    index_set,
    num_samples: int,
    seed,
) -> list[LeakageReport]:
    """Exact leakage for ``num_samples`` independently drawn
    (hash, codebook, u) tuples.  Distinct sample indices use independently
    spawned random streams, so runs are reproducible and order-free."""
    root = np.random.SeedSequence(seed)
    reports = []
    for child in root.spawn(num_samples):
        cb_seed, h1_seed, h2_seed = child.spawn(3)
        codebook = generate_codebook(law, n, common_bits, private_bits, cb_seed)
        code = MultiplexCode(
            codebook=codebook,
            hashes=(
                sample_bijection(codebook.word_bits(1), h1_seed),
                sample_bijection(codebook.word_bits(2), h2_seed),
            ),
            layouts=layouts,
        )
        reports.append(exact_leakage(code, channel, index_set))
    return reports
