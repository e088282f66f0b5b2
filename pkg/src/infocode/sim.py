"""Informed-receiver channel simulation with exhaustive maximum-likelihood decoding."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

import numpy as np

from .code import (
    DistanceConfig,
    GeneratorMatrix,
    LinearCode,
    as_code,
    encode,
    field_tables,
    min_distance,
    pack_rows,
    qary_span_table,
    span_table,
)
from .eccir import Eccir, subcode

RNG_NAME = "numpy.PCG64"


def _proper_side_info(e: Eccir, side_info) -> tuple[int, ...]:
    s = tuple(sorted(set(side_info)))
    if any(i < 1 or i > e.L for i in s):
        raise ValueError(f"side information {s} out of range 1..{e.L}")
    if len(s) == e.L:
        raise ValueError("side information covers every message; nothing to decode")
    return s


def receiver_reduce(e: Eccir, y, side_info, known) -> np.ndarray:
    """y_S = y - sum_{l in S} w_l G_l.

    ``known`` maps each index in S to its message block (length k).
    """
    s = _proper_side_info(e, side_info)
    if set(known) != set(s):
        raise ValueError("known values must match the side information set")
    t = field_tables(e.q)
    y = np.asarray(y, dtype=np.int64)
    for i in s:
        c = encode(e.components[i - 1], known[i])
        y = t.sub(y, c)
    return y


@lru_cache(maxsize=8)
def _codeword_table(gen: GeneratorMatrix):
    """All q^k codewords, row m encoding the message with digit j = (m // q^j) % q."""
    if gen.q == 2:
        return span_table(pack_rows(gen.rows))
    return qary_span_table(gen.rows, gen.q)


@dataclass(frozen=True)
class Decoded:
    message: np.ndarray  # length k of the decoded code
    codeword: np.ndarray
    distance: int
    tie: bool


def ml_decode(code, y, dim_limit: int | None = None) -> Decoded:
    """Nearest codeword by full enumeration; ties go to the lowest message index and are flagged."""
    code = as_code(code)
    limit = dim_limit if dim_limit is not None else DistanceConfig().exhaustive_dim_limit
    if code.k * math.log2(code.q) > limit + 1e-9:
        raise ValueError(f"dimension {code.k} over GF({code.q}) exceeds the decoding limit")
    table = _codeword_table(code.gen)
    y = np.asarray(y, dtype=np.int64)
    if code.q == 2:
        target = pack_rows(y[None, :])[0]
        if table.shape[1] == 1:
            dist = np.bitwise_count(table[:, 0] ^ target[0])
        else:
            dist = np.bitwise_count(table ^ target).sum(axis=1)
    else:
        dist = np.count_nonzero(table != y[None, :], axis=1)
    best = int(dist.argmin())
    dmin = int(dist[best])
    tie = int(np.count_nonzero(dist == dmin)) > 1
    msg = np.array([(best // code.q ** j) % code.q for j in range(code.k)], dtype=np.int64)
    return Decoded(msg, encode(code.gen, msg), dmin, tie)


def random_error(n: int, q: int, weight: int, rng: np.random.Generator) -> np.ndarray:
    z = np.zeros(n, dtype=np.int64)
    pos = rng.choice(n, size=weight, replace=False)
    z[pos] = rng.integers(1, q, size=weight)
    return z


def bsc_error(n: int, q: int, flip_prob: float, rng: np.random.Generator) -> np.ndarray:
    """Each symbol is hit independently with probability flip_prob, by a uniform nonzero value."""
    hit = rng.random(n) < flip_prob
    return np.where(hit, rng.integers(1, q, size=n), 0).astype(np.int64)


@dataclass(frozen=True)
class ChannelTrial:
    message: np.ndarray  # (L, k)
    error: np.ndarray
    side_info: tuple[int, ...]
    seed: int


@dataclass
class TrialReport:
    trials: int
    successes: int
    side_info: list[int]
    error_weight: int | None
    seed: int
    distance: int | None
    guaranteed_radius: int | None
    ties: int = 0
    per_side_info_size: dict = field(default_factory=dict)
    flip_prob: float | None = None
    rng: str = RNG_NAME

    def __post_init__(self):
        if self.successes > self.trials:
            raise ValueError("more successes than trials")

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def to_json(self) -> dict:
        d = asdict(self)
        d["per_side_info_size"] = {str(k): v for k, v in self.per_side_info_size.items()}
        return d


def run_trial(e: Eccir, code: LinearCode, trial: ChannelTrial) -> tuple[bool, bool]:
    s = trial.side_info
    decoded_idx = [i for i in range(1, e.L + 1) if i not in s]
    c = encode(e.generator(), trial.message.reshape(-1))
    y = field_tables(e.q).add[c, trial.error]
    y_s = receiver_reduce(e, y, s, {i: trial.message[i - 1] for i in s})
    out = ml_decode(code, y_s)
    want = np.concatenate([trial.message[i - 1] for i in decoded_idx])
    return bool(np.array_equal(out.message, want)), out.tie


def run_trials(e: Eccir, side_info, error_weight: int | None, trials: int, seed: int = 0,
               config: DistanceConfig | None = None, flip_prob: float | None = None) -> TrialReport:
    """Monte Carlo over random messages, trial i seeded with seed + i.

    Errors have exact weight ``error_weight``, or with ``flip_prob`` set come
    from a memoryless symmetric channel (then nothing is asserted).
    """
    s = _proper_side_info(e, side_info)
    if flip_prob is not None:
        if not 0.0 <= flip_prob <= 1.0 or error_weight is not None:
            raise ValueError("give either an error weight or a flip probability in [0, 1]")
    elif error_weight is None or not 0 <= error_weight <= e.n:
        raise ValueError("error weight out of range")
    decoded_idx = [i for i in range(1, e.L + 1) if i not in s]
    code = subcode(e, decoded_idx)
    dist = min_distance(code, config)
    d = dist.value
    radius = (d - 1) // 2 if d is not None else None
    wins = ties = 0
    for i in range(trials):
        rng = np.random.Generator(np.random.PCG64(seed + i))
        msg = rng.integers(0, e.q, size=(e.L, e.k))
        if flip_prob is None:
            z = random_error(e.n, e.q, error_weight, rng)
        else:
            z = bsc_error(e.n, e.q, flip_prob, rng)
        trial = ChannelTrial(msg, z, s, seed + i)
        ok, tie = run_trial(e, code, trial)
        wins += ok
        ties += tie
    report = TrialReport(trials, wins, list(s), error_weight, seed, d, radius, ties,
                         {len(s): wins / trials if trials else 1.0}, flip_prob)
    if flip_prob is None and radius is not None and error_weight <= radius and wins != trials:
        raise AssertionError("decoding failed inside the guaranteed radius")
    return report
