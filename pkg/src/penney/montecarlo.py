"""Two independent oracles for the analytical core.

``enumerate_exact`` walks the chain's exact state-mass vector to a finite
horizon and returns rational brackets with a provable tail bound; it never
inverts a matrix, so it checks the fundamental-matrix path from the outside.

``simulate`` plays seeded random tricks. Randomness is counter-based: the
word consumed by flip ``f`` of trial ``t`` is a fixed avalanche hash of
``(seed, t, f)`` (splitmix64-style finalizers, constants below), so results
are bit-identical across runs and across any partitioning of the trials.
The generator is part of the package contract and must not change casually.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .chain import build_chain
from .patterns import GameSpec
from .rational_linalg import Rational

_MASK64 = (1 << 64) - 1
_MIX_A = 0xBF58476D1CE4E5B9
_MIX_B = 0x94D049BB133111EB
_STREAM_TRIAL = 0x9E3779B97F4A7C15
_STREAM_FLIP = 0xD1B54A32D192ED03

_CHUNK = 1 << 18


@dataclass(frozen=True)
class SimConfig:
    """Inputs for one simulation run; ``seed`` is a 64-bit unsigned integer."""

    spec: GameSpec
    trials: int
    seed: int
    max_flips_per_trick: int = 10_000

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if not (0 <= self.seed <= _MASK64):
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.max_flips_per_trick < self.spec.length:
            raise ValueError("max_flips_per_trick must be at least the pattern length")


@dataclass(frozen=True)
class SimResult:
    """Aggregated trick outcomes; truncated tricks are counted, never dropped."""

    wins_s1: int
    wins_s2: int
    truncated: int
    mean_flips: float | None
    stderr_win_s1: float
    stderr_mean_flips: float | None


@dataclass(frozen=True)
class EnumResult:
    """Exact rational brackets from the finite-horizon walk."""

    win_s1_lower: Rational
    win_s1_upper: Rational
    expected_flips_lower: Rational
    expected_flips_upper: Rational
    horizon: int
    unresolved_mass: Rational


def _mix64(x: int) -> int:
    x &= _MASK64
    x = ((x ^ (x >> 30)) * _MIX_A) & _MASK64
    x = ((x ^ (x >> 27)) * _MIX_B) & _MASK64
    return x ^ (x >> 31)


def flip_word(seed: int, trial: int, flip: int) -> int:
    """The 64-bit word consumed by one flip of one trial (scalar reference)."""
    h = _mix64(seed)
    h = _mix64(h ^ (((trial + 1) * _STREAM_TRIAL) & _MASK64))
    return _mix64(h ^ (((flip + 1) * _STREAM_FLIP) & _MASK64))


def _heads_threshold(p_heads: Fraction) -> int:
    # heads iff word < threshold; realized bias is floor(p * 2^64) / 2^64,
    # exact for dyadic p (in particular the fair coin) and within 2^-64 otherwise
    return (p_heads.numerator << 64) // p_heads.denominator


def flip_is_tails(seed: int, trial: int, flip: int, p_heads: Fraction) -> bool:
    """Scalar reference flip; the vectorized engine must agree bit-for-bit."""
    return flip_word(seed, trial, flip) >= _heads_threshold(p_heads)


def _mix_array(x: np.ndarray) -> np.ndarray:
    x = (x ^ (x >> np.uint64(30))) * np.uint64(_MIX_A)
    x = (x ^ (x >> np.uint64(27))) * np.uint64(_MIX_B)
    return x ^ (x >> np.uint64(31))


def _tails_bits(seed_mixed: int, trials: np.ndarray, flip: int, threshold: int) -> np.ndarray:
    # scalar parts of the hash are premixed with Python ints so only
    # array ops touch numpy (unsigned array arithmetic wraps silently)
    h = _mix_array(np.uint64(seed_mixed) ^ ((trials + np.uint64(1)) * np.uint64(_STREAM_TRIAL)))
    flip_key = ((flip + 1) * _STREAM_FLIP) & _MASK64
    word = _mix_array(h ^ np.uint64(flip_key))
    return (word >= np.uint64(threshold)).astype(np.int64)


def _run_chunk(
    seed_mixed: int,
    trial_lo: int,
    trial_hi: int,
    length: int,
    a1: int,
    a2: int,
    threshold: int,
    max_flips: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Play trials [trial_lo, trial_hi); returns (winner, flips) per trial.

    winner: 1 or 2 for the absorbing pattern, 0 for a truncated trick.
    All trials in a chunk proceed in lockstep, one flip per iteration, so a
    single flip counter serves the whole active set.
    """
    count = trial_hi - trial_lo
    ids = np.arange(trial_lo, trial_hi, dtype=np.uint64)
    state = np.zeros(count, dtype=np.int64)
    for f in range(length):
        state = state * 2 + _tails_bits(seed_mixed, ids, f, threshold)

    winner = np.zeros(count, dtype=np.int8)
    flips = np.full(count, length, dtype=np.int64)
    mask = (1 << length) - 1

    alive = np.arange(count, dtype=np.int64)
    done1 = state == a1
    done2 = state == a2
    winner[alive[done1]] = 1
    winner[alive[done2]] = 2
    keep = ~(done1 | done2)
    alive = alive[keep]
    state = state[keep]

    f = length
    while alive.size and f < max_flips:
        bits = _tails_bits(seed_mixed, ids[alive], f, threshold)
        state = ((state << 1) | bits) & mask
        f += 1
        flips[alive] = f
        done1 = state == a1
        done2 = state == a2
        winner[alive[done1]] = 1
        winner[alive[done2]] = 2
        keep = ~(done1 | done2)
        alive = alive[keep]
        state = state[keep]
    return winner, flips


def simulate(config: SimConfig) -> SimResult:
    """Run the configured number of independent tricks.

    Aggregation is exact integer arithmetic over per-trial outcomes, so the
    result is independent of chunking; floats appear only in the final
    summary statistics. ``mean_flips`` is taken over resolved tricks.
    """
    spec = config.spec
    seed_mixed = _mix64(config.seed)
    a1 = spec.s1.rank()
    a2 = spec.s2.rank()
    threshold = _heads_threshold(spec.coin.p_heads)

    wins1 = wins2 = truncated = 0
    flips_sum = 0
    flips_sumsq = 0
    for lo in range(0, config.trials, _CHUNK):
        hi = min(lo + _CHUNK, config.trials)
        winner, flips = _run_chunk(
            seed_mixed, lo, hi, spec.length, a1, a2, threshold, config.max_flips_per_trick
        )
        wins1 += int((winner == 1).sum())
        wins2 += int((winner == 2).sum())
        truncated += int((winner == 0).sum())
        resolved = flips[winner != 0]
        flips_sum += int(resolved.sum())
        flips_sumsq += int((resolved * resolved).sum())

    n = config.trials
    p_hat = wins1 / n
    stderr_win = math.sqrt(p_hat * (1.0 - p_hat) / n)

    resolved_count = wins1 + wins2
    if resolved_count == 0:
        mean_flips = None
        stderr_mean = None
    else:
        mean_flips = flips_sum / resolved_count
        if resolved_count > 1:
            var = (flips_sumsq - resolved_count * mean_flips * mean_flips) / (resolved_count - 1)
            stderr_mean = math.sqrt(max(var, 0.0) / resolved_count)
        else:
            stderr_mean = None
    return SimResult(wins1, wins2, truncated, mean_flips, stderr_win, stderr_mean)


def enumerate_exact(spec: GameSpec, horizon: int) -> EnumResult:
    """Walk the chain's exact mass vector for ``horizon - L`` steps.

    Returns rational brackets guaranteed to contain the true win probability
    and expected game length. The tail bound: from any point the game ends
    within L further flips with probability at least q^L (q the smaller face
    probability), so an unresolved trick expects at most L / q^L more flips.
    Unresolved mass therefore decays geometrically in the horizon.
    """
    length = spec.length
    if horizon < length:
        raise ValueError(f"horizon {horizon} is below the pattern length {length}")

    model = build_chain(spec)
    a1, a2 = model.absorbing_indices
    n_states = len(model.states)

    # sparse successor lists for the transient states
    successors: list[tuple[tuple[int, Fraction], ...]] = []
    for i in range(n_states):
        if i in (a1, a2):
            successors.append(())
        else:
            row = model.transition.row(i)
            successors.append(tuple((j, p) for j, p in enumerate(row) if p != 0))

    mass = list(model.initial_distribution)
    win1 = mass[a1]
    win2 = mass[a2]
    flips_weighted = (win1 + win2) * length
    mass[a1] = Fraction(0)
    mass[a2] = Fraction(0)

    for n in range(length + 1, horizon + 1):
        incoming = [Fraction(0)] * n_states
        absorbed1 = Fraction(0)
        absorbed2 = Fraction(0)
        for i, m in enumerate(mass):
            if m == 0:
                continue
            for j, p in successors[i]:
                flow = m * p
                if j == a1:
                    absorbed1 += flow
                elif j == a2:
                    absorbed2 += flow
                else:
                    incoming[j] += flow
        win1 += absorbed1
        win2 += absorbed2
        flips_weighted += (absorbed1 + absorbed2) * n
        mass = incoming

    unresolved = sum(mass, Fraction(0))
    q_min = min(spec.coin.p_heads, spec.coin.p_tails)
    tail_expectation = Fraction(length) / q_min**length
    return EnumResult(
        win_s1_lower=win1,
        win_s1_upper=win1 + unresolved,
        expected_flips_lower=flips_weighted + unresolved * horizon,
        expected_flips_upper=flips_weighted + unresolved * (horizon + tail_expectation),
        horizon=horizon,
        unresolved_mass=unresolved,
    )
