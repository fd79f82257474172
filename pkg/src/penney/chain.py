"""Markov chain over length-L outcome windows with the two player patterns absorbing.

States are all 2^L patterns in lexicographic order (H < T). A non-absorbing
state (a1..aL) moves to (a2..aL, d) with the probability of flipping d; the
rows for the two player patterns are self-loops. The initial distribution is
the distribution of the first L flips, so a game that opens on one of the
player patterns is decided immediately.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .patterns import HEADS, TAILS, GameSpec, Pattern, all_patterns
from .rational_linalg import RMatrix, RVector, mat_pow, vec_mat_mul


@dataclass(frozen=True)
class ChainModel:
    """Immutable chain for one game: states, transition matrix, and start distribution."""

    spec: GameSpec
    states: tuple[Pattern, ...]
    transition: RMatrix
    absorbing_indices: tuple[int, int]
    initial_distribution: RVector

    def state_index(self, pattern: Pattern) -> int:
        return pattern.rank()


def build_chain(spec: GameSpec) -> ChainModel:
    """Construct the transition matrix and initial distribution for a game."""
    states = all_patterns(spec.length)
    a1 = spec.s1.rank()
    a2 = spec.s2.rank()
    p_heads = spec.coin.p_heads
    p_tails = spec.coin.p_tails

    n = len(states)
    rows = []
    for i, state in enumerate(states):
        row = [Fraction(0)] * n
        if i == a1 or i == a2:
            row[i] = Fraction(1)
        else:
            shifted = state.outcomes[1:]
            row[Pattern(shifted + (HEADS,)).rank()] += p_heads
            row[Pattern(shifted + (TAILS,)).rank()] += p_tails
        rows.append(row)

    initial = []
    for state in states:
        mass = Fraction(1)
        for outcome in state.outcomes:
            mass *= spec.coin.outcome_probability(outcome)
        initial.append(mass)

    return ChainModel(
        spec=spec,
        states=states,
        transition=RMatrix.from_rows(rows),
        absorbing_indices=(a1, a2),
        initial_distribution=RVector.of(initial),
    )


def distribution_after(model: ChainModel, n: int) -> RVector:
    """Exact state distribution after n steps, via repeated squaring of the transition matrix."""
    if n < 0:
        raise ValueError("step count must be nonnegative")
    if n == 0:
        return model.initial_distribution
    return vec_mat_mul(model.initial_distribution, mat_pow(model.transition, n))
