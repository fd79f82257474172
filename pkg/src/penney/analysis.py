"""Canonical-form decomposition and fundamental-matrix analysis of a game chain.

Splitting the transition matrix into its transient block Q and absorption
block R gives everything else exactly: the fundamental matrix N = (I - Q)^-1,
expected steps to absorption e = N * 1, and absorption probabilities B = N * R.
Win probabilities and expected game length then follow by weighting with the
initial distribution over the first L flips.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chain import ChainModel, build_chain
from .errors import NonAbsorbingChainError
from .patterns import CoinSpec, GameSpec, Pattern, all_patterns, penney_response
from .rational_linalg import (
    RMatrix,
    Rational,
    RVector,
    mat_inverse,
    mat_mul,
    mat_sub,
    mat_vec_mul,
)


@dataclass(frozen=True)
class CanonicalDecomposition:
    """State split into transient and absorbing blocks, with Q and R extracted."""

    transient_order: tuple[int, ...]
    absorbing_order: tuple[int, int]
    q: RMatrix
    r: RMatrix


@dataclass(frozen=True)
class AbsorptionAnalysis:
    """Fundamental matrix N, expected steps e, and absorption probabilities B."""

    fundamental: RMatrix
    expected_steps: RVector
    absorption_probabilities: RMatrix


@dataclass(frozen=True)
class GameAnalysis:
    """Full exact result bundle for one game."""

    spec: GameSpec
    win_s1: Rational
    win_s2: Rational
    absorption_times: dict[Pattern, Rational]
    expected_flips: Rational


def _transient_indices(model: ChainModel) -> tuple[int, ...]:
    absorbing = set(model.absorbing_indices)
    return tuple(i for i in range(len(model.states)) if i not in absorbing)


def canonicalize(model: ChainModel) -> CanonicalDecomposition:
    """Extract Q and R; transient states keep lexicographic order, absorbing order is (s1, s2).

    Raises ``NonAbsorbingChainError`` if some transient state cannot reach an
    absorbing state, since the downstream inversion would be meaningless.
    """
    transient = _transient_indices(model)
    absorbing = model.absorbing_indices

    # reachability sweep: iteratively mark states that can reach absorption
    entries = model.transition.entries
    reaches = {a: True for a in absorbing}
    changed = True
    while changed:
        changed = False
        for i in transient:
            if i in reaches:
                continue
            if any(entries[i][j] != 0 and j in reaches for j in range(len(model.states))):
                reaches[i] = True
                changed = True
    stuck = [i for i in transient if i not in reaches]
    if stuck:
        names = ", ".join(str(model.states[i]) for i in stuck)
        raise NonAbsorbingChainError(f"chain is not absorbing: no path to absorption from {names}")

    q = RMatrix.from_rows(
        (tuple(entries[i][j] for j in transient) for i in transient), cols=len(transient)
    )
    r = RMatrix.from_rows(
        (tuple(entries[i][j] for j in absorbing) for i in transient), cols=len(absorbing)
    )
    return CanonicalDecomposition(transient, absorbing, q, r)


def reassemble(decomp: CanonicalDecomposition, n_states: int) -> RMatrix:
    """Rebuild the full transition matrix from the canonical blocks (round-trip check)."""
    order = list(decomp.transient_order) + list(decomp.absorbing_order)
    n_t = len(decomp.transient_order)
    grid = [[Fraction(0)] * n_states for _ in range(n_states)]
    for bi, i in enumerate(order):
        for bj, j in enumerate(order):
            if bi < n_t:
                value = decomp.q[bi, bj] if bj < n_t else decomp.r[bi, bj - n_t]
            else:
                value = Fraction(int(bi == bj))
            grid[i][j] = value
    return RMatrix.from_rows(grid)


def analyze_absorption(decomp: CanonicalDecomposition) -> AbsorptionAnalysis:
    """Compute N = (I - Q)^-1, e = N * 1, and B = N * R, all exactly."""
    n_t = len(decomp.transient_order)
    fundamental = mat_inverse(mat_sub(RMatrix.identity(n_t), decomp.q))
    ones = RVector.of([1] * n_t)
    expected_steps = mat_vec_mul(fundamental, ones)
    absorption = mat_mul(fundamental, decomp.r)
    return AbsorptionAnalysis(fundamental, expected_steps, absorption)


def win_probability(model: ChainModel, analysis: AbsorptionAnalysis) -> tuple[Rational, Rational]:
    """Probability that s1 (resp. s2) appears first, weighted by the initial distribution.

    An opening window equal to s1 wins outright, one equal to s2 loses
    outright, and every transient opening contributes its absorption split.
    """
    transient = _transient_indices(model)
    pi0 = model.initial_distribution
    a1, a2 = model.absorbing_indices
    b = analysis.absorption_probabilities
    win1 = pi0[a1] + sum((pi0[i] * b[t, 0] for t, i in enumerate(transient)), Fraction(0))
    win2 = pi0[a2] + sum((pi0[i] * b[t, 1] for t, i in enumerate(transient)), Fraction(0))
    return win1, win2


def expected_game_length(model: ChainModel, analysis: AbsorptionAnalysis) -> Rational:
    """Expected total flips: L for the opening window plus the expected steps after it."""
    transient = _transient_indices(model)
    pi0 = model.initial_distribution
    length = model.spec.length
    total = (pi0[model.absorbing_indices[0]] + pi0[model.absorbing_indices[1]]) * length
    for t, i in enumerate(transient):
        total += pi0[i] * (analysis.expected_steps[t] + length)
    return total


def full_analysis(spec: GameSpec) -> GameAnalysis:
    """Build the chain, decompose it, and bundle all exact results for one game."""
    model = build_chain(spec)
    decomp = canonicalize(model)
    analysis = analyze_absorption(decomp)

    times: dict[Pattern, Rational] = {state: Fraction(0) for state in model.states}
    for t, i in enumerate(decomp.transient_order):
        times[model.states[i]] = analysis.expected_steps[t]

    win1, win2 = win_probability(model, analysis)
    return GameAnalysis(
        spec=spec,
        win_s1=win1,
        win_s2=win2,
        absorption_times=times,
        expected_flips=expected_game_length(model, analysis),
    )


def penney_pairings(coin: CoinSpec | None = None) -> tuple[GameSpec, ...]:
    """The eight games where the second player answers with the optimal-response map."""
    coin = coin or CoinSpec.fair()
    return tuple(
        GameSpec(s1=s, s2=penney_response(s), coin=coin) for s in all_patterns(3)
    )


def overall_expected_length() -> Rational:
    """Average expected game length over the eight fair-coin optimal-response games."""
    games = penney_pairings(CoinSpec.fair())
    total = sum((full_analysis(g).expected_flips for g in games), Fraction(0))
    return total / len(games)
