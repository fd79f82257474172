"""Optimal-response verification and the non-transitive beats cycle.

The response map itself lives in ``patterns`` (it is pure pattern algebra);
this module evaluates it: the eight-case table, exhaustive best responses,
and the four-pattern cycle in which every pattern is beaten by the next.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import full_analysis
from .errors import PenneyError
from .patterns import CoinSpec, GameSpec, Pattern, all_patterns, penney_response
from .rational_linalg import Rational


@dataclass(frozen=True)
class ResponseCase:
    pattern: Pattern
    response: Pattern
    win_probability: Rational

    @property
    def optimal(self) -> bool:
        return self.win_probability > Fraction(1, 2)


@dataclass(frozen=True)
class ResponseTable:
    """The response map evaluated against every length-3 pattern for one coin."""

    coin: CoinSpec
    cases: tuple[ResponseCase, ...]

    def case_for(self, pattern: Pattern) -> ResponseCase:
        for case in self.cases:
            if case.pattern == pattern:
                return case
        raise KeyError(str(pattern))


@dataclass(frozen=True)
class BestResponse:
    pattern: Pattern
    response: Pattern
    win_probability: Rational
    ties: tuple[Pattern, ...]


@dataclass(frozen=True)
class BeatsEdge:
    loser: Pattern
    winner: Pattern
    probability: Rational

    @property
    def reverse_probability(self) -> Rational:
        return 1 - self.probability


@dataclass(frozen=True)
class BeatsCycle:
    """Ordered patterns where each is beaten by its successor, wrapping around."""

    nodes: tuple[Pattern, ...]
    edges: tuple[BeatsEdge, ...]


def beat_probability(opponent: Pattern, challenger: Pattern, coin: CoinSpec) -> Rational:
    """Probability that ``challenger`` appears before ``opponent``."""
    return full_analysis(GameSpec(s1=opponent, s2=challenger, coin=coin)).win_s2


def verify_penney_optimal(coin: CoinSpec | None = None) -> ResponseTable:
    """Evaluate the response map on all eight 3-patterns.

    For the fair coin every response must win with probability above 1/2;
    a violation would mean the solver itself is broken, so it raises. For
    biased coins the table only reports, since no such guarantee exists.
    """
    coin = coin or CoinSpec.fair()
    cases = []
    for pattern in all_patterns(3):
        response = penney_response(pattern)
        probability = beat_probability(pattern, response, coin)
        cases.append(ResponseCase(pattern, response, probability))
    table = ResponseTable(coin, tuple(cases))
    if coin.is_fair():
        losing = [c for c in table.cases if not c.optimal]
        if losing:
            detail = ", ".join(f"{c.response} vs {c.pattern}: {c.win_probability}" for c in losing)
            raise PenneyError(f"fair-coin response map failed to beat even odds: {detail}")
    return table


def best_response(pattern: Pattern, coin: CoinSpec | None = None) -> BestResponse:
    """Exhaustively maximize the win probability over every distinct same-length response.

    Ties are broken lexicographically (H < T) and surfaced in ``ties``.
    """
    coin = coin or CoinSpec.fair()
    candidates = [c for c in all_patterns(pattern.length) if c != pattern]
    scored = [(c, beat_probability(pattern, c, coin)) for c in candidates]
    best_probability = max(p for _, p in scored)
    ties = tuple(c for c, p in scored if p == best_probability)
    return BestResponse(pattern, ties[0], best_probability, ties)


_CYCLE_TEXT = ("HHT", "THH", "TTH", "HTT")


def find_beats_cycle(coin: CoinSpec | None = None) -> BeatsCycle:
    """Certify the four-pattern cycle HHT -> THH -> TTH -> HTT (each arrow = "is beaten by").

    Every edge is certified by an exact win probability above 1/2; if any
    edge failed, the cycle would not exist and this raises.
    """
    coin = coin or CoinSpec.fair()
    nodes = tuple(Pattern.parse(t) for t in _CYCLE_TEXT)
    edges = []
    for i, loser in enumerate(nodes):
        winner = nodes[(i + 1) % len(nodes)]
        probability = beat_probability(loser, winner, coin)
        if probability <= Fraction(1, 2):
            raise PenneyError(
                f"cycle edge failed certification: {winner} beats {loser} "
                f"with probability {probability}"
            )
        edges.append(BeatsEdge(loser=loser, winner=winner, probability=probability))
    return BeatsCycle(nodes, tuple(edges))
