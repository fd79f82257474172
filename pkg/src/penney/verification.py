"""Verification suites: response-map optimality, the beats cycle, and oracle agreement.

Each suite returns a plain report object with a ``passed`` flag; callers
(the HTTP service, the CLI, the test suite) decide how to render or gate on
it. Reports are assembled keyed by pattern, never by completion order, so a
parallel evaluation would produce the identical result.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .analysis import full_analysis
from .montecarlo import enumerate_exact
from .patterns import CoinSpec, GameSpec, Pattern, all_patterns
from .rational_linalg import Rational
from .strategy import BeatsCycle, best_response, find_beats_cycle, verify_penney_optimal

DEFAULT_ORACLE_HORIZON = 120


@dataclass(frozen=True)
class OptimalityCase:
    pattern: Pattern
    response: Pattern
    win_probability: Rational
    optimal: bool
    argmax_response: Pattern
    argmax_agrees: bool


@dataclass(frozen=True)
class OptimalityReport:
    coin: CoinSpec
    cases: tuple[OptimalityCase, ...]
    passed: bool


@dataclass(frozen=True)
class OracleCheck:
    spec: GameSpec
    win_s1: Rational
    expected_flips: Rational
    win_in_bracket: bool
    flips_in_bracket: bool
    win_width: Rational
    flips_width: Rational

    @property
    def ok(self) -> bool:
        return self.win_in_bracket and self.flips_in_bracket


@dataclass(frozen=True)
class OracleReport:
    horizon: int
    checks: tuple[OracleCheck, ...]
    passed: bool


@dataclass(frozen=True)
class NontransitivityReport:
    cycle: BeatsCycle
    passed: bool


def run_optimality_suite(coin: CoinSpec | None = None) -> OptimalityReport:
    """Eight-case table: response-map win probabilities plus exhaustive argmax agreement."""
    coin = coin or CoinSpec.fair()
    table = verify_penney_optimal(coin)
    cases = []
    for entry in table.cases:
        exhaustive = best_response(entry.pattern, coin)
        cases.append(
            OptimalityCase(
                pattern=entry.pattern,
                response=entry.response,
                win_probability=entry.win_probability,
                optimal=entry.optimal,
                argmax_response=exhaustive.response,
                argmax_agrees=exhaustive.response == entry.response,
            )
        )
    passed = all(c.optimal and c.argmax_agrees for c in cases)
    return OptimalityReport(coin, tuple(cases), passed)


def run_nontransitivity_suite(coin: CoinSpec | None = None) -> NontransitivityReport:
    """Certify the four-pattern cycle: every edge above 1/2, every reverse edge below."""
    cycle = find_beats_cycle(coin or CoinSpec.fair())
    half = Fraction(1, 2)
    passed = all(e.probability > half and e.reverse_probability < half for e in cycle.edges)
    return NontransitivityReport(cycle, passed)


def run_oracle_suite(
    horizon: int = DEFAULT_ORACLE_HORIZON, coin: CoinSpec | None = None
) -> OracleReport:
    """Check the finite-horizon enumerator against the fundamental-matrix results.

    Runs all 56 ordered pairs of distinct length-3 patterns; passes when
    every exact value lies inside its enumerator bracket.
    """
    coin = coin or CoinSpec.fair()
    checks = []
    for s1 in all_patterns(3):
        for s2 in all_patterns(3):
            if s1 == s2:
                continue
            spec = GameSpec(s1=s1, s2=s2, coin=coin)
            exact = full_analysis(spec)
            bracket = enumerate_exact(spec, horizon)
            checks.append(
                OracleCheck(
                    spec=spec,
                    win_s1=exact.win_s1,
                    expected_flips=exact.expected_flips,
                    win_in_bracket=bracket.win_s1_lower <= exact.win_s1 <= bracket.win_s1_upper,
                    flips_in_bracket=(
                        bracket.expected_flips_lower
                        <= exact.expected_flips
                        <= bracket.expected_flips_upper
                    ),
                    win_width=bracket.win_s1_upper - bracket.win_s1_lower,
                    flips_width=bracket.expected_flips_upper - bracket.expected_flips_lower,
                )
            )
    return OracleReport(horizon, tuple(checks), all(c.ok for c in checks))
