"""Coin outcomes, player patterns, and game specifications.

A pattern is a fixed-length word over the two coin faces H and T. The
canonical text form is the plain concatenation, e.g. ``"HHT"``; parsing is
case-insensitive and rejects anything outside {H, T}.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import InvalidGameError, InvalidPatternError

HEADS = "H"
TAILS = "T"

_NEGATE = {HEADS: TAILS, TAILS: HEADS}

DEFAULT_MAX_LENGTH = 10


def max_pattern_length() -> int:
    """Pattern-length cap, overridable through the PENNEY_MAX_L environment variable."""
    raw = os.environ.get("PENNEY_MAX_L")
    if raw is None:
        return DEFAULT_MAX_LENGTH
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidPatternError(f"PENNEY_MAX_L must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise InvalidPatternError("PENNEY_MAX_L must be at least 1")
    return cap


def negate_outcome(outcome: str) -> str:
    try:
        return _NEGATE[outcome]
    except KeyError:
        raise InvalidPatternError(f"invalid outcome {outcome!r}") from None


@dataclass(frozen=True, order=True)
class Pattern:
    """A length-L sequence of coin outcomes; ordering is lexicographic with H < T."""

    outcomes: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.outcomes:
            raise InvalidPatternError("pattern must contain at least one outcome")
        if any(o not in _NEGATE for o in self.outcomes):
            raise InvalidPatternError("pattern outcomes must be 'H' or 'T'")
        cap = max_pattern_length()
        if len(self.outcomes) > cap:
            raise InvalidPatternError(
                f"pattern length {len(self.outcomes)} exceeds the cap of {cap}"
            )

    @classmethod
    def parse(cls, text: str) -> "Pattern":
        cleaned = text.strip().upper()
        if not cleaned:
            raise InvalidPatternError("empty pattern")
        bad = sorted({ch for ch in cleaned if ch not in _NEGATE})
        if bad:
            raise InvalidPatternError(
                f"invalid pattern {text!r}: unexpected character(s) {''.join(bad)!r}"
            )
        return cls(tuple(cleaned))

    @property
    def length(self) -> int:
        return len(self.outcomes)

    @property
    def text(self) -> str:
        return "".join(self.outcomes)

    def rank(self) -> int:
        """Lexicographic rank among all patterns of this length (H=0 bit, T=1 bit)."""
        value = 0
        for outcome in self.outcomes:
            value = (value << 1) | (outcome == TAILS)
        return value

    def __str__(self) -> str:
        return self.text


def all_patterns(length: int) -> tuple[Pattern, ...]:
    """Every pattern of the given length in lexicographic order (H < T)."""
    if length < 1:
        raise InvalidPatternError("pattern length must be at least 1")
    return tuple(Pattern(word) for word in product((HEADS, TAILS), repeat=length))


def negate_pattern(pattern: Pattern) -> Pattern:
    """Element-wise H/T swap; an involution."""
    return Pattern(tuple(_NEGATE[o] for o in pattern.outcomes))


def penney_response(pattern: Pattern) -> Pattern:
    """Optimal-response map for 3-patterns: (a, b, c) -> (not b, a, b)."""
    if pattern.length != 3:
        raise InvalidPatternError("the optimal-response map is defined for length-3 patterns only")
    a, b, _ = pattern.outcomes
    return Pattern((_NEGATE[b], a, b))


@dataclass(frozen=True)
class CoinSpec:
    """A possibly biased coin; probabilities are exact rationals."""

    p_heads: Fraction

    def __post_init__(self) -> None:
        if isinstance(self.p_heads, float):
            raise TypeError("pass the bias as a string or Fraction, not a float")
        if not isinstance(self.p_heads, Fraction):
            object.__setattr__(self, "p_heads", Fraction(self.p_heads))
        if not (0 < self.p_heads < 1):
            raise InvalidGameError("p_heads must be strictly between 0 and 1")

    @classmethod
    def fair(cls) -> "CoinSpec":
        return cls(Fraction(1, 2))

    @classmethod
    def parse(cls, text: str) -> "CoinSpec":
        """Accepts a decimal ("0.4") or a fraction ("2/5"); conversion is exact."""
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidGameError(f"invalid bias {text!r}: expected a decimal or a fraction") from exc
        return cls(value)

    @property
    def p_tails(self) -> Fraction:
        return 1 - self.p_heads

    def outcome_probability(self, outcome: str) -> Fraction:
        return self.p_heads if outcome == HEADS else self.p_tails

    def is_fair(self) -> bool:
        return self.p_heads == Fraction(1, 2)


@dataclass(frozen=True)
class GameSpec:
    """Two competing patterns of equal length plus the coin they race on."""

    s1: Pattern
    s2: Pattern
    coin: CoinSpec

    def __post_init__(self) -> None:
        if self.s1.length != self.s2.length:
            raise InvalidGameError(
                f"patterns must have equal length ({self.s1} has {self.s1.length}, "
                f"{self.s2} has {self.s2.length})"
            )
        if self.s1 == self.s2:
            raise InvalidGameError("patterns must differ")

    @property
    def length(self) -> int:
        return self.s1.length
