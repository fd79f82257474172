"""Exact solver and verification service for Penney's pattern-matching coin game."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("penney-solver")
except PackageNotFoundError:  # running from a source tree without install
    __version__ = "0.1.0"

from .analysis import (
    AbsorptionAnalysis,
    CanonicalDecomposition,
    GameAnalysis,
    analyze_absorption,
    canonicalize,
    expected_game_length,
    full_analysis,
    overall_expected_length,
    penney_pairings,
    win_probability,
)
from .chain import ChainModel, build_chain, distribution_after
from .errors import (
    DimensionError,
    InvalidGameError,
    InvalidPatternError,
    NonAbsorbingChainError,
    PenneyError,
    SingularMatrixError,
)
from .montecarlo import EnumResult, SimConfig, SimResult, enumerate_exact, simulate
from .patterns import (
    CoinSpec,
    GameSpec,
    Pattern,
    all_patterns,
    max_pattern_length,
    negate_pattern,
    penney_response,
)
from .rational_linalg import (
    RMatrix,
    Rational,
    RVector,
    decimal_string,
    mat_inverse,
    mat_mul,
    mat_pow,
    rational,
    vec_mat_mul,
)
from .strategy import (
    BeatsCycle,
    BeatsEdge,
    BestResponse,
    ResponseTable,
    best_response,
    find_beats_cycle,
    verify_penney_optimal,
)

__all__ = [
    "AbsorptionAnalysis",
    "BeatsCycle",
    "BeatsEdge",
    "BestResponse",
    "CanonicalDecomposition",
    "ChainModel",
    "CoinSpec",
    "DimensionError",
    "EnumResult",
    "GameAnalysis",
    "GameSpec",
    "InvalidGameError",
    "InvalidPatternError",
    "NonAbsorbingChainError",
    "Pattern",
    "PenneyError",
    "RMatrix",
    "RVector",
    "Rational",
    "ResponseTable",
    "SimConfig",
    "SimResult",
    "SingularMatrixError",
    "all_patterns",
    "analyze_absorption",
    "best_response",
    "build_chain",
    "canonicalize",
    "decimal_string",
    "distribution_after",
    "enumerate_exact",
    "expected_game_length",
    "find_beats_cycle",
    "full_analysis",
    "mat_inverse",
    "mat_mul",
    "mat_pow",
    "max_pattern_length",
    "negate_pattern",
    "overall_expected_length",
    "penney_pairings",
    "penney_response",
    "rational",
    "simulate",
    "vec_mat_mul",
    "verify_penney_optimal",
    "win_probability",
]
