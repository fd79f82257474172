"""Builders that turn core results into response documents."""
from __future__ import annotations

from typing import Any

from .. import __version__
from ..analysis import GameAnalysis, full_analysis, overall_expected_length, penney_pairings
from ..montecarlo import SimConfig, SimResult, simulate
from ..patterns import CoinSpec, GameSpec, Pattern, all_patterns, penney_response
from ..rational_linalg import Rational, decimal_string
from ..strategy import best_response
from ..verification import (
    NontransitivityReport,
    OptimalityReport,
    OracleReport,
    run_nontransitivity_suite,
    run_optimality_suite,
    run_oracle_suite,
)
from . import schemas as s


def fraction_out(value: Rational, digits: int) -> s.FractionOut:
    return s.FractionOut(
        num=value.numerator, den=value.denominator, approx=decimal_string(value, digits)
    )


def _meta(command: str, arguments: dict[str, Any]) -> dict[str, Any]:
    return {"command": command, "version": __version__, "arguments": arguments}


def _analyze_payload(result: GameAnalysis, digits: int) -> s.AnalyzePayload:
    spec = result.spec
    times = [
        s.StateTime(state=state.text, expected_steps=fraction_out(result.absorption_times[state], digits))
        for state in all_patterns(spec.length)
    ]
    return s.AnalyzePayload(
        s1=spec.s1.text,
        s2=spec.s2.text,
        bias=fraction_out(spec.coin.p_heads, digits),
        win_s1=fraction_out(result.win_s1, digits),
        win_s2=fraction_out(result.win_s2, digits),
        absorption_times=times,
        expected_flips=fraction_out(result.expected_flips, digits),
    )


def build_analyze_document(spec: GameSpec, digits: int) -> s.AnalyzeDocument:
    result = full_analysis(spec)
    arguments = {
        "s1": spec.s1.text,
        "s2": spec.s2.text,
        "bias": str(spec.coin.p_heads),
        "digits": digits,
    }
    return s.AnalyzeDocument(
        **_meta("analyze", arguments), payload=_analyze_payload(result, digits)
    )


def build_absorption_table_document(digits: int) -> s.AbsorptionTableDocument:
    columns = [p.text for p in all_patterns(3)]
    rows = []
    for spec in penney_pairings():
        result = full_analysis(spec)
        rows.append(
            s.AbsorptionRow(
                s1=spec.s1.text,
                s2=spec.s2.text,
                times=[
                    fraction_out(result.absorption_times[state], digits)
                    for state in all_patterns(3)
                ],
            )
        )
    return s.AbsorptionTableDocument(
        **_meta("tables", {"which": "absorption", "digits": digits}),
        payload=s.AbsorptionTablePayload(columns=columns, rows=rows),
    )


def _game_length_entries(digits: int) -> list[s.GameLengthEntry]:
    entries = []
    for spec in penney_pairings():
        result = full_analysis(spec)
        entries.append(
            s.GameLengthEntry(
                s1=spec.s1.text,
                s2=spec.s2.text,
                expected_flips=fraction_out(result.expected_flips, digits),
            )
        )
    return entries


def build_game_length_table_document(digits: int) -> s.GameLengthTableDocument:
    return s.GameLengthTableDocument(
        **_meta("tables", {"which": "game-length", "digits": digits}),
        payload=s.GameLengthTablePayload(entries=_game_length_entries(digits)),
    )


def build_respond_document(pattern: Pattern, digits: int) -> s.RespondDocument:
    response = penney_response(pattern)
    exhaustive = best_response(pattern, CoinSpec.fair())
    probability = full_analysis(GameSpec(s1=pattern, s2=response, coin=CoinSpec.fair())).win_s2
    payload = s.RespondPayload(
        pattern=pattern.text,
        penney_response=response.text,
        win_probability=fraction_out(probability, digits),
        best_response=exhaustive.response.text,
        best_response_ties=[t.text for t in exhaustive.ties],
    )
    return s.RespondDocument(
        **_meta("respond", {"pattern": pattern.text, "digits": digits}), payload=payload
    )


def _optimality_section(report: OptimalityReport, digits: int) -> s.OptimalitySection:
    return s.OptimalitySection(
        passed=report.passed,
        cases=[
            s.OptimalityCaseOut(
                pattern=c.pattern.text,
                response=c.response.text,
                win_probability=fraction_out(c.win_probability, digits),
                optimal=c.optimal,
                argmax_response=c.argmax_response.text,
                argmax_agrees=c.argmax_agrees,
            )
            for c in report.cases
        ],
    )


def _nontransitivity_section(report: NontransitivityReport, digits: int) -> s.NontransitivitySection:
    return s.NontransitivitySection(
        passed=report.passed,
        cycle=[p.text for p in report.cycle.nodes],
        edges=[
            s.CycleEdgeOut(
                loser=e.loser.text,
                winner=e.winner.text,
                probability=fraction_out(e.probability, digits),
                reverse_probability=fraction_out(e.reverse_probability, digits),
            )
            for e in report.cycle.edges
        ],
    )


def _oracle_section(report: OracleReport, digits: int) -> s.OracleSection:
    return s.OracleSection(
        passed=report.passed,
        horizon=report.horizon,
        checks=[
            s.OracleCheckOut(
                s1=c.spec.s1.text,
                s2=c.spec.s2.text,
                win_s1=fraction_out(c.win_s1, digits),
                expected_flips=fraction_out(c.expected_flips, digits),
                win_in_bracket=c.win_in_bracket,
                flips_in_bracket=c.flips_in_bracket,
                win_width=fraction_out(c.win_width, digits),
                flips_width=fraction_out(c.flips_width, digits),
            )
            for c in report.checks
        ],
    )


def build_verify_document(suite: str, horizon: int, digits: int) -> s.VerifyDocument:
    optimality = nontransitivity = oracle = None
    if suite in ("optimality", "all"):
        optimality = _optimality_section(run_optimality_suite(), digits)
    if suite in ("nontransitivity", "all"):
        nontransitivity = _nontransitivity_section(run_nontransitivity_suite(), digits)
    if suite in ("oracle", "all"):
        oracle = _oracle_section(run_oracle_suite(horizon), digits)
    passed = all(
        section.passed for section in (optimality, nontransitivity, oracle) if section is not None
    )
    payload = s.VerifyPayload(
        suite=suite,
        passed=passed,
        optimality=optimality,
        nontransitivity=nontransitivity,
        oracle=oracle,
    )
    arguments = {"suite": suite, "horizon": horizon, "digits": digits}
    return s.VerifyDocument(**_meta("verify", arguments), payload=payload)


def build_simulate_document(config: SimConfig, digits: int) -> s.SimulateDocument:
    result: SimResult = simulate(config)
    exact = full_analysis(config.spec)

    win_rate = result.wins_s1 / config.trials
    z_win = None
    if result.stderr_win_s1 > 0:
        z_win = (win_rate - float(exact.win_s1)) / result.stderr_win_s1
    z_mean = None
    if result.mean_flips is not None and result.stderr_mean_flips:
        z_mean = (result.mean_flips - float(exact.expected_flips)) / result.stderr_mean_flips

    payload = s.SimulatePayload(
        s1=config.spec.s1.text,
        s2=config.spec.s2.text,
        bias=fraction_out(config.spec.coin.p_heads, digits),
        trials=config.trials,
        seed=config.seed,
        max_flips_per_trick=config.max_flips_per_trick,
        wins_s1=result.wins_s1,
        wins_s2=result.wins_s2,
        truncated=result.truncated,
        win_rate_s1=win_rate,
        mean_flips=result.mean_flips,
        stderr_win_s1=result.stderr_win_s1,
        stderr_mean_flips=result.stderr_mean_flips,
        analytic_win_s1=fraction_out(exact.win_s1, digits),
        analytic_expected_flips=fraction_out(exact.expected_flips, digits),
        z_win_s1=z_win,
        z_mean_flips=z_mean,
    )
    arguments = {
        "s1": config.spec.s1.text,
        "s2": config.spec.s2.text,
        "bias": str(config.spec.coin.p_heads),
        "trials": config.trials,
        "seed": config.seed,
        "max_flips": config.max_flips_per_trick,
        "digits": digits,
    }
    return s.SimulateDocument(**_meta("simulate", arguments), payload=payload)


def build_overall_document(digits: int) -> s.OverallDocument:
    payload = s.OverallPayload(
        expected_flips=fraction_out(overall_expected_length(), digits),
        games=_game_length_entries(digits),
    )
    return s.OverallDocument(**_meta("overall", {"digits": digits}), payload=payload)
