"""Command-line front end; a thin client over the HTTP service.

Commands call the service (in-process by default, remote with --url), then
render the returned document as text, canonical JSON, or CSV. Exit codes:
0 success, 1 verification failure or internal error, 2 usage or game-spec
error.
"""
from __future__ import annotations

import csv
import io
import json
import sys

import click

from .client import ServiceClient, ServiceUsageError
from .errors import PenneyError

_FORMATS = ("text", "json", "csv")


def render_json(doc: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent. Re-rendering parsed output is byte-stable."""
    return json.dumps(doc, indent=2, sort_keys=True)


def _fraction_text(f: dict) -> str:
    base = str(f["num"]) if f["den"] == 1 else f"{f['num']}/{f['den']}"
    return f"{base} ({f['approx']})"


def _fraction_bare(f: dict) -> str:
    return str(f["num"]) if f["den"] == 1 else f"{f['num']}/{f['den']}"


def _mixed_number(f: dict) -> str:
    """Mixed-number form used by the absorption table, e.g. 10/3 -> '3 1/3'."""
    num, den = f["num"], f["den"]
    if den == 1:
        return str(num)
    whole, rem = divmod(num, den)
    if whole == 0:
        return f"{num}/{den}"
    return f"{whole} {rem}/{den}"


def _grid(rows: list[list[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    return "\n".join(lines) + "\n"


def _csv_text(rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


# ------------------------------------------------------------- renderers

def _analyze_text(doc: dict) -> str:
    p = doc["payload"]
    out = [
        f"game: {p['s1']} vs {p['s2']}  (bias {_fraction_bare(p['bias'])})",
        f"win probability {p['s1']}: {_fraction_text(p['win_s1'])}",
        f"win probability {p['s2']}: {_fraction_text(p['win_s2'])}",
        f"expected flips: {_fraction_text(p['expected_flips'])}",
        "expected steps to absorption by opening window:",
    ]
    states = [t["state"] for t in p["absorption_times"]]
    values = [_mixed_number(t["expected_steps"]) for t in p["absorption_times"]]
    return "\n".join(out) + "\n" + _grid([states, values])


def _analyze_csv(doc: dict) -> str:
    p = doc["payload"]
    rows = [["quantity", "num", "den", "approx"]]
    for key in ("win_s1", "win_s2", "expected_flips"):
        f = p[key]
        rows.append([key, f["num"], f["den"], f["approx"]])
    for t in p["absorption_times"]:
        f = t["expected_steps"]
        rows.append([f"absorption_{t['state']}", f["num"], f["den"], f["approx"]])
    return _csv_text(rows)


def _absorption_text(doc: dict) -> str:
    p = doc["payload"]
    header = ["game"] + p["columns"]
    body = [
        [f"({row['s1']}, {row['s2']})"] + [_mixed_number(f) for f in row["times"]]
        for row in p["rows"]
    ]
    title = "expected steps to absorption by opening window (fair coin, optimal response)\n"
    return title + _grid([header] + body)


def _absorption_csv(doc: dict) -> str:
    p = doc["payload"]
    rows = [["s1", "s2"] + p["columns"]]
    for row in p["rows"]:
        rows.append([row["s1"], row["s2"]] + [_fraction_bare(f) for f in row["times"]])
    return _csv_text(rows)


def _game_length_text(doc: dict) -> str:
    p = doc["payload"]
    out = ["expected flips per game (fair coin, optimal response)"]
    for e in p["entries"]:
        out.append(f"({e['s1']}, {e['s2']}): {_fraction_text(e['expected_flips'])}")
    return "\n".join(out) + "\n"


def _game_length_csv(doc: dict) -> str:
    rows = [["s1", "s2", "num", "den", "approx"]]
    for e in doc["payload"]["entries"]:
        f = e["expected_flips"]
        rows.append([e["s1"], e["s2"], f["num"], f["den"], f["approx"]])
    return _csv_text(rows)


def _respond_text(doc: dict) -> str:
    p = doc["payload"]
    ties = p["best_response_ties"]
    tie_note = "" if len(ties) <= 1 else f"  (ties: {', '.join(ties)})"
    return (
        f"pattern: {p['pattern']}\n"
        f"response: {p['penney_response']}\n"
        f"win probability: {_fraction_text(p['win_probability'])}\n"
        f"exhaustive best response: {p['best_response']}{tie_note}\n"
    )


def _respond_csv(doc: dict) -> str:
    p = doc["payload"]
    f = p["win_probability"]
    rows = [
        ["pattern", "response", "win_num", "win_den", "win_approx", "best_response"],
        [p["pattern"], p["penney_response"], f["num"], f["den"], f["approx"], p["best_response"]],
    ]
    return _csv_text(rows)


def _verify_text(doc: dict) -> str:
    p = doc["payload"]
    out: list[str] = []
    if p.get("optimality"):
        section = p["optimality"]
        out.append(f"optimality: {'PASS' if section['passed'] else 'FAIL'}")
        for c in section["cases"]:
            flags = f"optimal={'yes' if c['optimal'] else 'NO'} argmax={c['argmax_response']}"
            out.append(
                f"  {c['pattern']} -> {c['response']}  "
                f"{_fraction_text(c['win_probability'])}  {flags}"
            )
    if p.get("nontransitivity"):
        section = p["nontransitivity"]
        out.append(f"nontransitivity: {'PASS' if section['passed'] else 'FAIL'}")
        out.append("  cycle: " + " -> ".join(section["cycle"]))
        for e in section["edges"]:
            out.append(
                f"  {e['winner']} beats {e['loser']}: {_fraction_text(e['probability'])}"
                f"  (reverse {_fraction_bare(e['reverse_probability'])})"
            )
    if p.get("oracle"):
        section = p["oracle"]
        good = sum(1 for c in section["checks"] if c["win_in_bracket"] and c["flips_in_bracket"])
        out.append(
            f"oracle: {'PASS' if section['passed'] else 'FAIL'} "
            f"(horizon {section['horizon']}, {good}/{len(section['checks'])} brackets contain exact values)"
        )
        for c in section["checks"]:
            if not (c["win_in_bracket"] and c["flips_in_bracket"]):
                out.append(f"  FAIL {c['s1']} vs {c['s2']}")
    out.append(f"overall: {'PASS' if p['passed'] else 'FAIL'}")
    return "\n".join(out) + "\n"


def _verify_csv(doc: dict) -> str:
    p = doc["payload"]
    rows = [["section", "item", "passed", "detail"]]
    if p.get("optimality"):
        for c in p["optimality"]["cases"]:
            rows.append(
                [
                    "optimality",
                    f"{c['pattern']}->{c['response']}",
                    c["optimal"] and c["argmax_agrees"],
                    _fraction_bare(c["win_probability"]),
                ]
            )
    if p.get("nontransitivity"):
        for e in p["nontransitivity"]["edges"]:
            rows.append(
                [
                    "nontransitivity",
                    f"{e['winner']} beats {e['loser']}",
                    True,
                    _fraction_bare(e["probability"]),
                ]
            )
    if p.get("oracle"):
        section = p["oracle"]
        for c in section["checks"]:
            rows.append(
                [
                    "oracle",
                    f"{c['s1']} vs {c['s2']}",
                    c["win_in_bracket"] and c["flips_in_bracket"],
                    _fraction_bare(c["win_s1"]),
                ]
            )
    rows.append(["summary", doc["payload"]["suite"], p["passed"], ""])
    return _csv_text(rows)


def _simulate_text(doc: dict) -> str:
    p = doc["payload"]
    out = [
        f"game: {p['s1']} vs {p['s2']}  (bias {_fraction_bare(p['bias'])})",
        f"trials: {p['trials']}  seed: {p['seed']}  max flips per trick: {p['max_flips_per_trick']}",
        f"wins {p['s1']}: {p['wins_s1']}  (rate {p['win_rate_s1']:.6f}, stderr {p['stderr_win_s1']:.6f})",
        f"wins {p['s2']}: {p['wins_s2']}",
        f"truncated: {p['truncated']}",
    ]
    z_win = p["z_win_s1"]
    z_note = f"  z = {z_win:+.3f}" if z_win is not None else ""
    out.append(f"analytic win {p['s1']}: {_fraction_text(p['analytic_win_s1'])}{z_note}")
    if p["mean_flips"] is not None:
        stderr = p["stderr_mean_flips"]
        spread = f" (stderr {stderr:.6f})" if stderr is not None else ""
        out.append(f"mean flips: {p['mean_flips']:.6f}{spread}")
    z_mean = p["z_mean_flips"]
    z_note = f"  z = {z_mean:+.3f}" if z_mean is not None else ""
    out.append(f"analytic expected flips: {_fraction_text(p['analytic_expected_flips'])}{z_note}")
    return "\n".join(out) + "\n"


def _simulate_csv(doc: dict) -> str:
    p = doc["payload"]
    rows = [
        [
            "s1", "s2", "trials", "seed", "wins_s1", "wins_s2", "truncated",
            "win_rate_s1", "mean_flips", "analytic_win_s1", "analytic_expected_flips",
            "z_win_s1", "z_mean_flips",
        ],
        [
            p["s1"], p["s2"], p["trials"], p["seed"], p["wins_s1"], p["wins_s2"],
            p["truncated"], p["win_rate_s1"],
            "" if p["mean_flips"] is None else p["mean_flips"],
            _fraction_bare(p["analytic_win_s1"]),
            _fraction_bare(p["analytic_expected_flips"]),
            "" if p["z_win_s1"] is None else p["z_win_s1"],
            "" if p["z_mean_flips"] is None else p["z_mean_flips"],
        ],
    ]
    return _csv_text(rows)


def _overall_text(doc: dict) -> str:
    p = doc["payload"]
    return (
        "overall expected flips (fair coin, optimal response): "
        f"{_fraction_text(p['expected_flips'])}\n"
    )


def _overall_csv(doc: dict) -> str:
    f = doc["payload"]["expected_flips"]
    return _csv_text([["num", "den", "approx"], [f["num"], f["den"], f["approx"]]])


# ------------------------------------------------------------- commands

def _emit(doc: dict, fmt: str, text_fn, csv_fn) -> None:
    if fmt == "json":
        click.echo(render_json(doc))
    elif fmt == "csv":
        click.echo(csv_fn(doc), nl=False)
    else:
        click.echo(text_fn(doc), nl=False)


def _call(action):
    try:
        return action()
    except ServiceUsageError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except PenneyError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


format_option = click.option(
    "--format", "fmt", type=click.Choice(_FORMATS), default="text", show_default=True
)
digits_option = click.option(
    "--digits", type=click.IntRange(0, 50), default=6, show_default=True,
    help="Decimal digits in approximation strings.",
)


@click.group()
@click.version_option(package_name="penney-solver")
@click.option(
    "--url", envvar="PENNEY_URL", default=None,
    help="Base URL of a running service; by default the app runs in-process.",
)
@click.pass_context
def main(ctx: click.Context, url: str | None) -> None:
    """Exact solver for Penney's pattern-matching coin game."""
    ctx.obj = ServiceClient(url)


@main.command()
@click.argument("p1")
@click.argument("p2")
@click.option("--bias", default="1/2", show_default=True,
              help="Heads probability as a decimal or fraction; converted exactly.")
@format_option
@digits_option
@click.pass_obj
def analyze(client: ServiceClient, p1: str, p2: str, bias: str, fmt: str, digits: int) -> None:
    """Win probabilities, absorption times, and expected flips for one game."""
    doc = _call(lambda: client.post(
        "/analyze", {"s1": p1, "s2": p2, "bias": bias, "digits": digits}
    ))
    _emit(doc, fmt, _analyze_text, _analyze_csv)


@main.command()
@click.argument("which", type=click.Choice(["absorption", "game-length"]))
@format_option
@digits_option
@click.pass_obj
def tables(client: ServiceClient, which: str, fmt: str, digits: int) -> None:
    """Reference tables for the eight fair-coin optimal-response games."""
    doc = _call(lambda: client.get(f"/tables/{which}", params={"digits": digits}))
    if which == "absorption":
        _emit(doc, fmt, _absorption_text, _absorption_csv)
    else:
        _emit(doc, fmt, _game_length_text, _game_length_csv)


@main.command()
@click.argument("p1")
@format_option
@digits_option
@click.pass_obj
def respond(client: ServiceClient, p1: str, fmt: str, digits: int) -> None:
    """Optimal response to a length-3 pattern, with exhaustive confirmation."""
    doc = _call(lambda: client.post("/respond", {"pattern": p1, "digits": digits}))
    _emit(doc, fmt, _respond_text, _respond_csv)


@main.command()
@click.argument(
    "suite",
    type=click.Choice(["optimality", "nontransitivity", "oracle", "all"]),
    default="all",
)
@click.option("--horizon", type=click.IntRange(min=3), default=120, show_default=True,
              help="Enumeration horizon for the oracle suite.")
@format_option
@digits_option
@click.pass_obj
def verify(client: ServiceClient, suite: str, horizon: int, fmt: str, digits: int) -> None:
    """Run a verification suite; exits 1 if any check fails."""
    doc = _call(lambda: client.post(
        "/verify", {"suite": suite, "horizon": horizon, "digits": digits}
    ))
    _emit(doc, fmt, _verify_text, _verify_csv)
    if not doc["payload"]["passed"]:
        sys.exit(1)


@main.command()
@click.argument("p1")
@click.argument("p2")
@click.option("--trials", type=click.IntRange(min=1), default=100_000, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=0, show_default=True)
@click.option("--bias", default="1/2", show_default=True)
@click.option("--max-flips", type=click.IntRange(min=1), default=10_000, show_default=True,
              help="Flip budget per trick; tricks that exceed it count as truncated.")
@format_option
@digits_option
@click.pass_obj
def simulate(client: ServiceClient, p1: str, p2: str, trials: int, seed: int, bias: str,
             max_flips: int, fmt: str, digits: int) -> None:
    """Seeded Monte Carlo tricks, reported against the analytic values."""
    doc = _call(lambda: client.post("/simulate", {
        "s1": p1, "s2": p2, "trials": trials, "seed": seed,
        "bias": bias, "max_flips": max_flips, "digits": digits,
    }))
    _emit(doc, fmt, _simulate_text, _simulate_csv)


@main.command()
@format_option
@digits_option
@click.pass_obj
def overall(client: ServiceClient, fmt: str, digits: int) -> None:
    """Average expected game length over the eight optimal-response games."""
    doc = _call(lambda: client.get("/overall", params={"digits": digits}))
    _emit(doc, fmt, _overall_text, _overall_csv)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("penney.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
