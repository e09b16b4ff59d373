from pathlib import Path
from typing import Any

import typer
from pydantic import ValidationError

from .bench import render_bench_text, run_bench
from .config import RunConfig, render_json, write_json
from .errors import EXIT_PRECISION_EXHAUSTED, EXIT_USAGE, PrecisionLossError
from .expansion import delta_expansion
from .verification import (
    DEFAULT_COMBINATIONS,
    builtin_points,
    evaluate_point,
    run_verification_suite,
    suite_exit_code,
    summarize,
)

app = typer.Typer(help="u-expansions of the rank-r Drinfeld discriminant over F_q[t]")

STATUS_PREFIX = "[drinfeld-delta]"


def _status(message: str) -> None:
    typer.echo(f"{STATUS_PREFIX} {message}", err=True)


def _config(command: str, **options: Any) -> RunConfig:
    try:
        return RunConfig(command=command, **{key: value for key, value in options.items() if value is not None})
    except ValidationError as exc:
        for error in exc.errors():
            field = ".".join(str(part) for part in error["loc"])
            _status(f"invalid --{field}: {error['msg']}")
        raise typer.Exit(code=EXIT_USAGE) from exc


def _emit(config: RunConfig, payload: Any, text: str | None = None) -> None:
    rendered = text if config.format == "text" and text is not None else render_json(payload)
    if config.out is not None:
        if config.format == "json":
            write_json(config.out, payload)
        else:
            config.out.parent.mkdir(parents=True, exist_ok=True)
            config.out.write_text(rendered, encoding="utf-8")
        _status(f"wrote {config.out}")
        return
    typer.echo(rendered, nl=False)


@app.command()
def expand(
    q: int | None = typer.Option(None, "--q", help="Field order (prime power)"),
    r: int | None = typer.Option(None, "--r", help="Rank r >= 2"),
    N: int | None = typer.Option(None, "--N", help="u-adic truncation order"),
    mode: str | None = typer.Option(None, "--mode", help="monic or full"),
    D: int | None = typer.Option(None, "--D", help="Override the degree bound"),
    format: str | None = typer.Option(None, "--format", help="json or text"),
    out: Path | None = typer.Option(None, "--out", dir_okay=False),
) -> None:
    """Expand Delta as a power series in u."""
    config = _config("expand", q=q, r=r, N=N, mode=mode, D=D, format=format, out=out)
    try:
        result = delta_expansion(config.q, config.r, config.N, config.mode, config.D, status_callback=_status)
    except ValueError as exc:
        _status(str(exc))
        raise typer.Exit(code=EXIT_USAGE) from exc
    _status(f"D={result.degree} factors={result.factor_count}")
    _emit(config, result.to_document().model_dump(mode="json"), result.render_text())


@app.command()
def verify(
    q: int | None = typer.Option(None, "--q", help="Restrict the suite to this field order"),
    r: int | None = typer.Option(None, "--r", help="Restrict the suite to this rank"),
    N: int | None = typer.Option(None, "--N"),
    B: int | None = typer.Option(None, "--B", help="Lattice enumeration bound"),
    P: int | None = typer.Option(None, "--P", help="Series precision in s-digits"),
    D: int | None = typer.Option(None, "--D"),
    seed: int | None = typer.Option(None, "--seed"),
    format: str | None = typer.Option(None, "--format"),
    out: Path | None = typer.Option(None, "--out", dir_okay=False),
) -> None:
    """Check the product expansion against the lattice definition of Delta."""
    config = _config("verify", q=q, r=r, N=N, B=B, P=P, D=D, seed=seed, format=format, out=out)
    combinations = [
        (cq, cr)
        for cq, cr in DEFAULT_COMBINATIONS
        if (q is None or cq == config.q) and (r is None or cr == config.r)
    ]
    if not combinations:
        if not builtin_points(config.q, config.r):
            _status(f"no built-in points for q={config.q} r={config.r}")
            raise typer.Exit(code=EXIT_USAGE)
        combinations = [(config.q, config.r)]
    results = run_verification_suite(config, combinations, status_callback=_status)
    summary = summarize(results)
    text = "".join(
        f"{item['status']:<20} {item['params'].get('point')} {item['case']} digits={item['digits']}\n"
        for item in results
    )
    _emit(config, results, text)
    _status(f"{summary['passed_cases']}/{summary['total_cases']} cases passed")
    code = suite_exit_code(results)
    if code:
        raise typer.Exit(code=code)


@app.command("eval")
def eval_point(
    q: int | None = typer.Option(None, "--q"),
    r: int | None = typer.Option(None, "--r"),
    N: int | None = typer.Option(None, "--N"),
    B: int | None = typer.Option(None, "--B"),
    P: int | None = typer.Option(None, "--P"),
    D: int | None = typer.Option(None, "--D"),
    seed: int | None = typer.Option(None, "--seed", help="Selects the built-in point"),
    out: Path | None = typer.Option(None, "--out", dir_okay=False),
) -> None:
    """Evaluate Delta at a built-in point through the expansion and directly."""
    config = _config("eval", q=q, r=r, N=N, B=B, P=P, D=D, seed=seed, out=out)
    points = builtin_points(config.q, config.r)
    if not points:
        _status(f"no built-in points for q={config.q} r={config.r}")
        raise typer.Exit(code=EXIT_USAGE)
    spec = points[config.seed % len(points)]
    try:
        payload = evaluate_point(spec, config)
    except PrecisionLossError as exc:
        _status(str(exc))
        raise typer.Exit(code=EXIT_PRECISION_EXHAUSTED) from exc
    _emit(config, payload)
    code = suite_exit_code([payload["comparison"]])
    if code:
        raise typer.Exit(code=code)


@app.command()
def bench(
    q: int | None = typer.Option(None, "--q"),
    r: int | None = typer.Option(None, "--r"),
    N: int | None = typer.Option(None, "--N"),
    mode: str | None = typer.Option(None, "--mode"),
    B: int | None = typer.Option(None, "--B"),
    P: int | None = typer.Option(None, "--P"),
    D: int | None = typer.Option(None, "--D"),
    seed: int | None = typer.Option(None, "--seed"),
    format: str | None = typer.Option(None, "--format"),
    out: Path | None = typer.Option(None, "--out", dir_okay=False),
) -> None:
    """Time charp_pow against naive powering, and the expansion against the direct product."""
    config = _config("bench", q=q, r=r, N=N, mode=mode, B=B, P=P, D=D, seed=seed, format=format, out=out)
    try:
        payload = run_bench(config, status_callback=_status)
    except PrecisionLossError as exc:
        _status(str(exc))
        raise typer.Exit(code=EXIT_PRECISION_EXHAUSTED) from exc
    _emit(config, payload, render_bench_text(payload))
