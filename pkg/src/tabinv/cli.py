from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, NoReturn

import typer

from .bijections import phi1_general, phi2_general, phi2_rect
from .claims import CLAIMS, ClaimRequest, reproduce_appendix, run_claim
from .enumeration import DEFAULT_BUDGET, betti_numbers, fiber, inversion_distribution
from .errors import Error
from .formulas import (
    catalan,
    compositions,
    m_minus_1_count,
    m_minus_2_count,
    mahonian_row,
    tail_end_threshold,
    two_row_distribution,
)
from .models import BumpTrace, Partition, StairStepMove, Tableau
from .output import FORMATS, Format, render_betti, render_distribution, render_report
from .partition import (
    hook_lengths,
    max_inversions,
    parse_partition,
    stair_step_shapes,
    standard_count_hook,
    total_inverted_count,
)
from .result import Result
from .tableau import (
    format_tableau,
    inversions,
    is_row_standard,
    max_inversion_tableau,
    parse_tableau,
    standardize,
)

# request errors exit 2 like click's own usage errors; everything else exits 1
USAGE_CODES: frozenset[str] = frozenset({"parse", "usage", "domain"})


@dataclass(frozen=True, slots=True)
class RunConfig:
    workers: int
    budget: int
    format: Format
    out: Path | None
    verbose: bool


app: typer.Typer = typer.Typer(
    help="Enumerate inverted Young tableaux and check counting formulas against them."
)

_WORKERS = typer.Option(1, "--workers", envvar="TABINV_WORKERS", help="Enumeration processes.")
_BUDGET = typer.Option(
    DEFAULT_BUDGET, "--budget", envvar="TABINV_BUDGET", help="Refuse shapes with more fillings."
)
_FORMAT = typer.Option("text", "--format", envvar="TABINV_FORMAT", help="text, json or csv.")
_OUT = typer.Option(None, "--out", envvar="TABINV_OUT", help="Write output to this file.")
_VERBOSE = typer.Option(False, "--verbose", envvar="TABINV_VERBOSE", help="Progress on stderr.")


def _config(
    workers: int, budget: int, fmt: str, out: Path | None, verbose: bool
) -> RunConfig:
    if workers < 1:
        raise typer.BadParameter(f"workers must be at least 1, got {workers}")
    if budget < 1:
        raise typer.BadParameter(f"budget must be at least 1, got {budget}")
    for known in FORMATS:
        if fmt == known:
            return RunConfig(workers=workers, budget=budget, format=known, out=out, verbose=verbose)
    raise typer.BadParameter(f"format must be one of {', '.join(FORMATS)}, got {fmt}")


def _fail(error: Error) -> NoReturn:
    typer.echo(error.line())
    raise typer.Exit(2 if error.code in USAGE_CODES else 1)


def _progress(cfg: RunConfig, message: str) -> None:
    if cfg.verbose:
        typer.echo(message, err=True)


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        typer.echo(text)
        return
    try:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        cfg.out.write_text(text + "\n", encoding="utf-8")
    except OSError as exc:
        _fail(Error(code="emit", message=str(exc), subject=str(cfg.out)))
    _progress(cfg, f"wrote {cfg.out}")


def _shape(text: str) -> Partition:
    parsed: Result[Partition, Error] = parse_partition(text)
    if parsed.value is None:
        assert parsed.error is not None
        raise typer.BadParameter(parsed.error.line())
    return parsed.value


def _tableau(text: str) -> Tableau:
    parsed: Result[Tableau, Error] = parse_tableau(text)
    if parsed.value is None:
        assert parsed.error is not None
        raise typer.BadParameter(parsed.error.line())
    return parsed.value


def _rendered(result: Result[str, Error]) -> str:
    if result.value is None:
        assert result.error is not None
        _fail(result.error)
    return result.value


@app.command()
def count(
    shape: str,
    hooks: bool = typer.Option(False, "--hooks", help="Print the hook-length grid first."),
) -> None:
    """Number of standard Young tableaux of SHAPE (hook-length formula)."""
    p: Partition = _shape(shape)
    if hooks:
        for row in hook_lengths(p):
            typer.echo(" ".join(str(h) for h in row))
    typer.echo(str(standard_count_hook(p)))


@app.command()
def total(shape: str) -> None:
    """Number of row-standard (inverted) tableaux of SHAPE."""
    typer.echo(str(total_inverted_count(_shape(shape))))


@app.command("max")
def max_(shape: str) -> None:
    """Maximum number of inversions over fillings of SHAPE."""
    typer.echo(str(max_inversions(_shape(shape))))


@app.command()
def maxtab(shape: str) -> None:
    """The unique tableau of SHAPE with the maximum number of inversions."""
    typer.echo(format_tableau(max_inversion_tableau(_shape(shape)), inline=False))


@app.command()
def stairsteps(shape: str) -> None:
    """Stair-step moves of SHAPE and the shapes they produce."""
    p: Partition = _shape(shape)
    for move, moved in stair_step_shapes(p):
        eps: str = ",".join(f"{e:+d}" if e else "0" for e in move.epsilon(p.length))
        typer.echo(f"E=({eps}) {moved}")


@app.command()
def distribution(
    shape: str,
    workers: int = _WORKERS,
    budget: int = _BUDGET,
    fmt: str = _FORMAT,
    out: Path | None = _OUT,
    verbose: bool = _VERBOSE,
) -> None:
    """Count fillings of SHAPE by number of inversions."""
    cfg: RunConfig = _config(workers, budget, fmt, out, verbose)
    p: Partition = _shape(shape)
    _progress(cfg, f"enumerating {total_inverted_count(p)} fillings of {p} on {cfg.workers} worker(s)")
    dist = inversion_distribution(p, cfg.workers, cfg.budget)
    if dist.value is None:
        assert dist.error is not None
        _fail(dist.error)
    _emit(cfg, _rendered(render_distribution(dist.value, cfg.format)))


@app.command()
def betti(
    shape: str,
    workers: int = _WORKERS,
    budget: int = _BUDGET,
    fmt: str = _FORMAT,
    out: Path | None = _OUT,
    verbose: bool = _VERBOSE,
) -> None:
    """Betti numbers of the Springer fiber of SHAPE, b_0 first."""
    cfg: RunConfig = _config(workers, budget, fmt, out, verbose)
    p: Partition = _shape(shape)
    numbers = betti_numbers(p, cfg.workers, cfg.budget)
    if numbers.value is None:
        assert numbers.error is not None
        _fail(numbers.error)
    _emit(cfg, _rendered(render_betti(p, numbers.value, cfg.format)))


@app.command("standardize")
def standardize_(tableau: str) -> None:
    """Sort every column of a row-standard TABLEAU."""
    t: Tableau = _tableau(tableau)
    if not is_row_standard(t):
        _fail(
            Error(
                code="input-not-standard",
                message="rows must increase left to right",
                subject=format_tableau(t),
            )
        )
    typer.echo(format_tableau(standardize(t)))


@app.command("inversions")
def inversions_(tableau: str) -> None:
    """List the inversion pairs of a row-standard TABLEAU."""
    t: Tableau = _tableau(tableau)
    if not is_row_standard(t):
        _fail(
            Error(
                code="input-not-standard",
                message="rows must increase left to right",
                subject=format_tableau(t),
            )
        )
    pairs = inversions(t)
    for pair in pairs:
        typer.echo(f"column {pair.column}: ({pair.small},{pair.large})")
    typer.echo(f"n_inv={len(pairs)}")


@app.command("fiber")
def fiber_(tableau: str, budget: int = _BUDGET, verbose: bool = _VERBOSE) -> None:
    """Every row-standard tableau whose standardization is the standard TABLEAU."""
    if budget < 1:
        raise typer.BadParameter(f"budget must be at least 1, got {budget}")
    found = fiber(_tableau(tableau), budget)
    if found.value is None:
        assert found.error is not None
        _fail(found.error)
    for member in found.value:
        typer.echo(format_tableau(member))
    if verbose:
        typer.echo(f"{len(found.value)} tableaux", err=True)


def _trace_lines(trace: BumpTrace) -> Iterator[str]:
    pair = trace.inversion
    yield f"inversion: column {pair.column} ({pair.small},{pair.large}), rows {trace.flip_row}/{trace.flip_row + 1}"
    for step in trace.bumps:
        landed: str = "new box" if step.outgoing is None else f"bumps {step.outgoing}"
        yield f"bump {step.incoming} -> {step.cell}: {landed}"
    for slide in trace.slides:
        yield f"slide {slide.value} {slide.source} -> {slide.target}"
    yield f"added {trace.added}, removed {trace.removed}"


@app.command("map")
def map_(
    tableau: str,
    direction: str = typer.Option("phi1", "--direction", help="phi1 or phi2."),
    shape: str | None = typer.Option(
        None, "--shape", help="phi2 only: the original shape (defaults to the rectangle)."
    ),
) -> None:
    """Apply the 1-inverted/stair-step bijection or its inverse to TABLEAU."""
    t: Tableau = _tableau(tableau)
    image: Tableau
    trace: BumpTrace
    if direction == "phi1":
        forward = phi1_general(t)
        if forward.value is None:
            assert forward.error is not None
            _fail(forward.error)
        move, image, trace = forward.value
        typer.echo(format_tableau(image))
        typer.echo(f"shape: {image.shape} (row {move.source_row} -> row {move.target_row})")
    elif direction == "phi2":
        backward: Result[tuple[Tableau, BumpTrace], Error]
        if shape is None:
            backward = phi2_rect(t)
        else:
            original: Partition = _shape(shape)
            moves: list[StairStepMove] = [
                mv for mv, moved in stair_step_shapes(original) if moved == t.shape
            ]
            if not moves:
                _fail(
                    Error(
                        code="shape-mismatch",
                        message=f"{t.shape} is not a stair-step shape of {original}",
                        subject=format_tableau(t),
                    )
                )
            backward = phi2_general(moves[0], t, original)
        if backward.value is None:
            assert backward.error is not None
            _fail(backward.error)
        image, trace = backward.value
        typer.echo(format_tableau(image))
        typer.echo(f"shape: {image.shape}")
    else:
        raise typer.BadParameter(f"direction must be phi1 or phi2, got {direction}")
    found = inversions(image)
    typer.echo(
        "inversions: "
        + (" ".join(f"{p.column}:({p.small},{p.large})" for p in found) if found else "none")
    )
    for line in _trace_lines(trace):
        typer.echo(line)


FORMULAS: dict[str, tuple[str, ...]] = {
    "catalan": ("N",),
    "mahonian": ("M-1",),
    "compositions": ("N", "K"),
    "two-row": ("N",),
    "m1": ("M", "N"),
    "m2": ("M", "N"),
    "threshold": ("M", "N"),
}


def _formula_lines(name: str, args: tuple[int, ...]) -> Result[list[str], Error]:
    subject: str = " ".join([name, *(str(a) for a in args)])
    try:
        if name == "catalan":
            return Result.success([str(catalan(args[0]))])
        if name == "mahonian":
            return Result.success([" ".join(str(c) for c in mahonian_row(args[0]))])
        if name == "compositions":
            return Result.success(
                ["+".join(str(p) for p in c.parts) for c in compositions(args[0], args[1])]
            )
        if name == "two-row":
            if args[0] < 1:
                raise ValueError("two-row needs n >= 1")
            return Result.success([" ".join(str(c) for c in two_row_distribution(args[0]))])
        if name == "threshold":
            return Result.success([str(tail_end_threshold(args[0], args[1]))])
    except ValueError as exc:
        return Result.failure(Error(code="domain", message=str(exc), subject=subject))
    value: Result[int, Error] = (m_minus_1_count if name == "m1" else m_minus_2_count)(
        args[0], args[1]
    )
    if value.value is None:
        assert value.error is not None
        return Result.failure(value.error)
    return Result.success([str(value.value)])


@app.command()
def formula(
    name: str = typer.Argument(..., help=f"One of {', '.join(FORMULAS)}."),
    args: list[int] = typer.Argument(None, help="Integer parameters of the formula."),
) -> None:
    """Evaluate a closed-form count without enumerating anything."""
    params: tuple[str, ...] | None = FORMULAS.get(name)
    if params is None:
        _fail(Error(code="usage", message=f"known formulas: {', '.join(FORMULAS)}", subject=name))
    given: tuple[int, ...] = tuple(args or ())
    if len(given) != len(params):
        _fail(
            Error(
                code="usage",
                message=f"expects {' '.join(params)}",
                subject=" ".join([name, *(str(a) for a in given)]),
            )
        )
    lines: Result[list[str], Error] = _formula_lines(name, given)
    if lines.value is None:
        assert lines.error is not None
        _fail(lines.error)
    for line in lines.value:
        typer.echo(line)


@app.command()
def verify(
    claim: str,
    shape: str | None = typer.Option(None, "--shape", help="Shape for shape claims."),
    max_n: int | None = typer.Option(None, "--max-n", help="Sweep every instance up to this size."),
    m: int | None = typer.Option(None, "--m", help="Rows of the rectangle."),
    n: int | None = typer.Option(None, "--n", help="Columns of the rectangle."),
    i: int | None = typer.Option(None, "--i", help="Inversion count (lemma)."),
    workers: int = _WORKERS,
    budget: int = _BUDGET,
    out: Path | None = _OUT,
    verbose: bool = _VERBOSE,
) -> None:
    """Check CLAIM against enumeration and print a JSON evidence report."""
    cfg: RunConfig = _config(workers, budget, "json", out, verbose)
    if claim not in CLAIMS:
        raise typer.BadParameter(f"claim must be one of {', '.join(CLAIMS)}, got {claim}")
    request: ClaimRequest = ClaimRequest(
        claim=claim,
        shape=_shape(shape) if shape is not None else None,
        max_n=max_n,
        m=m,
        n=n,
        i=i,
    )
    _progress(cfg, f"verifying {claim}")
    outcome = run_claim(request, cfg.workers, cfg.budget)
    if outcome.value is None:
        assert outcome.error is not None
        _fail(outcome.error)
    report = outcome.value
    _emit(cfg, _rendered(render_report(report)))
    _progress(cfg, f"{claim}: {report.status}")
    if report.status == "fail":
        raise typer.Exit(1)
    if report.status == "out-of-hypothesis":
        raise typer.Exit(2)


@app.command()
def appendix(
    table: int | None = typer.Option(
        None, "--table", help="Only the table of the 3 x TABLE rectangle (2 to 5)."
    ),
    workers: int = _WORKERS,
    budget: int = _BUDGET,
    fmt: str = _FORMAT,
    out: Path | None = _OUT,
    verbose: bool = _VERBOSE,
) -> None:
    """Regenerate the rectangle/stair-step tables and diff them against the goldens."""
    cfg: RunConfig = _config(workers, budget, fmt, out, verbose)
    _progress(cfg, "regenerating appendix tables")
    outcome = reproduce_appendix(cfg.format, cfg.workers, cfg.budget, table)
    if outcome.value is None:
        assert outcome.error is not None
        _fail(outcome.error)
    _emit(cfg, outcome.value.rendered)
    if not outcome.value.matched:
        typer.echo(outcome.value.diff)
        typer.echo("mismatch:appendix:regenerated tables differ from the goldens")
        raise typer.Exit(1)


if __name__ == "__main__":
    app()
