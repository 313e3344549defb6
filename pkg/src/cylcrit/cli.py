"""cylcrit CLI interface using typer."""

import contextlib
import logging
from collections.abc import Iterator
from enum import Enum, IntEnum
from importlib.metadata import version
from pathlib import Path

import numpy as np
import typer
from pydantic import ValidationError
from rich.logging import RichHandler

from cylcrit.canon import ConfigurationError, LineConfiguration, build_named, min_distance, pairwise_distance_matrix
from cylcrit.certify import (
    LQ2BVerdict,
    PositivityVerdict,
    ScaleGridError,
    active_pairs,
    check_lq2b_conditions,
    convex_dependencies,
    decay_probe,
    elimination_oracle_O6,
    jet_family,
    kernel_subspace,
    o6_decay_probe,
    o6_jet_family,
    restrict_form,
    revalidate,
    sample_unit_sphere,
    sylvester_scan,
    unlock_search,
    upsilon_ranks,
    write_decay_csv,
)
from cylcrit.certify.decay import random_directions
from cylcrit.chirality import triple_census
from cylcrit.context import RunOptions
from cylcrit.geom import GeometryError
from cylcrit.io import (
    ConfigParseError,
    dump_config,
    from_configuration,
    input_digest,
    parse_config,
    save_config,
    to_configuration,
)
from cylcrit.jets import (
    PerturbationParams,
    e_lift_matrix,
    finite_difference_jets,
    first_order_closed_form,
    local_frame_chart,
    octahedral_model,
    series_jets,
    upsilon_gram_matrices,
)
from cylcrit.settings import settings
from cylcrit.utils.console import create_console, render_error, render_table

app = typer.Typer(help="Rigidity certificates for configurations of lines tangent to the unit sphere.")

logger = logging.getLogger(__name__)

# Unlocking gains above this make a configuration a saddle candidate.
GAIN_THRESHOLD = 1e-9

SUMMARY_KEYS = ("directions", "fitted", "exponent_min", "exponent_median", "exponent_max", "c_d", "c_u")


class ExitCode(IntEnum):
    OK = 0
    INVALID_INPUT = 2
    INCONCLUSIVE = 3
    INTERNAL_ERROR = 4


class Precision(str, Enum):
    DOUBLE = "double"
    EXTENDED = "extended"


def version_callback(value: bool):
    """Handle --version flag."""
    if value:
        try:
            pkg_version = version("cylcrit")
        except Exception:
            pkg_version = "unknown"
        typer.echo(f"cylcrit {pkg_version}")
        raise typer.Exit()


@contextlib.contextmanager
def handle_errors(options: RunOptions) -> Iterator[None]:
    """Render errors and map them to exit codes."""
    try:
        yield
    except typer.Exit:
        raise
    except (ConfigParseError, ValidationError, ConfigurationError, GeometryError, ScaleGridError, OSError) as e:
        render_error(options.err_console, str(e))
        raise typer.Exit(ExitCode.INVALID_INPUT) from e
    except Exception as e:
        logger.exception("Unexpected error")
        render_error(options.err_console, f"internal error: {e}")
        raise typer.Exit(ExitCode.INTERNAL_ERROR) from e


def load_input(path: Path) -> tuple[LineConfiguration, str]:
    """The configuration in a file and the digest of its text."""
    text = path.read_text(encoding="utf-8")
    return to_configuration(parse_config(text)), input_digest(text)


@app.callback()
def main(
    ctx: typer.Context,
    seed: int | None = typer.Option(None, "--seed", help="Random seed (default from settings)"),
    budget: int | None = typer.Option(None, "--budget", min=1, help="Cell budget of the positivity certifier"),
    precision: Precision | None = typer.Option(None, "--precision", help="Floating-point format"),
    workers: int | None = typer.Option(None, "--workers", min=1, help="Threads evaluating subdivision cells"),
    out: Path | None = typer.Option(None, "--out", help="Write the report as .json or append it to .jsonl"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug output to stderr"),
    version: bool | None = typer.Option(
        None,
        "--version",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
):
    """Certify rigidity of tangent line configurations."""
    # Set up logging
    logging.basicConfig(
        level="DEBUG" if verbose else "WARNING",
        handlers=[RichHandler(console=create_console(stderr=True), show_path=False)],
        force=True,
    )
    ctx.obj = RunOptions(
        seed=settings.seed if seed is None else seed,
        budget=settings.certifier.budget if budget is None else budget,
        precision=(precision.value if precision else settings.precision),
        workers=workers or settings.certifier.workers,
        out=out,
    )


@app.command()
def build(
    ctx: typer.Context,
    name: str = typer.Argument(..., help="Configuration name: o6 or c6"),
    path: Path | None = typer.Argument(None, help="Output file (prints to stdout when omitted)"),
):
    """Write a canonical configuration file."""
    options: RunOptions = ctx.obj
    with handle_errors(options):
        cfg = build_named(name)
        if path is None:
            typer.echo(dump_config(from_configuration(cfg)), nl=False)
        else:
            save_config(cfg, path)
            typer.echo(f"Wrote {name} ({len(cfg)} lines, {len(cfg.parallel_pairs)} parallel pairs) to {path}")
        options.report("build", {"name": name, "lines": len(cfg), "parallel_pairs": len(cfg.parallel_pairs)})


@app.command()
def distances(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="Configuration file"),
    skip_parallel: bool = typer.Option(False, "--skip-parallel", help="Exclude declared parallel pairs (D~)"),
):
    """Pairwise distance table and the minimum distance."""
    options: RunOptions = ctx.obj
    with handle_errors(options):
        cfg, digest = load_input(config)
        matrix = pairwise_distance_matrix(cfg)
        md = min_distance(cfg, skip_parallel=skip_parallel)
        render_table(
            options.console,
            "Pairwise distances",
            ["", *cfg.labels],
            [[label, *(float(v) for v in row)] for label, row in zip(cfg.labels, matrix, strict=True)],
        )
        name = "D~" if skip_parallel else "D"
        pairs = [[cfg.labels[i], cfg.labels[j]] for i, j in md.pairs]
        typer.echo(f"{name} = {md.value:.17g} attained by {len(pairs)} pairs")
        options.report(
            "distances",
            {
                "labels": list(cfg.labels),
                "distances": matrix.tolist(),
                "skip_parallel": skip_parallel,
                "min_distance": md.value,
                "minimizing_pairs": pairs,
            },
            digest,
        )


def _max_deviation(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.abs(a - b).max(initial=0.0))


@app.command()
def jets(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="Configuration file"),
    samples: int = typer.Option(1, "--samples", min=1, help="Random deformation directions to compare"),
):
    """Jet tables along random deformations: closed form (O6), series and finite differences."""
    options: RunOptions = ctx.obj
    with handle_errors(options):
        cfg, digest = load_input(config)
        rng = np.random.default_rng(options.seed)
        chart = octahedral_model() if cfg.is_octahedral else local_frame_chart(cfg)
        worst = {"closed_vs_series": 0.0, "order1_vs_fd": 0.0, "order2_vs_fd": 0.0}
        flagged = 0
        tables = []
        rows = []
        for _ in range(samples):
            x = rng.uniform(-1, 1, chart.dimension)
            series = series_jets(cfg, x, chart)
            fd = finite_difference_jets(cfg, x, order=2, chart=chart, dtype=options.dtype)
            flagged += len(fd.flagged)
            worst["order1_vs_fd"] = max(
                worst["order1_vs_fd"], _max_deviation(series.first_order_vector(), fd.first_order_vector())
            )
            worst["order2_vs_fd"] = max(
                worst["order2_vs_fd"], _max_deviation(series.second_order_vector(), fd.second_order_vector())
            )
            closed = first_order_closed_form(PerturbationParams.from_vector(x)) if cfg.is_octahedral else None
            if closed is not None:
                worst["closed_vs_series"] = max(
                    worst["closed_vs_series"], _max_deviation(closed.first_order_vector(), series.first_order_vector())
                )
            tables.append({"x": x.tolist(), "series": series.to_dict(), "finite_difference": fd.to_dict()})
            rows = [
                [
                    f"{u},{v}",
                    closed.order1[(u, v)] if closed else "-",
                    series.order1[(u, v)],
                    fd.order1[(u, v)],
                    series.second_order_vector()[k],
                    fd.second_order_vector()[k],
                ]
                for k, (u, v) in enumerate(series.pairs)
            ]

        columns = ["pair", "closed", "series 1", "fd 1", "series 2", "fd 2"]
        render_table(options.console, "Jets of the last sample", columns, rows)
        deviations = [[name, value] for name, value in worst.items()]
        render_table(options.console, "Largest deviations", ["comparison", "max |diff|"], deviations)
        results = {"chart": chart.name, "max_deviation": worst, "flagged": flagged, "samples": tables}
        options.report("jets", results, digest)


def _certify_o6(cfg: LineConfiguration, options: RunOptions) -> dict:
    fam = o6_jet_family()
    basis = kernel_subspace(fam)
    deps = convex_dependencies(fam)
    lift = e_lift_matrix()
    grams = upsilon_gram_matrices()
    restricted = max(
        float(np.abs(restrict_form(fam, dep, lift).gram - 0.5 * g).max()) for dep, g in zip(deps, grams, strict=True)
    )
    report = check_lq2b_conditions(
        fam, budget=options.budget, seed=options.seed, workers=options.workers, dtype=options.dtype
    )
    revalidated = None
    if report.c_certificate is not None and report.c_certificate.verdict == PositivityVerdict.POSITIVELY_DEFINED:
        forms = [-restrict_form(fam, dep, basis).gram for dep in report.dependencies if dep is not None]
        revalidated = revalidate(report.c_certificate, forms, seed=options.seed + 1)
    rng = np.random.default_rng(options.seed)
    oracle = elimination_oracle_O6(sample_unit_sphere(settings.certifier.revalidation_samples, 6, rng))
    scan = sylvester_scan()

    md = min_distance(cfg, skip_parallel=True)
    render_table(
        options.console,
        "O6 certification",
        ["check", "value"],
        [
            ["D~(O6)", md.value],
            ["tied pairs", len(md.pairs)],
            ["rank of first differentials", fam.n_vars - basis.shape[1]],
            ["dim E", basis.shape[1]],
            ["convex dependencies", sum(d.convex for d in deps)],
            ["group forms vs polynomials", restricted],
            ["group form ranks", str(upsilon_ranks())],
            ["(A)", report.a_pass],
            ["(B)", report.b_pass],
            ["(C)", report.c_certificate.verdict.value if report.c_certificate else "-"],
            ["v", report.c_certificate.v_constant if report.c_certificate else "-"],
            ["revalidated", revalidated],
            ["sampling oracle agrees", oracle],
            ["positive (alpha, beta) on scan", scan.n_positive],
        ],
    )
    return {
        "min_distance": md.value,
        "tied_pairs": len(md.pairs),
        "e_dimension": basis.shape[1],
        "dependencies": [d.to_dict() for d in deps],
        "upsilon_grams": [g.tolist() for g in grams],
        "upsilon_ranks": list(upsilon_ranks()),
        "restricted_form_deviation": restricted,
        "lq2b": report.to_dict(),
        "revalidated": revalidated,
        "elimination_oracle": oracle,
        "sylvester_scan": scan.to_dict(),
        "verdict": report.verdict.value,
    }


def _certify_generic(cfg: LineConfiguration, options: RunOptions) -> dict:
    unlock = unlock_search(cfg, seed=options.seed)
    results: dict = {"unlock_search": unlock.to_dict()}
    md = min_distance(cfg)
    threshold = settings.geometry.parallel_threshold
    parallel_active = any(abs(float(cfg.lines[i].xi @ cfg.lines[j].xi)) >= 1 - threshold for i, j in md.pairs)
    rows: list[list] = [["D", md.value], ["tied pairs", len(md.pairs)], ["best unlocking gain", unlock.best_gain]]
    if unlock.best_gain > GAIN_THRESHOLD:
        verdict = "saddle_candidate"
    elif parallel_active:
        verdict = "undetermined"
        results["note"] = "active parallel pairs have no smooth jets"
    else:
        chart = local_frame_chart(cfg, gauge_fixed=True)
        fam = jet_family(cfg, chart, active_pairs(cfg, md.pairs))
        report = check_lq2b_conditions(
            fam, budget=options.budget, seed=options.seed, workers=options.workers, dtype=options.dtype
        )
        results["lq2b"] = report.to_dict()
        verdict = report.verdict.value
        rows += [["(A)", report.a_pass], ["(B)", report.b_pass], ["dim E", report.e_dimension]]
    rows.append(["verdict", verdict])
    render_table(options.console, "Certification", ["check", "value"], rows)
    results["verdict"] = verdict
    return results


@app.command()
def certify(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="Configuration file"),
):
    """Run the rigidity pipeline and report a verdict.

    Exits with 3 when the positivity certifier runs out of budget.
    """
    options: RunOptions = ctx.obj
    with handle_errors(options):
        cfg, digest = load_input(config)
        results = _certify_o6(cfg, options) if cfg.is_octahedral else _certify_generic(cfg, options)
        options.report("certify", results, digest)
        typer.echo(f"verdict: {results['verdict']}")
        if results["verdict"] == LQ2BVerdict.INCONCLUSIVE.value:
            raise typer.Exit(ExitCode.INCONCLUSIVE)


@app.command()
def chirality(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="Configuration file"),
):
    """Signs of all triples of lines."""
    options: RunOptions = ctx.obj
    with handle_errors(options):
        cfg, digest = load_input(config)
        census = triple_census(cfg)
        render_table(
            options.console,
            "Triples",
            ["triple", "sign", "degenerate"],
            [[" ".join(r.labels), r.sign if r.sign is not None else "-", r.condition or ""] for r in census.triples],
        )
        typer.echo(f"n_plus={census.n_plus} n_minus={census.n_minus} n_degenerate={census.n_degenerate}")
        options.report("chirality", census.to_dict(), digest)


@app.command("decay-probe")
def decay_probe_command(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="Configuration file"),
    directions: int | None = typer.Option(None, "--directions", min=1, help="Directions per set"),
    scales: int | None = typer.Option(None, "--scales", min=1, help="Points of the log-spaced t-grid"),
    csv: Path | None = typer.Option(None, "--csv", help="Write every decay value to this CSV file"),
):
    """Decay exponents of the min distance along straight deformations."""
    options: RunOptions = ctx.obj
    with handle_errors(options):
        cfg, digest = load_input(config)
        probe = settings.probe
        t_grid = np.geomspace(probe.t_min, probe.t_max, scales if scales is not None else probe.scales)
        count = directions or probe.directions
        if cfg.is_octahedral:
            on_e, off_e = o6_decay_probe(count, seed=options.seed, t_grid=t_grid)
            probes = {"E": on_e, "off_E": off_e}
        else:
            chart = local_frame_chart(cfg)
            rng = np.random.default_rng(options.seed)
            probes = {"all": decay_probe(cfg, chart, random_directions(chart.dimension, count, rng), t_grid)}
        summaries = {name: p.summary() for name, p in probes.items()}
        render_table(
            options.console,
            "Decay exponents",
            ["set", "directions", "fitted", "min", "median", "max", "c_d", "c_u"],
            [[name, *(s[key] for key in SUMMARY_KEYS)] for name, s in summaries.items()],
        )
        if csv is not None:
            write_decay_csv(csv, probes)
        options.report("decay-probe", {"t_grid": t_grid.tolist(), "sets": summaries}, digest)


@app.command()
def search(
    ctx: typer.Context,
    config: Path = typer.Argument(..., help="Configuration file"),
    seeds: int | None = typer.Option(None, "--seeds", min=1, help="Random starts"),
    iterations: int | None = typer.Option(None, "--iterations", min=1, help="Pattern-search iterations"),
    t_max: float | None = typer.Option(None, "--t-max", help="Largest deformation size"),
):
    """Search for a deformation increasing the min distance."""
    options: RunOptions = ctx.obj
    with handle_errors(options):
        cfg, digest = load_input(config)
        result = unlock_search(cfg, seeds=seeds, iterations=iterations, t_max=t_max, seed=options.seed)
        render_table(
            options.console,
            "Unlocking search",
            ["base", "best gain", "best t"],
            [[result.base_value, result.best_gain, result.best_t]],
        )
        options.report("search", result.to_dict(), digest)


def cli_main():
    """Entry point for the CLI."""
    app()


if __name__ == "__main__":
    cli_main()
