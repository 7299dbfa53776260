"""CLI entry point for toric-weyl"""

import asyncio
import json
import logging
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Any, Optional, Union

import typer
from pydantic import BaseModel, Field, ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

app = typer.Typer(
    name="toric",
    help="Virtual action, Futaki data and Weyl bounds of toric del Pezzo surfaces",
    add_completion=False,
)
console = Console()
err_console = Console(stderr=True)
logger = logging.getLogger("src.cli")

EXIT_INVALID = 2
EXIT_IO = 3
EXIT_PARSE = 4
EXIT_NOT_CONVERGED = 5
EXIT_UNDER_RESOLVED = 6


class Surface(str, Enum):
    cp2 = "cp2"
    quadric = "quadric"
    dp1 = "dp1"
    dp2 = "dp2"
    dp3 = "dp3"


class OutputFormat(str, Enum):
    text = "text"
    json = "json"
    csv = "csv"


Coordinate = Union[int, str]


class PolygonFile(BaseModel):
    vertices: list[tuple[Coordinate, Coordinate]]


class FanFile(BaseModel):
    rays: list[tuple[int, int]]


class SupportFile(BaseModel):
    values: list[Coordinate] = Field(alias="lambda")


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging on stderr"),
):
    """Exact polytope invariants, cone minimization and obstruction verdicts"""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def _fail(code: int, message: str, details: Optional[list[str]] = None):
    err_console.print(f"[red]{message}[/red]", highlight=False)
    for line in details or []:
        err_console.print(f"  {line}", highlight=False)
    raise typer.Exit(code)


@contextmanager
def _exit_codes():
    """Map library errors onto the exit-code contract"""
    from src.core.errors import (
        InvalidFan,
        InvalidPolygon,
        NotConverged,
        OutsideCone,
        ToricError,
        UnderResolved,
    )

    try:
        yield
    except typer.Exit:
        raise
    except InvalidPolygon as e:
        _fail(EXIT_INVALID, f"invalid polygon: {e}")
    except (OutsideCone, InvalidFan) as e:
        _fail(EXIT_INVALID, f"invalid cone data: {e}")
    except NotConverged as e:
        _fail(EXIT_NOT_CONVERGED, str(e))
    except UnderResolved as e:
        _fail(EXIT_UNDER_RESOLVED, str(e))
    except ToricError as e:
        _fail(EXIT_INVALID, str(e))
    except OSError as e:
        _fail(EXIT_IO, f"I/O error: {e}")
    except (ValidationError, ValueError, TypeError, KeyError) as e:
        _fail(EXIT_PARSE, f"could not parse input: {e}")


def _read_json(path: Path) -> Any:
    return json.loads(path.read_text(encoding="utf-8"))


def _load_polygon(path: Path):
    from src.core.polygon import polygon_from_vertices, to_rational, validate_delzant

    vertices = PolygonFile.model_validate(_read_json(path)).vertices
    points = [(to_rational(x), to_rational(y)) for x, y in vertices]
    violations = validate_delzant(points)
    if violations:
        _fail(
            EXIT_INVALID,
            f"{path} is not a Delzant polygon",
            [f"{v.kind} at {v.index}: {v.message}" for v in violations],
        )
    return polygon_from_vertices(points)


def _resolve_fan(surface: Optional[Surface], fan_path: Optional[Path]):
    """Fan alone; the minimizer picks its own start inside the cone"""
    from src.core.cone import NormalFan, builtin_fan

    if surface is not None:
        return builtin_fan(surface.value)
    rays = FanFile.model_validate(_read_json(fan_path)).rays
    return NormalFan(tuple(rays), fan_path.stem)


def _resolve_fan_and_support(
    surface: Optional[Surface],
    alpha: Optional[str],
    t: Optional[str],
    fan_path: Optional[Path],
    support_path: Optional[Path],
):
    """Fan plus support vector from a built-in surface or from files"""
    from src.core.cone import SupportVector, default_support, dp1_support, quadric_support
    from src.core.polygon import to_rational

    if alpha is not None and surface is not Surface.dp1:
        raise typer.BadParameter("--alpha applies to --surface dp1 only")
    if t is not None and surface is not Surface.quadric:
        raise typer.BadParameter("--t applies to --surface quadric only")
    if support_path is not None and fan_path is None:
        raise typer.BadParameter("--support needs --fan")

    fan = _resolve_fan(surface, fan_path)
    if alpha is not None:
        return fan, dp1_support(to_rational(alpha))
    if t is not None:
        return fan, quadric_support(to_rational(t))
    if support_path is not None:
        values = SupportFile.model_validate(_read_json(support_path)).values
        return fan, SupportVector(tuple(values))
    return fan, default_support(fan)


def _single_source(surface, input_path, fan_path) -> None:
    given = [x for x in (surface, input_path, fan_path) if x is not None]
    if len(given) != 1:
        raise typer.BadParameter("give exactly one of --surface, --input, --fan")


def _emit(payload, output_format: OutputFormat, out: Optional[Path], metadata: Optional[dict] = None) -> None:
    from src.core.plugin import get_plugin_manager

    text = asyncio.run(get_plugin_manager().export(payload, output_format.value, metadata or {}))
    if out is not None:
        out.write_text(text, encoding="utf-8")
        logger.debug("wrote %s", out)
    else:
        typer.echo(text, nl=False)


def _default_format() -> OutputFormat:
    from src.core.config import get_config

    return OutputFormat(get_config().output.default_format)


SURFACE_OPT = typer.Option(None, "--surface", "-s", help="Built-in toric del Pezzo surface")
ALPHA_OPT = typer.Option(None, "--alpha", help="dp1 family parameter α (rational)")
T_OPT = typer.Option(None, "--t", help="quadric class F₁ + tF₂")
INPUT_OPT = typer.Option(None, "--input", "-i", help="Polygon JSON file {\"vertices\": ...}")
FAN_OPT = typer.Option(None, "--fan", help="Fan JSON file {\"rays\": ...}")
SUPPORT_OPT = typer.Option(None, "--support", help="Support JSON file {\"lambda\": ...}")
FORMAT_OPT = typer.Option(None, "--format", "-f", help="text, json or csv")
OUT_OPT = typer.Option(None, "--out", "-o", help="Write output to this file")


@app.command()
def report(
    surface: Optional[Surface] = SURFACE_OPT,
    alpha: Optional[str] = ALPHA_OPT,
    t: Optional[str] = T_OPT,
    input_path: Optional[Path] = INPUT_OPT,
    fan_path: Optional[Path] = FAN_OPT,
    support_path: Optional[Path] = SUPPORT_OPT,
    output_format: Optional[OutputFormat] = FORMAT_OPT,
    out: Optional[Path] = OUT_OPT,
):
    """Exact invariant report of one Delzant polygon"""
    from src.core.cone import polygon_from_support
    from src.core.invariants import invariant_report

    _single_source(surface, input_path, fan_path)
    with _exit_codes():
        if input_path is not None:
            polygon, title = _load_polygon(input_path), input_path.name
        else:
            fan, support = _resolve_fan_and_support(surface, alpha, t, fan_path, support_path)
            polygon, title = polygon_from_support(fan, support), fan.name
        _emit(invariant_report(polygon), output_format or _default_format(), out, {"title": title})


@app.command()
def minimize(
    surface: Optional[Surface] = SURFACE_OPT,
    fan_path: Optional[Path] = FAN_OPT,
    tol: float = typer.Option(1e-10, "--tol", min=0.0, help="Simplex spread tolerance on the action"),
    max_iter: int = typer.Option(10000, "--max-iter", min=1, help="Iteration cap per descent"),
    starts: int = typer.Option(0, "--starts", min=0, help="Random interior starts (0 = anticanonical start only)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for random starts"),
    output_format: Optional[OutputFormat] = FORMAT_OPT,
    out: Optional[Path] = OUT_OPT,
):
    """Minimize the virtual action over the reduced symplectic cone"""
    from src.core.cone import minimize_action, minimize_action_multistart
    from src.core.config import get_config

    _single_source(surface, None, fan_path)
    if tol <= 0:
        raise typer.BadParameter("--tol must be positive")
    with _exit_codes():
        fan = _resolve_fan(surface, fan_path)
        options = get_config().minimizer.model_copy(update={"tolerance": tol, "max_iterations": max_iter})
        if starts:
            result = minimize_action_multistart(fan, starts, seed, options)
            converged = result.best.converged
        else:
            result = minimize_action(fan, options)
            converged = result.converged
        _emit(result, output_format or _default_format(), out)
    if not converged:
        _fail(EXIT_NOT_CONVERGED, "minimizer did not certify a critical point")


def _parse_vector(text: str) -> list:
    from src.core.polygon import to_rational

    return [to_rational(part) for part in text.split(",")]


@app.command()
def scan(
    surface: Optional[Surface] = SURFACE_OPT,
    fan_path: Optional[Path] = FAN_OPT,
    support_path: Optional[Path] = SUPPORT_OPT,
    direction: Optional[str] = typer.Option(None, "--direction", help="Comma-separated direction, one entry per ray"),
    t_range: str = typer.Option(..., "--range", help="Parameter range A:B"),
    steps: Optional[int] = typer.Option(None, "--steps", min=1, help="Number of samples"),
    workers: Optional[int] = typer.Option(None, "--workers", min=1, help="Evaluation threads"),
    output_format: OutputFormat = typer.Option(OutputFormat.csv, "--format", "-f", help="text, json or csv"),
    out: Optional[Path] = OUT_OPT,
):
    """Sample invariants along a line of support vectors

    Without --direction, dp1 scans α and the quadric scans t.
    """
    from src.core.cone import SupportVector, dp1_support, quadric_support, scan_line
    from src.core.config import get_config

    _single_source(surface, None, fan_path)
    with _exit_codes():
        fan, start = _resolve_fan_and_support(surface, None, None, fan_path, support_path)
        if direction is not None:
            vector = SupportVector(tuple(_parse_vector(direction)))
        elif surface is Surface.dp1:
            start, vector = dp1_support(0), SupportVector((0, 0, 1, 0))
        elif surface is Surface.quadric:
            start, vector = quadric_support(0), SupportVector((0, 0, 0, 1))
        else:
            raise typer.BadParameter("--direction is required for this surface")
        bounds = _parse_vector(t_range.replace(":", ","))
        if len(bounds) != 2:
            raise ValueError(f"range must look like A:B, got {t_range!r}")
        config = get_config().scan
        table = scan_line(
            fan,
            start,
            vector,
            (bounds[0], bounds[1]),
            steps or config.steps,
            workers=workers or config.workers,
        )
        _emit(table, output_format, out)


@app.command()
def obstruct(
    surface: Optional[Surface] = SURFACE_OPT,
    alpha: Optional[str] = ALPHA_OPT,
    t: Optional[str] = T_OPT,
    input_path: Optional[Path] = INPUT_OPT,
    fan_path: Optional[Path] = FAN_OPT,
    support_path: Optional[Path] = SUPPORT_OPT,
    lattice_path: Optional[Path] = typer.Option(None, "--lattice", help="Lattice JSON {\"gram\", \"c1\", \"omega\"}"),
    c1_squared: Optional[str] = typer.Option(None, "--c1-squared", help="Override c₁² = 12 − (number of edges)"),
    output_format: Optional[OutputFormat] = FORMAT_OPT,
    out: Optional[Path] = OUT_OPT,
):
    """Einstein obstruction verdict; the verdict is data, so the exit code is 0 either way"""
    from src.core.cohomology import (
        einstein_obstruction_basic,
        einstein_obstruction_toric,
        lattice_from_mapping,
        quadric_class,
    )
    from src.core.cone import polygon_from_support
    from src.core.polygon import to_rational

    with _exit_codes():
        if lattice_path is not None:
            if any(x is not None for x in (surface, input_path, fan_path)):
                raise typer.BadParameter("--lattice cannot be combined with another input")
            lattice, omega = lattice_from_mapping(_read_json(lattice_path))
            verdict, title = einstein_obstruction_basic(lattice.first_chern_class, omega), lattice_path.name
        elif surface is Surface.quadric and t is not None:
            omega = quadric_class(to_rational(t))
            verdict = einstein_obstruction_basic(omega.lattice.first_chern_class, omega)
            title = f"quadric, [ω] = {omega}"
        else:
            _single_source(surface, input_path, fan_path)
            if input_path is not None:
                polygon, title = _load_polygon(input_path), input_path.name
            else:
                fan, support = _resolve_fan_and_support(surface, alpha, t, fan_path, support_path)
                polygon, title = polygon_from_support(fan, support), fan.name
            override = to_rational(c1_squared) if c1_squared is not None else None
            verdict = einstein_obstruction_toric(polygon, override)
        _emit(verdict, output_format or _default_format(), out, {"title": title})


@app.command()
def appendix(
    epsilon: Optional[float] = typer.Option(None, "--epsilon", help="Support scale ε > 0"),
    k: Optional[int] = typer.Option(None, "--k", min=1, help="Oscillation index k ≥ 1"),
    grid: Optional[int] = typer.Option(None, "--grid", min=2, help="Points per axis"),
    c1_omega: Optional[float] = typer.Option(None, "--c1-omega", help="c₁·[ω] for the scalar-curvature bound"),
    output_format: Optional[OutputFormat] = FORMAT_OPT,
    out: Optional[Path] = OUT_OPT,
):
    """Nijenhuis-energy quadrature for the oscillatory profile f_k"""
    from src.core.appendix import PerturbationProfile, energy_report
    from src.core.config import get_config

    defaults = get_config().quadrature
    with _exit_codes():
        profile = PerturbationProfile(
            defaults.epsilon if epsilon is None else epsilon,
            defaults.k if k is None else k,
            defaults.grid_n if grid is None else grid,
        )
        _emit(energy_report(profile, c1_omega), output_format or _default_format(), out)


@app.command("surfaces")
def surfaces_cmd():
    """List the built-in toric del Pezzo surfaces"""
    from src.core.cohomology import c1_squared_from_fan
    from src.core.surface import get_surface_loader

    surfaces = get_surface_loader().load_all()
    if not surfaces:
        console.print("[yellow]No surfaces found. Add SURFACE.md files under surfaces/.[/yellow]")
        return

    table = Table(title="Toric del Pezzo surfaces")
    table.add_column("Name", style="cyan")
    table.add_column("Symbol")
    table.add_column("Rays", justify="center")
    table.add_column("c₁²", justify="center")
    table.add_column("Kähler-Einstein", justify="center")
    table.add_column("Description")

    for surface in surfaces:
        table.add_row(
            surface.name,
            surface.metadata.symbol,
            str(len(surface.rays)),
            str(c1_squared_from_fan(surface.fan)),
            "yes" if surface.metadata.kahler_einstein else "no",
            surface.description,
        )

    console.print(table)


if __name__ == "__main__":
    app()
