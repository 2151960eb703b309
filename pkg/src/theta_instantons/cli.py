"""Main CLI for theta-instantons."""

from pathlib import Path
from typing import Optional

import typer
from rich.console import Console
from rich.markup import escape
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from .config import RUN_CONFIG_DIR, RUN_CONFIG_FILE, create_run_config, resolve_context
from .errors import (
    ConfigError,
    ExpressionError,
    PresentationError,
    ThetaError,
    UnknownSuiteError,
)
from .log import configure_logging
from .output import format_response, render_cli
from .report import SuiteReport, render_report_text
from .services import (
    expand_expression,
    list_suites,
    relation_table_payload,
    render_relation_table,
    resolve_context_info,
    suite_groups,
    verify,
)

app = typer.Typer(
    name="theta-instantons",
    help="Exact verification of theta-deformed SL(2,H) instanton identities",
)
console = Console()
err_console = Console(stderr=True)

EXIT_FAIL = 1
EXIT_USAGE = 2


@app.callback()
def main(
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Log debug output to stderr"),
):
    configure_logging(verbose)


def fail(message: str, code: int, suggestions: Optional[list[str]] = None) -> None:
    """Print an error with suggestions and exit."""
    err_console.print(f"[red]Error:[/red] {escape(message)}")
    for suggestion in suggestions or []:
        err_console.print(f"  [dim]{escape(suggestion)}[/dim]")
    raise typer.Exit(code)


def _context(path: Optional[Path] = None):
    try:
        return resolve_context(path)
    except ConfigError as e:
        fail(str(e), EXIT_USAGE, e.suggestions)


# ============================================================================
# Verification Commands
# ============================================================================


@app.command("verify")
def verify_suite(
    suite: str = typer.Option("all", "--suite", "-s", help="Suite to run (see 'suites')"),
    output_format: Optional[str] = typer.Option(
        None, "--format", "-f", help="Output format (toon|json|text)"
    ),
    out: Optional[Path] = typer.Option(
        None, "--out", "-o", help="Also write the JSON report here"
    ),
    parallelism: Optional[int] = typer.Option(
        None, "--parallelism", "-j", min=1, help="Check groups run concurrently"
    ),
    completion_limit: Optional[int] = typer.Option(
        None, "--completion-limit", min=1, help="Rules completion may add before giving up"
    ),
    stretch: Optional[bool] = typer.Option(
        None, "--stretch/--no-stretch", help="Also run the optional stretch checks"
    ),
    theta: Optional[float] = typer.Option(
        None, "--theta", help="Evaluate failing witnesses at this numeric theta"
    ),
):
    """Run a verification suite.

    Exit code 0 when every check passes, 1 when a check fails, 2 for an
    unknown suite and 3 when a completion bound was hit.

    Examples:
        theta-instantons verify --suite appendix-a
        theta-instantons verify --suite so51 --format json --out so51.json
    """
    context = _context()
    output_format = output_format or context.format
    try:
        suite_groups(suite)
    except UnknownSuiteError as e:
        fail(str(e), EXIT_USAGE, e.suggestions)

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=err_console,
        transient=True,
    ) as progress:
        progress.add_task(f"Verifying {suite}...", total=None)
        try:
            result = verify(
                suite,
                context,
                parallelism=parallelism,
                completion_limit=completion_limit,
                stretch=stretch,
                theta=theta,
                out=out,
            )
        except OSError as e:
            fail(f"could not write report: {e}", EXIT_FAIL)

    report: SuiteReport = result["report"]
    response = format_response(
        result["payload"], output_format, lambda _: render_report_text(report)
    )
    typer.echo(render_cli(response))
    for path in result["written"]:
        err_console.print(f"[dim]Report written to {path}[/dim]")
    raise typer.Exit(report.exit_code())


@app.command("suites")
def show_suites(
    output_format: str = typer.Option(
        "text", "--format", "-f", help="Output format (toon|json|text)"
    ),
):
    """List the available suites."""
    rows = list_suites()
    if output_format != "text":
        typer.echo(render_cli(format_response({"suites": rows}, output_format)))
        return
    grid = Table(title="Suites")
    grid.add_column("Suite", style="cyan")
    grid.add_column("Groups", justify="right")
    grid.add_column("Checks")
    for row in rows:
        grid.add_row(row["name"], str(row["groups"]), row["description"])
    console.print(grid)


# ============================================================================
# Algebra Commands
# ============================================================================


@app.command("expand")
def expand(
    expression: str = typer.Argument(..., help="Expression, e.g. \"z3*z1\" or \"a1 @ z1\""),
    algebra: str = typer.Option(
        "c4", "--algebra", "-a", help="Algebra name or file; comma separated for tensor legs"
    ),
    theta: Optional[float] = typer.Option(
        None, "--theta", help="Also print coefficients at this numeric theta (default: config)"
    ),
    output_format: str = typer.Option(
        "text", "--format", "-f", help="Output format (toon|json|text)"
    ),
):
    """Print the normal form of an expression.

    Examples:
        theta-instantons expand --algebra sl2h "a1*b1 - mubar*b1*a1"
        theta-instantons expand --algebra sl2h,c4 "(a1 @ z1) - (a2 @ z2')"
    """
    if theta is None:
        theta = _context().theta
    try:
        payload = expand_expression(algebra, expression, theta)
    except (ExpressionError, PresentationError) as e:
        fail(str(e), EXIT_USAGE, e.suggestions)

    def text(data: dict) -> str:
        if "numeric" in data:
            return f"{data['normal_form']}\n{data['numeric']}"
        return data["normal_form"]

    typer.echo(render_cli(format_response(payload, output_format, text)))


@app.command("table")
def write_table(
    algebra: str = typer.Option("sl2h", "--algebra", "-a", help="Algebra name or file"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the table to this file"),
    output_format: str = typer.Option(
        "tsv", "--format", "-f", help="Output format (tsv|text|json)"
    ),
    nontrivial: bool = typer.Option(False, "--nontrivial", help="Only pairs that do not commute"),
):
    """Write the pairwise commutation table of an algebra.

    Each row ``x y c`` reads ``x*y = c * y*x``.
    """
    try:
        if output_format in ("tsv", "text"):
            content = render_relation_table(algebra, output_format, nontrivial)
        else:
            response = format_response(relation_table_payload(algebra, nontrivial), output_format)
            content = render_cli(response) + "\n"
    except PresentationError as e:
        fail(str(e), EXIT_USAGE, e.suggestions)

    if out is None:
        typer.echo(content, nl=False)
        return
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(content, encoding="utf-8")
    except OSError as e:
        fail(f"could not write {out}: {e}", EXIT_FAIL)
    err_console.print(f"[green]Wrote[/green] {out}")


# ============================================================================
# Configuration Commands
# ============================================================================


@app.command("config")
def show_config(
    path: Optional[Path] = typer.Option(None, "--path", "-p", help="Directory to resolve for"),
    output_format: str = typer.Option(
        "toon", "--format", "-f", help="Output format (toon|json|text)"
    ),
):
    """Show the resolved configuration.

    Displays the config source (directory, parent, user, env, none) and
    every resolved setting.
    """
    try:
        data = resolve_context_info(path or Path.cwd())
    except ConfigError as e:
        fail(str(e), EXIT_USAGE, e.suggestions)
    typer.echo(render_cli(format_response(data, output_format)))


@app.command("init")
def init_config(
    path: Optional[Path] = typer.Option(None, "--path", "-p", help="Directory to initialize"),
    parallelism: int = typer.Option(1, "--parallelism", "-j", min=1, help="Default parallelism"),
    completion_limit: int = typer.Option(200, "--completion-limit", min=1),
    output_format: str = typer.Option("toon", "--format", "-f", help="Default output format"),
    save_reports: bool = typer.Option(False, "--save-reports", help="Keep every verify report"),
    force: bool = typer.Option(False, "--force", help="Overwrite an existing config"),
):
    """Initialize .theta-instantons/config.json in the current or given directory."""
    target_path = Path(path) if path else Path.cwd()
    if not target_path.exists():
        fail(f"Directory not found: {target_path}", EXIT_FAIL)

    existing = target_path / RUN_CONFIG_DIR / RUN_CONFIG_FILE
    if existing.exists() and not force:
        if not typer.confirm(f"Config already exists at {existing}. Overwrite?"):
            raise typer.Exit(0)

    try:
        config_path = create_run_config(
            target_path,
            parallelism=parallelism,
            completion_limit=completion_limit,
            output_format=output_format,
            save_reports=save_reports,
        )
    except ThetaError as e:
        fail(str(e), EXIT_USAGE, e.suggestions)

    console.print(f"\n[green]Created:[/green] {config_path}")
    console.print("\n[dim]Config contents:[/dim]")
    console.print(config_path.read_text(), markup=False, highlight=False)


if __name__ == "__main__":
    app()
