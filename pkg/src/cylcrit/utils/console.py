"""Terminal output helpers."""

from collections.abc import Sequence
from typing import Any

from rich.console import Console
from rich.table import Table


def create_console(stderr: bool = False) -> Console:
    """Create a configured console instance."""
    return Console(stderr=stderr)


def render_error(console: Console, error: str) -> None:
    """Render an error message."""
    console.print(f"[red]Error:[/red] {error}", highlight=False)


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def render_table(console: Console, title: str, columns: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    """Print rows as an aligned table; floats at 10 significant digits."""
    table = Table(title=title)
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(_cell(value) for value in row))
    console.print(table)
