from rich.console import Console
from rich.table import Table

from ..gadget.oracle import ConformanceMismatch
from ..pipeline.construction import AssembledInstance
from ..pipeline.report import Report

_STYLES = {'PASS': 'green', 'FAIL': 'red', 'TIMEOUT': 'yellow'}


def verdict_markup(verdict: str) -> str:
    style = _STYLES.get(verdict, 'white')
    return f'[bold {style}]{verdict}[/bold {style}]'


def report_table(report: Report) -> Table:
    table = Table(title=f'{report.title}: {verdict_markup(report.verdict)}')
    table.add_column('check')
    table.add_column('verdict')
    table.add_column('detail', overflow='fold')
    for check in report.checks:
        verdict = verdict_markup(check.verdict)
        if check.trivial:
            verdict += ' (trivial)'
        table.add_row(check.name, verdict, check.detail)
    return table


def print_report(console: Console, report: Report, *, limit: int = 10) -> None:
    """A table of checks, then up to `limit` counterexamples."""
    console.print(report_table(report))
    for entry in report.counterexamples[:limit]:
        console.print(f'  counterexample: {entry}')
    hidden = len(report.counterexamples) - limit
    if hidden > 0:
        console.print(f'  ... and {hidden} more')


def mismatch_table(mismatches: list[ConformanceMismatch]) -> Table:
    table = Table(title='conformance mismatches')
    table.add_column('coloring')
    table.add_column('expected')
    table.add_column('extends')
    for m in mismatches:
        table.add_row(
            ', '.join(f'{vid}={c}' for vid, c in m.coloring.items()),
            str(m.expected),
            str(m.actual),
        )
    return table


def summary_table(inst: AssembledInstance) -> Table:
    """Vertex and edge counts of G and of its parts."""
    g = inst.graph
    realizer = inst.certificate.graph
    table = Table(title=f'{g.name}: {len(inst.spec.family)} colorings realized')
    table.add_column('part')
    table.add_column('vertices', justify='right')
    table.add_column('edges', justify='right')
    table.add_row("G'2 (realizer)", str(len(realizer)), str(len(realizer.edges)))
    for role in ('X', 'Y', 'Z'):
        table.add_row(f'{role} vertices', str(len(g.ids_with_role(role))), '')
    table.add_row('G', str(len(g)), str(len(g.edges)))
    table.add_row('trace steps', str(len(inst.trace.steps)), '')
    return table
