import logging
import re
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from enum import Enum
from importlib.metadata import version
from pathlib import Path
from typing import Annotated, NoReturn

import typer
from rich import print as rprint
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from .. import exception as exc
from ..coloring.family import (
    boundary_trace,
    close_under_permutations,
    read_family,
    serialize_family,
)
from ..config import ColorJamConfig, load_config
from ..gadget.forge import GadgetInstance, f_copy, f_enc, piece_f1, piece_fr, piece_fs
from ..gadget.oracle import check_conformance, terminal_colorings
from ..graph.core import Graph, complete_graph
from ..graph.document import dump_document, read_graph, serialize, to_dot
from ..minor.search import RootConstraint, find_model
from ..pipeline.audit import (
    audit_minor_freeness,
    verify_direct_minor,
    verify_realizes,
    verify_rooted_freeness,
)
from ..pipeline.construction import (
    AssembledInstance,
    assemble,
    read_instance,
    read_spec,
    serialize_instance,
)
from ..pipeline.report import Report, combine, dump_reports
from ..planar.boundary import CyclicBoundary
from ..planar.planarity import is_planar, planar_with_boundary
from ..realizer import cache
from .render import mismatch_table, print_report, summary_table

app = typer.Typer()
gadget_app = typer.Typer(help='Build gadgets and check them against their oracles.')
cache_app = typer.Typer(help='Manage the realizer cache.')
app.add_typer(gadget_app, name='gadget')
app.add_typer(cache_app, name='cache')

console = Console()
err_console = Console(stderr=True)

EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_UNAVAILABLE = 3

CHECKS = ('realizes', 'audit', 'rooted', 'direct-minor')


class GadgetKind(str, Enum):
    copy = 'copy'
    enc = 'enc'
    f1 = 'f1'
    fs = 'fs'
    fr = 'fr'


class Format(str, Enum):
    yaml = 'yaml'
    json = 'json'


class ExportFormat(str, Enum):
    dot = 'dot'
    yaml = 'yaml'
    json = 'json'


def _error(message: str, code: int) -> NoReturn:
    rprint(f'[red]Error:[/red] {escape(message)}', file=sys.stderr)
    raise typer.Exit(code=code)


@contextmanager
def _errors() -> Iterator[None]:
    """Map library exceptions to exit codes."""
    try:
        yield
    except (
        exc.MinorSearchTimeoutException,
        exc.RealizerSearchTimeoutException,
        exc.RealizerUnavailableException,
    ) as e:
        _error(str(e), EXIT_UNAVAILABLE)
    except exc.ColorJamException as e:
        _error(str(e), EXIT_INPUT)


def _config(ctx: typer.Context) -> ColorJamConfig:
    return ctx.obj if isinstance(ctx.obj, ColorJamConfig) else ColorJamConfig()


def _split_ids(text: str) -> list[str]:
    ids = [part.strip() for part in text.split(',') if part.strip()]
    if len(set(ids)) != len(ids):
        raise typer.BadParameter(f'ids must be distinct: {text}')
    return ids


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        typer.echo(text, nl=False)
    else:
        output.write_text(text, encoding='utf-8')
        err_console.print(f'wrote {output}')


def _setup_logging(verbose: int) -> None:
    logger = logging.getLogger('colorjam')
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        logger.addHandler(RichHandler(console=err_console, show_path=False))
    logger.setLevel(
        logging.DEBUG if verbose > 1 else logging.INFO if verbose else logging.WARNING
    )


def version_callback(value: bool) -> None:
    if value:
        print(f'ColorJam version: v{version("colorjam")}')
        raise typer.Exit()


@app.callback()
def callback(
    ctx: typer.Context,
    version: Annotated[
        bool,
        typer.Option(
            '--version',
            '-v',
            is_eager=True,
            help='Show the ColorJam version and exit.',
            callback=version_callback,
        ),
    ] = False,
    verbose: Annotated[
        int,
        typer.Option(
            '--verbose',
            '-V',
            count=True,
            help='Log progress (-V) or search details (-VV).',
        ),
    ] = 0,
    config: Annotated[
        Path | None,
        typer.Option(
            '--config',
            exists=True,
            dir_okay=False,
            help='Configuration file (default: colorjam.yaml and friends).',
        ),
    ] = None,
):
    """ColorJam CLI - realize sets of k-colorings by minor-free graphs."""
    _setup_logging(verbose)
    with _errors():
        ctx.obj = load_config(config)


def _gadget(kind: GadgetKind, k: int, s: int | None, r: int | None) -> GadgetInstance:
    if kind in (GadgetKind.enc, GadgetKind.fs, GadgetKind.fr) and s is None:
        raise exc.GadgetParameterException(message=f'--s is required for {kind.value}')
    match kind:
        case GadgetKind.copy:
            return f_copy(k)
        case GadgetKind.enc:
            return f_enc(k, s)
        case GadgetKind.f1:
            return piece_f1(k)
        case GadgetKind.fs:
            return piece_fs(k, s)
        case GadgetKind.fr:
            if r is None:
                raise exc.GadgetParameterException(message='--r is required for fr')
            return piece_fr(k, s, r)


KindOpt = Annotated[GadgetKind, typer.Option('--kind', help='Which gadget.')]
KOpt = Annotated[int, typer.Option('--k', '-k', help='Number of colors.')]
SOpt = Annotated[
    int | None, typer.Option('--s', help='Encoded color s (enc, fs, fr).')
]
ROpt = Annotated[int | None, typer.Option('--r', help='Piece color r (fr).')]
OutputOpt = Annotated[
    Path | None,
    typer.Option('--output', '-o', dir_okay=False, help='Write here, not stdout.'),
]
InputArg = Annotated[
    Path, typer.Argument(exists=True, dir_okay=False, readable=True)
]
BudgetOpt = Annotated[
    float | None,
    typer.Option('--budget-secs', help='Wall-clock budget per search.'),
]
JobsOpt = Annotated[
    int | None, typer.Option('--jobs', '-j', min=1, help='Worker processes.')
]


@gadget_app.command('build')
def gadget_build(
    kind: KindOpt,
    k: KOpt,
    s: SOpt = None,
    r: ROpt = None,
    output: OutputOpt = None,
) -> None:
    """Write a gadget as a graph document, terminals tagged."""
    with _errors():
        inst = _gadget(kind, k, s, r)
    _emit(serialize(inst.graph), output)
    err_console.print(
        f'{inst.graph.name}: {len(inst.graph)} vertices, {len(inst.graph.edges)} edges'
    )


@gadget_app.command('verify')
def gadget_verify(kind: KindOpt, k: KOpt, s: SOpt = None, r: ROpt = None) -> None:
    """Compare a gadget's extensions with its closed-form oracle."""
    with _errors():
        inst = _gadget(kind, k, s, r)
        mismatches = check_conformance(inst)
    checked = sum(1 for _ in terminal_colorings(inst))
    if mismatches:
        console.print(mismatch_table(mismatches))
        console.print(f'[bold red]FAIL[/bold red] {len(mismatches)} of {checked}')
        raise typer.Exit(code=EXIT_FAIL)
    console.print(
        f'[bold green]PASS[/bold green] {inst.graph.name}: '
        f'{checked} terminal colorings checked'
    )


@app.command()
def realize(
    ctx: typer.Context,
    spec_file: InputArg,
    output: OutputOpt = None,
    fmt: Annotated[Format, typer.Option('--format', help='Output format.')] = (
        Format.yaml
    ),
    max_internal: Annotated[
        int | None,
        typer.Option(
            '--max-internal', min=0, help='Realizer search: internal vertices.'
        ),
    ] = None,
    max_edges: Annotated[
        int | None,
        typer.Option('--max-edges', min=0, help='Realizer search: edges.'),
    ] = None,
    budget_secs: BudgetOpt = None,
    from_file: Annotated[
        Path | None,
        typer.Option(
            '--from-file',
            exists=True,
            dir_okay=False,
            help='Load the realizer of the z chain instead of searching.',
        ),
    ] = None,
    no_cache: Annotated[
        bool, typer.Option('--no-cache', help='Neither read nor write the cache.')
    ] = False,
) -> None:
    """Assemble a graph realizing the family of an instance spec."""
    config = _config(ctx)
    overrides = {
        'max_internal': max_internal,
        'max_edges': max_edges,
        'budget_secs': budget_secs,
    }
    limits = config.realizer.limits().model_copy(
        update={key: value for key, value in overrides.items() if value is not None}
    )
    with _errors():
        spec = read_spec(spec_file)
        inst = assemble(
            spec,
            limits=limits,
            realizer_path=from_file,
            use_cache=config.cache.enabled and not no_cache,
            cache_dir=config.cache.dir,
        )
    _emit(serialize_instance(inst, fmt=fmt.value), output)
    err_console.print(summary_table(inst))


def _run_check(
    name: str, inst: AssembledInstance, budget_secs: float, jobs: int
) -> Report:
    match name:
        case 'realizes':
            return verify_realizes(inst, jobs=jobs)
        case 'audit':
            return audit_minor_freeness(inst, budget_secs=budget_secs)
        case 'rooted':
            return verify_rooted_freeness(inst, budget_secs=budget_secs)
        case 'direct-minor':
            return verify_direct_minor(inst, budget_secs=budget_secs)
    raise typer.BadParameter(f'unknown check {name!r}')


@app.command()
def verify(
    ctx: typer.Context,
    instance: InputArg,
    checks: Annotated[
        str,
        typer.Option('--checks', help=f'Comma-separated, from {", ".join(CHECKS)}.'),
    ] = 'realizes,audit,rooted',
    budget_secs: BudgetOpt = None,
    jobs: JobsOpt = None,
    report: Annotated[
        Path | None,
        typer.Option('--report', dir_okay=False, help='Write the reports here.'),
    ] = None,
) -> None:
    """Verify an assembled instance; exit 1 on any FAIL."""
    config = _config(ctx)
    names = _split_ids(checks)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        _error(f'unknown checks {unknown}; choose from {list(CHECKS)}', EXIT_INPUT)
    budget = config.minor.budget_secs if budget_secs is None else budget_secs
    with _errors():
        inst = read_instance(instance)
        reports = [
            _run_check(name, inst, budget, jobs or config.jobs) for name in names
        ]
    for r in reports:
        print_report(console, r)
    if report is not None:
        fmt = 'json' if report.suffix == '.json' else 'yaml'
        report.write_text(dump_reports(reports, fmt=fmt), encoding='utf-8')
    verdict = combine([r.verdict for r in reports])
    if verdict == 'FAIL':
        raise typer.Exit(code=EXIT_FAIL)
    if verdict == 'TIMEOUT':
        raise typer.Exit(code=EXIT_UNAVAILABLE)


def _pattern(text: str) -> Graph:
    if match := re.fullmatch(r'K(\d+)', text):
        return complete_graph(int(match.group(1)))
    path = Path(text)
    if not path.is_file():
        raise typer.BadParameter(f'{text} is neither K<n> nor a graph document')
    return read_graph(path)


@app.command()
def minor(
    ctx: typer.Context,
    host: InputArg,
    pattern: Annotated[
        str, typer.Option('--pattern', '-p', help='K<n> or a graph document.')
    ] = 'K5',
    roots: Annotated[
        str | None,
        typer.Option('--roots', help='Comma-separated roots; every bag needs one.'),
    ] = None,
    budget_secs: BudgetOpt = None,
    output: OutputOpt = None,
) -> None:
    """Search a graph for a (rooted) minor and print a witness model."""
    budget = _config(ctx).minor.budget_secs if budget_secs is None else budget_secs
    rc = RootConstraint.rooted(_split_ids(roots)) if roots else None
    with _errors():
        g = read_graph(host)
        h = _pattern(pattern)
        model = find_model(g, h, rc, budget_secs=budget)
    kind = 'rooted ' if rc else ''
    if model is None:
        console.print(f'no {kind}{h.name} minor in {g.name or host.name}')
        return
    console.print(f'{kind}{h.name} minor in {g.name or host.name}:')
    for p, bag in sorted(model.branch_sets.items()):
        console.print(f'  {p}: {", ".join(bag)}')
    if output is not None:
        _emit(dump_document(model.payload()), output)


@app.command()
def planar(
    graph: InputArg,
    boundary: Annotated[
        str | None,
        typer.Option(
            '--boundary', '-b', help='Ids required on the outer face, in order.'
        ),
    ] = None,
) -> None:
    """Test planarity, optionally with a cyclic boundary on the outer face."""
    with _errors():
        g = read_graph(graph)
        if boundary:
            b = CyclicBoundary(order=tuple(_split_ids(boundary)))
            ok = planar_with_boundary(g, b)
        else:
            ok = is_planar(g)
    console.print(f'{g.name or graph.name}: {"planar" if ok else "not planar"}')


@app.command()
def trace3(
    ctx: typer.Context,
    graph: InputArg,
    boundary: Annotated[
        str, typer.Option('--boundary', '-b', help='Boundary ids, in order.')
    ],
    k: Annotated[int, typer.Option('--k', '-k', min=1, help='Number of colors.')] = 3,
    jobs: JobsOpt = None,
    output: OutputOpt = None,
) -> None:
    """Write the family of boundary colorings that extend to the graph."""
    ids = _split_ids(boundary)
    with _errors():
        g = read_graph(graph)
        fam = boundary_trace(g, ids, k, jobs=jobs or _config(ctx).jobs)
    _emit(serialize_family(fam), output)
    err_console.print(f'{len(fam)} of {k ** len(ids)} colorings extend')


@app.command()
def export(
    graph: InputArg,
    fmt: Annotated[
        ExportFormat, typer.Option('--format', help='Output format.')
    ] = ExportFormat.dot,
    output: OutputOpt = None,
) -> None:
    """Convert a graph document to DOT (or re-emit it canonically)."""
    with _errors():
        g = read_graph(graph)
    if fmt == ExportFormat.dot:
        _emit(to_dot(g), output)
    else:
        _emit(serialize(g, fmt=fmt.value), output)


@app.command()
def close(family: InputArg, output: OutputOpt = None) -> None:
    """Close a coloring family under permutations of the colors."""
    with _errors():
        fam = read_family(family)
    closed = close_under_permutations(fam)
    _emit(serialize_family(closed), output)
    err_console.print(f'{len(fam)} members, {len(closed)} after closing')


@cache_app.command('clear')
def cache_clear(ctx: typer.Context) -> None:
    """Remove every cached realizer."""
    removed = cache.clear(_config(ctx).cache.dir)
    console.print(f'removed {removed} cached realizers')


if __name__ == '__main__':
    app()
