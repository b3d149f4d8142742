"""Exhaustive and structural verification of assembled instances.

The structural audit never searches the whole graph for a minor. It walks the
construction trace and propagates two certified bounds: t, such that the graph
so far is K_t-minor-free, and r, such that it is X-rooted-K_r-minor-free.
"""

from __future__ import annotations

import logging
from itertools import product

from .. import exception as exc
from ..coloring.family import boundary_trace
from ..graph.core import Graph, complete_graph, empty_graph
from ..graph.trace import (
    AddCliqueEdges,
    AddUniversalVertices,
    BasePlanePiece,
    CliqueSumJoin,
    ConstructionTrace,
    DeleteEdges,
    apply_step,
    replay_difference,
)
from ..minor.search import DEFAULT_BUDGET_SECS, RootConstraint, find_model
from ..planar.planarity import is_planar, planar_with_boundary
from .construction import AssembledInstance
from .report import Report

logger = logging.getLogger(__name__)

# non-planar summands up to this size without a decomposition are searched directly
DIRECT_LIMIT = 15


def verify_realizes(inst: AssembledInstance, *, jobs: int = 1) -> Report:
    """Compare, over every f: X -> [k], whether f extends to G with f in C."""
    spec = inst.spec
    xs = spec.roots
    report = Report(title=f'realizes C (m={spec.m}, k={spec.k})')
    extending = boundary_trace(inst.graph, xs, spec.k, jobs=jobs).member_set
    wanted = spec.family.member_set

    unsound = []
    incomplete = []
    for f in product(range(1, spec.k + 1), repeat=spec.m):
        if (f in wanted) == (f in extending):
            continue
        entry = {
            'coloring': dict(zip(xs, f, strict=True)),
            'extends': f in extending,
            'in_family': f in wanted,
        }
        (unsound if f in wanted else incomplete).append(entry)
    report.counterexamples = unsound + incomplete
    report.facts = {
        'colorings': spec.k**spec.m,
        'extending': len(extending),
        'family': len(wanted),
    }
    report.expect(
        'every member extends',
        not unsound,
        f'{len(unsound)} members do not extend' if unsound else '',
    )
    report.expect(
        'only members extend',
        not incomplete,
        f'{len(incomplete)} non-members extend' if incomplete else '',
    )
    logger.info('realizes check: %s', report.verdict)
    return report


class _Audit:
    """Walks a trace, recording one check per step into a shared report."""

    def __init__(self, report: Report, k: int, budget_secs: float | None):
        self.report = report
        self.k = k
        self.budget_secs = budget_secs

    def run(
        self, trace: ConstructionTrace, prefix: str = ''
    ) -> tuple[int | None, int | None]:
        acc = empty_graph()
        t: int | None = None
        r: int | None = None
        universal: set[str] = set()
        for n, step in enumerate(trace.steps, 1):
            name = f'{prefix}{step.kind} {step.label or n}'
            match step:
                case BasePlanePiece():
                    t, r = self._base(name, step, first=not len(acc))
                case AddUniversalVertices():
                    ok = self._universal(name, step, set(acc.ids))
                    universal = set(step.ids)
                    if ok and t is not None and r is not None:
                        t, r = t + len(step.ids), r + len(step.ids)
                    else:
                        t = r = None
                case AddCliqueEdges():
                    ok = set(step.ids) <= universal
                    self.report.expect(
                        name, ok, '' if ok else 'clique on vertices not just added'
                    )
                    if not ok:
                        t = r = None
                case CliqueSumJoin():
                    t_summand = self._join(name, step, acc)
                    if t_summand is None or t is None:
                        t = r = None
                    else:
                        t = max(t, t_summand)
                case DeleteEdges():
                    ok = set(step.edges) <= acc.edges
                    self.report.expect(name, ok, f'{len(step.edges)} edges')
            try:
                acc = apply_step(acc, step)
            except exc.GraphException as e:
                self.report.add(f'{prefix}replay', 'FAIL', str(e))
                return None, None
        return t, r

    def _base(
        self, name: str, step: BasePlanePiece, *, first: bool
    ) -> tuple[int | None, int | None]:
        if not first:
            self.report.add(name, 'FAIL', 'a plane base piece must come first')
            return None, None
        if not planar_with_boundary(step.graph, step.boundary):
            self.report.add(
                name,
                'FAIL',
                f'not planar with {list(step.boundary.order)} on the outer face',
            )
            return None, None
        on_face = set(step.graph.ids_with_role('X')) <= set(step.boundary.order)
        self.report.add(
            name,
            'PASS',
            f'planar, boundary {list(step.boundary.order)} on the outer face',
        )
        return 5, 4 if on_face else 5

    def _universal(
        self, name: str, step: AddUniversalVertices, prior: set[str]
    ) -> bool:
        problems = []
        if len(step.ids) != self.k - 3:
            problems.append(f'{len(step.ids)} vertices, expected {self.k - 3}')
        if set(step.ids) & prior:
            problems.append('vertices already present')
        if set(step.targets) != prior:
            problems.append('targets are not all prior vertices')
        self.report.expect(name, not problems, '; '.join(problems))
        return not problems

    def _join(self, name: str, step: CliqueSumJoin, acc: Graph) -> int | None:
        shared = set(step.shared)
        problems = []
        if set(acc.ids) & set(step.summand.ids) != shared:
            problems.append('summand meets the graph outside the shared set')
        if not step.summand.is_clique(step.shared):
            problems.append('shared set is not a clique of the summand')
        if not acc.is_clique(step.shared):
            problems.append('shared set is not a clique of the graph')
        added = set(step.summand.ids) - shared
        if any(step.summand.role_of(vid) == 'X' for vid in added):
            problems.append('summand adds roots')
        self.report.expect(
            f'{name} clique',
            not problems,
            '; '.join(problems) or f'shared {len(shared)}-clique',
        )
        t_summand = self._summand(f'{name} summand', step)
        return None if problems else t_summand

    def _summand(self, name: str, step: CliqueSumJoin) -> int | None:
        summand = step.summand
        if is_planar(summand):
            self.report.add(name, 'PASS', 'planar')
            return 5
        if step.decomposition is not None:
            missing, extra, detail = replay_difference(step.decomposition, summand)
            if missing or extra:
                self.report.add(name, 'FAIL', f'decomposition differs at {detail}')
                return None
            t, _ = self.run(step.decomposition, prefix=f'{step.label}: ')
            ok = t is not None and t <= self.k + 2
            self.report.expect(
                name, ok, f'K{t}-minor-free by its decomposition' if ok else ''
            )
            return t if ok else None
        if len(summand) <= DIRECT_LIMIT:
            return self._direct(name, summand)
        self.report.add(name, 'FAIL', 'too large to search and no decomposition')
        return None

    def _direct(self, name: str, summand: Graph) -> int | None:
        """Least t from 5 up to k+2 with no K_t minor in `summand`."""
        model = None
        for t in range(5, self.k + 3):
            try:
                model = find_model(
                    summand, complete_graph(t), budget_secs=self.budget_secs
                )
            except exc.MinorSearchTimeoutException as e:
                self.report.add(name, 'TIMEOUT', str(e))
                return None
            if model is None:
                self.report.add(
                    name, 'PASS', f'no K{t} minor among {len(summand)} vertices'
                )
                return t
        self.report.add(
            name, 'FAIL', f'K{self.k + 2} minor: {model.payload()["branch_sets"]}'
        )
        return None


def audit_minor_freeness(
    inst: AssembledInstance,
    *,
    budget_secs: float | None = DEFAULT_BUDGET_SECS,
) -> Report:
    """Certify K_{k+2}- and X-rooted-K_{k+1}-minor-freeness from the trace.

    Raises:
        ReplayMismatchException: If the trace does not replay to the graph.
    """
    k = inst.spec.k
    missing, extra, detail = replay_difference(inst.trace, inst.graph)
    if missing or extra:
        raise exc.ReplayMismatchException(missing=missing, extra=extra, detail=detail)
    report = Report(title=f'structural audit (k={k})')
    report.add('replay', 'PASS', f'{len(inst.trace.steps)} steps replay to G')
    t, r = _Audit(report, k, budget_secs).run(inst.trace)
    ok = t is not None and r is not None and t <= k + 2 and r <= k + 1
    report.facts = {'K_t-free': t, 'rooted K_r-free': r}
    report.expect(
        'bounds',
        ok,
        f'K{t}-minor-free, X-rooted-K{r}-minor-free'
        if t is not None and r is not None
        else 'no bound certified',
    )
    logger.info('audit: %s (t=%s, r=%s)', report.verdict, t, r)
    return report


def verify_direct_minor(
    inst: AssembledInstance,
    *,
    budget_secs: float | None = DEFAULT_BUDGET_SECS,
) -> Report:
    """Search the whole of G for a K_{k+2} minor."""
    k = inst.spec.k
    report = Report(title=f'direct K{k + 2} search')
    report.facts = {'vertices': len(inst.graph), 'edges': len(inst.graph.edges)}
    try:
        model = find_model(inst.graph, complete_graph(k + 2), budget_secs=budget_secs)
    except exc.MinorSearchTimeoutException as e:
        report.add(f'K{k + 2}-minor-free', 'TIMEOUT', str(e))
        return report
    if model is None:
        report.add(f'K{k + 2}-minor-free', 'PASS')
    else:
        report.add(f'K{k + 2}-minor-free', 'FAIL', 'model found')
        report.counterexamples.append(model.payload())
    return report


def verify_rooted_freeness(
    inst: AssembledInstance,
    *,
    budget_secs: float | None = DEFAULT_BUDGET_SECS,
) -> Report:
    """Search G for a K_{k+1} minor rooted at X.

    With fewer than k+1 roots no rooted model can exist; the check then passes
    with the `trivial` flag set instead of searching.
    """
    spec = inst.spec
    t = spec.k + 1
    name = f'X-rooted-K{t}-minor-free'
    report = Report(title=f'rooted K{t} search')
    if spec.m < t:
        report.add(name, 'PASS', f'only {spec.m} roots, {t} needed', trivial=True)
        return report
    try:
        model = find_model(
            inst.graph,
            complete_graph(t),
            RootConstraint.rooted(spec.roots),
            budget_secs=budget_secs,
        )
    except exc.MinorSearchTimeoutException as e:
        report.add(name, 'TIMEOUT', str(e))
        return report
    if model is None:
        report.add(name, 'PASS')
    else:
        report.add(name, 'FAIL', 'rooted model found')
        report.counterexamples.append(model.payload())
    return report
