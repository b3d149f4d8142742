from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from ..graph.document import dump_document

type Verdict = Literal['PASS', 'FAIL', 'TIMEOUT']


def combine(verdicts: list[Verdict]) -> Verdict:
    """FAIL beats TIMEOUT beats PASS; an empty list passes."""
    if 'FAIL' in verdicts:
        return 'FAIL'
    if 'TIMEOUT' in verdicts:
        return 'TIMEOUT'
    return 'PASS'


class Check(BaseModel):
    """One named check of a report.

    `trivial` marks a PASS that holds for a reason unrelated to the graph, such
    as too few roots for a rooted minor to exist at all.
    """

    name: str
    verdict: Verdict
    detail: str = ''
    trivial: bool = False

    model_config = ConfigDict(frozen=True)


class Report(BaseModel):
    title: str
    checks: list[Check] = Field(default_factory=list)
    counterexamples: list[dict[str, Any]] = Field(default_factory=list)
    facts: dict[str, Any] = Field(default_factory=dict)

    @property
    def verdict(self) -> Verdict:
        return combine([c.verdict for c in self.checks])

    @property
    def passed(self) -> bool:
        return self.verdict == 'PASS'

    def add(
        self, name: str, verdict: Verdict, detail: str = '', *, trivial: bool = False
    ) -> Check:
        check = Check(name=name, verdict=verdict, detail=detail, trivial=trivial)
        self.checks.append(check)
        return check

    def expect(self, name: str, ok: bool, detail: str = '') -> Check:
        return self.add(name, 'PASS' if ok else 'FAIL', detail)

    def payload(self) -> dict[str, Any]:
        return {
            'title': self.title,
            'verdict': self.verdict,
            'checks': [c.model_dump(exclude_defaults=True) for c in self.checks],
            'counterexamples': self.counterexamples,
            'facts': self.facts,
        }


def reports_payload(reports: list[Report]) -> dict[str, Any]:
    return {
        'verdict': combine([r.verdict for r in reports]),
        'reports': [r.payload() for r in reports],
    }


def dump_reports(
    reports: list[Report], *, fmt: Literal['yaml', 'json'] = 'yaml'
) -> str:
    return dump_document(reports_payload(reports), fmt=fmt)
