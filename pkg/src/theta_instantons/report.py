"""Check results and suite reports."""

from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterator, Mapping, Optional, Union

from .algebra import TensorPolynomial
from .errors import CompletionLimitExceeded, ThetaError
from .phase import PhaseCoefficient
from .rewriting import RewriteSystem

SCHEMA_VERSION = 1
WITNESS_TERMS = 12


@dataclass(frozen=True)
class RunOptions:
    """Knobs shared by every check group."""

    completion_limit: int = 200
    stretch: bool = False
    seed: int = 7
    samples: int = 1000
    theta: Optional[float] = None


class CheckStatus(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIPPED = "skipped-structural"


SUMMARY_KEYS = {CheckStatus.PASS: "pass", CheckStatus.FAIL: "fail", CheckStatus.SKIPPED: "skipped"}


@dataclass
class CheckResult:
    """Outcome of one identity check."""

    id: str
    statement: str
    paper_ref: str
    status: CheckStatus
    witness: Optional[str] = None
    metrics: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == CheckStatus.PASS

    @property
    def limit_exceeded(self) -> bool:
        return bool(self.metrics.get("limit_exceeded"))

    def to_dict(self) -> dict[str, Any]:
        return {
            "id": self.id,
            "statement": self.statement,
            "paper_ref": self.paper_ref,
            "status": self.status.value,
            "witness": self.witness,
            "metrics": self.metrics,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> CheckResult:
        return cls(
            id=data["id"],
            statement=data["statement"],
            paper_ref=data["paper_ref"],
            status=CheckStatus(data["status"]),
            witness=data.get("witness"),
            metrics=dict(data.get("metrics") or {}),
        )


@dataclass
class SuiteReport:
    suite: str
    checks: list[CheckResult]
    schema_version: int = SCHEMA_VERSION

    @property
    def summary(self) -> dict[str, int]:
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for check in self.checks:
            counts[SUMMARY_KEYS[check.status]] += 1
        counts["total"] = len(self.checks)
        return counts

    @property
    def limit_exceeded(self) -> bool:
        return any(check.limit_exceeded for check in self.checks)

    @property
    def failed(self) -> bool:
        return any(check.status == CheckStatus.FAIL for check in self.checks)

    def exit_code(self) -> int:
        """0 all pass, 3 a completion bound was hit, 1 any other failure."""
        if self.limit_exceeded:
            return 3
        if self.failed:
            return 1
        return 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "suite": self.suite,
            "summary": self.summary,
            "checks": [check.to_dict() for check in self.checks],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> SuiteReport:
        return cls(
            suite=data["suite"],
            checks=[CheckResult.from_dict(c) for c in data.get("checks", [])],
            schema_version=int(data.get("schema_version", SCHEMA_VERSION)),
        )


def witness_text(
    residual: Union[TensorPolynomial, PhaseCoefficient, str, None],
    theta: Optional[float] = None,
) -> Optional[str]:
    """Canonical text of a residual, cut after a dozen terms.

    With ``theta`` the coefficients are evaluated numerically.
    """
    if residual is None:
        return None
    if isinstance(residual, str):
        return residual
    if isinstance(residual, PhaseCoefficient):
        if theta is not None:
            value = residual.eval_numeric(theta)
            return f"({value.real:.12g}{value.imag:+.12g}j)"
        return residual.to_text()
    if len(residual) <= WITNESS_TERMS:
        return residual.to_text(theta)
    head = type(residual)._new(
        residual.legs, {k: residual.terms[k] for k in residual.sorted_keys()[:WITNESS_TERMS]}
    )
    return f"{head.to_text(theta)} + ... ({len(residual) - WITNESS_TERMS} more terms)"


Residual = Union[TensorPolynomial, PhaseCoefficient]
Case = tuple[Residual, Optional[Residual]]


def _size(residual: Residual) -> int:
    if isinstance(residual, TensorPolynomial):
        return len(residual)
    return len(residual.terms)


def _reduce(system: RewriteSystem, residual: Residual, leg: int) -> Residual:
    if isinstance(residual, TensorPolynomial):
        return system.reduce(residual, leg)
    return residual


def _holds_modulo(
    system: RewriteSystem, lhs: Residual, rhs: Optional[Residual], leg: int
) -> bool:
    reduced = _reduce(system, lhs, leg)
    if rhs is not None:
        reduced = reduced - _reduce(system, rhs, leg)
    return reduced.is_zero()


class CheckRecorder:
    """Collects :class:`CheckResult` objects for one check group.

    ``modulo`` reduces a residual before it is judged. ``recheck`` keeps the
    verdict free and records in ``recheck_pass`` whether the identity also
    holds with both sides reduced modulo the given system.
    """

    def __init__(self, group: str, options: Optional[RunOptions] = None):
        self.group = group
        self.theta = options.theta if options is not None else None
        self.results: list[CheckResult] = []
        self._mark = time.perf_counter()

    def start(self) -> None:
        self._mark = time.perf_counter()

    def _elapsed_ms(self) -> float:
        now = time.perf_counter()
        elapsed = (now - self._mark) * 1000
        self._mark = now
        return round(elapsed, 3)

    def record(
        self,
        id: str,
        statement: str,
        paper_ref: str,
        status: CheckStatus,
        witness: Optional[str] = None,
        **metrics: Any,
    ) -> CheckResult:
        metrics["wall_ms"] = self._elapsed_ms()
        result = CheckResult(id, statement, paper_ref, status, witness, metrics)
        self.results.append(result)
        return result

    def _judge(
        self,
        id: str,
        statement: str,
        paper_ref: str,
        cases: Mapping[str, Case],
        modulo: Optional[RewriteSystem],
        recheck: Optional[RewriteSystem],
        leg: int,
        metrics: dict[str, Any],
        labelled: bool,
    ) -> CheckResult:
        residuals: dict[str, Residual] = {}
        for label, (lhs, rhs) in cases.items():
            residuals[label] = lhs if rhs is None else lhs - rhs
        metrics.setdefault("terms_before", sum(_size(r) for r in residuals.values()))
        if modulo is not None:
            metrics["modulo"] = modulo.name
            metrics.setdefault("free", all(r.is_zero() for r in residuals.values()))
            residuals = {label: _reduce(modulo, r, leg) for label, r in residuals.items()}
        metrics.setdefault("residual_terms", sum(_size(r) for r in residuals.values()))
        failing = [label for label, r in residuals.items() if not r.is_zero()]

        witness = None
        if failing:
            first = residuals[failing[0]]
            witness = witness_text(first)
            if labelled:
                witness = f"{failing[0]}: {witness}"
            if self.theta is not None:
                metrics["witness_numeric"] = witness_text(first, self.theta)
        if recheck is not None and modulo is None:
            metrics["recheck"] = recheck.name
            metrics["recheck_pass"] = all(
                _holds_modulo(recheck, lhs, rhs, leg) for lhs, rhs in cases.values()
            )
        if labelled and failing:
            metrics["failing"] = failing
        return self.record(
            id,
            statement,
            paper_ref,
            CheckStatus.FAIL if failing else CheckStatus.PASS,
            witness,
            **metrics,
        )

    def zero(
        self,
        id: str,
        statement: str,
        paper_ref: str,
        residual: Residual,
        *,
        modulo: Optional[RewriteSystem] = None,
        recheck: Optional[RewriteSystem] = None,
        leg: int = 0,
        **metrics: Any,
    ) -> CheckResult:
        cases = {"": (residual, None)}
        return self._judge(
            id, statement, paper_ref, cases, modulo, recheck, leg, metrics, labelled=False
        )

    def equal(
        self,
        id: str,
        statement: str,
        paper_ref: str,
        lhs: TensorPolynomial,
        rhs: TensorPolynomial,
        *,
        modulo: Optional[RewriteSystem] = None,
        recheck: Optional[RewriteSystem] = None,
        leg: int = 0,
        **metrics: Any,
    ) -> CheckResult:
        metrics.setdefault("lhs_terms", len(lhs))
        cases = {"": (lhs, rhs)}
        return self._judge(
            id, statement, paper_ref, cases, modulo, recheck, leg, metrics, labelled=False
        )

    def zeros(
        self,
        id: str,
        statement: str,
        paper_ref: str,
        residuals: Mapping[str, Residual],
        *,
        modulo: Optional[RewriteSystem] = None,
        recheck: Optional[RewriteSystem] = None,
        leg: int = 0,
        **metrics: Any,
    ) -> CheckResult:
        """One check over many cases; the witness names the first failing case."""
        metrics.setdefault("cases", len(residuals))
        cases = {label: (r, None) for label, r in residuals.items()}
        return self._judge(
            id, statement, paper_ref, cases, modulo, recheck, leg, metrics, labelled=True
        )

    def equalities(
        self,
        id: str,
        statement: str,
        paper_ref: str,
        pairs: Mapping[str, tuple[Residual, Residual]],
        *,
        modulo: Optional[RewriteSystem] = None,
        recheck: Optional[RewriteSystem] = None,
        leg: int = 0,
        **metrics: Any,
    ) -> CheckResult:
        """Like :meth:`zeros` for ``lhs = rhs`` cases, kept apart for ``recheck``."""
        metrics.setdefault("cases", len(pairs))
        cases = {label: (lhs, rhs) for label, (lhs, rhs) in pairs.items()}
        return self._judge(
            id, statement, paper_ref, cases, modulo, recheck, leg, metrics, labelled=True
        )

    def truth(
        self,
        id: str,
        statement: str,
        paper_ref: str,
        ok: bool,
        witness: Optional[str] = None,
        **metrics: Any,
    ) -> CheckResult:
        return self.record(
            id,
            statement,
            paper_ref,
            CheckStatus.PASS if ok else CheckStatus.FAIL,
            None if ok else (witness or "false"),
            **metrics,
        )

    def skipped(self, id: str, statement: str, paper_ref: str, reason: str) -> CheckResult:
        return self.record(id, statement, paper_ref, CheckStatus.SKIPPED, None, reason=reason)

    @contextmanager
    def guard(self, id: str, statement: str, paper_ref: str) -> Iterator[None]:
        """Turn engine errors raised inside the block into a failed check."""
        try:
            yield
        except CompletionLimitExceeded as exc:
            self.record(
                id,
                statement,
                paper_ref,
                CheckStatus.FAIL,
                str(exc),
                limit_exceeded=True,
                limit=exc.limit,
            )
        except ThetaError as exc:
            self.record(id, statement, paper_ref, CheckStatus.FAIL, f"{type(exc).__name__}: {exc}")


def render_report_text(report: SuiteReport) -> str:
    lines = [f"suite {report.suite} (schema {report.schema_version})"]
    for check in report.checks:
        marker = {"pass": "ok  ", "fail": "FAIL", "skipped-structural": "skip"}[check.status.value]
        lines.append(f"  [{marker}] {check.id}: {check.statement}")
        if check.witness:
            lines.append(f"         witness: {check.witness}")
        if "witness_numeric" in check.metrics:
            lines.append(f"         numeric: {check.metrics['witness_numeric']}")
    summary = report.summary
    lines.append(
        f"{summary['pass']} passed, {summary['fail']} failed, "
        f"{summary['skipped']} skipped of {summary['total']}"
    )
    return "\n".join(lines)
