"""Suite registry and runner shared by the CLI and the tests."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from multiprocessing import Pool
from pathlib import Path
from typing import Callable, Optional

from ..catalog import check_relation_table, check_star_consistency
from ..coaction import (
    check_bialgebra_relations,
    check_coaction_maps,
    check_inflated_sphere,
    check_so51,
    check_top_form,
    check_transf4_fixtures,
)
from ..config import RunContext
from ..errors import CompletionLimitExceeded, UnknownSuiteError
from ..hopf import (
    check_complements,
    check_determinant,
    check_epsilon,
    check_homogeneous_spaces,
    check_hopf_axioms,
    check_sp_ideal,
)
from ..instanton import (
    check_basic_instanton,
    check_boundary,
    check_family_projection,
    check_m_theta,
    check_mvn_equivalence,
    check_omega_invariance,
)
from ..integrity import check_engine_integrity
from ..output.format import dump_json
from ..report import CheckResult, CheckStatus, RunOptions, SuiteReport

logger = logging.getLogger(__name__)

CheckGroup = Callable[[RunOptions], list[CheckResult]]


@dataclass(frozen=True)
class Suite:
    name: str
    description: str
    groups: tuple[CheckGroup, ...]


SUITES: dict[str, Suite] = {
    suite.name: suite
    for suite in (
        Suite(
            "appendix-a",
            "derived commutation tables against the transcribed SL(2,H) relations",
            (check_relation_table,),
        ),
        Suite(
            "determinant",
            "quantum determinant, Laplace expansions, complements, top form",
            (check_determinant, check_complements, check_top_form),
        ),
        Suite("hopf", "coproduct, counit and antipode axioms", (check_hopf_axioms,)),
        Suite("sp-ideal", "the Sp(2) Hopf ideal and block unitarity", (check_sp_ideal,)),
        Suite("homogeneous", "quotient maps and coinvariants", (check_homogeneous_spaces,)),
        Suite(
            "coaction",
            "coaction on C^4, forms and the inflated sphere",
            (
                check_coaction_maps,
                check_bialgebra_relations,
                check_inflated_sphere,
                check_transf4_fixtures,
            ),
        ),
        Suite(
            "so51",
            "minors, metrics, the C matrix and the epsilon tensor",
            (check_so51, check_epsilon),
        ),
        Suite("instanton", "basic projection and its connection", (check_basic_instanton,)),
        Suite(
            "family",
            "transformed projections and invariance of the connection",
            (check_family_projection, check_omega_invariance),
        ),
        Suite("mvn", "Murray-von Neumann equivalence", (check_mvn_equivalence,)),
        Suite("mtheta", "generators and relations of the parameter space", (check_m_theta,)),
        Suite("boundary", "hyperboloid boundary and its phases", (check_boundary,)),
        Suite(
            "oracle",
            "engine self-tests against reference procedures",
            (check_engine_integrity,),
        ),
        Suite(
            "star-consistency",
            "torus degrees against the commutation tables",
            (check_star_consistency,),
        ),
    )
}

ALL_SUITE = "all"

SUITE_ALIASES = {"relation-table": "appendix-a"}


def list_suites() -> list[dict]:
    rows = [
        {"name": s.name, "description": s.description, "groups": len(s.groups)}
        for s in SUITES.values()
    ]
    rows.append(
        {"name": ALL_SUITE, "description": "every suite above", "groups": len(_all_groups())}
    )
    for alias, target in SUITE_ALIASES.items():
        groups = len(SUITES[target].groups)
        rows.append({"name": alias, "description": f"alias of {target}", "groups": groups})
    return rows


def _all_groups() -> tuple[CheckGroup, ...]:
    seen: list[CheckGroup] = []
    for suite in SUITES.values():
        for group in suite.groups:
            if group not in seen:
                seen.append(group)
    return tuple(seen)


def suite_groups(name: str) -> tuple[CheckGroup, ...]:
    if name == ALL_SUITE:
        return _all_groups()
    suite = SUITES.get(SUITE_ALIASES.get(name, name))
    if suite is None:
        raise UnknownSuiteError(
            f"unknown suite {name!r}",
            [f"available suites: {', '.join([*SUITES, ALL_SUITE, *SUITE_ALIASES])}"],
        )
    return suite.groups


def _run_group(group: CheckGroup, options: RunOptions) -> list[CheckResult]:
    """Run one group; any error it raises becomes a single failed check."""
    logger.debug("starting %s", group.__name__)
    try:
        results = group(options)
    except Exception as exc:
        logger.exception("check group %s raised", group.__name__)
        return [
            CheckResult(
                id=f"{group.__module__.rsplit('.', 1)[-1]}.{group.__name__}",
                statement="check group ran to completion",
                paper_ref="engine",
                status=CheckStatus.FAIL,
                witness=f"{type(exc).__name__}: {exc}",
                metrics={"limit_exceeded": isinstance(exc, CompletionLimitExceeded)},
            )
        ]
    logger.debug("finished %s with %d checks", group.__name__, len(results))
    return results


def options_from_context(
    context: RunContext,
    *,
    completion_limit: Optional[int] = None,
    stretch: Optional[bool] = None,
    theta: Optional[float] = None,
) -> RunOptions:
    return RunOptions(
        completion_limit=completion_limit or context.completion_limit,
        stretch=context.stretch if stretch is None else stretch,
        seed=context.seed,
        samples=context.samples,
        theta=context.theta if theta is None else theta,
    )


def run_suite(
    name: str,
    options: Optional[RunOptions] = None,
    parallelism: int = 1,
) -> SuiteReport:
    """Run every check group of a suite and merge the results by check id."""
    name = SUITE_ALIASES.get(name, name)
    options = options or RunOptions()
    groups = suite_groups(name)
    if parallelism > 1 and len(groups) > 1:
        with Pool(min(parallelism, len(groups))) as pool:
            pending = [pool.apply_async(_run_group, (group, options)) for group in groups]
            pool.close()
            pool.join()
            batches = [p.get() for p in pending]
    else:
        batches = [_run_group(group, options) for group in groups]
    checks = sorted((c for batch in batches for c in batch), key=lambda c: c.id)
    return SuiteReport(suite=name, checks=checks)


def verify(
    name: str,
    context: RunContext,
    *,
    parallelism: Optional[int] = None,
    completion_limit: Optional[int] = None,
    stretch: Optional[bool] = None,
    theta: Optional[float] = None,
    out: Optional[Path] = None,
) -> dict:
    """Run a suite with resolved configuration and persist the report if asked."""
    options = options_from_context(
        context,
        completion_limit=completion_limit,
        stretch=stretch,
        theta=theta,
    )
    report = run_suite(name, options, parallelism or context.parallelism)
    payload = report.to_dict()
    written = []
    if out is not None:
        written.append(save_report(payload, out))
    if context.save_reports:
        written.append(save_report(payload, context.get_report_dir() / f"{name}.json"))
    return {"report": report, "payload": payload, "written": [str(p) for p in written]}


def save_report(payload: dict, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dump_json(payload), encoding="utf-8")
    return path
