"""Shared fixtures for the check group tests."""

from typing import Callable

import pytest

from theta_instantons.report import CheckResult, CheckStatus, RunOptions


@pytest.fixture
def options() -> RunOptions:
    """Small sample counts keep the randomized groups quick."""
    return RunOptions(samples=100)


@pytest.fixture
def run_group(options: RunOptions) -> Callable[..., dict[str, CheckResult]]:
    """Run a check group, assert nothing failed and index the results by id.

    Ids in ``allowed_failures`` may fail; the test asserts on them itself.
    """

    def run(group, allowed_failures=(), **overrides) -> dict[str, CheckResult]:
        opts = RunOptions(**{**options.__dict__, **overrides}) if overrides else options
        results = group(opts)
        failed = [
            f"{r.id}: {r.witness}"
            for r in results
            if r.status == CheckStatus.FAIL and r.id not in allowed_failures
        ]
        assert not failed, "\n".join(failed)
        ids = [r.id for r in results]
        assert len(ids) == len(set(ids)), "duplicate check ids"
        return {r.id: r for r in results}

    return run
