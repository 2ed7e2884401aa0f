"""Job scheduling and the fitted-constant summary."""

import asyncio
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from hardy_moments.divisor import build_table, load_table
from hardy_moments.moments import MomentDependencies, MomentReport, MomentSpec, fit_reports, run_moment

logger = logging.getLogger(__name__)

_worker_deps: Optional[MomentDependencies] = None


@dataclass(frozen=True)
class JobOutcome:
    """Result of one grid point: a report, or the error that stopped it."""
    index: int
    spec: MomentSpec
    report: Optional[MomentReport] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.report is not None


def _execute(index: int, spec: MomentSpec, deps: MomentDependencies) -> JobOutcome:
    logger.info("job %d: %s started", index, spec.kind.value)
    try:
        report = run_moment(spec, deps)
    except Exception as exc:
        logger.error("job %d: %s failed: %s: %s", index, spec.kind.value, type(exc).__name__, exc)
        return JobOutcome(index, spec, error=f"{type(exc).__name__}: {exc}")
    logger.info("job %d: %s finished in %d ms, ratio %.3g", index, spec.kind.value, report.runtime_ms, report.ratio)
    return JobOutcome(index, spec, report=report)


def _init_worker(deps: MomentDependencies):
    global _worker_deps
    _worker_deps = deps


def _execute_in_worker(index: int, spec: MomentSpec) -> JobOutcome:
    return _execute(index, spec, _worker_deps)


class JobScheduler:
    """Runs verification jobs, up to `jobs` at a time, returning outcomes in grid order."""

    def __init__(self, deps: MomentDependencies, jobs: int = 1):
        """Initialize with shared dependencies.

        Args:
            deps: Read-only dependencies handed to every job.
            jobs: Number of worker processes; 1 runs in-process.
        """
        self.deps = deps
        self.jobs = jobs

    async def run(self, specs) -> list:
        """Run every spec.

        Args:
            specs: MomentSpec list in grid order.

        Returns:
            List of JobOutcome in the same order.
        """
        specs = list(specs)
        if self.jobs == 1 or len(specs) <= 1:
            return [_execute(i, spec, self.deps) for i, spec in enumerate(specs)]
        loop = asyncio.get_running_loop()
        workers = min(self.jobs, len(specs))
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(self.deps,)) as pool:
            futures = [loop.run_in_executor(pool, _execute_in_worker, i, spec) for i, spec in enumerate(specs)]
            return list(await asyncio.gather(*futures))


def prepare_table(limit: int, table_path=None):
    """Load the cached table when it covers limit, else build one; None when limit is 0.

    Raises:
        TableCacheError: If the cache file exists but fails validation.
    """
    if limit <= 0:
        return None
    if table_path is not None and table_path.exists():
        table = load_table(table_path)
        if table.limit >= limit:
            logger.info("using cached divisor table %s (limit %d)", table_path, table.limit)
            return table
        logger.warning("cached table %s reaches %d, need %d; building in memory", table_path, table.limit, limit)
    return build_table(limit)


def _number(value: Optional[float]) -> str:
    return "-" if value is None or not math.isfinite(value) else f"{value:.4g}"


def summarize(outcomes) -> str:
    """Per-kind fitted constant, log-log slope and ratio growth as a text table."""
    reports = [o.report for o in outcomes if o.ok]
    failed = sum(1 for o in outcomes if not o.ok)
    lines = [f"{'kind':<14} {'points':>6} {'fitted_C':>10} {'slope':>8} {'growth':>8}"]
    for fit in fit_reports(reports):
        lines.append(f"{fit.kind.value:<14} {fit.points:>6} {_number(fit.fitted_C):>10} "
                     f"{_number(fit.slope):>8} {_number(fit.growth):>8}")
    if failed:
        lines.append(f"{failed} job(s) failed")
    return "\n".join(lines)
