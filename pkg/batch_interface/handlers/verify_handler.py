"""Handler for the verify and calibrate commands."""

import logging

from hardy_moments.moments import MomentDependencies, required_table_limit
from hardy_moments.numerics import PrecisionContext

from ..config import BACKENDS, RunConfig
from ..csv_report import emit_csv, report_rows
from ..runner import JobScheduler, prepare_table, summarize
from .base_handler import BaseHandler

logger = logging.getLogger(__name__)


def add_run_options(parser):
    """Options shared by every command that runs moment jobs."""
    parser.add_argument("--prec", type=int, default=None,
                        help="working precision in bits (default: $HML_PREC_BITS or 128)")
    parser.add_argument("--eps-slack", dest="eps_slack", type=float, default=0.05,
                        help="stand-in for the epsilon of the error exponents")
    parser.add_argument("--tol", type=float, default=None, help="absolute quadrature tolerance")
    parser.add_argument("--table", default=None, help="divisor table cache to reuse")
    parser.add_argument("--jobs", type=int, default=1, help="number of parallel jobs")
    parser.add_argument("--backend", choices=BACKENDS, default="float64", help="integrand evaluation backend")
    parser.add_argument("--out", required=True, help="CSV report path")


class VerifyHandler(BaseHandler):
    """Runs a grid of moment experiments and writes the CSV report."""
    commands = ("verify", "calibrate")

    def configure_parser(self, subparsers) -> None:
        for command, text in (("verify", "verify a moment formula over a grid"),
                              ("calibrate", "run the classical calibration moments over a grid")):
            parser = subparsers.add_parser(command, help=text)
            parser.add_argument("--kind", required=True, help="moment kind, e.g. th1, th2, second_moment")
            parser.add_argument("--grid", required=True, help="parameter grid, e.g. T=500:16000:x2")
            add_run_options(parser)

    def can_handle(self, command: str) -> bool:
        return command in self.commands

    async def handle(self, config: RunConfig) -> int:
        specs = config.specs()
        limit = max((required_table_limit(spec) for spec in specs), default=0)
        table = prepare_table(limit, config.table_path)
        deps = MomentDependencies(ctx=PrecisionContext(config.prec_bits), table=table,
                                  tol=config.tol, backend=config.backend)
        logger.info("%s: %d jobs on %d worker(s)", config.command, len(specs), config.jobs)
        outcomes = await JobScheduler(deps, config.jobs).run(specs)
        rows = report_rows([outcome.report for outcome in outcomes if outcome.ok], tol=config.tol)
        emit_csv(rows, config.out_path)
        print(summarize(outcomes))
        return 0 if all(outcome.ok for outcome in outcomes) else 2
