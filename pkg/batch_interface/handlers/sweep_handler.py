"""Handler for the sweep command: several kinds and grids from one JSON plan."""

from .verify_handler import VerifyHandler, add_run_options


class SweepHandler(VerifyHandler):
    """Runs every grid of a plan into a single CSV report."""
    commands = ("sweep",)

    def configure_parser(self, subparsers) -> None:
        parser = subparsers.add_parser("sweep", help="run a JSON plan of grids")
        parser.add_argument("--plan", required=True, help='JSON plan {"runs": [{"kind": ..., "grid": ...}]}')
        add_run_options(parser)
