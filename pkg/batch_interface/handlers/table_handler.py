"""Handler for the table command."""

import logging

from hardy_moments.divisor import build_table, read_header, save_table

from ..config import RunConfig
from .base_handler import BaseHandler

logger = logging.getLogger(__name__)


class TableHandler(BaseHandler):
    """Builds a divisor table and writes it to a cache file."""

    def configure_parser(self, subparsers) -> None:
        parser = subparsers.add_parser("table", help="build a divisor-table cache file")
        parser.add_argument("--nmax", type=int, required=True, help="largest n in the table")
        parser.add_argument("--out", required=True, help="cache file path")

    def can_handle(self, command: str) -> bool:
        return command == "table"

    async def handle(self, config: RunConfig) -> int:
        table = build_table(config.nmax)
        path = save_table(table, config.out_path)
        version, limit = read_header(path)
        print(f"{path}: N_max = {limit}, cache version {version}")
        return 0
