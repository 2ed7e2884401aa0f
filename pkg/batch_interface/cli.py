#!/usr/bin/env python3
"""Command-line entry point for batch moment verification.

    hardy-moments verify --kind th1 --grid T=500:16000:x2 --prec 128 --out th1.csv
    hardy-moments calibrate --kind second_moment --grid T=100,1000 --out cal.csv
    hardy-moments sweep --plan plan.json --jobs 4 --out sweep.csv
    hardy-moments table --nmax 1000000 --out d.bin

Exit codes: 0 all jobs completed, 2 some job failed, 64 bad configuration,
74 file error.
"""

import argparse
import asyncio
import logging
import sys
from typing import Optional

from hardy_moments.errors import ConfigParseError, TableCacheError, UnknownKind

from .config import RunConfig
from .handlers import HandlerChain, SweepHandler, TableHandler, VerifyHandler

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_JOB_FAILED = 2
EXIT_USAGE = 64
EXIT_IO = 74


class ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises ConfigParseError instead of exiting."""

    def error(self, message):
        raise ConfigParseError(message)


def setup_logger(verbose: bool = False, log_file: Optional[str] = None) -> logging.Logger:
    """Configure root logging to stderr and, optionally, a file.

    Args:
        verbose: Log DEBUG instead of INFO.
        log_file: Extra log destination.

    Returns:
        The root logger.
    """
    root = logging.getLogger()
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    log_format = logging.Formatter(
        "%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    for handler in list(root.handlers):
        root.removeHandler(handler)
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(log_format)
    root.addHandler(console_handler)
    if log_file:
        file_handler = logging.FileHandler(log_file, mode="a", encoding="utf-8")
        file_handler.setFormatter(log_format)
        root.addHandler(file_handler)
    return root


def default_chain() -> HandlerChain:
    return HandlerChain.of(VerifyHandler(), SweepHandler(), TableHandler())


def build_parser(chain: HandlerChain) -> ArgumentParser:
    """Top-level parser with one sub-command per handler."""
    parser = ArgumentParser(prog="hardy-moments", description="Numerical verification of Hardy Z moment formulas")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--log-file", dest="log_file", default=None, help="also log to this file")
    subparsers = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    subparsers.required = True
    chain.configure_parsers(subparsers)
    return parser


def run(config: RunConfig, chain: Optional[HandlerChain] = None) -> int:
    """Execute one validated configuration and map failures to exit codes."""
    chain = chain or default_chain()
    try:
        return asyncio.run(chain.dispatch(config))
    except (ConfigParseError, UnknownKind) as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_USAGE
    except (TableCacheError, OSError) as exc:
        logger.error("file error: %s", exc)
        return EXIT_IO


def main(argv=None) -> int:
    chain = default_chain()
    parser = build_parser(chain)
    try:
        args = parser.parse_args(argv)
    except ConfigParseError as exc:
        print(f"hardy-moments: {exc}", file=sys.stderr)
        return EXIT_USAGE
    setup_logger(args.verbose, args.log_file)
    try:
        config = RunConfig.from_args(args)
    except (ConfigParseError, UnknownKind) as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_USAGE
    except OSError as exc:
        logger.error("file error: %s", exc)
        return EXIT_IO
    return run(config, chain)


if __name__ == "__main__":
    sys.exit(main())
