"""CSV report rows: one row per completed job, in grid order."""

import csv
import logging
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Optional

from hardy_moments.errors import ConfigParseError
from hardy_moments.moments import MomentReport

logger = logging.getLogger(__name__)

HEADER = (
    "kind", "T", "N", "A", "alpha",
    "lhs_re", "lhs_im", "main_re", "main_im",
    "residual", "bound", "ratio",
    "prec_bits", "eps_slack", "tol", "fitted_C_so_far", "runtime_ms",
)


@dataclass(frozen=True)
class ReportRow:
    """Flattened MomentReport plus the run settings.

    Parameters that do not apply are None; tol is None when the default
    quadrature tolerance was used. fitted_C_so_far is the largest ratio of
    the same kind up to and including this row.
    """
    kind: str
    T: Optional[float]
    N: Optional[int]
    A: Optional[float]
    alpha: Optional[float]
    lhs_re: float
    lhs_im: float
    main_re: float
    main_im: float
    residual: float
    bound: float
    ratio: float
    prec_bits: int
    eps_slack: float
    tol: Optional[float]
    fitted_C_so_far: float
    runtime_ms: int

    @classmethod
    def from_report(cls, report: MomentReport, tol: Optional[float] = None,
                    fitted_C_so_far: Optional[float] = None) -> "ReportRow":
        spec = report.spec

        def optional(value, kind=float):
            return None if value is None else kind(value)

        return cls(
            kind=spec.kind.value,
            T=optional(spec.T),
            N=optional(spec.N, int),
            A=optional(spec.A),
            alpha=optional(spec.alpha),
            lhs_re=report.lhs.real,
            lhs_im=report.lhs.imag,
            main_re=report.main.real,
            main_im=report.main.imag,
            residual=report.residual,
            bound=report.bound,
            ratio=report.ratio,
            prec_bits=report.prec_bits,
            eps_slack=float(spec.eps_slack),
            tol=optional(tol),
            fitted_C_so_far=report.ratio if fitted_C_so_far is None else float(fitted_C_so_far),
            runtime_ms=report.runtime_ms,
        )

    def numeric_columns(self) -> tuple:
        """Every column except runtime_ms."""
        return tuple(getattr(self, f.name) for f in fields(self) if f.name != "runtime_ms")


def report_rows(reports, tol: Optional[float] = None) -> list:
    """ReportRows in grid order, carrying the running largest ratio per kind."""
    fitted = {}
    rows = []
    for report in reports:
        kind = report.spec.kind.value
        fitted[kind] = max(fitted.get(kind, report.ratio), report.ratio)
        rows.append(ReportRow.from_report(report, tol=tol, fitted_C_so_far=fitted[kind]))
    return rows


_INT_COLUMNS = {"N", "prec_bits", "runtime_ms"}


def _format(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{value:.16e}"


def _parse(name: str, text: str):
    if name == "kind":
        return text
    if text == "":
        return None
    try:
        return int(text) if name in _INT_COLUMNS else float(text)
    except ValueError:
        raise ConfigParseError(f"column {name} holds {text!r}")


def emit_csv(rows, path) -> Path:
    """Write rows with the fixed header, 17 significant digits, LF line endings, UTF-8.

    Raises:
        OSError: If the file cannot be written.
    """
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(HEADER)
        for row in rows:
            writer.writerow([_format(getattr(row, name)) for name in HEADER])
    logger.info("wrote %d rows to %s", len(rows), path)
    return path


def parse_csv(path) -> list:
    """Read rows written by emit_csv.

    Raises:
        ConfigParseError: If the header or a field does not match the schema.
    """
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if tuple(header or ()) != HEADER:
            raise ConfigParseError(f"{path} does not carry the report header")
        rows = []
        for line in reader:
            if len(line) != len(HEADER):
                raise ConfigParseError(f"{path}: row has {len(line)} fields, expected {len(HEADER)}")
            rows.append(ReportRow(**{name: _parse(name, text) for name, text in zip(HEADER, line)}))
    return rows
