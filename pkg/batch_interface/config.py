"""Run configuration and the parameter-grid syntax.

A grid is a ';'-separated list of axes, each NAME=ITEMS with comma-separated
items. An item is a number, a geometric range start:stop:xF or an arithmetic
range start:stop:+S (both inclusive). Axes combine as a cartesian product in
the order given, the last axis varying fastest:

    T=500:16000:x2          -> T = 500, 1000, ..., 16000
    N=1000;A=0.5,1,2,4      -> four (N, A) points
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from hardy_moments.config import Config
from hardy_moments.errors import ConfigParseError, HardyMomentsError
from hardy_moments.moments import MomentKind, MomentSpec

logger = logging.getLogger(__name__)

COMMANDS = ("verify", "calibrate", "table", "sweep")
BACKENDS = ("float64", "mp")
_PARAM_NAMES = {"T": "T", "T1": "T", "N": "N", "A": "A", "alpha": "alpha", "delta": "delta", "c": "c"}
_MAX_GRID_POINTS = 10**5


def _number(text: str):
    text = text.strip()
    try:
        return int(text)
    except ValueError:
        pass
    try:
        value = float(text)
    except ValueError:
        raise ConfigParseError(f"not a number: {text!r}")
    if not math.isfinite(value):
        raise ConfigParseError(f"grid values must be finite, got {text!r}")
    return value


def _expand_range(item: str) -> list:
    start_text, stop_text, step_text = item.split(":")
    start, stop = _number(start_text), _number(stop_text)
    if stop < start:
        raise ConfigParseError(f"range {item!r} runs backwards")
    step_text = step_text.strip()
    values = []
    if step_text.startswith("x"):
        factor = _number(step_text[1:])
        if not factor > 1:
            raise ConfigParseError(f"geometric factor must exceed 1 in {item!r}")
        if start <= 0:
            raise ConfigParseError(f"geometric range {item!r} must start above 0")
        value = start
        while value <= stop * (1 + 1e-12):
            values.append(value)
            value = value * factor
            if len(values) > _MAX_GRID_POINTS:
                raise ConfigParseError(f"range {item!r} is too long")
    elif step_text.startswith("+"):
        step = _number(step_text[1:])
        if not step > 0:
            raise ConfigParseError(f"arithmetic step must be positive in {item!r}")
        count = int(math.floor((stop - start) / step * (1 + 1e-12))) + 1
        if count > _MAX_GRID_POINTS:
            raise ConfigParseError(f"range {item!r} is too long")
        values = [start + j * step for j in range(count)]
    else:
        raise ConfigParseError(f"range step must be xF or +S, got {step_text!r}")
    return values


def _parse_axis(axis: str) -> tuple:
    name, sep, items = axis.partition("=")
    name = name.strip()
    if not sep or name not in _PARAM_NAMES:
        raise ConfigParseError(f"grid axis must be NAME=VALUES with NAME in {sorted(_PARAM_NAMES)}, got {axis!r}")
    values = []
    for item in items.split(","):
        item = item.strip()
        if not item:
            raise ConfigParseError(f"empty value in grid axis {axis!r}")
        if item.count(":") == 2:
            values.extend(_expand_range(item))
        elif ":" in item:
            raise ConfigParseError(f"range must be start:stop:step, got {item!r}")
        else:
            values.append(_number(item))
    return _PARAM_NAMES[name], values


def parse_grid(text: str) -> list:
    """Expand grid syntax into a list of parameter dicts in grid order.

    Args:
        text: Grid expression.

    Returns:
        List of {name: value} dicts.

    Raises:
        ConfigParseError: On malformed input or a repeated axis.
    """
    if not text or not text.strip():
        raise ConfigParseError("grid is empty")
    axes = [_parse_axis(axis) for axis in text.split(";") if axis.strip()]
    names = [name for name, _ in axes]
    if len(set(names)) != len(names):
        raise ConfigParseError(f"grid repeats an axis: {text!r}")
    points = [dict(zip(names, combo)) for combo in itertools.product(*(values for _, values in axes))]
    if len(points) > _MAX_GRID_POINTS:
        raise ConfigParseError(f"grid has {len(points)} points, limit is {_MAX_GRID_POINTS}")
    return points


@dataclass(frozen=True)
class GridPoint:
    """One job: a kind and its parameters."""
    kind: MomentKind
    params: tuple

    @classmethod
    def of(cls, kind, params: dict) -> "GridPoint":
        return cls(MomentKind.parse(kind), tuple(params.items()))

    def spec(self, eps_slack: float) -> MomentSpec:
        """Build the MomentSpec, reporting invalid parameters as ConfigParseError."""
        try:
            return MomentSpec(self.kind, eps_slack=eps_slack, **dict(self.params))
        except HardyMomentsError as exc:
            raise ConfigParseError(f"grid point {dict(self.params)} for {self.kind.value}: {exc}")


@dataclass(frozen=True)
class RunConfig:
    """Validated settings of one CLI invocation.

    Attributes:
        command: verify, calibrate, table or sweep.
        kind: Moment kind for verify and calibrate.
        grid: Jobs in grid order.
        prec_bits: Working precision.
        eps_slack: Exponent slack of the bounds.
        tol: Quadrature tolerance override.
        table_path: Divisor cache to reuse.
        out_path: CSV (or cache file for table).
        jobs: Parallel job count.
        backend: Integrand backend, float64 or mp.
        nmax: Table limit for the table command.
    """
    command: str
    out_path: Path
    kind: Optional[MomentKind] = None
    grid: tuple = ()
    prec_bits: int = Config.DEFAULT_PREC_BITS
    eps_slack: float = Config.EPS_SLACK
    tol: Optional[float] = None
    table_path: Optional[Path] = None
    jobs: int = 1
    backend: str = "float64"
    nmax: Optional[int] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigParseError(f"unknown command {self.command!r}")
        if self.prec_bits < Config.MIN_PREC_BITS:
            raise ConfigParseError(f"--prec must be >= {Config.MIN_PREC_BITS}, got {self.prec_bits}")
        if self.jobs < 1:
            raise ConfigParseError(f"--jobs must be >= 1, got {self.jobs}")
        if self.backend not in BACKENDS:
            raise ConfigParseError(f"--backend must be one of {BACKENDS}, got {self.backend!r}")
        if self.tol is not None and not self.tol > 0:
            raise ConfigParseError(f"--tol must be positive, got {self.tol}")
        if not (math.isfinite(self.eps_slack) and self.eps_slack >= 0):
            raise ConfigParseError(f"--eps-slack must be non-negative, got {self.eps_slack}")
        if self.command == "table":
            if self.nmax is None or self.nmax < 1:
                raise ConfigParseError("table needs --nmax >= 1")
        elif not self.grid:
            raise ConfigParseError(f"{self.command} needs a non-empty grid")
        if self.command == "calibrate" and not self.kind.is_calibration:
            raise ConfigParseError(f"calibrate takes hardy_z, second_moment or z3_dyadic, got {self.kind.value}")

    def specs(self) -> list:
        """MomentSpec for every grid point, in grid order."""
        return [point.spec(self.eps_slack) for point in self.grid]

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        """Build a RunConfig from parsed command-line arguments."""
        command = args.command
        common = dict(out_path=Path(args.out))
        if command == "table":
            return cls(command, nmax=args.nmax, **common)
        prec = args.prec if args.prec is not None else Config.default_prec_bits()
        common.update(
            prec_bits=prec,
            eps_slack=args.eps_slack,
            tol=args.tol,
            table_path=Path(args.table) if args.table else None,
            jobs=args.jobs,
            backend=args.backend,
        )
        if command == "sweep":
            return cls(command, grid=tuple(load_plan(args.plan)), **common)
        kind = MomentKind.parse(args.kind) if args.kind else None
        if kind is None:
            raise ConfigParseError(f"{command} needs --kind")
        grid = tuple(GridPoint.of(kind, params) for params in parse_grid(args.grid))
        return cls(command, kind=kind, grid=grid, **common)


def load_plan(path) -> list:
    """Read a sweep plan: {"runs": [{"kind": ..., "grid": ...}, ...]}.

    Raises:
        ConfigParseError: If the plan is malformed.
        OSError: If the file cannot be read.
    """
    with open(path, encoding="utf-8") as handle:
        try:
            plan = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigParseError(f"plan {path} is not valid JSON: {exc}")
    runs = plan.get("runs") if isinstance(plan, dict) else None
    if not isinstance(runs, list) or not runs:
        raise ConfigParseError(f"plan {path} needs a non-empty 'runs' list")
    points = []
    for run in runs:
        if not isinstance(run, dict) or "kind" not in run or "grid" not in run:
            raise ConfigParseError(f"each plan run needs 'kind' and 'grid', got {run!r}")
        kind = MomentKind.parse(run["kind"])
        points.extend(GridPoint.of(kind, params) for params in parse_grid(run["grid"]))
    logger.info("plan %s: %d runs, %d jobs", path, len(runs), len(points))
    return points
