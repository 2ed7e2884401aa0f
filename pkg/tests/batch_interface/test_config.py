"""Tests for grid parsing, sweep plans and RunConfig validation."""

import json
from argparse import Namespace
from pathlib import Path

import pytest

from batch_interface.config import GridPoint, RunConfig, load_plan, parse_grid
from hardy_moments.errors import ConfigParseError, UnknownKind
from hardy_moments.moments import MomentKind


class TestParseGrid:
    """Grid syntax."""

    def test_geometric_range(self):
        """start:stop:xF includes both ends."""
        points = parse_grid("T=500:16000:x2")
        assert [p["T"] for p in points] == [500, 1000, 2000, 4000, 8000, 16000]

    def test_arithmetic_range(self):
        """start:stop:+S includes both ends."""
        points = parse_grid("alpha=-0.5:0.5:+0.25")
        assert [p["alpha"] for p in points] == pytest.approx([-0.5, -0.25, 0.0, 0.25, 0.5])

    def test_cartesian_order(self):
        """The last axis varies fastest."""
        points = parse_grid("N=1000,2000;A=0.5,1")
        assert points == [
            {"N": 1000, "A": 0.5}, {"N": 1000, "A": 1},
            {"N": 2000, "A": 0.5}, {"N": 2000, "A": 1},
        ]

    def test_mixed_items(self):
        """Lists may mix values and ranges."""
        points = parse_grid("T=100,1000:4000:x2")
        assert [p["T"] for p in points] == [100, 1000, 2000, 4000]

    def test_t1_alias(self):
        """T1 is stored as T."""
        assert parse_grid("T1=100;delta=0.5;c=1") == [{"T": 100, "delta": 0.5, "c": 1}]

    @pytest.mark.parametrize("text", [
        "",
        "T",
        "X=1",
        "T=",
        "T=1,,2",
        "T=abc",
        "T=inf",
        "T=1:2",
        "T=4:1:x2",
        "T=1:4:x1",
        "T=0:4:x2",
        "T=1:4:-1",
        "T=1:4:+0",
        "T=1;T=2",
        "T1=1;T=2",
    ])
    def test_malformed(self, text):
        """Malformed grids are configuration errors."""
        with pytest.raises(ConfigParseError):
            parse_grid(text)


class TestGridPoint:
    """Grid points become MomentSpec."""

    def test_spec(self):
        """Parameters and eps_slack reach the spec."""
        spec = GridPoint.of("th4", {"T": 1000, "alpha": 0.25}).spec(0.1)
        assert spec.kind is MomentKind.TH4
        assert (spec.T, spec.alpha, spec.eps_slack) == (1000, 0.25, 0.1)

    def test_invalid_point(self):
        """Out-of-range parameters surface as configuration errors."""
        with pytest.raises(ConfigParseError):
            GridPoint.of("th1", {"T": 10}).spec(0.05)

    def test_unknown_kind(self):
        """Unknown kinds are rejected when the point is made."""
        with pytest.raises(UnknownKind):
            GridPoint.of("th9", {"T": 1000})


class TestLoadPlan:
    """JSON sweep plans."""

    def test_runs_in_order(self, tmp_path):
        """Runs expand one after another."""
        plan = tmp_path / "plan.json"
        plan.write_text(json.dumps({"runs": [
            {"kind": "th1", "grid": "T=1000,2000"},
            {"kind": "th2", "grid": "N=1000;A=1"},
        ]}), encoding="utf-8")
        points = load_plan(plan)
        assert [p.kind for p in points] == [MomentKind.TH1, MomentKind.TH1, MomentKind.TH2]
        assert dict(points[2].params) == {"N": 1000, "A": 1}

    @pytest.mark.parametrize("content", [
        "not json",
        "[]",
        '{"runs": []}',
        '{"runs": [{"kind": "th1"}]}',
    ])
    def test_malformed(self, tmp_path, content):
        """Broken plans are configuration errors."""
        plan = tmp_path / "plan.json"
        plan.write_text(content, encoding="utf-8")
        with pytest.raises(ConfigParseError):
            load_plan(plan)

    def test_missing_file(self, tmp_path):
        """A missing plan is a file error."""
        with pytest.raises(OSError):
            load_plan(tmp_path / "absent.json")


def _args(**overrides):
    values = dict(command="verify", out="out.csv", kind="th1", grid="T=1000", prec=128, eps_slack=0.05,
                  tol=None, table=None, jobs=1, backend="float64")
    values.update(overrides)
    return Namespace(**values)


class TestRunConfig:
    """Validation of CLI settings."""

    def test_from_args(self):
        """verify arguments produce a grid of points."""
        config = RunConfig.from_args(_args(grid="T=1000:4000:x2", jobs=3))
        assert config.kind is MomentKind.TH1
        assert len(config.grid) == 3
        assert config.jobs == 3
        assert config.out_path == Path("out.csv")
        assert [spec.T for spec in config.specs()] == [1000, 2000, 4000]

    def test_default_precision_from_env(self, monkeypatch):
        """Without --prec the environment decides."""
        monkeypatch.setenv("HML_PREC_BITS", "96")
        assert RunConfig.from_args(_args(prec=None)).prec_bits == 96

    def test_table_command(self):
        """table needs only --nmax and --out."""
        config = RunConfig.from_args(Namespace(command="table", out="d.bin", nmax=5000))
        assert config.nmax == 5000

    @pytest.mark.parametrize("overrides", [
        {"prec": 16},
        {"jobs": 0},
        {"tol": 0.0},
        {"eps_slack": -0.01},
        {"backend": "gpu"},
        {"command": "calibrate"},
    ])
    def test_invalid(self, overrides):
        """Bad settings are configuration errors."""
        with pytest.raises(ConfigParseError):
            RunConfig.from_args(_args(**overrides))

    def test_table_without_nmax(self):
        """table with nmax 0 is refused."""
        with pytest.raises(ConfigParseError):
            RunConfig("table", Path("d.bin"), nmax=0)

    def test_specs_report_bad_points(self):
        """Points outside a kind's domain fail when specs are built."""
        config = RunConfig.from_args(_args(kind="th4", grid="T=1000;alpha=0.9"))
        with pytest.raises(ConfigParseError):
            config.specs()
