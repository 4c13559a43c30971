"""Integration tests for the command-line interface."""

from pathlib import Path
from unittest.mock import Mock

import pytest
from pytest_mock import MockerFixture
from typer.testing import CliRunner

from mq_entanglement.cli import app
from mq_entanglement.errors import ConsistencyError
from mq_entanglement.models import CheckResult
from mq_entanglement.sweep import SweepRunner

pytestmark = pytest.mark.integration

runner = CliRunner()


@pytest.fixture(autouse=True)
def isolated_cwd(tmp_path: Path, monkeypatch: pytest.MonkeyPatch) -> Path:
    """Run each command from an empty directory."""
    monkeypatch.chdir(tmp_path)
    return tmp_path


def read_rows(path: Path) -> list[list[str]]:
    return [line.split(",") for line in path.read_text().splitlines()]


def test_sweep_pair_to_file(isolated_cwd: Path) -> None:
    """Test the default preset sweep writes 801 rows plus a header."""
    out = isolated_cwd / "fig1.csv"
    result = runner.invoke(
        app, ["sweep", "--system", "pair", "--channels", "J0,J2,E", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    rows = read_rows(out)
    assert rows[0] == ["t_ms", "J0", "J2", "E"]
    assert len(rows) == 802
    assert rows[-1][0] == "4.00000000000e-01"


def test_sweep_to_stdout() -> None:
    """Test CSV goes to stdout with '-'."""
    result = runner.invoke(
        app, ["sweep", "--system", "pair", "--channels", "J0,J2", "--steps", "3", "--out", "-"]
    )
    assert result.exit_code == 0, result.output
    assert "t_ms,J0,J2" in result.output
    assert "0.00000000000e+00,1.00000000000e+00,0.00000000000e+00" in result.output


def test_sweep_explicit_couplings(isolated_cwd: Path) -> None:
    """Test unequal three-spin couplings with the 2pi shorthand."""
    out = isolated_cwd / "triangle.csv"
    result = runner.invoke(
        app,
        [
            "sweep",
            "--d12", "2pi*2950",
            "--d13", "2pi*1000",
            "--d23", "-5000",
            "--t-end", "0.2",
            "--steps", "5",
            "--channels", "J2,C2_BC,tau_ABC",
            "--out", str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    rows = read_rows(out)
    assert rows[0] == ["t_ms", "J2", "C2_BC", "tau_ABC"]
    assert len(rows) == 6


def test_sweep_unavailable_channel() -> None:
    """Test a channel the system lacks is a usage error."""
    result = runner.invoke(app, ["sweep", "--system", "pair", "--channels", "tau_ABC"])
    assert result.exit_code == 2
    assert "unavailable" in result.output


def test_sweep_bad_time_range() -> None:
    """Test t_end before t_start is a usage error."""
    result = runner.invoke(
        app, ["sweep", "--system", "pair", "--t-start", "0.3", "--t-end", "0.1"]
    )
    assert result.exit_code == 2
    assert "t_end must exceed" in result.output


def test_sweep_bad_coupling() -> None:
    """Test an unparseable coupling is a usage error."""
    result = runner.invoke(app, ["sweep", "--d12", "fast"])
    assert result.exit_code == 2
    assert "Invalid coupling" in result.output


def test_sweep_failure_leaves_no_partial_file(mocker: MockerFixture, isolated_cwd: Path) -> None:
    """Test a numeric error mid-grid exits 1 without creating the output file."""
    mocker.patch.object(
        SweepRunner,
        "evaluate",
        side_effect=[[1.0, 0.0], [0.9, 0.1], ConsistencyError("Even block is not pure")],
    )
    out = isolated_cwd / "partial.csv"
    result = runner.invoke(
        app,
        ["sweep", "--system", "pair", "--channels", "J0,J2", "--steps", "5", "--out", str(out)],
    )
    assert result.exit_code == 1
    assert "Numeric error" in result.output
    assert not out.exists()


def test_sweep_config_file_with_flag_override(isolated_cwd: Path) -> None:
    """Test flags override values from a key=value file."""
    config = isolated_cwd / "ring.cfg"
    config.write_text("system=ring3\nsteps=5\nchannels=J0,J2,tau_ABC\n")
    out = isolated_cwd / "pair.csv"
    result = runner.invoke(
        app,
        ["sweep", "--config", str(config), "--d12", "2pi*2950", "--channels", "J0,J2",
         "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    rows = read_rows(out)
    assert rows[0] == ["t_ms", "J0", "J2"]
    assert len(rows) == 6


def test_sweep_output_is_reproducible(isolated_cwd: Path) -> None:
    """Test two runs produce identical bytes."""
    paths = [isolated_cwd / "a.csv", isolated_cwd / "b.csv"]
    for path in paths:
        result = runner.invoke(
            app,
            ["sweep", "--system", "ring3", "--steps", "51", "--channels", "J2,C2_A(BC)",
             "--out", str(path)],
        )
        assert result.exit_code == 0, result.output
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_verify_reports_success(mocker: MockerFixture) -> None:
    """Test exit 0 and a table row per check."""
    mock_run: Mock = mocker.patch(
        "mq_entanglement.cli.run_checks",
        return_value=[CheckResult("sum_rule", True, 1e-15, 1e-10, "250 samples")],
    )
    result = runner.invoke(app, ["verify", "--scope", "random", "--seed", "5"])
    assert result.exit_code == 0, result.output
    assert "sum_rule" in result.output
    assert "All 1 checks passed" in result.output
    assert mock_run.call_args[0][0] == "random"
    assert mock_run.call_args[0][2] == 5


def test_verify_reports_failure(mocker: MockerFixture) -> None:
    """Test exit 1 naming the failing check."""
    mocker.patch(
        "mq_entanglement.cli.run_checks",
        return_value=[
            CheckResult("sum_rule", True, 1e-15, 1e-10),
            CheckResult("order_split", False, 1e-3, 1e-10),
        ],
    )
    result = runner.invoke(app, ["verify"])
    assert result.exit_code == 1
    assert "Failed checks: order_split" in result.output


def test_verify_unknown_scope() -> None:
    """Test an unknown scope is a usage error."""
    result = runner.invoke(app, ["verify", "--scope", "everything"])
    assert result.exit_code == 2
    assert "Unknown scope" in result.output


@pytest.mark.parametrize("tol", ["0", "-1e-9"])
def test_verify_rejects_non_positive_tolerance(tol: str) -> None:
    """Test --tol must be positive."""
    result = runner.invoke(app, ["verify", "--scope", "two-spin", f"--tol={tol}"])
    assert result.exit_code == 2
    assert "Invalid tolerance" in result.output


def test_verify_two_spin_runs() -> None:
    """Test the real two-spin suite passes end to end."""
    result = runner.invoke(app, ["verify", "--scope", "two-spin"])
    assert result.exit_code == 0, result.output
    assert "two_spin_oracle" in result.output


def test_classify_ghz() -> None:
    """Test equal coefficients classify as GHZ-like."""
    result = runner.invoke(app, ["classify", "1/2", "1/2", "1/2", "1/2"])
    assert result.exit_code == 0, result.output
    assert "GHZ-like" in result.output
    assert "tau_ABC" in result.output


def test_classify_w() -> None:
    """Test the W coefficients classify as W-like."""
    result = runner.invoke(app, ["classify", "0", "1/sqrt(3)", "1/sqrt(3)", "1/sqrt(3)"])
    assert result.exit_code == 0, result.output
    assert "W-like" in result.output


def test_classify_separable_odd_family() -> None:
    """Test |111> in the odd family is separable."""
    result = runner.invoke(app, ["classify", "1", "0", "0", "0", "--family", "odd"])
    assert result.exit_code == 0, result.output
    assert "separable" in result.output


def test_classify_zero_vector() -> None:
    """Test the zero vector is a usage error."""
    result = runner.invoke(app, ["classify", "0", "0", "0", "0"])
    assert result.exit_code == 2
    assert "zero vector" in result.output


def test_classify_requires_normalization() -> None:
    """Test unnormalized input needs --normalize."""
    result = runner.invoke(app, ["classify", "1", "1", "1", "1"])
    assert result.exit_code == 2
    assert "--normalize" in result.output

    result = runner.invoke(app, ["classify", "1", "1", "1", "1", "--normalize"])
    assert result.exit_code == 0, result.output
    assert "GHZ-like" in result.output
