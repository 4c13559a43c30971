"""Unit tests for the sweep runner and CSV writer."""

import io
import math

import numpy as np
import pytest

from mq_entanglement.entanglement import concurrence_to_entanglement
from mq_entanglement.errors import ChannelError
from mq_entanglement.models import SpinSystem
from mq_entanglement.presets import REFERENCE_COUPLING
from mq_entanglement.sweep import (
    SweepRunner,
    available_channels,
    channel_registry,
    format_value,
    time_grid,
    write_csv,
)

SEPARABLE_TIME = 1.0 / (math.sqrt(3.0) * 2950.0)


def test_channels_by_system_size() -> None:
    """Test which channels each system size offers."""
    assert available_channels(2) == ["J0", "J1", "J2", "C2", "E"]
    three = channel_registry(3)
    for name in ("tau_ABC", "C2_A(BC)", "E_BC", "E_tau", "lambda1", "lambda2"):
        assert name in three
    assert available_channels(4) == ["J0", "J1", "J2", "J3", "J4"]


def test_unavailable_channel(pair: SpinSystem) -> None:
    """Test ChannelError names the offending channel."""
    with pytest.raises(ChannelError, match="tau_ABC"):
        SweepRunner(pair, ["J2", "tau_ABC"])


def test_time_grid() -> None:
    """Test both ends are included."""
    grid = time_grid(0.0, 4e-4, 801)
    assert len(grid) == 801
    assert grid[0] == 0.0
    assert grid[-1] == pytest.approx(4e-4)
    assert grid[1] - grid[0] == pytest.approx(5e-7)


def test_format_value() -> None:
    """Test 12 significant digits in scientific notation."""
    assert format_value(0.1) == "1.00000000000e-01"
    assert format_value(-2.0) == "-2.00000000000e+00"


def test_write_csv() -> None:
    """Test header, time in ms and value formatting."""
    stream = io.StringIO()
    written = write_csv([(1e-4, [0.5, 1.0])], ["J0", "J2"], stream)
    assert written == 1
    assert stream.getvalue() == (
        "t_ms,J0,J2\n1.00000000000e-01,5.00000000000e-01,1.00000000000e+00\n"
    )


def test_pair_channels(pair: SpinSystem) -> None:
    """Test J_0, J_2, C^2 and E against the closed formulas."""
    runner = SweepRunner(pair, ["J0", "J2", "C2", "E"])
    for tau, (j0, j2, c2, e) in runner.run(time_grid(0.0, 4e-4, 41)):
        angle = REFERENCE_COUPLING * tau
        assert j0 == pytest.approx(math.cos(angle) ** 2, abs=1e-10)
        assert j2 == pytest.approx(math.sin(angle) ** 2, abs=1e-10)
        assert c2 == pytest.approx(j2, abs=1e-10)
        assert e == pytest.approx(concurrence_to_entanglement(abs(math.sin(angle))), abs=1e-8)


def test_pair_first_maximum(pair: SpinSystem) -> None:
    """Test E = J_2 = 1 at t = 1/(4 * 2950) s."""
    j2, e = SweepRunner(pair, ["J2", "E"]).evaluate(1.0 / (4.0 * 2950.0))
    assert j2 == pytest.approx(1.0, abs=1e-10)
    assert e > 1.0 - 1e-9


def test_ring_separability_time(ring: SpinSystem) -> None:
    """Test every ring measure vanishes at t = 1/(sqrt3 * 2950) s."""
    channels = [name for name in available_channels(3) if not name.startswith("J")]
    values = SweepRunner(ring, channels).evaluate(SEPARABLE_TIME)
    assert max(abs(v) for v in values) < 1e-9


def test_three_spin_channels_are_consistent(unequal_triangle: SpinSystem) -> None:
    """Test C^2_A(BC) - C^2_AB - C^2_AC = tau_ABC for unequal couplings."""
    runner = SweepRunner(unequal_triangle, ["C2_A(BC)", "C2_AB", "C2_AC", "tau_ABC"])
    for _, (one_to_pair, ab, ac, tangle) in runner.run([5e-5, 1.7e-4, 3.3e-4]):
        assert one_to_pair - ab - ac == pytest.approx(tangle, abs=1e-10)
        assert tangle >= -1e-10


def test_sweep_is_deterministic(ring: SpinSystem) -> None:
    """Test identical CSV bytes across runs."""
    outputs = []
    for _ in range(2):
        stream = io.StringIO()
        runner = SweepRunner(ring, ["J0", "J2", "tau_ABC"])
        write_csv(runner.run(time_grid(0.0, 4e-4, 21)), runner.channels, stream)
        outputs.append(stream.getvalue())
    assert outputs[0] == outputs[1]
    assert len(outputs[0].splitlines()) == 22


def test_chain_intensities_only(rng: np.random.Generator) -> None:
    """Test four-spin sweeps offer intensities and keep the sum rule."""
    system = SpinSystem(n_spins=4, couplings=tuple(rng.uniform(-1e4, 1e4, size=6)))
    runner = SweepRunner(system, ["J0", "J2", "J4"])
    for _, values in runner.run([1e-4, 2e-4]):
        assert sum(values) == pytest.approx(1.0, abs=1e-10)
