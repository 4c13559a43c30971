"""Integration tests reproducing the published two- and three-spin curves.

Run with:
    pytest tests/integration/test_figures.py -m integration
"""

import math

import numpy as np
import pytest

from mq_entanglement import verify
from mq_entanglement.analytic import family_state, ring_phase, three_spin_ring_J2
from mq_entanglement.entanglement import three_tangle
from mq_entanglement.models import NumericPolicy
from mq_entanglement.presets import REFERENCE_COUPLING, pair_system, ring_system
from mq_entanglement.sweep import SweepRunner, time_grid

pytestmark = pytest.mark.integration

COUPLING_HZ = 2950.0
GRID = time_grid(0.0, 4e-4, 801)
GRID_STEP = 5e-7  # s
SEPARABLE_TIMES = (1.957e-4, 3.914e-4)  # s


def binary_entropy(p: float) -> float:
    return -sum(x * math.log2(x) for x in (p, 1.0 - p) if x > 0.0)


def test_two_spin_curves_match_closed_forms() -> None:
    """Test J_0, J_2 and E against cos^2, sin^2 and the entropy formula."""
    runner = SweepRunner(pair_system(), ["J0", "J2", "E"])
    for tau, (j0, j2, e) in runner.run(GRID):
        angle = REFERENCE_COUPLING * tau
        assert abs(j0 - math.cos(angle) ** 2) < 1e-10
        assert abs(j2 - math.sin(angle) ** 2) < 1e-10
        assert abs(e - binary_entropy(math.cos(angle / 2.0) ** 2)) < 1e-10


def test_two_spin_first_maximum() -> None:
    """Test E = J_2 = 1 at t = 1/(4 * 2950) s, about 0.0847 ms."""
    t_max = 1.0 / (4.0 * COUPLING_HZ)
    assert t_max * 1e3 == pytest.approx(0.0847, abs=1e-4)
    j2, e = SweepRunner(pair_system(), ["J2", "E"]).evaluate(t_max)
    assert j2 == pytest.approx(1.0, abs=1e-10)
    assert e == pytest.approx(1.0, abs=1e-6)


def test_ring_separability_times() -> None:
    """Test ring measures dip to zero within one grid step of 0.1957 and 0.3914 ms."""
    channels = list(verify.RING_ENTANGLEMENT_CHANNELS)
    runner = SweepRunner(ring_system(), channels)
    rows = list(runner.run(GRID))
    totals = np.array([sum(abs(v) for v in values) for _, values in rows])
    for target in SEPARABLE_TIMES:
        window = np.abs(GRID - target) < 2.5e-5
        nearest = GRID[window][int(np.argmin(totals[window]))]
        assert abs(nearest - target) <= GRID_STEP

    period = 1.0 / (math.sqrt(3.0) * COUPLING_HZ)
    assert period == pytest.approx(SEPARABLE_TIMES[0], abs=GRID_STEP)
    for tau in (period, 2.0 * period):
        assert max(abs(v) for v in runner.evaluate(tau)) < 1e-9


def test_ring_j2_ceiling() -> None:
    """Test J_2 = (2/3) sin^2(sqrt3 D t) with maximum 2/3."""
    runner = SweepRunner(ring_system(), ["J2"])
    for tau, (j2,) in runner.run(GRID):
        assert abs(j2 - three_spin_ring_J2(ring_phase(REFERENCE_COUPLING, tau))) < 1e-10
        assert j2 <= 2.0 / 3.0 + 1e-10

    t_peak = 1.0 / (4.0 * math.sqrt(3.0) * COUPLING_HZ)
    (peak,) = runner.evaluate(t_peak)
    assert peak == pytest.approx(2.0 / 3.0, abs=1e-10)


@pytest.mark.parametrize(
    "check",
    [
        verify.check_c2_identity,
        verify.check_ring_lambda_identity,
        verify.check_two_spin_oracle,
        verify.check_three_spin_oracle,
        verify.check_ring_closed_form,
        verify.check_monogamy,
        verify.check_lambda_relation,
        verify.check_order_split,
    ],
)
def test_identity_and_oracle_checks(
    check: verify.Check, rng: np.random.Generator, policy: NumericPolicy
) -> None:
    """Test each randomized check stays under 1e-10."""
    result = check(rng, policy)
    assert result.tolerance == 1e-10
    assert result.passed, (result.name, result.max_error)


@pytest.mark.slow
def test_sum_rule_up_to_six_spins(rng: np.random.Generator, policy: NumericPolicy) -> None:
    """Test J_0 + sum J_n = 1 for N = 2..6."""
    result = verify.check_sum_rule(rng, policy)
    assert result.passed, result.max_error


def test_ghz_and_zero_coefficient_limits(rng: np.random.Generator) -> None:
    """Test tau_ABC = 1 for GHZ and 0 with any vanishing coefficient."""
    assert abs(three_tangle(family_state(0.5, 0.5, 0.5, 0.5)) - 1.0) < 1e-12
    for zero in range(4):
        raw = rng.normal(size=4) + 1.0j * rng.normal(size=4)
        raw[zero] = 0.0
        coefficients = raw / np.linalg.norm(raw)
        assert abs(three_tangle(family_state(*coefficients))) < 1e-12
