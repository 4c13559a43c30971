"""Verification suite: oracle comparisons and identities on random draws."""

import math
from collections.abc import Callable

import numpy as np

from mq_entanglement.analytic import (
    THREE_SPIN_EVEN_BASIS,
    THREE_SPIN_ODD_BASIS,
    family_state,
    pair_phase,
    ring_phase,
    three_spin_density,
    three_spin_odd_density,
    three_spin_ring_J2,
    three_spin_ring_density,
    three_spin_ring_state,
    two_spin_density,
)
from mq_entanglement.dynamics import (
    Propagator,
    block_density,
    initial_density,
    intensities,
    order_split_errors,
    sum_rule_residual,
)
from mq_entanglement.entanglement import (
    j2_identity_check,
    labeled_lambdas,
    lambda_relation_check,
    monogamy_residuals,
    three_tangle,
)
from mq_entanglement.errors import DomainError
from mq_entanglement.models import DEFAULT_POLICY, CheckResult, NumericPolicy, SpinSystem
from mq_entanglement.presets import REFERENCE_COUPLING, pair_system, ring_system
from mq_entanglement.spin_model import build_hamiltonian
from mq_entanglement.sweep import SweepRunner
from mq_entanglement.utils.logging import get_logger

logger = get_logger(__name__)

SCOPES = ("all", "two-spin", "three-spin", "random")

COUPLING_SCALE = 2.0 * math.pi * 5000.0  # rad/s
MAX_TAU = 1e-3  # s
SEPARABILITY_TOL = 1e-9
LIMIT_TOL = 1e-12

RING_ENTANGLEMENT_CHANNELS = (
    "C2_BC",
    "C2_AC",
    "C2_AB",
    "C2_A(BC)",
    "C2_B(AC)",
    "C2_C(AB)",
    "tau_ABC",
)

Check = Callable[[np.random.Generator, NumericPolicy], CheckResult]


def _result(name: str, errors: list[float], tolerance: float, detail: str = "") -> CheckResult:
    worst = max(errors) if errors else 0.0
    return CheckResult(
        name=name,
        passed=worst < tolerance,
        max_error=worst,
        tolerance=tolerance,
        detail=detail or f"{len(errors)} samples",
    )


def _random_couplings(rng: np.random.Generator, count: int) -> tuple[float, ...]:
    return tuple(float(x) for x in rng.uniform(-COUPLING_SCALE, COUPLING_SCALE, size=count))


def check_two_spin_oracle(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """Numeric evolution of two spins against the closed-form 4x4 matrix."""
    rho0 = initial_density(2)
    errors = []
    for _ in range(100):
        system = SpinSystem(n_spins=2, couplings=_random_couplings(rng, 1))
        tau = float(rng.uniform(0.0, MAX_TAU))
        numeric = Propagator(build_hamiltonian(system), policy).evolve(rho0, tau).matrix
        closed = two_spin_density(pair_phase(system.couplings[0], tau)).matrix
        errors.append(float(np.max(np.abs(numeric - closed))))
    return _result("two_spin_oracle", errors, policy.atol)


def check_c2_identity(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """C^2 of the two-spin state equals J_2."""
    system = pair_system()
    errors = [
        j2_identity_check(system, float(tau), policy).error
        for tau in rng.uniform(0.0, MAX_TAU, size=50)
    ]
    return _result("two_spin_c2_identity", errors, policy.atol)


def check_three_spin_oracle(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """Numeric parity blocks against the closed forms for unequal couplings."""
    rho0 = initial_density(3)
    errors = []
    for _ in range(100):
        d12, d13, d23 = _random_couplings(rng, 3)
        tau = float(rng.uniform(0.0, MAX_TAU))
        system = SpinSystem(n_spins=3, couplings=(d12, d13, d23))
        rho = Propagator(build_hamiltonian(system), policy).evolve(rho0, tau)
        even = block_density(rho, THREE_SPIN_EVEN_BASIS).matrix
        odd = block_density(rho, THREE_SPIN_ODD_BASIS).matrix
        errors.append(float(np.max(np.abs(even - three_spin_density(d12, d13, d23, tau).matrix))))
        errors.append(
            float(np.max(np.abs(odd - three_spin_odd_density(d12, d13, d23, tau).matrix)))
        )
    return _result("three_spin_oracle", errors, policy.atol)


def check_ring_closed_form(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """Equal couplings: general block equals the ring block, J_2 = (2/3) sin^2."""
    system = ring_system()
    rho0 = initial_density(3)
    propagator = Propagator(build_hamiltonian(system), policy)
    errors = []
    for tau in rng.uniform(0.0, MAX_TAU, size=50):
        phi = ring_phase(REFERENCE_COUPLING, float(tau))
        d = REFERENCE_COUPLING
        general = three_spin_density(d, d, d, float(tau))
        errors.append(float(np.max(np.abs(general.matrix - three_spin_ring_density(phi).matrix))))
        j2 = intensities(propagator.evolve(rho0, float(tau)), rho0)[2]
        errors.append(abs(j2 - three_spin_ring_J2(phi)))
    return _result("ring_closed_form", errors, policy.atol)


def check_monogamy(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """Every monogamy residual equals 16|abcd|."""
    errors = []
    for _ in range(200):
        raw = rng.normal(size=4) + 1.0j * rng.normal(size=4)
        a, b, c, d = raw / np.linalg.norm(raw)
        expected = 16.0 * abs(a * b * c * d)
        state = family_state(a, b, c, d)
        errors.extend(abs(r - expected) for r in monogamy_residuals(state, policy).values())
    return _result("monogamy_identity", errors, policy.atol)


def check_ghz_w_limits(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """tau_ABC = 1 for equal coefficients and 0 when any coefficient vanishes."""
    errors = [abs(three_tangle(family_state(0.5, 0.5, 0.5, 0.5), policy) - 1.0)]
    for zero in range(4):
        raw = rng.normal(size=4) + 1.0j * rng.normal(size=4)
        raw[zero] = 0.0
        coefficients = raw / np.linalg.norm(raw)
        errors.append(abs(three_tangle(family_state(*coefficients), policy)))
    return _result("ghz_w_limits", errors, LIMIT_TOL)


def check_lambda_relation(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """lambda_1 = 2 sqrt(lambda_2) - 3 lambda_2 along the ring trajectory."""
    errors = []
    for phi in np.linspace(0.0, 2.0 * math.pi, 200):
        lambda1, lambda2 = labeled_lambdas(three_spin_ring_state(float(phi)), "BC", policy)
        errors.append(abs(lambda1 - lambda_relation_check(lambda2, policy)))
    return _result("lambda_relation", errors, policy.atol)


def check_ring_lambda_identity(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """2 lambda_1 equals J_2 for the equal-coupling ring."""
    system = ring_system()
    errors = [
        j2_identity_check(system, float(tau), policy).error
        for tau in rng.uniform(0.0, MAX_TAU, size=50)
    ]
    return _result("ring_lambda_identity", errors, policy.atol)


def check_separability_times(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """All ring measures vanish at t = k / (sqrt(3) 2950 Hz), k = 1, 2."""
    period = 1.0 / (math.sqrt(3.0) * REFERENCE_COUPLING / (2.0 * math.pi))
    runner = SweepRunner(ring_system(), RING_ENTANGLEMENT_CHANNELS, policy)
    errors = []
    for _, values in runner.run([period, 2.0 * period]):
        errors.extend(abs(v) for v in values)
    detail = f"t = {period * 1e3:.4f} ms, {2 * period * 1e3:.4f} ms"
    return _result("separability_times", errors, SEPARABILITY_TOL, detail)


def check_sum_rule(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """J_0 + sum J_n = 1 for random couplings, N = 2..6."""
    errors = []
    for n_spins in range(2, 7):
        rho0 = initial_density(n_spins)
        for _ in range(50):
            system = SpinSystem(
                n_spins=n_spins, couplings=_random_couplings(rng, n_spins * (n_spins - 1) // 2)
            )
            tau = float(rng.uniform(0.0, MAX_TAU))
            rho = Propagator(build_hamiltonian(system), policy).evolve(rho0, tau)
            errors.append(abs(sum_rule_residual(intensities(rho, rho0))))
    return _result("sum_rule", errors, policy.atol, "N = 2..6, 50 draws each")


def check_order_split(rng: np.random.Generator, policy: NumericPolicy) -> CheckResult:
    """rho_n real for n = 0 mod 4 and imaginary for n = 2 mod 4, N = 2..4."""
    errors = []
    for n_spins in (2, 3, 4):
        rho0 = initial_density(n_spins)
        for _ in range(20):
            system = SpinSystem(
                n_spins=n_spins, couplings=_random_couplings(rng, n_spins * (n_spins - 1) // 2)
            )
            tau = float(rng.uniform(0.0, MAX_TAU))
            rho = Propagator(build_hamiltonian(system), policy).evolve(rho0, tau)
            errors.append(max(order_split_errors(rho).values(), default=0.0))
    return _result("order_split", errors, policy.atol, "N = 2..4, 20 draws each")


CHECKS: dict[str, tuple[Check, ...]] = {
    "two-spin": (check_two_spin_oracle, check_c2_identity),
    "three-spin": (
        check_three_spin_oracle,
        check_ring_closed_form,
        check_monogamy,
        check_ghz_w_limits,
        check_lambda_relation,
        check_ring_lambda_identity,
        check_separability_times,
    ),
    "random": (check_sum_rule, check_order_split),
}


def run_checks(
    scope: str = "all",
    policy: NumericPolicy = DEFAULT_POLICY,
    seed: int = 20031,
) -> list[CheckResult]:
    """Run every check in scope with one seeded generator.

    Args:
        scope: One of SCOPES; "all" runs the other three in order.
        policy: Tolerances shared by all checks.
        seed: Seed for random couplings, times and coefficients.

    Returns:
        One CheckResult per check, in run order.

    Raises:
        DomainError: If scope is unknown.
    """
    if scope not in SCOPES:
        raise DomainError(f"Unknown scope '{scope}'; use one of: {', '.join(SCOPES)}")
    scopes = [name for name in SCOPES if name != "all"] if scope == "all" else [scope]
    rng = np.random.default_rng(seed)

    results = []
    for name in scopes:
        for check in CHECKS[name]:
            result = check(rng, policy)
            if result.passed:
                logger.debug("check_passed", check=result.name, max_error=result.max_error)
            else:
                logger.warning(
                    "check_failed",
                    check=result.name,
                    max_error=result.max_error,
                    tolerance=result.tolerance,
                )
            results.append(result)
    return results
