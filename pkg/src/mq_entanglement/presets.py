"""Named spin systems used by the sweep command."""

import math

from mq_entanglement.errors import DomainError
from mq_entanglement.models import DEFAULT_SPIN_CAP, SpinSystem
from mq_entanglement.spin_model import (
    HBAR,
    MU0_OVER_4PI,
    PROTON_GAMMA,
    dipolar_constant,
)
from mq_entanglement.utils.logging import get_logger

logger = get_logger(__name__)

REFERENCE_COUPLING = 2.0 * math.pi * 2950.0  # rad/s
CHAIN_SPACING = 3.44e-10  # m; nearest-neighbour |D| close to REFERENCE_COUPLING

PRESETS = ("pair", "ring3", "chain")


def pair_system(coupling: float = REFERENCE_COUPLING) -> SpinSystem:
    """Two spins with D_12 = coupling."""
    return SpinSystem(n_spins=2, couplings=(coupling,))


def ring_system(coupling: float = REFERENCE_COUPLING) -> SpinSystem:
    """Three spins on a triangle, D_12 = D_13 = D_23 = coupling."""
    return SpinSystem.uniform(3, coupling)


def chain_system(
    n_spins: int,
    spacing: float = CHAIN_SPACING,
    theta: float = 0.0,
    gamma: float = PROTON_GAMMA,
    max_spins: int = DEFAULT_SPIN_CAP,
) -> SpinSystem:
    """Uniformly spaced linear chain with all pairs coupled.

    D_jk follows the dipolar formula (SI) at distance |j - k| * spacing and a
    common angle theta to the field.
    """
    if max_spins > DEFAULT_SPIN_CAP and n_spins > DEFAULT_SPIN_CAP:
        logger.warning("spin_cap_overridden", n_spins=n_spins, cap=DEFAULT_SPIN_CAP)
    table = {}
    for j in range(n_spins):
        for k in range(j + 1, n_spins):
            distance = (k - j) * spacing
            table[(j, k)] = MU0_OVER_4PI * dipolar_constant(distance, theta, gamma, HBAR)
    return SpinSystem.from_table(n_spins, table, max_spins=max_spins)


def preset_system(
    name: str,
    n_spins: int | None = None,
    spacing: float = CHAIN_SPACING,
    max_spins: int = DEFAULT_SPIN_CAP,
) -> SpinSystem:
    """Resolve a preset name to a spin system.

    Raises:
        DomainError: If the name is unknown.
    """
    if name == "pair":
        return pair_system()
    if name == "ring3":
        return ring_system()
    if name == "chain":
        return chain_system(n_spins or 4, spacing=spacing, max_spins=max_spins)
    raise DomainError(f"Unknown preset '{name}'; choose one of {', '.join(PRESETS)}")
