"""Spin system, dipolar couplings, MQ Hamiltonian and its parity blocks.

Basis convention: spin 0 is the most significant bit of the basis index;
bit 0 is spin-up (I_z = +1/2), bit 1 is spin-down (I_z = -1/2).
"""

import math
from typing import NamedTuple

import numpy as np

from mq_entanglement.errors import DomainError, StructureError
from mq_entanglement.linalg import require_square
from mq_entanglement.models import DEFAULT_POLICY, NumericPolicy, SpinSystem
from mq_entanglement.utils.logging import get_logger

logger = get_logger(__name__)

PROTON_GAMMA = 2.675e8  # rad/(s*T)
HBAR = 1.054571817e-34  # J*s
MU0_OVER_4PI = 1e-7  # SI conversion of the Gaussian-unit dipolar formula
MAGIC_ANGLE = math.acos(1.0 / math.sqrt(3.0))


def popcount(index: int) -> int:
    """Number of down spins in a basis state."""
    return int(index).bit_count()


def magnetization(index: int, n_spins: int) -> float:
    """Total I_z eigenvalue of a basis state."""
    return (n_spins - 2 * popcount(index)) / 2


def spin_bit(index: int, spin: int, n_spins: int) -> int:
    """State (0 up, 1 down) of one spin in a basis state."""
    return (index >> (n_spins - 1 - spin)) & 1


def basis_label(index: int, n_spins: int) -> str:
    """Ket label such as '011' for index 3 of three spins."""
    return format(index, f"0{n_spins}b")


def dipolar_constant(
    r: float,
    theta: float,
    gamma: float = PROTON_GAMMA,
    hbar: float = HBAR,
) -> float:
    """Dipolar coupling gamma^2 hbar (1 - 3 cos^2 theta) / (2 r^3).

    The formula is the Gaussian-unit form; multiply by MU0_OVER_4PI for SI
    inputs.

    Raises:
        DomainError: If r is not positive.
    """
    if not r > 0:
        raise DomainError(f"Internuclear distance must be positive, got {r}")
    return gamma**2 * hbar * (1.0 - 3.0 * math.cos(theta) ** 2) / (2.0 * r**3)


def build_hamiltonian(system: SpinSystem) -> np.ndarray:
    """Nonsecular average dipolar Hamiltonian -1/2 sum D_jk (I+_j I+_k + I-_j I-_k).

    Each pair term flips two down spins up (and back), so H only connects
    states whose magnetization differs by 2 and its diagonal is zero.

    Returns:
        Real symmetric 2^N x 2^N matrix as complex128.
    """
    n = system.n_spins
    indices = np.arange(system.dim)
    hamiltonian = np.zeros((system.dim, system.dim), dtype=np.complex128)
    for j, k, coupling in system.pairs():
        if coupling == 0.0:
            continue
        mask = (1 << (n - 1 - j)) | (1 << (n - 1 - k))
        both_down = indices[(indices & mask) == mask]
        both_up = both_down ^ mask
        hamiltonian[both_up, both_down] += -0.5 * coupling
        hamiltonian[both_down, both_up] += -0.5 * coupling
    logger.debug("hamiltonian_built", n_spins=n, dim=system.dim)
    return hamiltonian


def parity_operator(n_spins: int) -> np.ndarray:
    """Diagonal operator (-1)^(number of down spins)."""
    signs = [(-1.0) ** popcount(i) for i in range(2**n_spins)]
    return np.diag(np.array(signs, dtype=np.complex128))


def commutes_with_parity(
    h: np.ndarray, n_spins: int, policy: NumericPolicy = DEFAULT_POLICY
) -> bool:
    """True if [P, h] vanishes within the structure tolerance."""
    p = parity_operator(n_spins)
    commutator = p @ h - h @ p
    return bool(np.max(np.abs(commutator), initial=0.0) <= policy.structure_atol)


class ParityBlocks(NamedTuple):
    """Even/odd popcount blocks of a parity-conserving matrix."""

    even: np.ndarray
    odd: np.ndarray
    even_basis: tuple[int, ...]
    odd_basis: tuple[int, ...]


def parity_bases(n_spins: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Ascending basis indices with even and odd numbers of down spins."""
    even = tuple(i for i in range(2**n_spins) if popcount(i) % 2 == 0)
    odd = tuple(i for i in range(2**n_spins) if popcount(i) % 2 == 1)
    return even, odd


def parity_blocks(
    h: np.ndarray, n_spins: int, policy: NumericPolicy = DEFAULT_POLICY
) -> ParityBlocks:
    """Split a Hamiltonian into its even and odd parity blocks.

    Raises:
        StructureError: If h couples even and odd sectors beyond tolerance.
    """
    matrix = require_square(h)
    even_basis, odd_basis = parity_bases(n_spins)
    cross = matrix[np.ix_(even_basis, odd_basis)]
    if np.max(np.abs(cross), initial=0.0) > policy.structure_atol:
        raise StructureError("Matrix couples even and odd parity sectors")
    return ParityBlocks(
        even=matrix[np.ix_(even_basis, even_basis)].copy(),
        odd=matrix[np.ix_(odd_basis, odd_basis)].copy(),
        even_basis=even_basis,
        odd_basis=odd_basis,
    )


def reassemble_blocks(blocks: ParityBlocks, n_spins: int) -> np.ndarray:
    """Inverse of parity_blocks."""
    dim = 2**n_spins
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    matrix[np.ix_(blocks.even_basis, blocks.even_basis)] = blocks.even
    matrix[np.ix_(blocks.odd_basis, blocks.odd_basis)] = blocks.odd
    return matrix
