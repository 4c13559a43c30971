"""MQ dynamics: thermal initial state, evolution, coherence orders, intensities."""

from collections.abc import Iterable, Iterator

import numpy as np

from mq_entanglement.errors import DimensionError, NormalizationError, StructureError
from mq_entanglement.linalg import (
    dagger,
    hermitian_eigendecompose,
    n_spins_for,
    propagator,
    require_square,
)
from mq_entanglement.models import (
    DEFAULT_POLICY,
    CoherenceSpectrum,
    DensityMatrix,
    NumericPolicy,
)
from mq_entanglement.spin_model import (
    commutes_with_parity,
    magnetization,
    parity_blocks,
    popcount,
)
from mq_entanglement.utils.logging import get_logger

logger = get_logger(__name__)


def initial_density(n_spins: int) -> DensityMatrix:
    """High-temperature deviation density matrix sum_j I_zj (diagonal, traceless)."""
    if n_spins < 1:
        raise DimensionError(f"Need at least one spin, got {n_spins}")
    diagonal = [magnetization(i, n_spins) for i in range(2**n_spins)]
    return DensityMatrix(matrix=np.diag(np.array(diagonal, dtype=np.complex128)), n_spins=n_spins)


class Propagator:
    """exp(-i H tau) for any tau from one eigendecomposition of H.

    A parity-conserving H is diagonalized block by block, so the unitary has
    exact zeros between the sectors and odd coherence orders stay exactly
    absent. Instances are read-only after construction and may be shared
    across threads evaluating different time points.
    """

    def __init__(self, hamiltonian: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY) -> None:
        """Initialize propagator.

        Args:
            hamiltonian: Hermitian matrix H.
            policy: Tolerances for the Hermiticity and parity checks.
        """
        self.hamiltonian = require_square(hamiltonian)
        self.dim = self.hamiltonian.shape[0]
        self.sectors: list[tuple[tuple[int, ...], np.ndarray, np.ndarray]] = []
        for basis, block in self._split(policy):
            eigenvalues, eigenvectors = hermitian_eigendecompose(block, policy)
            self.sectors.append((basis, eigenvalues, eigenvectors))

    def _split(self, policy: NumericPolicy) -> list[tuple[tuple[int, ...], np.ndarray]]:
        full = [(tuple(range(self.dim)), self.hamiltonian)]
        try:
            n_spins = n_spins_for(self.dim)
        except DimensionError:
            return full
        if n_spins == 0 or not commutes_with_parity(self.hamiltonian, n_spins, policy):
            return full
        blocks = parity_blocks(self.hamiltonian, n_spins, policy)
        return [(blocks.even_basis, blocks.even), (blocks.odd_basis, blocks.odd)]

    def unitary(self, tau: float) -> np.ndarray:
        u = np.zeros((self.dim, self.dim), dtype=np.complex128)
        for basis, eigenvalues, eigenvectors in self.sectors:
            u[np.ix_(basis, basis)] = propagator(eigenvalues, eigenvectors, tau)
        return u

    def evolve(self, rho0: DensityMatrix, tau: float) -> DensityMatrix:
        """rho(tau) = exp(-iH tau) rho(0) exp(iH tau).

        Raises:
            DimensionError: If rho0 and H sizes differ.
        """
        if rho0.matrix.shape[0] != self.dim:
            raise DimensionError(
                f"Density matrix size {rho0.matrix.shape[0]} does not match "
                f"Hamiltonian size {self.dim}"
            )
        if tau == 0:
            return rho0
        u = self.unitary(tau)
        evolved = u @ rho0.matrix @ dagger(u)
        evolved = (evolved + dagger(evolved)) / 2
        return DensityMatrix(matrix=evolved, n_spins=rho0.n_spins, basis=rho0.basis)

    def sweep(self, rho0: DensityMatrix, taus: Iterable[float]) -> Iterator[DensityMatrix]:
        """Evolve rho0 to each time in order."""
        for tau in taus:
            yield self.evolve(rho0, float(tau))


def evolve(
    h: np.ndarray,
    rho0: DensityMatrix,
    tau: float,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> DensityMatrix:
    """One-shot evolution; build a Propagator when sweeping many times."""
    return Propagator(h, policy).evolve(rho0, tau)


def order_matrix(indices: Iterable[int]) -> np.ndarray:
    """Coherence order n = m(p) - m(q) of every element <p|rho|q>.

    With the basis convention, <00|rho|11> has order +2.
    """
    counts = np.array([popcount(i) for i in indices], dtype=np.int64)
    return counts[np.newaxis, :] - counts[:, np.newaxis]


def coherence_decompose(rho: DensityMatrix) -> dict[int, np.ndarray]:
    """Split rho into its MQ coherence components rho_n.

    Only orders with at least one nonzero element are returned, and the
    components sum to rho exactly.
    """
    orders = order_matrix(rho.indices)
    components: dict[int, np.ndarray] = {}
    for order in np.unique(orders):
        mask = orders == order
        component = np.where(mask, rho.matrix, 0.0)
        if np.any(component != 0):
            components[int(order)] = component
    return components


def raw_intensities(rho: DensityMatrix) -> dict[int, float]:
    """Tr[rho_n rho_-n] for each signed order n, unnormalized."""
    orders = order_matrix(rho.indices)
    weights = np.abs(rho.matrix) ** 2
    result: dict[int, float] = {}
    for order in np.unique(orders):
        result[int(order)] = float(np.sum(weights[orders == order]))
    return result


def intensities(rho_tau: DensityMatrix, rho0: DensityMatrix) -> CoherenceSpectrum:
    """Normalized MQ intensities J_n(tau) = Tr[rho_n rho_-n] / Tr[rho(0)^2].

    The divisor makes the folded sum J_0 + sum_{n>0} J_n equal 1. For the full
    thermal state it is N 2^(N-2); for a parity block it is the block's own
    Tr[rho(0)^2], which for odd N doubles the block's share of the full result.

    Raises:
        DimensionError: If the matrices differ in size.
        NormalizationError: If Tr[rho(0)^2] vanishes.
    """
    if rho_tau.matrix.shape != rho0.matrix.shape:
        raise DimensionError("rho(tau) and rho(0) differ in size")
    norm = float(np.real(np.trace(rho0.matrix @ rho0.matrix)))
    if norm <= 0.0:
        raise NormalizationError("Tr[rho(0)^2] is zero; intensities cannot be normalized")

    raw = raw_intensities(rho_tau)
    folded: dict[int, float] = {}
    for order in range(rho_tau.n_spins + 1):
        total = raw.get(order, 0.0) + (raw.get(-order, 0.0) if order > 0 else 0.0)
        if order % 2 == 0 or total > 0.0:
            folded[order] = total / norm
    return CoherenceSpectrum(intensities=folded, n_spins=rho_tau.n_spins)


def order_split_errors(rho: DensityMatrix) -> dict[int, float]:
    """Largest forbidden part of each rho_n: imaginary for n = 0 mod 4, real for n = 2 mod 4.

    Odd orders must be absent, so their whole magnitude counts.
    """
    errors: dict[int, float] = {}
    for order, component in coherence_decompose(rho).items():
        if order % 4 == 0:
            forbidden = np.abs(component.imag)
        elif order % 4 == 2:
            forbidden = np.abs(component.real)
        else:
            forbidden = np.abs(component)
        errors[order] = float(np.max(forbidden))
    return errors


def realpart_order_split_check(
    rho: DensityMatrix, policy: NumericPolicy = DEFAULT_POLICY
) -> dict[int, bool]:
    """Check that rho_n is real for n = 0 mod 4 and imaginary for n = 2 mod 4.

    Returns:
        Pass/fail per signed order present in rho.
    """
    return {order: error <= policy.atol for order, error in order_split_errors(rho).items()}


def block_density(rho: DensityMatrix, basis: Iterable[int]) -> DensityMatrix:
    """Restrict a full density matrix to the rows/columns in ``basis``."""
    rows = tuple(basis)
    block = rho.matrix[np.ix_(rows, rows)]
    return DensityMatrix(matrix=block, n_spins=rho.n_spins, basis=rows)


def block_intensities(rho_block: DensityMatrix, rho0_block: DensityMatrix) -> CoherenceSpectrum:
    """Intensities of one parity block, normalized within the block.

    Raises:
        StructureError: If either matrix is not a block, or the blocks differ.
    """
    if rho_block.basis is None or rho0_block.basis is None:
        raise StructureError("Block intensities need matrices restricted with block_density")
    if rho_block.basis != rho0_block.basis:
        raise StructureError("Evolved and initial blocks cover different basis states")
    return intensities(rho_block, rho0_block)


def sum_rule_residual(spectrum: CoherenceSpectrum) -> float:
    """Deviation of J_0 + sum J_n from 1."""
    return spectrum.total() - 1.0
