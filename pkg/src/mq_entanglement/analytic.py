"""Closed-form two- and three-spin solutions used as oracles.

All formulas take the phase phi as their argument. The evolved matrices under
exp(-iH tau) are the complex conjugates of the printed closed forms, so the
conversion from couplings is phi = -D tau (pair_phase, ring_phase).
"""

import math

import numpy as np

from mq_entanglement.errors import ConsistencyError, DimensionError, ScopeError
from mq_entanglement.linalg import hermitian_eigendecompose
from mq_entanglement.models import DEFAULT_POLICY, DensityMatrix, NumericPolicy, PureState
from mq_entanglement.spin_model import parity_bases

EIGHTH_TURN = np.exp(1.0j * math.pi / 4)

TWO_SPIN_EVEN_BASIS = (0b00, 0b11)
THREE_SPIN_EVEN_BASIS = (0b000, 0b011, 0b101, 0b110)
THREE_SPIN_ODD_BASIS = (0b001, 0b010, 0b100, 0b111)


def pair_phase(d12: float, tau: float) -> float:
    """Phase of the two-spin closed forms at time tau."""
    return -d12 * tau


def ring_phase(coupling: float, tau: float) -> float:
    """Phase of the equal-coupling three-spin closed forms at time tau."""
    return -math.sqrt(3.0) * coupling * tau


def two_spin_density(phi: float) -> DensityMatrix:
    """4x4 density matrix [[cos, 0, 0, i sin], ..., [-i sin, 0, 0, -cos]]."""
    matrix = np.zeros((4, 4), dtype=np.complex128)
    matrix[0, 0] = math.cos(phi)
    matrix[3, 3] = -math.cos(phi)
    matrix[0, 3] = 1.0j * math.sin(phi)
    matrix[3, 0] = -1.0j * math.sin(phi)
    return DensityMatrix(matrix=matrix, n_spins=2)


def two_spin_offset() -> np.ndarray:
    """Time-independent E' with rho = 2 |Psi><Psi| - E'."""
    return np.diag(np.array([1.0, 0.0, 0.0, 1.0], dtype=np.complex128))


def two_spin_state(phi: float) -> PureState:
    """e^{i pi/4} cos(phi/2)|00> + e^{-i pi/4} sin(phi/2)|11>."""
    amplitudes = np.zeros(4, dtype=np.complex128)
    amplitudes[0b00] = EIGHTH_TURN * math.cos(phi / 2)
    amplitudes[0b11] = np.conj(EIGHTH_TURN) * math.sin(phi / 2)
    return PureState(amplitudes=amplitudes, n_spins=2)


def _even_block(phi: float, ratios: np.ndarray) -> np.ndarray:
    # ratios are (R23, R13, R12), matching rows |011>, |101>, |110>
    a = math.cos(phi) - 1.0
    b = math.sin(phi)
    block = np.zeros((4, 4), dtype=np.complex128)
    block[0, 0] = 1.5 + a
    block[0, 1:] = 1.0j * ratios * b
    block[1:, 0] = -1.0j * ratios * b
    block[1:, 1:] = -0.5 * np.eye(3) - np.outer(ratios, ratios) * a
    return block


def three_spin_density(d12: float, d13: float, d23: float, tau: float) -> DensityMatrix:
    """Even-parity block of rho(tau) for three spins with arbitrary couplings.

    Basis |000>, |011>, |101>, |110>. With D_eff = 0 the block stays static.
    """
    d_eff = math.sqrt(d12**2 + d13**2 + d23**2)
    if d_eff == 0.0:
        block = np.diag(np.array([1.5, -0.5, -0.5, -0.5], dtype=np.complex128))
    else:
        ratios = np.array([d23, d13, d12]) / d_eff
        block = _even_block(-d_eff * tau, ratios)
    return DensityMatrix(matrix=block, n_spins=3, basis=THREE_SPIN_EVEN_BASIS)


def three_spin_odd_density(d12: float, d13: float, d23: float, tau: float) -> DensityMatrix:
    """Odd-parity block obtained from the even one by flipping every spin.

    The flip maps H to itself and rho(0) to -rho(0), and sends the odd basis
    |001>, |010>, |100>, |111> onto the even basis in reverse order.
    """
    even = three_spin_density(d12, d13, d23, tau).matrix
    odd = -even[::-1, ::-1]
    return DensityMatrix(matrix=odd, n_spins=3, basis=THREE_SPIN_ODD_BASIS)


def three_spin_ring_density(phi: float) -> DensityMatrix:
    """Even block for equal couplings, written in the ring phase phi."""
    ratios = np.full(3, 1.0 / math.sqrt(3.0))
    return DensityMatrix(matrix=_even_block(phi, ratios), n_spins=3, basis=THREE_SPIN_EVEN_BASIS)


def three_spin_ring_state(phi: float) -> PureState:
    """e^{i pi/4} cos(phi/2)|000> + (e^{-i pi/4}/sqrt 3) sin(phi/2)(|011>+|101>+|110>)."""
    amplitudes = np.zeros(8, dtype=np.complex128)
    amplitudes[0b000] = EIGHTH_TURN * math.cos(phi / 2)
    tail = np.conj(EIGHTH_TURN) * math.sin(phi / 2) / math.sqrt(3.0)
    for index in THREE_SPIN_EVEN_BASIS[1:]:
        amplitudes[index] = tail
    return PureState(amplitudes=amplitudes, n_spins=3)


def three_spin_ring_J2(phi: float) -> float:
    """Second-order intensity of the ring, (2/3) sin^2 phi."""
    return 2.0 / 3.0 * math.sin(phi) ** 2


def family_state(
    a: complex,
    b: complex,
    c: complex,
    d: complex,
    family: str = "even",
    normalize: bool = False,
) -> PureState:
    """Generalized GHZ/W state.

    even: a|000> + b|011> + c|101> + d|110>
    odd:  d|001> + c|010> + b|100> + a|111>
    """
    amplitudes = np.zeros(8, dtype=np.complex128)
    if family == "even":
        basis = THREE_SPIN_EVEN_BASIS
    elif family == "odd":
        basis = THREE_SPIN_ODD_BASIS[::-1]
    else:
        raise ValueError(f"Unknown family '{family}'; use 'even' or 'odd'")
    for index, value in zip(basis, (a, b, c, d)):
        amplitudes[index] = value
    if normalize:
        return PureState.normalized(amplitudes, 3)
    return PureState(amplitudes=amplitudes, n_spins=3)


def even_block_state(
    rho_even: DensityMatrix, policy: NumericPolicy = DEFAULT_POLICY
) -> PureState:
    """Pure state whose projector generates the evolved even block.

    For two and three spins the thermal even block is 2|0..0><0..0| + (N/2 - 2) I,
    so sigma = (rho - (N/2 - 2) I) / 2 stays a rank-one projector under the
    evolution. The state is its dominant eigenvector embedded in the full basis.

    Raises:
        ScopeError: If N is not 2 or 3, or the block is not the even block.
        ConsistencyError: If sigma is not a projector within tolerance.
    """
    n = rho_even.n_spins
    if n not in (2, 3):
        raise ScopeError(f"Pure-state form exists for 2 or 3 spins only, got {n}")
    even_basis, _ = parity_bases(n)
    if rho_even.indices != even_basis:
        raise ScopeError("Expected the even-parity block")
    offset = n / 2 - 2
    sigma = (rho_even.matrix - offset * np.eye(len(even_basis))) / 2
    eigenvalues, eigenvectors = hermitian_eigendecompose(sigma, policy)
    off_one = abs(eigenvalues[-1] - 1.0) > policy.psd_atol
    if off_one or np.max(np.abs(eigenvalues[:-1])) > policy.psd_atol:
        raise ConsistencyError("Even block is not an affine image of a pure state")
    amplitudes = np.zeros(2**n, dtype=np.complex128)
    amplitudes[list(even_basis)] = eigenvectors[:, -1]
    return PureState.normalized(amplitudes, n)


def state_density(state: PureState) -> DensityMatrix:
    """Even-block MQ density 2|Psi><Psi| - offset, the inverse of even_block_state."""
    n = state.n_spins
    if n not in (2, 3):
        raise DimensionError(f"Relation holds for 2 or 3 spins only, got {n}")
    even_basis, _ = parity_bases(n)
    projector = state.projector()[np.ix_(even_basis, even_basis)]
    block = 2 * projector + (n / 2 - 2) * np.eye(len(even_basis))
    return DensityMatrix(matrix=block, n_spins=n, basis=even_basis)
