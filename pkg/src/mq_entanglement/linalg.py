"""Dense complex-matrix toolkit built on numpy.

Matrix functions are evaluated through the Hermitian eigendecomposition only,
so a single decomposition serves every time point of a sweep.
"""

from collections.abc import Callable, Iterable

import numpy as np

from mq_entanglement.errors import DimensionError, SpinIndexError, SymmetryError
from mq_entanglement.models import DEFAULT_POLICY, NumericPolicy

PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)


def as_matrix(m: np.ndarray) -> np.ndarray:
    """Coerce to a 2-D complex128 array.

    Raises:
        DimensionError: If the input is not two-dimensional or is empty.
    """
    matrix = np.asarray(m, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] < 1 or matrix.shape[1] < 1:
        raise DimensionError(f"Expected a non-empty 2-D matrix, got shape {matrix.shape}")
    return matrix


def require_square(m: np.ndarray) -> np.ndarray:
    matrix = as_matrix(m)
    if matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {matrix.shape}")
    return matrix


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.asarray(m)).T


def is_hermitian(m: np.ndarray, atol: float = DEFAULT_POLICY.hermitian_atol) -> bool:
    matrix = require_square(m)
    return bool(np.allclose(matrix, dagger(matrix), rtol=0.0, atol=atol))


def n_spins_for(dim: int) -> int:
    """Number of spins whose Hilbert space has dimension ``dim``.

    Raises:
        DimensionError: If ``dim`` is not a power of two.
    """
    if dim < 1 or dim & (dim - 1):
        raise DimensionError(f"Dimension {dim} is not a power of two")
    return dim.bit_length() - 1


def hermitian_eigendecompose(
    m: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY
) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Args:
        m: Square Hermitian matrix.
        policy: Tolerances; ``hermitian_atol`` bounds the allowed asymmetry.

    Returns:
        Ascending real eigenvalues and a unitary matrix whose columns are the
        matching eigenvectors.

    Raises:
        DimensionError: If the matrix is not square.
        SymmetryError: If the matrix is not Hermitian within tolerance.
    """
    matrix = require_square(m)
    if not is_hermitian(matrix, policy.hermitian_atol):
        raise SymmetryError("Matrix is not Hermitian within tolerance")
    # eigh reads one triangle only; symmetrize so round-off is shared evenly
    eigenvalues, eigenvectors = np.linalg.eigh((matrix + dagger(matrix)) / 2)
    return eigenvalues, eigenvectors


def apply_function(
    eigenvalues: np.ndarray,
    eigenvectors: np.ndarray,
    fn: Callable[[np.ndarray], np.ndarray],
) -> np.ndarray:
    """Return V f(diag(lambda)) V^dagger for a precomputed decomposition."""
    return (eigenvectors * fn(eigenvalues)) @ dagger(eigenvectors)


def hermitian_function(
    m: np.ndarray,
    fn: Callable[[np.ndarray], np.ndarray],
    policy: NumericPolicy = DEFAULT_POLICY,
) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix via its eigenvalues."""
    eigenvalues, eigenvectors = hermitian_eigendecompose(m, policy)
    return apply_function(eigenvalues, eigenvectors, fn)


def propagator(eigenvalues: np.ndarray, eigenvectors: np.ndarray, tau: float) -> np.ndarray:
    """exp(-i H tau) from the eigendecomposition of H."""
    return apply_function(eigenvalues, eigenvectors, lambda lam: np.exp(-1.0j * lam * tau))


def expm_hermitian(
    m: np.ndarray, tau: float, policy: NumericPolicy = DEFAULT_POLICY
) -> np.ndarray:
    """exp(-i M tau) for Hermitian M."""
    eigenvalues, eigenvectors = hermitian_eigendecompose(m, policy)
    return propagator(eigenvalues, eigenvectors, tau)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; the first factor indexes the most significant bits."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m: np.ndarray, n_spins: int, keep: Iterable[int]) -> np.ndarray:
    """Reduced matrix on the spins in ``keep``.

    Spin 0 is the most significant bit of the basis index; kept spins appear in
    ascending order in the result.

    Args:
        m: 2^N x 2^N matrix.
        n_spins: N.
        keep: Spins to keep; empty keeps nothing and returns the 1x1 trace.

    Returns:
        2^|keep| x 2^|keep| matrix with the same trace as ``m``.

    Raises:
        DimensionError: If the size is not 2^N or not a power of two.
        SpinIndexError: If a spin index is out of range.
    """
    matrix = require_square(m)
    if n_spins_for(matrix.shape[0]) != n_spins:
        raise DimensionError(
            f"Matrix of size {matrix.shape[0]} does not describe {n_spins} spins"
        )
    kept = sorted(set(keep))
    for spin in kept:
        if not 0 <= spin < n_spins:
            raise SpinIndexError(f"Spin index {spin} out of range for {n_spins} spins")

    tensor = matrix.reshape([2] * (2 * n_spins))
    row_labels = list(range(n_spins))
    # traced spins share their row label, which einsum sums over
    col_labels = [n_spins + j if j in kept else j for j in range(n_spins)]
    out_labels = kept + [n_spins + j for j in kept]
    reduced = np.einsum(tensor, row_labels + col_labels, out_labels)
    size = 2 ** len(kept)
    return np.asarray(reduced).reshape(size, size)
