"""Entanglement measures for two- and three-spin states.

Pair concurrences of three-spin pure states are computed from the two
unnormalized branch vectors of the traced spin rather than from an
eigendecomposition of the reduced matrix; singular values of the Wootters
tau-matrix then give sqrt(lambda_i) without squaring round-off.
"""

import math
from collections.abc import Iterable

import numpy as np

from mq_entanglement.analytic import (
    THREE_SPIN_EVEN_BASIS,
    THREE_SPIN_ODD_BASIS,
    even_block_state,
)
from mq_entanglement.dynamics import block_density, evolve, initial_density, intensities
from mq_entanglement.errors import (
    ClassificationError,
    ConsistencyError,
    DimensionError,
    DomainError,
    NormalizationError,
    NumericError,
    PositivityError,
    ScopeError,
    SpinIndexError,
    SymmetryError,
)
from mq_entanglement.linalg import (
    PAULI_Y,
    as_matrix,
    hermitian_eigendecompose,
    is_hermitian,
    kron,
    partial_trace,
)
from mq_entanglement.models import (
    DEFAULT_POLICY,
    SPIN_LABELS,
    Classification,
    EntanglementReport,
    IdentityReport,
    NumericPolicy,
    PureState,
    SpinSystem,
)
from mq_entanglement.spin_model import build_hamiltonian, parity_bases
from mq_entanglement.utils.logging import get_logger

logger = get_logger(__name__)

SIGMA_YY = kron(PAULI_Y, PAULI_Y)

_S = 1.0 / math.sqrt(2.0)
# columns e1..e4 over |00>, |01>, |10>, |11>
MAGIC_BASIS = np.array(
    [
        [_S, 1.0j * _S, 0.0, 0.0],
        [0.0, 0.0, 1.0j * _S, _S],
        [0.0, 0.0, 1.0j * _S, -_S],
        [_S, -1.0j * _S, 0.0, 0.0],
    ],
    dtype=np.complex128,
)

PAIR_LABELS = ("BC", "AC", "AB")
W_POINT_LAMBDA2 = 4.0 / 9.0


def spin_index(label: str | int) -> int:
    """Map 'A'/'B'/'C' (or 0/1/2) to a spin index.

    Raises:
        SpinIndexError: If the label is not one of the three spins.
    """
    if isinstance(label, int) and not isinstance(label, bool) and 0 <= label < 3:
        return label
    if isinstance(label, str) and label.upper() in SPIN_LABELS:
        return SPIN_LABELS.index(label.upper())
    raise SpinIndexError(f"Unknown spin label {label!r}; use A, B or C")


def pair_spins(label: str) -> tuple[int, int]:
    """Map a pair label such as 'BC' to ascending spin indices."""
    if len(label) != 2:
        raise SpinIndexError(f"Pair label must name two spins, got {label!r}")
    j, k = sorted(spin_index(ch) for ch in label)
    if j == k:
        raise SpinIndexError(f"Pair label repeats a spin: {label!r}")
    return j, k


def _pair_label(j: int, k: int) -> str:
    return SPIN_LABELS[min(j, k)] + SPIN_LABELS[max(j, k)]


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0."""
    total = 0.0
    for p in (x, 1.0 - x):
        if p > 0.0:
            total -= p * math.log2(p)
    return total


def von_neumann_entropy(sigma: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """-Tr sigma log2 sigma in bits.

    Raises:
        NormalizationError: If the trace is not 1.
        PositivityError: If an eigenvalue is clearly negative.
    """
    matrix = as_matrix(sigma)
    trace = complex(np.trace(matrix))
    if abs(trace - 1.0) > policy.psd_atol:
        raise NormalizationError(f"Reduced density matrix has trace {trace:.6g}, expected 1")
    eigenvalues, _ = hermitian_eigendecompose(matrix, policy)
    if eigenvalues[0] < -policy.psd_atol:
        raise PositivityError(f"Negative eigenvalue {eigenvalues[0]:.3e}")
    probabilities = np.clip(eigenvalues, 0.0, 1.0)
    nonzero = probabilities[probabilities > 0.0]
    return float(-np.sum(nonzero * np.log2(nonzero)))


def reduced_density(state: PureState, keep: Iterable[int]) -> np.ndarray:
    """Reduced density matrix of a pure state on the spins in ``keep``."""
    return partial_trace(state.projector(), state.n_spins, keep)


def bipartite_entanglement(
    state: PureState, cut: Iterable[int], policy: NumericPolicy = DEFAULT_POLICY
) -> float:
    """Entropy of entanglement across the cut ``cut`` | rest.

    Raises:
        SpinIndexError: If the cut is empty, covers every spin or is out of range.
        ConsistencyError: If the two sides disagree.
    """
    side = sorted(set(cut))
    n = state.n_spins
    if not side or len(side) >= n or any(not 0 <= s < n for s in side):
        raise SpinIndexError(f"Invalid bipartition {side} of {n} spins")
    rest = [s for s in range(n) if s not in side]
    left = von_neumann_entropy(reduced_density(state, side), policy)
    right = von_neumann_entropy(reduced_density(state, rest), policy)
    if abs(left - right) > policy.atol:
        raise ConsistencyError(f"Entropies of the two sides differ: {left} vs {right}")
    return left


def magic_basis_concurrence(state: PureState) -> float:
    """|sum_i alpha_i^2| with alpha_i the magic-basis components.

    Raises:
        DimensionError: If the state is not a two-spin state.
    """
    if state.n_spins != 2:
        raise DimensionError(f"Magic-basis concurrence needs 2 spins, got {state.n_spins}")
    alpha = MAGIC_BASIS.conj().T @ state.amplitudes
    return min(float(abs(np.sum(alpha**2))), 1.0)


def concurrence_to_entanglement(c: float, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Entanglement of formation H[(1 + sqrt(1 - C^2)) / 2].

    Raises:
        DomainError: If c lies outside [0, 1].
    """
    if c < -policy.norm_atol or c > 1.0 + policy.norm_atol:
        raise DomainError(f"Concurrence must lie in [0, 1], got {c}")
    c = min(max(c, 0.0), 1.0)
    return binary_entropy((1.0 + math.sqrt(1.0 - c * c)) / 2.0)


def _two_qubit_matrix(sigma: np.ndarray, policy: NumericPolicy) -> np.ndarray:
    matrix = as_matrix(sigma)
    if matrix.shape != (4, 4):
        raise DimensionError(f"Spin flip needs a two-qubit 4x4 matrix, got {matrix.shape}")
    if not is_hermitian(matrix, policy.hermitian_atol):
        raise SymmetryError("Spin flip needs a Hermitian matrix")
    return matrix


def spin_flip(sigma: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY) -> np.ndarray:
    """(sigma_y x sigma_y) sigma* (sigma_y x sigma_y).

    Raises:
        DimensionError: If sigma is not 4x4.
        SymmetryError: If sigma is not Hermitian.
    """
    matrix = _two_qubit_matrix(sigma, policy)
    return SIGMA_YY @ matrix.conj() @ SIGMA_YY


def _tau_singular_values(vectors: np.ndarray) -> np.ndarray:
    # rows are unnormalized decomposition vectors v_i; tau_ij = v_i^T YY v_j
    values = np.zeros(4)
    if vectors.shape[0]:
        tau = vectors @ SIGMA_YY @ vectors.T
        singular = np.linalg.svd(tau, compute_uv=False)
        values[: len(singular)] = singular[:4]
    return np.sort(values)[::-1]


def _psd_vectors(sigma: np.ndarray, policy: NumericPolicy) -> np.ndarray | None:
    eigenvalues, eigenvectors = hermitian_eigendecompose(sigma, policy)
    if eigenvalues[0] < -policy.psd_atol:
        return None
    keep = eigenvalues > policy.rank_cutoff
    return (eigenvectors[:, keep] * np.sqrt(eigenvalues[keep])).T


def wootters_lambdas(sigma: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY) -> list[float]:
    """Eigenvalues of sigma * spin_flip(sigma), clamped at 0, descending.

    For positive sigma they are the squared singular values of the Wootters
    tau-matrix (equivalently the spectrum of sqrt(sigma) sigma~ sqrt(sigma));
    otherwise the non-Hermitian product is diagonalized directly.

    Raises:
        NumericError: If the direct product has complex eigenvalues.
    """
    matrix = _two_qubit_matrix(sigma, policy)
    vectors = _psd_vectors(matrix, policy)
    if vectors is not None:
        return [float(s * s) for s in _tau_singular_values(vectors)]

    eigenvalues = np.linalg.eigvals(matrix @ spin_flip(matrix, policy))
    if np.max(np.abs(eigenvalues.imag)) > policy.imag_atol:
        raise NumericError("sigma * spin_flip(sigma) has complex eigenvalues")
    real = np.clip(eigenvalues.real, 0.0, None)
    return [float(v) for v in np.sort(real)[::-1]]


def wootters_concurrence(sigma: np.ndarray, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """max(0, sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4))."""
    matrix = _two_qubit_matrix(sigma, policy)
    vectors = _psd_vectors(matrix, policy)
    if vectors is not None:
        roots = _tau_singular_values(vectors)
    else:
        roots = np.sqrt(wootters_lambdas(matrix, policy))
    return float(max(0.0, roots[0] - roots[1] - roots[2] - roots[3]))


def _require_three_spins(state: PureState) -> None:
    if state.n_spins != 3:
        raise DimensionError(f"Three-spin measure applied to {state.n_spins} spins")


def _branch_vectors(state: PureState, pair: tuple[int, int]) -> np.ndarray:
    traced = ({0, 1, 2} - set(pair)).pop()
    tensor = state.amplitudes.reshape(2, 2, 2)
    return np.moveaxis(tensor, traced, 0).reshape(2, 4)


def pair_lambdas(state: PureState, pair: str) -> tuple[float, float]:
    """Nonzero Wootters eigenvalues of a pair of a three-spin pure state, descending."""
    _require_three_spins(state)
    roots = _tau_singular_values(_branch_vectors(state, pair_spins(pair)))
    return float(roots[0] ** 2), float(roots[1] ** 2)


def pair_concurrence_squared(state: PureState, pair: str) -> float:
    """C^2 of a spin pair of a three-spin pure state."""
    _require_three_spins(state)
    roots = _tau_singular_values(_branch_vectors(state, pair_spins(pair)))
    return float(max(0.0, roots[0] - roots[1]) ** 2)


def one_to_pair_c2(
    state: PureState, focus: str | int, policy: NumericPolicy = DEFAULT_POLICY
) -> float:
    """C^2 between one spin and the other two, 4 det sigma_focus.

    The sum Tr[sigma_XY sigma~_XY] + Tr[sigma_XZ sigma~_XZ] is evaluated as
    well and must agree.

    Raises:
        SpinIndexError: If the focus label is invalid.
        ConsistencyError: If the two evaluations differ.
    """
    _require_three_spins(state)
    f = spin_index(focus)
    sigma = reduced_density(state, [f])
    determinant = 4.0 * float(np.real(np.linalg.det(sigma)))
    cross = 0.0
    for other in range(3):
        if other == f:
            continue
        pair = reduced_density(state, sorted((f, other)))
        cross += float(np.real(np.trace(pair @ spin_flip(pair, policy))))
    if abs(determinant - cross) > policy.atol:
        raise ConsistencyError(
            f"4 det sigma_{SPIN_LABELS[f]} = {determinant} but pair traces sum to {cross}"
        )
    return determinant


def monogamy_residuals(
    state: PureState, policy: NumericPolicy = DEFAULT_POLICY
) -> dict[str, float]:
    """C^2_{X(YZ)} - C^2_XY - C^2_XZ for X = A, B, C."""
    _require_three_spins(state)
    residuals = {}
    for f, focus in enumerate(SPIN_LABELS):
        pairs = [_pair_label(f, other) for other in range(3) if other != f]
        residuals[focus] = one_to_pair_c2(state, f, policy) - sum(
            pair_concurrence_squared(state, p) for p in pairs
        )
    return residuals


def three_tangle(state: PureState, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """Residual three-spin entanglement tau_ABC.

    Raises:
        ConsistencyError: If the residuals of the three focus spins disagree.
    """
    residuals = monogamy_residuals(state, policy)
    values = list(residuals.values())
    if max(values) - min(values) > policy.atol:
        raise ConsistencyError(f"Monogamy residuals disagree: {residuals}")
    return residuals["A"]


def family_coefficients(
    state: PureState, policy: NumericPolicy = DEFAULT_POLICY
) -> tuple[complex, complex, complex, complex, str]:
    """Extract (a, b, c, d, family) of a generalized GHZ/W state.

    Raises:
        ClassificationError: If the state has weight outside both families.
    """
    _require_three_spins(state)
    amplitudes = state.amplitudes
    weights = np.abs(amplitudes) ** 2
    odd_weight = float(sum(weights[i] for i in THREE_SPIN_ODD_BASIS))
    even_weight = float(sum(weights[i] for i in THREE_SPIN_EVEN_BASIS))
    if odd_weight <= policy.classify_tol:
        a, b, c, d = (complex(amplitudes[i]) for i in THREE_SPIN_EVEN_BASIS)
        return a, b, c, d, "even"
    if even_weight <= policy.classify_tol:
        d, c, b, a = (complex(amplitudes[i]) for i in THREE_SPIN_ODD_BASIS)
        return a, b, c, d, "odd"
    raise ClassificationError("State mixes even and odd parity sectors")


def labeled_lambdas(
    state: PureState, cut: str = "BC", policy: NumericPolicy = DEFAULT_POLICY
) -> tuple[float, float]:
    """Labelled pair (lambda_1, lambda_2) of a GHZ/W-family state for a cut.

    BC: (4|a|^2|b|^2, 4|c|^2|d|^2), AC: (4|a|^2|c|^2, 4|b|^2|d|^2),
    AB: (4|a|^2|d|^2, 4|b|^2|c|^2). The labelling is kept even when
    lambda_2 > lambda_1.
    """
    a, b, c, d, _ = family_coefficients(state, policy)
    pa, pb, pc, pd = (abs(x) ** 2 for x in (a, b, c, d))
    key = _pair_label(*pair_spins(cut))
    pairs = {
        "BC": (pa * pb, pc * pd),
        "AC": (pa * pc, pb * pd),
        "AB": (pa * pd, pb * pc),
    }
    first, second = pairs[key]
    return 4.0 * first, 4.0 * second


def lambda_relation_check(lambda2: float, policy: NumericPolicy = DEFAULT_POLICY) -> float:
    """lambda_1 = 2 sqrt(lambda_2) - 3 lambda_2 for the b = c = d family.

    Raises:
        DomainError: If lambda_2 lies outside [0, 4/9].
    """
    if lambda2 < -policy.atol or lambda2 > W_POINT_LAMBDA2 + policy.atol:
        raise DomainError(f"lambda_2 must lie in [0, 4/9], got {lambda2}")
    lambda2 = min(max(lambda2, 0.0), W_POINT_LAMBDA2)
    return 2.0 * math.sqrt(lambda2) - 3.0 * lambda2


def classify_measures(
    pair_c2: dict[str, float],
    one_to_pair: dict[str, float],
    tangle: float,
    tol: float,
) -> Classification:
    """Entanglement class from already computed measures."""
    pairs_vanish = all(v < tol for v in pair_c2.values())
    if pairs_vanish and tangle < tol and all(v < tol for v in one_to_pair.values()):
        return Classification.SEPARABLE
    if pairs_vanish and tangle > tol:
        return Classification.GHZ_LIKE
    if tangle < tol and any(v > tol for v in pair_c2.values()):
        return Classification.W_LIKE
    return Classification.GENERIC


def entanglement_report(
    state: PureState, policy: NumericPolicy = DEFAULT_POLICY
) -> EntanglementReport:
    """Every measure of a generalized GHZ/W state, plus its class.

    Raises:
        ClassificationError: If the state is outside the family.
    """
    family_coefficients(state, policy)
    pair_c2 = {label: pair_concurrence_squared(state, label) for label in PAIR_LABELS}
    one_to_pair = {label: one_to_pair_c2(state, label, policy) for label in SPIN_LABELS}
    tangle = three_tangle(state, policy)
    entropies = {
        f"{label}|{''.join(x for x in SPIN_LABELS if x != label)}": bipartite_entanglement(
            state, [i], policy
        )
        for i, label in enumerate(SPIN_LABELS)
    }
    lambdas = {label: labeled_lambdas(state, label, policy) for label in PAIR_LABELS}
    classification = classify_measures(pair_c2, one_to_pair, tangle, policy.classify_tol)
    logger.debug("entanglement_report_built", classification=classification.value)
    return EntanglementReport(
        pair_c2=pair_c2,
        one_to_pair_c2=one_to_pair,
        three_tangle=tangle,
        entropies=entropies,
        lambdas=lambdas,
        classification=classification,
    )


def classify_state(state: PureState, policy: NumericPolicy = DEFAULT_POLICY) -> Classification:
    """Separable, GHZ-like, W-like or generic.

    Raises:
        ClassificationError: If the state is outside the family.
    """
    report = entanglement_report(state, policy)
    assert report.classification is not None
    return report.classification


def _is_ring(system: SpinSystem, policy: NumericPolicy) -> bool:
    scale = max(abs(d) for d in system.couplings)
    return scale > 0.0 and max(system.couplings) - min(system.couplings) <= policy.atol * scale


def j2_identity_check(
    system: SpinSystem, tau: float, policy: NumericPolicy = DEFAULT_POLICY
) -> IdentityReport:
    """Compare J_2 from numeric evolution with C^2 (two spins) or 2 lambda_1 (ring).

    The entanglement side is computed from the pure state recovered from the
    evolved even block, so both sides come from the same dynamics.

    Raises:
        ScopeError: If the system is neither a pair nor an equal-coupling ring.
    """
    n = system.n_spins
    if n == 2:
        branch = "pair"
    elif n == 3 and _is_ring(system, policy):
        branch = "ring"
    else:
        raise ScopeError("J2 identities cover two spins and the equal-coupling ring only")

    rho0 = initial_density(n)
    rho = evolve(build_hamiltonian(system), rho0, tau, policy)
    j2 = intensities(rho, rho0)[2]
    state = even_block_state(block_density(rho, parity_bases(n)[0]), policy)
    if branch == "pair":
        measure = magic_basis_concurrence(state) ** 2
    else:
        measure = 2.0 * labeled_lambdas(state, "BC", policy)[0]
    error = abs(j2 - measure)
    return IdentityReport(
        branch=branch, j2=j2, measure=measure, error=error, passed=error < policy.atol
    )
