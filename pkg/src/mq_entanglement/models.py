"""Immutable data models for spin dynamics and entanglement."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from mq_entanglement.errors import (
    DimensionError,
    DomainError,
    NormalizationError,
    SymmetryError,
)

DEFAULT_SPIN_CAP = 12
SPIN_LABELS = ("A", "B", "C")


def _frozen_array(values: np.ndarray, dtype: type = np.complex128) -> np.ndarray:
    array = np.array(values, dtype=dtype, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class NumericPolicy:
    """Tolerances shared by every numeric operation."""

    atol: float = 1e-10
    hermitian_atol: float = 1e-10
    structure_atol: float = 1e-12
    norm_atol: float = 1e-12
    psd_atol: float = 1e-8
    imag_atol: float = 1e-8
    rank_cutoff: float = 1e-14
    classify_tol: float = 1e-8


DEFAULT_POLICY = NumericPolicy()


@dataclass(frozen=True)
class SpinSystem:
    """Spin count plus dipolar couplings D_jk (rad/s) for j < k.

    Couplings are stored in lexicographic pair order:
    (0,1), (0,2), ..., (0,N-1), (1,2), ..., (N-2,N-1).
    """

    n_spins: int
    couplings: tuple[float, ...]
    max_spins: int = field(default=DEFAULT_SPIN_CAP, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.n_spins < 2:
            raise DomainError(f"Spin system needs at least 2 spins, got {self.n_spins}")
        if self.n_spins > self.max_spins:
            raise DomainError(
                f"{self.n_spins} spins exceeds the cap of {self.max_spins}; "
                "raise max_spins to override"
            )
        expected = self.n_spins * (self.n_spins - 1) // 2
        values = tuple(float(d) for d in self.couplings)
        if len(values) != expected:
            raise DimensionError(
                f"{self.n_spins} spins need {expected} couplings, got {len(values)}"
            )
        if not all(math.isfinite(d) for d in values):
            raise DomainError("Couplings must be finite")
        object.__setattr__(self, "couplings", values)

    @classmethod
    def from_table(
        cls,
        n_spins: int,
        table: dict[tuple[int, int], float],
        max_spins: int = DEFAULT_SPIN_CAP,
    ) -> "SpinSystem":
        """Build from a {(j, k): D_jk} table; missing pairs are uncoupled."""
        couplings = []
        for j, k in pair_indices(n_spins):
            couplings.append(table.get((j, k), table.get((k, j), 0.0)))
        return cls(n_spins=n_spins, couplings=tuple(couplings), max_spins=max_spins)

    @classmethod
    def uniform(cls, n_spins: int, coupling: float) -> "SpinSystem":
        """All pairs share the same coupling."""
        count = n_spins * (n_spins - 1) // 2
        return cls(n_spins=n_spins, couplings=(coupling,) * count)

    def pairs(self) -> list[tuple[int, int, float]]:
        """Return (j, k, D_jk) for every pair j < k."""
        return [(j, k, d) for (j, k), d in zip(pair_indices(self.n_spins), self.couplings)]

    def coupling(self, j: int, k: int) -> float:
        """Coupling between spins j and k (order-insensitive)."""
        if j == k:
            raise DomainError("A spin has no coupling with itself")
        lo, hi = min(j, k), max(j, k)
        return self.couplings[pair_indices(self.n_spins).index((lo, hi))]

    @property
    def dim(self) -> int:
        return 2**self.n_spins


def pair_indices(n_spins: int) -> list[tuple[int, int]]:
    """Lexicographic list of spin pairs j < k."""
    return [(j, k) for j in range(n_spins) for k in range(j + 1, n_spins)]


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian density matrix over the full basis or over a parity block.

    ``basis`` lists the computational-basis indices of the rows; None means the
    full 2^N basis in natural order.
    """

    matrix: np.ndarray
    n_spins: int
    basis: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        matrix = _frozen_array(self.matrix)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionError(f"Density matrix must be square, got shape {matrix.shape}")
        expected = len(self.basis) if self.basis is not None else 2**self.n_spins
        if matrix.shape[0] != expected:
            raise DimensionError(
                f"Density matrix of size {matrix.shape[0]} does not match basis size {expected}"
            )
        if not np.allclose(matrix, matrix.conj().T, rtol=0.0, atol=DEFAULT_POLICY.hermitian_atol):
            raise SymmetryError("Density matrix is not Hermitian")
        object.__setattr__(self, "matrix", matrix)
        if self.basis is not None:
            object.__setattr__(self, "basis", tuple(int(i) for i in self.basis))

    @property
    def indices(self) -> tuple[int, ...]:
        """Computational-basis index of each row."""
        if self.basis is None:
            return tuple(range(2**self.n_spins))
        return self.basis

    @property
    def trace(self) -> complex:
        return complex(np.trace(self.matrix))


@dataclass(frozen=True)
class PureState:
    """Normalized amplitude vector over the 2^N computational basis."""

    amplitudes: np.ndarray
    n_spins: int

    def __post_init__(self) -> None:
        amplitudes = _frozen_array(self.amplitudes)
        if amplitudes.shape != (2**self.n_spins,):
            raise DimensionError(
                f"{self.n_spins} spins need {2**self.n_spins} amplitudes, "
                f"got shape {amplitudes.shape}"
            )
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > DEFAULT_POLICY.norm_atol:
            raise NormalizationError(f"State norm is {norm!r}, expected 1")
        object.__setattr__(self, "amplitudes", amplitudes)

    @classmethod
    def normalized(cls, amplitudes: np.ndarray, n_spins: int) -> "PureState":
        """Build a state after rescaling to unit norm."""
        vector = np.asarray(amplitudes, dtype=np.complex128)
        norm = np.linalg.norm(vector)
        if norm == 0.0:
            raise NormalizationError("Cannot normalize the zero vector")
        return cls(amplitudes=vector / norm, n_spins=n_spins)

    def projector(self) -> np.ndarray:
        """Return |psi><psi|."""
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True)
class CoherenceSpectrum:
    """Normalized MQ intensities, folded so J_n means J_{+n} + J_{-n} for n > 0."""

    intensities: dict[int, float]
    n_spins: int

    def __getitem__(self, order: int) -> float:
        return self.intensities.get(abs(order), 0.0)

    @property
    def orders(self) -> list[int]:
        return sorted(self.intensities)

    def total(self) -> float:
        """Left-hand side of the sum rule; equals 1 for unitary evolution."""
        return float(sum(self.intensities.values()))


class Classification(str, Enum):
    """Entanglement class of a state in the generalized GHZ/W family."""

    SEPARABLE = "separable"
    GHZ_LIKE = "GHZ-like"
    W_LIKE = "W-like"
    GENERIC = "generic"


@dataclass(frozen=True)
class EntanglementReport:
    """All entanglement measures of a three-spin pure state."""

    pair_c2: dict[str, float]
    one_to_pair_c2: dict[str, float]
    three_tangle: float
    entropies: dict[str, float]
    lambdas: dict[str, tuple[float, float]] = field(default_factory=dict)
    classification: Optional[Classification] = None

    def monogamy_residuals(self) -> dict[str, float]:
        """C^2_{X(YZ)} - C^2_XY - C^2_XZ for each focus spin X."""
        residuals = {}
        for focus in SPIN_LABELS:
            pairs = [label for label in self.pair_c2 if focus in label]
            residuals[focus] = self.one_to_pair_c2[focus] - sum(self.pair_c2[p] for p in pairs)
        return residuals


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of comparing J_2 with an entanglement quantity."""

    branch: str
    j2: float
    measure: float
    error: float
    passed: bool


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one verification check."""

    name: str
    passed: bool
    max_error: float
    tolerance: float
    detail: str = ""
