"""Time sweeps: channel registry, sweep runner and CSV writer."""

import csv
import math
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from mq_entanglement.analytic import even_block_state
from mq_entanglement.dynamics import Propagator, block_density, initial_density, intensities
from mq_entanglement.entanglement import (
    concurrence_to_entanglement,
    labeled_lambdas,
    magic_basis_concurrence,
    one_to_pair_c2,
    pair_concurrence_squared,
    three_tangle,
)
from mq_entanglement.errors import ChannelError
from mq_entanglement.models import (
    DEFAULT_POLICY,
    CoherenceSpectrum,
    NumericPolicy,
    PureState,
    SpinSystem,
)
from mq_entanglement.spin_model import build_hamiltonian, parity_bases
from mq_entanglement.utils.logging import get_logger

logger = get_logger(__name__)

TIME_COLUMN = "t_ms"


@dataclass(frozen=True)
class SweepPoint:
    """Everything a channel may read at one time point."""

    tau: float
    spectrum: CoherenceSpectrum
    state: Optional[PureState]


ChannelFn = Callable[[SweepPoint, NumericPolicy], float]


def _entropy_of(c2: float, policy: NumericPolicy) -> float:
    return concurrence_to_entanglement(math.sqrt(min(max(c2, 0.0), 1.0)), policy)


def _state(point: SweepPoint) -> PureState:
    assert point.state is not None
    return point.state


def _pair_channels() -> dict[str, ChannelFn]:
    return {
        "C2": lambda p, pol: magic_basis_concurrence(_state(p)) ** 2,
        "E": lambda p, pol: concurrence_to_entanglement(magic_basis_concurrence(_state(p)), pol),
    }


def _three_spin_channels() -> dict[str, ChannelFn]:
    channels: dict[str, ChannelFn] = {}
    for pair in ("BC", "AC", "AB"):
        channels[f"C2_{pair}"] = lambda p, pol, pair=pair: pair_concurrence_squared(
            _state(p), pair
        )
        channels[f"E_{pair}"] = lambda p, pol, pair=pair: _entropy_of(
            pair_concurrence_squared(_state(p), pair), pol
        )
    for focus, rest in (("A", "BC"), ("B", "AC"), ("C", "AB")):
        channels[f"C2_{focus}({rest})"] = lambda p, pol, focus=focus: one_to_pair_c2(
            _state(p), focus, pol
        )
        channels[f"E_{focus}({rest})"] = lambda p, pol, focus=focus: _entropy_of(
            one_to_pair_c2(_state(p), focus, pol), pol
        )
    channels["tau_ABC"] = lambda p, pol: three_tangle(_state(p), pol)
    channels["E_tau"] = lambda p, pol: _entropy_of(three_tangle(_state(p), pol), pol)
    channels["lambda1"] = lambda p, pol: labeled_lambdas(_state(p), "BC", pol)[0]
    channels["lambda2"] = lambda p, pol: labeled_lambdas(_state(p), "BC", pol)[1]
    return channels


def _intensity_channel(order: int) -> ChannelFn:
    return lambda p, pol: p.spectrum[order]


def channel_registry(n_spins: int) -> dict[str, ChannelFn]:
    """Channels available for a system of n_spins, keyed by name."""
    registry: dict[str, ChannelFn] = {
        f"J{order}": _intensity_channel(order) for order in range(n_spins + 1)
    }
    if n_spins == 2:
        registry.update(_pair_channels())
    elif n_spins == 3:
        registry.update(_three_spin_channels())
    return registry


def available_channels(n_spins: int) -> list[str]:
    return list(channel_registry(n_spins))


def time_grid(t_start: float, t_end: float, steps: int) -> np.ndarray:
    """Equally spaced times (seconds), both ends included."""
    return np.linspace(t_start, t_end, steps)


class SweepRunner:
    """Evaluate named channels of one spin system on a time grid.

    The Hamiltonian is diagonalized once; each time point is independent.
    """

    def __init__(
        self,
        system: SpinSystem,
        channels: Iterable[str],
        policy: NumericPolicy = DEFAULT_POLICY,
    ) -> None:
        """Initialize runner.

        Args:
            system: Spin system to evolve.
            channels: Channel names in output order.
            policy: Numeric tolerances.

        Raises:
            ChannelError: If a channel is unavailable for the system.
        """
        self.system = system
        self.policy = policy
        self.channels = tuple(channels)
        registry = channel_registry(system.n_spins)
        unknown = [name for name in self.channels if name not in registry]
        if unknown:
            raise ChannelError(
                f"Channel(s) {', '.join(unknown)} unavailable for {system.n_spins} spins; "
                f"available: {', '.join(registry)}"
            )
        self._functions = [registry[name] for name in self.channels]
        self._needs_state = any(not name.startswith("J") for name in self.channels)
        self._propagator = Propagator(build_hamiltonian(system), policy)
        self._rho0 = initial_density(system.n_spins)
        self._even_basis = parity_bases(system.n_spins)[0]

    def evaluate(self, tau: float) -> list[float]:
        """Channel values at a single time."""
        rho = self._propagator.evolve(self._rho0, tau)
        spectrum = intensities(rho, self._rho0)
        state = None
        if self._needs_state:
            state = even_block_state(block_density(rho, self._even_basis), self.policy)
        point = SweepPoint(tau=tau, spectrum=spectrum, state=state)
        return [float(fn(point, self.policy)) for fn in self._functions]

    def run(self, times: Iterable[float]) -> Iterator[tuple[float, list[float]]]:
        """Yield (time, values) rows in the order of ``times``."""
        count = 0
        for tau in times:
            count += 1
            yield float(tau), self.evaluate(float(tau))
        logger.debug("sweep_evaluated", points=count, channels=list(self.channels))


def format_value(value: float) -> str:
    """Scientific notation with 12 significant digits."""
    return f"{value:.11e}"


def write_csv(
    rows: Iterable[tuple[float, list[float]]],
    channels: Iterable[str],
    stream: TextIO,
) -> int:
    """Write a header row and one row per time point, time in ms.

    Returns:
        Number of data rows written.
    """
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow([TIME_COLUMN, *channels])
    written = 0
    for tau, values in rows:
        writer.writerow([format_value(tau * 1e3), *(format_value(v) for v in values)])
        written += 1
    return written
