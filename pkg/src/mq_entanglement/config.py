"""Configuration management with Pydantic Settings."""

from collections.abc import Mapping
from pathlib import Path
from typing import Any, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from mq_entanglement.models import DEFAULT_SPIN_CAP, NumericPolicy, SpinSystem
from mq_entanglement.presets import CHAIN_SPACING, PRESETS, preset_system
from mq_entanglement.utils.validators import parse_channels, parse_coupling

SWEEP_FILE_KEYS = frozenset(
    {
        "system",
        "n_spins",
        "spacing",
        "d12",
        "d13",
        "d23",
        "t_start",
        "t_end",
        "steps",
        "channels",
        "max_spins",
    }
)


class AppConfig(BaseSettings):
    """Application configuration."""

    log_file: Optional[str] = Field(default=None, validation_alias="MQ_LOG_FILE")
    verbose: bool = Field(default=False, validation_alias="MQ_VERBOSE")
    atol: float = Field(default=1e-10, gt=0, validation_alias="MQ_ATOL")
    classify_tol: float = Field(default=1e-8, gt=0, validation_alias="MQ_CLASSIFY_TOL")
    spin_cap: int = Field(default=DEFAULT_SPIN_CAP, ge=2, validation_alias="MQ_SPIN_CAP")
    seed: int = Field(default=20031, validation_alias="MQ_SEED")

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    def numeric_policy(self, atol: Optional[float] = None) -> NumericPolicy:
        """Build the tolerance record, optionally overriding atol (``--tol``).

        Raises:
            ValueError: If the override is not positive.
        """
        if atol is None:
            atol = self.atol
        elif not atol > 0:
            raise ValueError(f"Invalid tolerance {atol}: must be positive")
        return NumericPolicy(atol=atol, classify_tol=self.classify_tol)


class SweepConfig(BaseModel):
    """One time sweep: a system, a time grid (seconds) and channel names."""

    model_config = ConfigDict(frozen=True)

    system: Optional[str] = None
    n_spins: Optional[int] = Field(default=None, ge=2)
    spacing: float = Field(default=CHAIN_SPACING, gt=0)
    d12: Optional[float] = None
    d13: Optional[float] = None
    d23: Optional[float] = None
    t_start: float = 0.0
    t_end: float = 4e-4
    steps: int = 801
    channels: tuple[str, ...] = ("J0", "J2")
    max_spins: int = Field(default=DEFAULT_SPIN_CAP, ge=2)

    @model_validator(mode="after")
    def check_grid_and_system(self) -> "SweepConfig":
        if self.t_start < 0:
            raise ValueError(f"t_start must be >= 0, got {self.t_start}")
        if self.t_end <= self.t_start:
            raise ValueError(f"t_end must exceed t_start, got {self.t_start}..{self.t_end}")
        if self.steps < 2:
            raise ValueError(f"steps must be >= 2, got {self.steps}")
        if not self.channels:
            raise ValueError("At least one channel is required")
        explicit = self.d12 is not None or self.d13 is not None or self.d23 is not None
        if self.system is None and not explicit:
            raise ValueError("Give a preset --system or explicit couplings --d12/--d13/--d23")
        if self.system is not None and explicit:
            raise ValueError("Use either a preset system or explicit couplings, not both")
        if self.system is not None and self.system not in PRESETS:
            raise ValueError(f"Unknown system '{self.system}'; choose one of {', '.join(PRESETS)}")
        if explicit and self.d12 is None:
            raise ValueError("Explicit couplings need --d12")
        return self

    def spin_system(self) -> SpinSystem:
        """Resolve the preset or explicit couplings to a SpinSystem."""
        if self.system is not None:
            return preset_system(self.system, self.n_spins, self.spacing, self.max_spins)
        assert self.d12 is not None
        if self.d13 is None and self.d23 is None:
            return SpinSystem(n_spins=2, couplings=(self.d12,))
        return SpinSystem(
            n_spins=3, couplings=(self.d12, self.d13 or 0.0, self.d23 or 0.0)
        )


def load_sweep_file(path: str | Path) -> dict[str, str]:
    """Read a key=value sweep file.

    Keys mirror the CLI flags (``t-start`` and ``t_start`` are equivalent).

    Returns:
        Raw string values keyed by field name.

    Raises:
        ValueError: If the file is missing or contains unknown keys.
    """
    file_path = Path(path)
    if not file_path.is_file():
        raise ValueError(f"Invalid config file '{path}': not found")
    values: dict[str, str] = {}
    for key, value in dotenv_values(file_path).items():
        name = key.strip().lower().replace("-", "_")
        if name not in SWEEP_FILE_KEYS:
            raise ValueError(f"Invalid config key '{key}' in '{path}'")
        if value is not None and value.strip():
            values[name] = value.strip()
    return values


def build_sweep_config(values: Mapping[str, Any]) -> SweepConfig:
    """Build a SweepConfig from file values and/or flags.

    String couplings go through ``parse_coupling`` and string channel lists
    through ``parse_channels``; ``t_start``/``t_end`` are given in ms.

    Raises:
        ValueError: If a value cannot be parsed.
        ValidationError: If the resulting config is invalid.
    """
    fields = dict(values)
    for key in ("d12", "d13", "d23"):
        if isinstance(fields.get(key), str):
            fields[key] = parse_coupling(fields[key])
    if isinstance(fields.get("channels"), str):
        fields["channels"] = parse_channels(fields["channels"])
    for key in ("t_start", "t_end"):
        if key in fields:
            try:
                fields[key] = float(fields[key]) * 1e-3
            except ValueError:
                raise ValueError(f"Invalid time '{fields[key]}' for {key}: expected ms")
    return SweepConfig(**fields)


def load_app_config() -> AppConfig:
    """Load application configuration.

    Returns:
        Application configuration with defaults.
    """
    return AppConfig()
