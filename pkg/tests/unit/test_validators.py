"""Unit tests for validation utilities."""

import math

import pytest

from mq_entanglement.errors import ChannelError
from mq_entanglement.utils.validators import parse_amplitude, parse_channels, parse_coupling


def test_parse_coupling_plain() -> None:
    """Test plain rad/s values."""
    assert parse_coupling("18535.4") == 18535.4
    assert parse_coupling(" -1.2e4 ") == -12000.0


def test_parse_coupling_shorthand() -> None:
    """Test the 2pi*<Hz> shorthand."""
    assert parse_coupling("2pi*2950") == pytest.approx(2 * math.pi * 2950)
    assert parse_coupling("2*PI*100") == pytest.approx(2 * math.pi * 100)


def test_parse_coupling_invalid() -> None:
    """Test malformed and non-finite couplings."""
    with pytest.raises(ValueError, match="Invalid coupling"):
        parse_coupling("fast")
    with pytest.raises(ValueError, match="must be finite"):
        parse_coupling("inf")


def test_parse_channels() -> None:
    """Test splitting keeps declared order."""
    assert parse_channels("J0, J2 ,E") == ("J0", "J2", "E")


def test_parse_channels_invalid() -> None:
    """Test empty and duplicate lists."""
    with pytest.raises(ChannelError, match="cannot be empty"):
        parse_channels(" , ")
    with pytest.raises(ChannelError, match="listed twice"):
        parse_channels("J0,J2,J0")


def test_parse_amplitude() -> None:
    """Test reals, complex literals, quotients and square roots."""
    assert parse_amplitude("0.5") == 0.5
    assert parse_amplitude("0.3+0.4j") == complex(0.3, 0.4)
    assert parse_amplitude("1i") == 1j
    assert parse_amplitude("1/2") == 0.5
    assert parse_amplitude("1/sqrt(3)") == pytest.approx(1 / math.sqrt(3))


def test_parse_amplitude_invalid() -> None:
    """Test unparseable amplitudes."""
    with pytest.raises(ValueError, match="Invalid amplitude"):
        parse_amplitude("half")
    with pytest.raises(ValueError, match="Invalid amplitude"):
        parse_amplitude("1/0")
    with pytest.raises(ValueError, match="Invalid amplitude"):
        parse_amplitude("sqrt(-1)")
