"""Input parsing and validation utilities."""

import math
import re

from mq_entanglement.errors import ChannelError

_TWO_PI_PATTERN = re.compile(r"^2\s*\*?\s*pi\s*\*\s*(?P<hz>.+)$", re.IGNORECASE)
_SQRT_PATTERN = re.compile(r"^sqrt\((?P<arg>[^()]+)\)$", re.IGNORECASE)


def parse_coupling(text: str) -> float:
    """Parse a coupling in rad/s, or ``2pi*<Hz>`` shorthand.

    Args:
        text: e.g. "18535.4", "-1.2e4" or "2pi*2950".

    Returns:
        Coupling in rad/s.

    Raises:
        ValueError: If the text is not a finite number.
    """
    raw = text.strip()
    match = _TWO_PI_PATTERN.match(raw)
    try:
        value = 2.0 * math.pi * float(match.group("hz")) if match else float(raw)
    except ValueError:
        raise ValueError(f"Invalid coupling '{text}': expected rad/s or 2pi*<Hz>")
    if not math.isfinite(value):
        raise ValueError(f"Invalid coupling '{text}': must be finite")
    return value


def parse_channels(text: str) -> tuple[str, ...]:
    """Split a comma-separated channel list, keeping order.

    Raises:
        ChannelError: If the list is empty or repeats a channel.
    """
    names = tuple(part.strip() for part in text.split(",") if part.strip())
    if not names:
        raise ChannelError("Channel list cannot be empty")
    duplicates = sorted({name for name in names if names.count(name) > 1})
    if duplicates:
        raise ChannelError(f"Channel listed twice: {', '.join(duplicates)}")
    return names


def _parse_real_or_complex(text: str) -> complex:
    token = text.strip()
    match = _SQRT_PATTERN.match(token)
    if match:
        value = _parse_real_or_complex(match.group("arg"))
        if value.imag != 0 or value.real < 0:
            raise ValueError(f"Invalid amplitude '{text}': sqrt needs a non-negative real")
        return complex(math.sqrt(value.real))
    return complex(token.replace("i", "j").replace(" ", ""))


def parse_amplitude(text: str) -> complex:
    """Parse a complex amplitude.

    Accepts Python complex literals ("0.5", "0.3+0.4j", "1i") and a single
    quotient of such terms or sqrt(...) ("1/sqrt(3)", "1/2").

    Raises:
        ValueError: If the text cannot be parsed.
    """
    try:
        if "/" in text:
            numerator, denominator = text.split("/", 1)
            den = _parse_real_or_complex(denominator)
            if den == 0:
                raise ValueError("division by zero")
            return _parse_real_or_complex(numerator) / den
        return _parse_real_or_complex(text)
    except ValueError as e:
        raise ValueError(f"Invalid amplitude '{text}': {str(e)}")
