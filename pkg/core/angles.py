"""
Angle Parsing
=============
Angles are quoted in units of pi throughout (``1.14pi``, ``pi/8``, ``3pi/20``).
The coefficient is parsed exactly as a rational before multiplying by pi.
"""

import math
import re
from fractions import Fraction
from typing import Union

from .exceptions import InvalidArgumentError

_PI_PATTERN = re.compile(
    r"""^\s*
    (?P<sign>[+-]?)\s*
    (?P<coef>\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*
    (?:pi|π)\s*
    (?:/\s*(?P<den>\d+(?:\.\d*)?))?
    \s*$""",
    re.IGNORECASE | re.VERBOSE,
)


def pi_fraction(text: str) -> Fraction:
    """Return the rational multiple of pi encoded in ``text``."""
    match = _PI_PATTERN.match(text)
    if not match:
        raise InvalidArgumentError("angle", f"'{text}' is not a multiple of pi")

    coef = Fraction(match.group("coef")) if match.group("coef") else Fraction(1)
    if match.group("den"):
        den = Fraction(match.group("den"))
        if den == 0:
            raise InvalidArgumentError("angle", f"zero denominator in '{text}'")
        coef /= den
    return -coef if match.group("sign") == "-" else coef


def parse_angle(value: Union[str, float, int]) -> float:
    """
    Convert an angle literal to radians.

    Accepts plain numbers (radians) or strings such as ``"1.14pi"``,
    ``"-pi"``, ``"pi/8"`` and ``"3*pi/20"``.
    """
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        angle = float(value)
    elif isinstance(value, str):
        text = value.strip()
        if "pi" in text.lower() or "π" in text:
            fraction = pi_fraction(text)
            angle = fraction.numerator * math.pi / fraction.denominator
        else:
            try:
                angle = float(text)
            except ValueError:
                raise InvalidArgumentError("angle", f"cannot parse '{value}'")
    else:
        raise InvalidArgumentError("angle", f"unsupported type {type(value).__name__}")

    if not math.isfinite(angle):
        raise InvalidArgumentError("angle", f"non-finite value {value!r}")
    return angle


def format_angle(angle: float, max_denominator: int = 1000) -> str:
    """Render radians as a compact multiple of pi for logs and tables."""
    fraction = Fraction(angle / math.pi).limit_denominator(max_denominator)
    if fraction == 0:
        return "0"
    if fraction.denominator == 1:
        return "pi" if fraction.numerator == 1 else f"{fraction.numerator}pi"
    num = "" if fraction.numerator == 1 else ("-" if fraction.numerator == -1 else str(fraction.numerator))
    return f"{num}pi/{fraction.denominator}"
