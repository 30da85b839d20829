import re
from fractions import Fraction

from errors import ParseError

# Scalars are plain Fractions: always in lowest terms with a positive denominator.
Rational = Fraction

RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")

def parse_rational(text: str) -> Fraction:
  match = RATIONAL_PATTERN.match(str(text))
  if not match:
    raise ParseError("Not an integer or p/q rational: %r" % text)
  numerator = int(match.group(1))
  denominator = int(match.group(2)) if match.group(2) is not None else 1
  if denominator == 0:
    raise ParseError("Zero denominator in rational: %r" % text)
  return Fraction(numerator, denominator)

def format_rational(value) -> str:
  """Serialize as "num/den", denominator always present, so no reader mistakes it for a float."""
  value = Fraction(value)
  return "%d/%d" % (value.numerator, value.denominator)

def to_rational(value) -> Fraction:
  if isinstance(value, Fraction):
    return value
  if isinstance(value, bool):
    raise ParseError("Booleans are not matrix entries")
  if isinstance(value, int):
    return Fraction(value)
  if isinstance(value, str):
    return parse_rational(value)
  raise ParseError("Cannot use %r as an exact rational (floats are not accepted)" % (value,))
