"""Scalar probability algebra.

Probabilities are plain Python numbers. ``Fraction`` (and ``int``) values are
*exact*; ``float`` values are *float* mode. Every operation here is defined
identically in both modes and refuses to mix a ``Fraction`` with a ``float``.

The two binary operations on crossover probabilities are

* ``star(a, b) = (1-a) b + a (1-b)``, the crossover of two cascaded BSCs;
* ``diamond(a, b) = a b / ((1-a) star b)`` for ``a, b`` in (0, 1), and 0 when
  either argument is 0 or 1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import ModeError, UsageError

Scalar = Union[Fraction, int, float]

EXACT = "exact"
FLOAT = "float"


def is_exact(x) -> bool:
    return isinstance(x, Rational)


def mode_of(*values) -> str:
    """Return the numeric mode shared by ``values``.

    Integers are neutral. Raises ``ModeError`` if a ``float`` meets a ``Fraction``.
    """
    has_float = has_frac = False
    for v in values:
        if isinstance(v, float):
            has_float = True
        elif isinstance(v, Fraction):
            has_frac = True
        elif not isinstance(v, Rational):
            raise UsageError(f"unsupported scalar type {type(v).__name__}")
    if has_float and has_frac:
        raise ModeError("cannot mix exact fractions with floats")
    return FLOAT if has_float else EXACT


def to_scalar(x, mode: str | None = None) -> Scalar:
    """Coerce ``x`` (number or string) into a scalar of the requested mode."""
    if isinstance(x, str):
        s = x.strip()
        if mode == FLOAT:
            return float(Fraction(s)) if "/" in s else float(s)
        return Fraction(s) if (mode == EXACT or "/" in s) else float(s)
    if mode == FLOAT:
        return float(x)
    if mode == EXACT:
        if isinstance(x, float):
            return Fraction(x)
        return Fraction(x)
    if isinstance(x, bool):
        raise UsageError("booleans are not probabilities")
    if isinstance(x, Rational):
        return Fraction(x)
    return float(x)


def half(mode: str) -> Scalar:
    return 0.5 if mode == FLOAT else Fraction(1, 2)


def _check_unit(*values):
    for v in values:
        if not 0 <= v <= 1:
            raise UsageError(f"probability out of [0, 1]: {v}")


def star(a: Scalar, b: Scalar) -> Scalar:
    mode_of(a, b)
    return (1 - a) * b + a * (1 - b)


def diamond(a: Scalar, b: Scalar) -> Scalar:
    mode = mode_of(a, b)
    if a == 0 or a == 1 or b == 0 or b == 1:
        return 0.0 if mode == FLOAT else Fraction(0)
    num = a * b
    den = num + (1 - a) * (1 - b)
    if mode == EXACT:
        return Fraction(num) / den
    return num / den


def star_fold(values: Iterable[Scalar]) -> Scalar:
    """``star`` over a sequence; the empty fold is 0, the identity of ``star``."""
    return reduce(star, values, 0)


def diamond_fold(values: Sequence[Scalar]) -> Scalar:
    if not values:
        raise UsageError("diamond fold of an empty sequence")
    return reduce(diamond, values)


def star_power(eps: Scalar, a: int) -> Scalar:
    """``eps`` starred with itself ``a`` times, via the odd-binomial closed form.

    ``star_power(eps, 0)`` is 0 (the identity of ``star``), so a factor with a
    zero exponent simply drops out of a product.
    """
    if a < 0:
        raise UsageError("exponent must be nonnegative")
    if a == 0:
        return 0.0 if isinstance(eps, float) else Fraction(0)
    # 1 - 2 * (eps star^a) = (1 - 2 eps)^a; this sum is the odd-term expansion.
    e_bar = 1 - eps
    return sum(math.comb(a, j) * eps**j * e_bar ** (a - j) for j in range(1, a + 1, 2))


def diamond_power(sigma: Scalar, a: int) -> Scalar:
    if a < 0:
        raise UsageError("exponent must be nonnegative")
    mode = mode_of(sigma)
    if a == 0:
        return half(mode)
    if sigma == 0 or sigma == 1:
        return 0.0 if mode == FLOAT else Fraction(0)
    num = sigma**a
    den = num + (1 - sigma) ** a
    return Fraction(num) / den if mode == EXACT else num / den


def varpi(sigmas: Sequence[Scalar]) -> Scalar:
    """Half the sum of the product of ``sigmas`` and of their complements.

    Falls back to ``2**-t`` when any entry sits on the boundary {0, 1}.
    """
    t = len(sigmas)
    if t == 0:
        raise UsageError("varpi of an empty sequence")
    mode = mode_of(*sigmas)
    if any(s == 0 or s == 1 for s in sigmas):
        return 2.0**-t if mode == FLOAT else Fraction(1, 2**t)
    prod = math.prod(sigmas)
    prod_bar = math.prod(1 - s for s in sigmas)
    return (prod + prod_bar) / 2 if mode == FLOAT else Fraction(prod + prod_bar, 2)


def multinomial(counts: Sequence[int]) -> int:
    """``sum(counts)! / prod(c!)``, computed as a product of binomials."""
    total = 0
    result = 1
    for c in counts:
        if c < 0:
            return 0
        total += c
        result *= math.comb(total, c)
    return result


def balls_in_boxes(m: int, n: int) -> int:
    """Number of ways to put ``m`` identical balls into ``n`` distinct boxes."""
    if n < 1:
        raise UsageError("need at least one box")
    return math.comb(m + n - 1, m)


def compositions(m: int, n: int):
    """Yield every length-``n`` tuple of nonnegative integers summing to ``m``."""
    if n == 1:
        yield (m,)
        return
    for first in range(m, -1, -1):
        for rest in compositions(m - first, n - 1):
            yield (first,) + rest


def binary_entropy(eps: Scalar) -> float:
    e = float(eps)
    if e <= 0.0 or e >= 1.0:
        return 0.0
    return -e * math.log2(e) - (1.0 - e) * math.log2(1.0 - e)
