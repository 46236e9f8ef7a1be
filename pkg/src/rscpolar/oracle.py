"""Brute-force transition-table reference for the Arikan transforms.

Nothing here uses the BSC-mixture algebra: tables are built explicitly, the
transforms multiply out every output pair, and likelihood profiles are read
back by grouping outputs. Agreement with :mod:`rscpolar.arikan` is therefore
an independent check.

Output labels are positional. For ``oracle_a0`` the output ``(y0, y1)`` sits
at ``y0 * |Y1| + y1``; for ``oracle_a1`` the output ``(y0, y1, u0)`` sits at
``2 * (y0 * |Y1| + y1) + u0``.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import FLOAT, half
from .arikan import parse_alpha
from .channel import SymmetricChannel
from .errors import ModeError, ResourceError
from .profile import INT64_SAFE, GeneralChannel

DEFAULT_BUDGET = 2_000_000


def table_of(channel: SymmetricChannel) -> GeneralChannel:
    """Materialize a canonical channel as an explicit transition table.

    An interior component ``(eps, w)`` gives two outputs with probabilities
    ``(w(1-eps), w eps)`` and ``(w eps, w(1-eps))``; a B(1/2) component gives
    two identical outputs of ``(w/2, w/2)``.
    """
    h = half(channel.mode)
    p0, p1 = [], []
    for e, w in channel.components:
        if e == h:
            p0 += [w / 2, w / 2]
            p1 += [w / 2, w / 2]
        else:
            p0 += [w * (1 - e), w * e]
            p1 += [w * e, w * (1 - e)]
    return GeneralChannel.from_probabilities(p0, p1, mode=channel.mode)


def _check_pair(t0: GeneralChannel, t1: GeneralChannel, factor: int, budget: int):
    if t0.mode != t1.mode:
        raise ModeError("cannot combine an exact table with a float table")
    size = factor * t0.size * t1.size
    if size > budget:
        raise ResourceError(f"combined table would have {size} outputs (budget {budget})")


def _outer(a, b):
    return np.multiply.outer(a, b).ravel()


def _wrap(t0, t1, r0, r1):
    if t0.denom is None:
        return GeneralChannel(r0 / 2.0, r1 / 2.0)
    return GeneralChannel(r0, r1, 2 * t0.denom * t1.denom)


def _promote(t: GeneralChannel, other: GeneralChannel):
    # switch to Python ints before the product denominator leaves int64 range
    if t.denom is None:
        return t.num0, t.num1
    if 2 * t.denom * other.denom >= INT64_SAFE:
        return (np.array([int(x) for x in t.num0], dtype=object),
                np.array([int(x) for x in t.num1], dtype=object))
    return t.num0, t.num1


def oracle_a0(t0: GeneralChannel, t1: GeneralChannel, budget: int = DEFAULT_BUDGET) -> GeneralChannel:
    """``Pr(y0, y1 | u0) = 1/2 sum_u1 Pr(y0 | u0 + u1) Pr(y1 | u1)``."""
    _check_pair(t0, t1, 1, budget)
    a0, a1 = _promote(t0, t1)
    b0, b1 = _promote(t1, t0)
    r0 = _outer(a0, b0) + _outer(a1, b1)
    r1 = _outer(a1, b0) + _outer(a0, b1)
    return _wrap(t0, t1, r0, r1)


def oracle_a1(t0: GeneralChannel, t1: GeneralChannel, budget: int = DEFAULT_BUDGET) -> GeneralChannel:
    """``Pr(y0, y1, u0 | u1) = 1/2 Pr(y0 | u0 + u1) Pr(y1 | u1)``."""
    _check_pair(t0, t1, 2, budget)
    a0, a1 = _promote(t0, t1)
    b0, b1 = _promote(t1, t0)
    r0 = np.stack((_outer(a0, b0), _outer(a1, b0)), axis=1).ravel()
    r1 = np.stack((_outer(a1, b1), _outer(a0, b1)), axis=1).ravel()
    return _wrap(t0, t1, r0, r1)


def projected_size(alpha, size: int) -> int:
    """Output count after applying ``alpha`` to a table with ``size`` outputs."""
    for b in parse_alpha(alpha):
        size = size * size * (2 if b else 1)
    return size


def oracle_a_seq(alpha, table: GeneralChannel, budget: int = DEFAULT_BUDGET) -> GeneralChannel:
    """Fold the table transforms over ``alpha``, each step pairing two copies."""
    bits = parse_alpha(alpha)
    final = projected_size(bits, table.size)
    if final > budget:
        raise ResourceError(
            f"oracle table for alpha={''.join(map(str, bits)) or '(empty)'} would have "
            f"{final} outputs (budget {budget})")
    t = table
    for b in bits:
        t = oracle_a1(t, t, budget) if b else oracle_a0(t, t, budget)
    return t


def mutual_information_of_table(table: GeneralChannel) -> float:
    """Symmetric capacity evaluated directly from the transition probabilities."""
    p0, p1 = table.float_rows()
    mid = 0.5 * (p0 + p1)
    total = 0.0
    for p in (p0, p1):
        live = p > 0
        total += 0.5 * float(np.sum(p[live] * np.log2(p[live] / mid[live])))
    return total


def p_error_of_table(table: GeneralChannel):
    """Maximum-likelihood error probability; a ``Fraction`` for exact tables."""
    if table.denom is None:
        return 0.5 * float(np.minimum(table.num0, table.num1).sum())
    low = sum(int(x) for x in np.minimum(table.num0, table.num1))
    return Fraction(low, 2 * table.denom)


def bhattacharyya_of_table(table: GeneralChannel) -> float:
    p0, p1 = table.float_rows()
    return float(np.sqrt(p0 * p1).sum())
