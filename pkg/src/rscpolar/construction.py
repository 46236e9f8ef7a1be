"""Polar code construction over canonical symmetric channels.

Synthetic channel ``alpha`` (a bit string, applied left to right) sits at index
``b(alpha)``, its big-endian value. The whole family for ``k`` levels is
grown as a binary tree in which each node's channel feeds both children
through ``a0(V, V)`` and ``a1(V, V)``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import EXACT, half
from .arikan import a0, a1, parse_alpha, transform_capped
from .channel import SymmetricChannel, bhattacharyya, capacity, p_error, phi
from .errors import ResourceError, UsageError

MAX_MATRIX_ORDER = 12
DEFAULT_COMPONENT_BUDGET = 1_000_000
METRICS = ("p_error", "bhattacharyya")
_METRIC_ALIASES = {"pe": "p_error", "p_error": "p_error", "z": "bhattacharyya",
                   "bhattacharyya": "bhattacharyya"}


def b_of_alpha(alpha) -> int:
    """Big-endian integer value of a bit string."""
    value = 0
    for bit in parse_alpha(alpha):
        value = 2 * value + bit
    return value


def alpha_of_index(index: int, k: int) -> str:
    return format(index, f"0{k}b") if k else ""


def s_set(delta) -> set[str]:
    """All ``a`` of the same length with ``a_i = 1`` wherever ``delta`` has a 1 at the mirrored position."""
    bits = parse_alpha(delta)
    n = len(bits)
    choices = [("1",) if bits[n - 1 - i] else ("0", "1") for i in range(n)]
    out = {""}
    for c in choices:
        out = {s + x for s in out for x in c}
    return out


def generator_matrix(k: int, limit: int = MAX_MATRIX_ORDER) -> np.ndarray:
    """The ``2^k x 2^k`` 0-1 matrix with entry (delta, alpha) = 1 iff delta is in S(alpha).

    Rows and columns are ordered by ``b(.)``.
    """
    if not 1 <= k <= limit:
        raise UsageError(f"matrix order exponent must be in [1, {limit}], got {k}")
    n = 2**k
    idx = np.arange(n)
    rev = np.array([int(alpha_of_index(a, k)[::-1], 2) for a in range(n)])
    # delta in S(alpha) iff delta covers every 1-bit of reversed alpha
    return ((idx[:, None] & rev[None, :]) == rev[None, :]).astype(np.uint8)


def encode(u: Sequence[int], k: int) -> np.ndarray:
    """``x = u G_k`` over GF(2) via an O(N log N) butterfly."""
    u = np.asarray(u, dtype=np.uint8)
    if u.shape != (2**k,):
        raise UsageError(f"message length must be {2**k}, got {u.size}")
    if np.any(u > 1):
        raise UsageError("message entries must be bits")
    f = u.reshape((2,) * k).copy() if k else u.copy()
    for axis in range(k):
        lo = [slice(None)] * k
        hi = [slice(None)] * k
        lo[axis], hi[axis] = 0, 1
        f[tuple(lo)] ^= f[tuple(hi)]
    return f.transpose(tuple(reversed(range(k)))).ravel() if k else f


@dataclass(frozen=True)
class IndexRecord:
    alpha: str
    index: int
    capacity: float
    p_error: object
    bhattacharyya: float
    phi: int
    quantized: bool


@dataclass(frozen=True)
class ConstructionResult:
    """Per-index metrics for every synthetic channel of a ``k``-level construction.

    ``frozen`` is empty until a selection is applied (see :func:`select_frozen`).
    ``channels`` keeps the synthetic channels themselves, in index order.
    """

    k: int
    records: tuple[IndexRecord, ...]
    frozen: tuple[bool, ...] = ()
    channels: tuple[SymmetricChannel, ...] = field(default=(), repr=False, compare=False)

    @property
    def quantized(self) -> bool:
        return any(r.quantized for r in self.records)

    def capacity_sum(self) -> float:
        return math.fsum(r.capacity for r in self.records)


def _children(v: SymmetricChannel, cap, budget, prefix):
    out = []
    for bit, op in ((0, a0), (1, a1)):
        if cap is not None:
            child, merged = transform_capped(bit, v, cap)
        else:
            child, merged = op(v, v), False
            if len(child) > budget:
                raise ResourceError(f"channel for alpha={prefix}{bit} has {len(child)} "
                                    f"components, over the budget of {budget}")
        out.append((prefix + str(bit), child, merged))
    return out


def _grow(level, depth, cap, budget):
    for _ in range(depth):
        nxt = []
        for prefix, v, q in level:
            nxt.extend((a, c, q or m) for a, c, m in _children(v, cap, budget, prefix))
        level = nxt
    return level


def construct(channel: SymmetricChannel, k: int, cap: int | None = None,
              budget: int = DEFAULT_COMPONENT_BUDGET, workers: int = 1) -> ConstructionResult:
    """Compute every synthetic channel of a ``k``-level construction.

    With ``cap`` each transform output is reduced to at most ``cap`` components
    (see :func:`rscpolar.arikan.transform_capped`), and records touched by a merge (at that node or an
    ancestor) are flagged ``quantized``. Without ``cap`` a channel exceeding
    ``budget`` components aborts with :class:`ResourceError`. ``workers > 1``
    evaluates disjoint subtrees on a thread pool; the result does not depend on it.
    """
    if k < 1:
        raise UsageError("k must be at least 1")
    if cap is not None and cap < 1:
        raise UsageError("cap must be positive")
    level = [("", channel, False)]
    split = min(k, max(0, math.ceil(math.log2(workers)))) if workers > 1 else 0
    level = _grow(level, split, cap, budget)
    if workers > 1 and split < k:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda node: _grow([node], k - split, cap, budget), level))
        level = [leaf for part in parts for leaf in part]
    else:
        level = _grow(level, k - split, cap, budget)
    records = tuple(
        IndexRecord(alpha, b_of_alpha(alpha), capacity(v), p_error(v), bhattacharyya(v), phi(v), q)
        for alpha, v, q in level
    )
    return ConstructionResult(k, records, channels=tuple(v for _, v, _ in level))


def select_frozen(result: ConstructionResult, info_count: int, metric: str = "p_error") -> tuple[bool, ...]:
    """Freeze all but the ``info_count`` most reliable indices.

    Reliability is the smaller ``metric`` value; among equals the smaller index
    is frozen first. Returns the mask in index order, ``True`` meaning frozen.
    """
    n = len(result.records)
    if not 0 <= info_count <= n:
        raise UsageError(f"info_count must be in [0, {n}], got {info_count}")
    if metric not in _METRIC_ALIASES:
        raise UsageError(f"unknown metric {metric!r}; choose p_error or bhattacharyya")
    attr = _METRIC_ALIASES[metric]
    ranked = sorted(result.records, key=lambda r: (getattr(r, attr), -r.index))
    info = {r.index for r in ranked[:info_count]}
    return tuple(i not in info for i in range(n))


def with_frozen(result: ConstructionResult, info_count: int, metric: str = "p_error") -> ConstructionResult:
    return replace(result, frozen=select_frozen(result, info_count, metric))


def varphi_alpha(alpha) -> int:
    """Product weight of a bit string.

    A constant string of length ``l`` maps to ``(2^l)! 2^(2^l)``; otherwise
    with final maximal run of length ``l`` preceded by ``beta``,
    the value is ``(2^l)! varphi(beta)^(2^l)``.
    """
    bits = parse_alpha(alpha)
    n = len(bits)
    run = 0
    while run < n and bits[n - 1 - run] == bits[-1]:
        run += 1
    m = 2**run
    if run == n:
        return math.factorial(m) * 2**m
    return math.factorial(m) * varphi_alpha(bits[: n - run]) ** m


PHI_BOUNDS = {
    "0": lambda n: n * (n + 1) // 2 + 1,
    "1": lambda n: n * n + n + 1,
    "00": lambda n: math.comb(n + 3, 4) + 1,
    "11": lambda n: (n * n + n) * (n * n + n + 4) // 3 + 1,
    "01": lambda n: (n * n + n) * (n * n + n + 2) // 4 + 1,
    "10": lambda n: (n * n + n) * (n * n + n + 1) // 2 + 1,
}


@dataclass(frozen=True)
class PhiBoundCheck:
    alpha: str
    phi: int
    bound: int

    @property
    def ok(self) -> bool:
        return self.phi <= self.bound


def check_phi_bounds(channel: SymmetricChannel, depth: int = 2) -> list[PhiBoundCheck]:
    """Component counts of the depth-1 and depth-2 synthetic channels against their explicit bounds.

    The channel must be exact, contain a B(1/2) component and ``n`` components
    with crossover strictly between 0 and 1/2.
    """
    if channel.mode != EXACT:
        raise UsageError("component counts depend on the merge tolerance in float mode; use exact mode")
    if not 1 <= depth <= 2:
        raise UsageError("bounds are available for depth 1 and 2 only")
    h = half(EXACT)
    if channel.eps[-1] != h or channel.eps[0] == 0:
        raise UsageError("bounds assume a B(1/2) component and no B(0) component")
    n = len(channel) - 1
    out = []
    level = [("", channel)]
    for _ in range(depth):
        level = [(a + b, op(v, v)) for a, v in level for b, op in (("0", a0), ("1", a1))]
        out.extend(PhiBoundCheck(a, phi(v), PHI_BOUNDS[a](n)) for a, v in level)
    return out


def output_count(alpha, table_size: int) -> int:
    """Size of the explicit output alphabet of the synthetic channel ``alpha``."""
    bits = parse_alpha(alpha)
    return 2 ** b_of_alpha(bits) * table_size ** (2 ** len(bits))


def collision_ratio(alpha, channel: SymmetricChannel) -> Fraction:
    """Outputs per likelihood class for a ``(2n+1)``-output table of ``channel``.

    ``n`` counts the components other than B(1/2); the channel's ``alpha``
    transform is evaluated with the mixture algebra.
    """
    from .arikan import a_seq

    n = len(channel) - (1 if channel.eps[-1] == half(channel.mode) else 0)
    return Fraction(output_count(alpha, 2 * n + 1), phi(a_seq(alpha, channel)))


def bhattacharyya_bounds(z0: float, k: int) -> np.ndarray:
    """Per-index upper bounds from ``Z- <= 2Z - Z^2`` and ``Z+ = Z^2``, indexed by ``b(alpha)``."""
    if not 0.0 <= z0 <= 1.0:
        raise UsageError(f"Bhattacharyya parameter out of [0, 1]: {z0}")
    z = np.array([float(z0)])
    for _ in range(k):
        z = np.stack((2 * z - z * z, z * z), axis=1).ravel()
    return z


# -- serialization -----------------------------------------------------------

CSV_COLUMNS = ("index", "alpha", "capacity", "p_error", "bhattacharyya", "phi", "frozen")


def _row(r: IndexRecord, frozen):
    return {
        "index": r.index,
        "alpha": r.alpha,
        "capacity": repr(r.capacity),
        "p_error": str(r.p_error) if isinstance(r.p_error, Fraction) else repr(r.p_error),
        "bhattacharyya": repr(r.bhattacharyya),
        "phi": r.phi,
        "frozen": "" if frozen is None else int(frozen),
    }


def to_csv(result: ConstructionResult, mode: str) -> str:
    buf = io.StringIO()
    buf.write(f"# format=rscpolar-construction version=1 mode={mode} k={result.k} "
              f"quantized={int(result.quantized)}\n")
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for i, r in enumerate(result.records):
        writer.writerow(_row(r, result.frozen[i] if result.frozen else None))
    return buf.getvalue()


def to_json(result: ConstructionResult, mode: str) -> str:
    records = []
    for i, r in enumerate(result.records):
        d = asdict(r)
        if isinstance(r.p_error, Fraction):
            d["p_error"] = str(r.p_error)
        d["frozen"] = result.frozen[i] if result.frozen else None
        records.append(d)
    doc = {"format": "rscpolar-construction", "version": 1, "mode": mode, "k": result.k,
           "quantized": result.quantized, "records": records}
    return json.dumps(doc, indent=2)
