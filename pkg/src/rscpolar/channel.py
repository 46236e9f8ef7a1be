"""Symmetric binary-input channels as canonical mixtures of BSCs.

A symmetric channel is held in its likelihood-oriented form: a list of
``(eps, weight)`` pairs with strictly increasing crossover ``eps`` in
[0, 1/2] and weights summing to one. ``B(eps)`` is a binary symmetric channel,
``E(q)`` the erasure channel ``(1-q) B(0) + q B(1/2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import _kernels as K
from .algebra import EXACT, FLOAT, Scalar, binary_entropy, half, mode_of, to_scalar
from .errors import AsymmetricChannelError, UsageError
from .profile import LikelihoodRatioProfile, is_symmetric


class BscComponent(NamedTuple):
    eps: Scalar
    weight: Scalar


@dataclass(frozen=True)
class SymmetricChannel:
    components: tuple[BscComponent, ...]

    def __post_init__(self):
        comps = self.components
        if not comps:
            raise UsageError("a channel needs at least one component")
        mode = mode_of(*(x for c in comps for x in c))
        prev = None
        for eps, w in comps:
            if not 0 <= eps <= half(mode) or w <= 0:
                raise UsageError(f"invalid component ({eps}, {w})")
            if prev is not None:
                if eps <= prev:
                    raise UsageError("crossovers must be strictly increasing")
                if mode == FLOAT and eps - prev <= K.MERGE_TOL * min(prev, 1 - eps):
                    raise UsageError("crossovers closer than the merge tolerance")
            prev = eps
        total = sum(w for _, w in comps)
        if (total != 1) if mode == EXACT else abs(total - 1) > K.WEIGHT_TOL:
            raise UsageError(f"weights sum to {total}, not 1")

    @property
    def mode(self) -> str:
        return mode_of(*(x for c in self.components for x in c))

    @property
    def exact(self) -> bool:
        return self.mode == EXACT

    @property
    def eps(self) -> tuple:
        return tuple(c.eps for c in self.components)

    @property
    def weights(self) -> tuple:
        return tuple(c.weight for c in self.components)

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.array([float(e) for e in self.eps]),
                np.array([float(w) for w in self.weights]))

    def to_float(self) -> "SymmetricChannel":
        if self.mode == FLOAT:
            return self
        return from_arrays(*self.arrays())

    def __str__(self):
        return " + ".join(f"{w}*B({e})" for e, w in self.components)


def from_arrays(eps: np.ndarray, weights: np.ndarray) -> SymmetricChannel:
    """Wrap already-canonical float arrays."""
    return SymmetricChannel(tuple(BscComponent(float(e), float(w)) for e, w in zip(eps, weights)))


def canonicalize(raw: Iterable[tuple], mode: str | None = None) -> SymmetricChannel:
    """Fold crossovers above 1/2, drop zero weights, merge equal crossovers, sort."""
    pairs = [(to_scalar(e, mode), to_scalar(w, mode)) for e, w in raw]
    if not pairs:
        raise UsageError("empty component list")
    mode = mode_of(*(x for p in pairs for x in p))
    for e, w in pairs:
        if not 0 <= e <= 1 or w < 0:
            raise UsageError(f"invalid component ({e}, {w})")
    total = sum(w for _, w in pairs)
    if (total != 1) if mode == EXACT else abs(total - 1) > K.WEIGHT_TOL:
        raise UsageError(f"weights sum to {total}, not 1")
    if mode == FLOAT:
        e, w = K.canonical_arrays([p[0] for p in pairs], [p[1] for p in pairs])
        return from_arrays(e, w)
    return _canonical_exact(pairs)


def _canonical_exact(pairs) -> SymmetricChannel:
    h = Fraction(1, 2)
    acc: dict = {}
    for e, w in pairs:
        if w == 0:
            continue
        if e > h:
            e = 1 - e
        acc[e] = acc.get(e, 0) + w
    return SymmetricChannel(tuple(BscComponent(Fraction(e), Fraction(acc[e])) for e in sorted(acc)))


def make_bsc(eps) -> SymmetricChannel:
    eps = to_scalar(eps)
    if not 0 <= eps <= 1:
        raise UsageError(f"crossover probability out of [0, 1]: {eps}")
    return canonicalize([(eps, 1)], mode_of(eps))


def make_bec(q) -> SymmetricChannel:
    q = to_scalar(q)
    if not 0 <= q <= 1:
        raise UsageError(f"erasure probability out of [0, 1]: {q}")
    mode = mode_of(q)
    return canonicalize([(0, 1 - q), (half(mode), q)], mode)


def mix(parts: Sequence[tuple]) -> SymmetricChannel:
    """Random switching between channels: ``sum_j q_j W_j``."""
    if not parts:
        raise UsageError("mixture needs at least one part")
    weights = [to_scalar(q, ch.mode) for q, ch in parts]
    if any(q < 0 for q in weights):
        raise UsageError("mixture weights must be nonnegative")
    raw = [(e, q * w) for q, (_, ch) in zip(weights, parts) for e, w in ch.components]
    return canonicalize(raw)


def lrp(channel: SymmetricChannel) -> LikelihoodRatioProfile:
    """Spread each component's mass evenly over ``eps`` and ``1 - eps``."""
    mode = channel.mode
    h = half(mode)
    acc: dict = {}
    for e, w in channel.components:
        if e == h:
            acc[e] = acc.get(e, 0) + w
        else:
            acc[e] = acc.get(e, 0) + w / 2
            acc[1 - e] = acc.get(1 - e, 0) + w / 2
    return LikelihoodRatioProfile.from_dict(acc)


def channel_from_lrp(profile: LikelihoodRatioProfile) -> SymmetricChannel:
    """Canonical mixture for a mirror-symmetric profile."""
    if not is_symmetric(profile):
        bad = next((p for p, m in profile.masses if not _has_mirror(profile, p, m)), None)
        raise AsymmetricChannelError(
            "channel is not symmetric: its likelihood profile must satisfy "
            f"P(eps) == P(1 - eps) for every eps (fails at eps={bad})")
    mode = profile.mode
    h = half(mode)
    raw = [(p, m) if p == h else (p, 2 * m) for p, m in profile.masses if p <= h]
    if mode == FLOAT:
        # float profiles keep the lower half only; renormalization absorbs mirror noise
        e, w = K.canonical_arrays([p for p, _ in raw], [m for _, m in raw])
        return from_arrays(e, w)
    return canonicalize(raw, mode)


def _has_mirror(profile, p, m):
    d = profile.as_dict()
    if profile.mode == EXACT:
        return d.get(1 - p, 0) == m
    return any(abs(q - (1 - p)) <= K.MERGE_TOL and abs(n - m) <= K.MERGE_TOL for q, n in d.items())


def capacity(channel: SymmetricChannel) -> float:
    return sum(float(w) * (1.0 - binary_entropy(e)) for e, w in channel.components)


def p_error(channel: SymmetricChannel) -> Scalar:
    return sum(e * w for e, w in channel.components)


def bhattacharyya(channel: SymmetricChannel) -> float:
    return sum(float(w) * 2.0 * math.sqrt(float(e) * (1.0 - float(e))) for e, w in channel.components)


def phi(channel: SymmetricChannel) -> int:
    """Number of BSC components in the canonical form."""
    return len(channel.components)


def equivalent(a: SymmetricChannel, b: SymmetricChannel, tol: float = K.MERGE_TOL) -> bool:
    if a.mode == EXACT and b.mode == EXACT:
        return a.components == b.components
    if len(a) != len(b):
        return False
    return all(
        abs(float(e1) - float(e2)) <= tol * max(min(float(e1), float(e2)), 1e-300)
        and abs(float(w1) - float(w2)) <= max(tol, 1e-12)
        for (e1, w1), (e2, w2) in zip(a.components, b.components)
    )


def degrade_merge(channel: SymmetricChannel, max_components: int) -> SymmetricChannel:
    """Greedy capacity-loss-minimizing merge of adjacent components.

    Each merge replaces two neighbours by one BSC at their weighted-mean
    crossover, which is a degradation; the result therefore never has more
    capacity, nor less error probability or Bhattacharyya parameter.
    """
    if max_components < 1:
        raise UsageError("max_components must be at least 1")
    if len(channel) <= max_components:
        return channel
    if channel.mode == FLOAT:
        e, w = channel.arrays()
        e, w = K.greedy_merge_compiled(e, w, max_components)
        return from_arrays(*K.canonical_arrays(e, w))
    e, w = K.greedy_merge_python(channel.eps, channel.weights, max_components)
    return SymmetricChannel(tuple(BscComponent(a, b) for a, b in zip(e, w)))
