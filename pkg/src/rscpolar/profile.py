"""Likelihood ratio profiles and explicit transition tables.

An output ``y`` with ``eps * Pr(y|0) == (1 - eps) * Pr(y|1)`` belongs to the
likelihood class ``eps = Pr(y|1) / (Pr(y|0) + Pr(y|1))``. The profile maps each
class to the probability (under uniform input) that the output lands in it.
Every reliability metric of a binary-input channel is a function of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._kernels import MERGE_TOL, WEIGHT_TOL, group_starts
from .algebra import EXACT, FLOAT, binary_entropy, mode_of, to_scalar
from .errors import UsageError

# exact tables switch to Python-int arrays beyond this denominator
INT64_SAFE = 2**61


@dataclass(frozen=True)
class LikelihoodRatioProfile:
    """Finite mass function over likelihood classes in [0, 1], sorted by class."""

    masses: tuple[tuple, ...]

    def __post_init__(self):
        if not self.masses:
            raise UsageError("empty likelihood ratio profile")
        points = [p for p, _ in self.masses]
        if points != sorted(points) or len(set(points)) != len(points):
            raise UsageError("profile points must be strictly increasing")
        for p, m in self.masses:
            if not 0 <= p <= 1 or m <= 0:
                raise UsageError(f"invalid profile entry ({p}, {m})")
        total = sum(m for _, m in self.masses)
        if self.mode == EXACT:
            if total != 1:
                raise UsageError(f"profile masses sum to {total}, not 1")
        elif abs(total - 1) > WEIGHT_TOL:
            raise UsageError(f"profile masses sum to {total}, not 1")

    @classmethod
    def from_dict(cls, masses: dict) -> "LikelihoodRatioProfile":
        return cls(tuple(sorted((p, m) for p, m in masses.items() if m != 0)))

    @property
    def mode(self) -> str:
        return mode_of(*(x for pair in self.masses for x in pair))

    def as_dict(self) -> dict:
        return dict(self.masses)

    def __getitem__(self, eps):
        return self.as_dict().get(eps, 0)

    def __len__(self):
        return len(self.masses)

    @property
    def support_min(self):
        return self.masses[0][0]

    @property
    def support_max(self):
        return self.masses[-1][0]

    def capacity(self) -> float:
        return 1.0 - sum(binary_entropy(p) * float(m) for p, m in self.masses)

    def p_error(self):
        return sum(min(p, 1 - p) * m for p, m in self.masses)

    def bhattacharyya(self) -> float:
        return 2.0 * sum(math.sqrt(float(p) * (1.0 - float(p))) * float(m) for p, m in self.masses)

    def isclose(self, other: "LikelihoodRatioProfile", tol: float = 1e-9) -> bool:
        if len(self) != len(other):
            return False
        return all(
            abs(float(p) - float(q)) <= tol and abs(float(m) - float(n)) <= tol
            for (p, m), (q, n) in zip(self.masses, other.masses)
        )


def is_symmetric(profile: LikelihoodRatioProfile, tol: float = MERGE_TOL) -> bool:
    """True when the mass at every class ``eps`` equals the mass at ``1 - eps``."""
    if profile.mode == EXACT:
        d = profile.as_dict()
        return all(d.get(1 - p, 0) == m for p, m in d.items())
    pts = profile.masses
    for (p, m), (q, n) in zip(pts, reversed(pts)):
        if abs(p - (1 - q)) > tol * max(1.0, abs(p)) or abs(m - n) > max(tol, WEIGHT_TOL * 1e-3):
            return False
    return True


@dataclass(frozen=True, eq=False)
class GeneralChannel:
    """Binary-input transition table over an enumerated output alphabet.

    Exact tables hold integer numerators ``num0``/``num1`` over a common
    ``denom``; float tables hold the probabilities themselves with
    ``denom=None``. ``outputs`` optionally labels the outputs; tables built by
    the oracle are enumerated by position.
    """

    num0: np.ndarray
    num1: np.ndarray
    denom: int | None = None
    outputs: tuple | None = None

    def __post_init__(self):
        if self.num0.shape != self.num1.shape or self.num0.ndim != 1:
            raise UsageError("transition rows must be 1-d and of equal length")
        if self.outputs is not None and len(self.outputs) != self.size:
            raise UsageError("output labels do not match table size")
        if self.denom is not None:
            if self.num0.sum() != self.denom or self.num1.sum() != self.denom:
                raise UsageError("transition rows must each sum to 1")
        elif abs(self.num0.sum() - 1) > WEIGHT_TOL or abs(self.num1.sum() - 1) > WEIGHT_TOL:
            raise UsageError("transition rows must each sum to 1")

    @classmethod
    def from_probabilities(cls, p0: Sequence, p1: Sequence, outputs=None, mode: str | None = None):
        if len(p0) != len(p1) or not p0:
            raise UsageError("p0 and p1 must be nonempty and of equal length")
        p0 = [to_scalar(x, mode) for x in p0]
        p1 = [to_scalar(x, mode) for x in p1]
        for x in p0 + p1:
            if not 0 <= x <= 1:
                raise UsageError(f"transition probability out of [0, 1]: {x}")
        mode = mode_of(*p0, *p1)
        labels = tuple(outputs) if outputs is not None else None
        if mode == FLOAT:
            return cls(np.array(p0, dtype=float), np.array(p1, dtype=float), None, labels)
        den = math.lcm(*(Fraction(x).denominator for x in p0 + p1))
        nums = [[int(Fraction(x) * den) for x in row] for row in (p0, p1)]
        dtype = np.int64 if den < INT64_SAFE else object
        return cls(np.array(nums[0], dtype=dtype), np.array(nums[1], dtype=dtype), den, labels)

    @property
    def size(self) -> int:
        return self.num0.shape[0]

    @property
    def mode(self) -> str:
        return FLOAT if self.denom is None else EXACT

    def _row(self, nums):
        if self.denom is None:
            return [float(x) for x in nums]
        return [Fraction(int(x), self.denom) for x in nums]

    @property
    def p0(self) -> list:
        return self._row(self.num0)

    @property
    def p1(self) -> list:
        return self._row(self.num1)

    def float_rows(self) -> tuple[np.ndarray, np.ndarray]:
        if self.denom is None:
            return self.num0, self.num1
        if self.num0.dtype == object:
            d = self.denom
            return (np.array([Fraction(int(x), d) for x in self.num0], dtype=float),
                    np.array([Fraction(int(x), d) for x in self.num1], dtype=float))
        return self.num0 / self.denom, self.num1 / self.denom


def lrp_from_table(table: GeneralChannel) -> LikelihoodRatioProfile:
    """Group outputs by likelihood class; outputs of zero total probability are dropped."""
    n0, n1 = table.num0, table.num1
    tot = n0 + n1
    live = tot != 0
    n1, tot = n1[live], tot[live]
    if table.denom is None:
        return _float_profile(n1 / tot, tot / 2.0)
    two_d = 2 * table.denom
    if tot.dtype != object:
        g = np.gcd(n1, tot)
        num, den = n1 // g, tot // g
        order = np.lexsort((num, den))
        num, den, tot = num[order], den[order], tot[order]
        starts = np.flatnonzero(np.concatenate(([True], (np.diff(num) != 0) | (np.diff(den) != 0))))
        # every group total is bounded by the grand total 2 * denom < 2**63
        sums = np.add.reduceat(tot, starts)
        masses = {Fraction(int(num[i]), int(den[i])): Fraction(int(s), two_d)
                  for i, s in zip(starts, sums)}
    else:
        acc: dict = {}
        for a, t in zip(n1, tot):
            key = Fraction(int(a), int(t))
            acc[key] = acc.get(key, 0) + int(t)
        masses = {k: Fraction(s, two_d) for k, s in acc.items()}
    return LikelihoodRatioProfile.from_dict(masses)


def _float_profile(eps: np.ndarray, mass: np.ndarray, tol: float = MERGE_TOL) -> LikelihoodRatioProfile:
    order = np.argsort(eps, kind="stable")
    eps, mass = eps[order], mass[order]
    idx = np.flatnonzero(group_starts(eps, tol))
    m = np.add.reduceat(mass, idx)
    last = np.append(idx[1:], eps.size) - 1
    e = np.clip(np.add.reduceat(mass * eps, idx) / m, eps[idx], eps[last])
    return LikelihoodRatioProfile(tuple((float(a), float(b)) for a, b in zip(e, m)))
