"""Arikan transforms acting on canonical BSC mixtures.

``a0`` (the "minus" channel) and ``a1`` (the "plus" channel) distribute over
mixtures, so both reduce to per-pair rules on BSC components:

* ``a0(B(e), B(s)) = B(e star s)``
* ``a1(B(e), B(s)) = (e star (1-s)) B(e diamond s) + (e star s) B(e diamond (1-s))``

Also here: the homogeneous folds ``delta_m``/``nabla_m`` with their
multinomial closed forms, the B(0)/B(1/2) peeling formulas, closed forms for
several BSC synthetic-channel families, and the erasure-channel fast path.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Sequence

from . import _kernels as K
from .algebra import (
    EXACT,
    FLOAT,
    Scalar,
    compositions,
    diamond,
    diamond_fold,
    diamond_power,
    half,
    mode_of,
    multinomial,
    star,
    star_fold,
    star_power,
    to_scalar,
)
from .channel import SymmetricChannel, canonicalize, degrade_merge, from_arrays, make_bsc
from .errors import ResourceError, UsageError


def parse_alpha(alpha) -> tuple[int, ...]:
    """Accept ``"0110"``, ``[0, 1, 1, 0]`` or ``()`` and return a bit tuple."""
    if isinstance(alpha, str):
        if any(c not in "01" for c in alpha):
            raise UsageError(f"bit string may contain only 0 and 1: {alpha!r}")
        return tuple(int(c) for c in alpha)
    bits = tuple(int(b) for b in alpha)
    if any(b not in (0, 1) for b in bits):
        raise UsageError(f"bits must be 0 or 1: {alpha!r}")
    return bits


def _pair_mode(w0: SymmetricChannel, w1: SymmetricChannel) -> str:
    return mode_of(w0.components[0].eps, w1.components[0].eps)


def a0(w0: SymmetricChannel, w1: SymmetricChannel) -> SymmetricChannel:
    mode = _pair_mode(w0, w1)
    same = w0 is w1 or w0 == w1
    if mode == FLOAT:
        return from_arrays(*K.a0_arrays(*w0.arrays(), *w1.arrays(), self_pair=same))
    raw = []
    for i, (e, w) in enumerate(w0.components):
        if same:
            for j in range(i, len(w0)):
                s, v = w0.components[j]
                raw.append((star(e, s), w * v if i == j else 2 * w * v))
        else:
            raw.extend((star(e, s), w * v) for s, v in w1.components)
    return canonicalize(raw, EXACT)


def a1(w0: SymmetricChannel, w1: SymmetricChannel) -> SymmetricChannel:
    mode = _pair_mode(w0, w1)
    same = w0 is w1 or w0 == w1
    if mode == FLOAT:
        return from_arrays(*K.a1_arrays(*w0.arrays(), *w1.arrays(), self_pair=same))
    raw = []
    comps1 = w1.components
    for i, (e, w) in enumerate(w0.components):
        start = i if same else 0
        for j in range(start, len(comps1)):
            s, v = comps1[j]
            wv = w * v if not same or i == j else 2 * w * v
            s_bar = 1 - s
            raw.append((diamond(e, s), star(e, s_bar) * wv))
            raw.append((diamond(e, s_bar), star(e, s) * wv))
    return canonicalize(raw, EXACT)


# float transforms whose raw output exceeds this multiple of the cap are pooled
# into entropy bins before the greedy merge
PREBIN_FACTOR = 8


def transform_capped(bit: int, channel: SymmetricChannel, cap: int) -> tuple[SymmetricChannel, bool]:
    """``a_bit(V, V)`` reduced to at most ``cap`` components.

    Returns the channel and whether any merge happened. Small outputs go
    through :func:`degrade_merge` directly. Large float outputs are first
    pooled into ``PREBIN_FACTOR * cap`` bins of equal width in binary entropy
    without materializing every pair, then merged greedily; both stages are
    degradations.
    """
    n = len(channel)
    raw = n * (n + 1) // 2 * (2 if bit else 1)
    if channel.mode == FLOAT and raw > PREBIN_FACTOR * cap:
        e, w = channel.arrays()
        e, w = K.transform_binned(bit, e, w, e, w, True, PREBIN_FACTOR * cap)
        if e.size > cap:
            e, w = K.greedy_merge_compiled(e, w, cap)
        return from_arrays(*K.canonical_arrays(e, w)), True
    out = a1(channel, channel) if bit else a0(channel, channel)
    if len(out) > cap:
        return degrade_merge(out, cap), True
    return out, False


def a_seq(alpha, channel: SymmetricChannel, cap: int | None = None,
          budget: int | None = None) -> SymmetricChannel:
    """Apply ``a_b(V, V)`` for each bit ``b`` of ``alpha``, left to right.

    With ``cap`` every step is reduced to at most ``cap`` components. Without
    it, ``budget`` (if given) bounds the component count of every intermediate.
    """
    bits = parse_alpha(alpha)
    v = channel
    for pos, b in enumerate(bits):
        if cap is None:
            v = a1(v, v) if b else a0(v, v)
            if budget is not None and len(v) > budget:
                prefix = "".join(map(str, bits[: pos + 1]))
                raise ResourceError(f"channel for alpha={prefix} has {len(v)} components, "
                                    f"over the budget of {budget}")
        else:
            v, _ = transform_capped(b, v, cap)
    return v


def _bsc_like(channel: SymmetricChannel, eps) -> SymmetricChannel:
    mode = channel.mode
    return make_bsc(half(mode) if eps == "half" else to_scalar(eps, mode))


def _fold_power(channel, m, op, identity) -> SymmetricChannel:
    if m < 0:
        raise UsageError("fold length must be nonnegative")
    if m == 0:
        return identity
    memo = {1: channel}

    def rec(t):
        if t not in memo:
            lo = t // 2
            memo[t] = op(rec(lo), rec(t - lo))
        return memo[t]

    return rec(m)


def delta_m(channel: SymmetricChannel, m: int) -> SymmetricChannel:
    """``a0`` folded over ``m`` independent copies; ``delta_m(W, 0)`` is B(0)."""
    return _fold_power(channel, m, a0, _bsc_like(channel, 0))


def nabla_m(channel: SymmetricChannel, m: int) -> SymmetricChannel:
    """``a1`` folded over ``m`` independent copies; ``nabla_m(W, 0)`` is B(1/2)."""
    return _fold_power(channel, m, a1, _bsc_like(channel, "half"))


def _peel(channel: SymmetricChannel | None, p, q, t, absorbing, neutral_power, inner):
    # t copies of p*B(absorbing... ) + q*B(neutral) + r*W: any absorbing copy decides
    # the outcome, neutral copies drop out, the rest fold through `inner`.
    mode = mode_of(p, q)
    p, q = to_scalar(p, mode), to_scalar(q, mode)
    r = 1 - p - q
    if p < 0 or q < 0 or r < 0:
        raise UsageError("need p, q >= 0 with p + q <= 1")
    if t < 1:
        raise UsageError("t must be positive")
    absorb_w, neutral_w = neutral_power(p, q)
    h = half(mode)
    absorbing_eps = h if absorbing == "half" else 0 * h
    neutral_eps = 0 * h if absorbing == "half" else h
    raw = [(absorbing_eps, 1 - (1 - absorb_w) ** t)]
    for i in range(t + 1):
        c = math.comb(t, i) * neutral_w ** (t - i) * r**i
        if c == 0:
            continue
        if i == 0:
            raw.append((neutral_eps, c))
        else:
            if channel is None:
                raise UsageError("remainder weight is positive but no channel was given")
            raw.extend((e, c * w) for e, w in inner(channel, i).components)
    return canonicalize(raw, mode)


def delta_wpq(channel, p, q, t: int, inner: Callable = delta_m) -> SymmetricChannel:
    """Closed form of ``delta_m(p B(0) + q B(1/2) + (1-p-q) W, t)``.

    Any B(1/2) copy makes the whole fold useless, B(0) copies are neutral.
    ``channel`` may be ``None`` when ``p + q == 1``.
    """
    return _peel(channel, p, q, t, "half", lambda p_, q_: (q_, p_), inner)


def nabla_wpq(channel, p, q, t: int, inner: Callable = nabla_m) -> SymmetricChannel:
    """Closed form of ``nabla_m(p B(0) + q B(1/2) + (1-p-q) W, t)``."""
    return _peel(channel, p, q, t, "zero", lambda p_, q_: (p_, q_), inner)


def _split(channel: SymmetricChannel):
    h = half(channel.mode)
    zero_w = half_w = 0 * h
    interior = []
    for e, w in channel.components:
        if e == 0:
            zero_w = w
        elif e == h:
            half_w = w
        else:
            interior.append((e, w))
    return zero_w, half_w, interior


def delta_closed(channel: SymmetricChannel, m: int) -> SymmetricChannel:
    """Direct multinomial expansion of ``delta_m`` over component-count vectors.

    For counts ``a`` summing to ``m`` the term is
    ``multinomial(a) * prod(q_i^a_i) * B(star_i eps_i^{star a_i})``; a B(1/2)
    component contributes the single term ``(1 - (1-q)^m) B(1/2)``.
    """
    if m < 1:
        raise UsageError("m must be positive")
    mode = channel.mode
    h = half(mode)
    _, half_w, _ = _split(channel)
    rest = [(e, w) for e, w in channel.components if e != h]
    raw = [(h, 1 - (1 - half_w) ** m)]
    if rest:
        for counts in compositions(m, len(rest)):
            weight = multinomial(counts) * math.prod(w**a for (_, w), a in zip(rest, counts))
            eps = star_fold(star_power(e, a) for (e, _), a in zip(rest, counts) if a)
            raw.append((eps, weight))
    return canonicalize(raw, mode)


def nabla_closed(channel: SymmetricChannel, m: int) -> SymmetricChannel:
    """Direct expansion of ``nabla_m`` over (half count, a, b) vectors.

    ``b_i`` counts matched pairs (eps_i, 1 - eps_i), which cancel under
    ``diamond``; ``a_i`` is the unmatched surplus and ``s`` counts B(1/2)
    copies. A B(0) component is peeled off first since it absorbs the fold.
    """
    if m < 1:
        raise UsageError("m must be positive")
    zero_w, half_w, interior = _split(channel)
    if zero_w:
        if zero_w == 1:
            return channel
        mode = channel.mode
        rest = [(e, w / (1 - zero_w)) for e, w in channel.components if e != 0]
        return nabla_wpq(canonicalize(rest, mode), zero_w, 0 * zero_w, m, inner=nabla_closed)
    return _nabla_expansion(channel.mode, interior, half_w, m)


def _nabla_expansion(mode, interior, half_w, m):
    h = half(mode)
    n = len(interior)
    if n == 0:
        return make_bsc(h)
    raw = []
    s_values = range(m + 1) if half_w else (0,)
    for s in s_values:
        for bsum in range((m - s) // 2 + 1):
            asum = m - s - 2 * bsum
            for bvec in compositions(bsum, n):
                for avec in compositions(asum, n):
                    coef = multinomial((s,) + tuple(a + b for a, b in zip(avec, bvec)) + tuple(bvec))
                    coef *= half_w**s
                    for (e, w), a, b in zip(interior, avec, bvec):
                        coef *= w ** (a + 2 * b) * (e * (1 - e)) ** b
                    if coef == 0:
                        continue
                    omega = [(e, a) for (e, _), a in zip(interior, avec) if a > 0]
                    if not omega:
                        raw.append((h, coef))
                        continue
                    for flips in itertools.product((False, True), repeat=len(omega)):
                        sig = [(1 - e if f else e, a) for (e, a), f in zip(omega, flips)]
                        prod = math.prod(x**a for x, a in sig)
                        prod_bar = math.prod((1 - x) ** a for x, a in sig)
                        weight = coef * (prod + prod_bar) / 2
                        eps = diamond_fold([diamond_power(x, a) for x, a in sig])
                        raw.append((eps, weight))
    return canonicalize(raw, mode)


def delta_count_bound(n: int, m: int, with_half: bool = False) -> int:
    """Upper bound on the component count of ``delta_m`` for ``n`` interior components."""
    return math.comb(m + n - 1, m) + (1 if with_half else 0)


def nabla_count_bound(n: int, m: int, with_half: bool = False) -> int:
    """Upper bound on the component count of ``nabla_m`` for ``n`` interior components."""
    if with_half:
        return 1 + sum(2 ** (w - 1) * math.comb(n, w) * math.comb(m, w) for w in range(1, m + 1))
    return 1 + sum(
        2 ** (w - 1) * math.comb(n, w) * sum(math.comb(m - 2 * b - 1, m - 2 * b - w)
                                             for b in range((m - w) // 2 + 1))
        for w in range(1, m + 1)
    )


# -- closed forms for synthetic channels of a single BSC ---------------------

BSC_FAMILIES = (
    "0^l",
    "0^l1^(k+1)",
    "0^l10^i1^k",
    "0^l10^i10^t",
    "0^l10^i10^t1",
)


def family_alpha(family: str, l: int = 0, i: int = 0, k: int = 0, t: int = 0) -> str:
    """Bit string of the synthetic channel described by ``family``."""
    patterns = {
        "0^l": "0" * l,
        "0^l1^(k+1)": "0" * l + "1" * (k + 1),
        "0^l10^i1^k": "0" * l + "1" + "0" * i + "1" * k,
        "0^l10^i10^t": "0" * l + "1" + "0" * i + "1" + "0" * t,
        "0^l10^i10^t1": "0" * l + "1" + "0" * i + "1" + "0" * t + "1",
    }
    if family not in patterns:
        raise UsageError(f"unknown family {family!r}; choose from {BSC_FAMILIES}")
    return patterns[family]


def _family_terms(eps, l, i, t):
    e_l = star_power(eps, 2**l)
    sq = diamond_power(e_l, 2)
    e_li = star_power(sq, 2**i)
    q_li = (e_l**2 + (1 - e_l) ** 2) ** (2**i)
    return e_l, e_li, q_li


def _beta_terms(eps, l, i, t):
    """Weights and crossovers of the ``0^l10^i10^t`` channel (B(1/2) weight first)."""
    _, e, q = _family_terms(eps, l, i, t)
    q_bar = 1 - q
    p = q**2 * (e**2 + (1 - e) ** 2) + 2 * q * q_bar
    r = 2 * q * q_bar / p
    n = 2**t
    a = 1 - p**n
    sq = diamond_power(e, 2)
    bs = [math.comb(n, s) * (1 - r) ** (n - s) * r**s * p**n for s in range(n + 1)]
    betas = [star(star_power(sq, n - s), star_power(e, s)) for s in range(n + 1)]
    return a, bs, betas


def bsc_closed_form(family: str, eps, l: int = 0, i: int = 0, k: int = 0, t: int = 0) -> SymmetricChannel:
    """Closed-form canonical channel ``a_seq(family_alpha(...), B(eps))``."""
    alpha = family_alpha(family, l, i, k, t)
    eps = to_scalar(eps)
    mode = mode_of(eps)
    h = half(mode)
    if eps > h:
        eps = 1 - eps
    if eps == 0 or eps == h:
        return make_bsc(eps)
    if family == "0^l":
        return make_bsc(star_power(eps, 2**l))
    if family == "0^l1^(k+1)":
        e = star_power(eps, 2**l)
        n = 2**k
        ee = e * (1 - e)
        raw = [(h, math.comb(2 * n, n) * ee**n)]
        for j in range(1, n + 1):
            w = math.comb(2 * n, n - j) * (e ** (2 * j) + (1 - e) ** (2 * j)) * ee ** (n - j)
            raw.append((diamond_power(e, 2 * j), w))
        return canonicalize(raw, mode)
    if family == "0^l10^i1^k":
        _, e, q = _family_terms(eps, l, i, t)
        n = 2**k
        q_bar = 1 - q
        pair = q**2 * e * (1 - e)
        raw = [(h, sum(multinomial((n - 2 * b, b, b)) * q_bar ** (n - 2 * b) * pair**b
                       for b in range(n // 2 + 1)))]
        for a in range(1, n + 1):
            inner = sum(multinomial((n - a - 2 * b, a + b, b)) * q_bar ** (n - a - 2 * b) * pair**b
                        for b in range((n - a) // 2 + 1))
            raw.append((diamond_power(e, a), (e**a + (1 - e) ** a) * q**a * inner))
        return canonicalize(raw, mode)
    a, bs, betas = _beta_terms(eps, l, i, t)
    if family == "0^l10^i10^t":
        return canonicalize([(h, a)] + list(zip(betas, bs)), mode)
    # plus-transform of the previous family, expanded term by term
    raw = [(h, a**2 + 2 * sum(b * b * x * (1 - x) for b, x in zip(bs, betas)))]
    raw += [(x, 2 * a * b) for b, x in zip(bs, betas)]
    raw += [(diamond_power(x, 2), b * b * (x**2 + (1 - x) ** 2)) for b, x in zip(bs, betas)]
    for s in range(len(betas)):
        for r in range(s + 1, len(betas)):
            xs = betas[s]
            for sig in (betas[r], 1 - betas[r]):
                raw.append((diamond(xs, sig), 2 * bs[s] * bs[r] * (xs * sig + (1 - xs) * (1 - sig))))
    return canonicalize(raw, mode)


def beta_crossovers(eps, l: int, i: int, t: int) -> list:
    """Crossovers of the BSC components of the ``0^l10^i10^t`` family, in order."""
    return _beta_terms(to_scalar(eps), l, i, t)[2]


# -- erasure channels --------------------------------------------------------

def bec_fast(alpha, q: Scalar) -> Scalar:
    """Erasure probability of ``a_seq(alpha, E(q))``.

    A 0 bit maps ``p -> 1 - (1-p)^2``, a 1 bit maps ``p -> p^2``.
    """
    p = to_scalar(q)
    if not 0 <= p <= 1:
        raise UsageError(f"erasure probability out of [0, 1]: {q}")
    for b in parse_alpha(alpha):
        p = p * p if b else 1 - (1 - p) ** 2
    return p


def bec_compound(alpha, q: Scalar) -> Scalar:
    """Run-length form: alternate ``f_s(p) = (1-p)^(2^s)`` over runs 0^t1 1^t2 0^t3 ..."""
    bits = parse_alpha(alpha)
    runs = []
    want = 0
    pos = 0
    while pos < len(bits) or len(runs) % 2:
        run = 0
        while pos < len(bits) and bits[pos] == want:
            run += 1
            pos += 1
        runs.append(run)
        want ^= 1
    p = to_scalar(q)
    for s in runs:
        p = (1 - p) ** (2**s)
    return p
