"""Self-check suites run by ``rscpolar verify``.

Each suite returns a list of :class:`Check` results; a failing check carries
the first counterexample found.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction as F
from typing import Callable

from .algebra import diamond, diamond_power, multinomial, star, star_power
from .arikan import (
    BSC_FAMILIES,
    a_seq,
    bsc_closed_form,
    delta_closed,
    delta_count_bound,
    delta_m,
    family_alpha,
    nabla_closed,
    nabla_count_bound,
    nabla_m,
)
from .channel import SymmetricChannel, lrp, make_bec, make_bsc, mix, phi
from .construction import check_phi_bounds
from .oracle import DEFAULT_BUDGET, oracle_a_seq, table_of
from .profile import lrp_from_table

SUITES = ("algebra", "oracle", "closed-form", "counting", "phi-bounds")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite}: {self.name}" + (f" ({self.detail})" if self.detail else "")


def _first_failure(cases, predicate: Callable) -> str | None:
    for case in cases:
        if not predicate(*case):
            return repr(case)
    return None


def _check(suite, name, cases, predicate) -> Check:
    bad = _first_failure(cases, predicate)
    return Check(suite, name, bad is None, "" if bad is None else f"counterexample {bad}")


GRID = [F(0), F(1, 10), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(9, 10), F(1)]


def default_channels() -> list[SymmetricChannel]:
    return [
        make_bsc(F(1, 4)),
        make_bsc(F(1, 10)),
        make_bec(F(1, 2)),
        mix([(F(1, 2), make_bsc(F(1, 8))), (F(1, 2), make_bsc(F(3, 8)))]),
    ]


def interior_channel(n: int) -> SymmetricChannel:
    """``n`` equally weighted BSCs strictly inside (0, 1/2) plus a B(1/2) part."""
    parts = [(F(1, n + 1), make_bsc(F(j, 2 * n + 2))) for j in range(1, n + 1)]
    return mix(parts + [(F(1, n + 1), make_bsc(F(1, 2)))])


def suite_algebra() -> list[Check]:
    pairs = list(itertools.product(GRID, repeat=2))
    triples = list(itertools.product(GRID, repeat=3))
    inner = [x for x in GRID if 0 < x < 1]
    s = "algebra"
    return [
        _check(s, "star is commutative", pairs, lambda a, b: star(a, b) == star(b, a)),
        _check(s, "star is associative", triples,
               lambda a, b, c: star(star(a, b), c) == star(a, star(b, c))),
        _check(s, "0 is the star identity", [(a,) for a in GRID], lambda a: star(a, 0) == a),
        _check(s, "1 - 2(a star b) = (1 - 2a)(1 - 2b)", pairs,
               lambda a, b: 1 - 2 * star(a, b) == (1 - 2 * a) * (1 - 2 * b)),
        _check(s, "diamond is commutative", pairs, lambda a, b: diamond(a, b) == diamond(b, a)),
        _check(s, "diamond is associative on (0, 1)", list(itertools.product(inner, repeat=3)),
               lambda a, b, c: diamond(diamond(a, b), c) == diamond(a, diamond(b, c))),
        _check(s, "1/2 is the diamond identity on (0, 1)", [(a,) for a in inner],
               lambda a: diamond(a, F(1, 2)) == a),
        _check(s, "star_power matches repeated star", [(a, m) for a in GRID for m in range(1, 6)],
               lambda a, m: star_power(a, m) == _fold(star, a, m)),
        _check(s, "diamond_power matches repeated diamond", [(a, m) for a in inner for m in range(1, 6)],
               lambda a, m: diamond_power(a, m) == _fold(diamond, a, m)),
    ]


def _fold(op, a, m):
    out = a
    for _ in range(m - 1):
        out = op(out, a)
    return out


def suite_oracle(depth: int = 3, channels=None, budget: int = 10 * DEFAULT_BUDGET) -> list[Check]:
    channels = channels or default_channels()
    out = []
    for w in channels:
        alphas = ["".join(a) for n in range(depth + 1) for a in itertools.product("01", repeat=n)]
        table = table_of(w)
        out.append(_check("oracle", f"table profile equals algebra for {w}, depth <= {depth}",
                          [(a,) for a in alphas],
                          lambda a: lrp_from_table(oracle_a_seq(a, table, budget)) == lrp(a_seq(a, w))))
    return out


def suite_closed_form(max_m: int = 5, max_n: int = 3, grid: int = 2) -> list[Check]:
    s = "closed-form"
    chans = []
    for n in range(1, max_n + 1):
        chans.append(mix([(F(1, n), make_bsc(F(j, 3 * n + 1))) for j in range(1, n + 1)]))
        chans.append(interior_channel(n))
    cases = [(c, m) for c in chans for m in range(1, max_m + 1)]
    fam_cases = [(f, e, l, i, k, t) for f in BSC_FAMILIES for e in (F(1, 10), F(1, 3))
                 for l, i, k, t in itertools.product(range(grid + 1), repeat=4)]
    fam_cases = list(dict.fromkeys((f, e) + _relevant(f, l, i, k, t) for f, e, l, i, k, t in fam_cases))
    return [
        _check(s, "multinomial expansion of the a0 fold", cases, lambda c, m: delta_closed(c, m) == delta_m(c, m)),
        _check(s, "multinomial expansion of the a1 fold", cases, lambda c, m: nabla_closed(c, m) == nabla_m(c, m)),
        _check(s, "single-BSC family closed forms", fam_cases,
               lambda f, e, l, i, k, t: bsc_closed_form(f, e, l, i, k, t)
               == a_seq(family_alpha(f, l, i, k, t), make_bsc(e))),
    ]


def _relevant(family, l, i, k, t):
    # parameters a family ignores are pinned to 0 so each channel is checked once
    used = {"0^l": "l", "0^l1^(k+1)": "lk", "0^l10^i1^k": "lik", "0^l10^i10^t": "lit", "0^l10^i10^t1": "lit"}[family]
    return tuple(v if name in used else 0 for name, v in zip("likt", (l, i, k, t)))


def counting_identity(k: int, a: int) -> bool:
    """Sum over s + 2b = 2^k - a of multinomial(s, a+b, b) 2^s equals C(2^(k+1), 2^k - a)."""
    n = 2**k
    lhs = sum(multinomial((n - a - 2 * b, a + b, b)) * 2 ** (n - a - 2 * b) for b in range((n - a) // 2 + 1))
    return lhs == math.comb(2 * n, n - a)


def suite_counting(max_k: int = 4) -> list[Check]:
    s = "counting"
    chans = [mix([(F(1, n), make_bsc(F(j, 3 * n + 1))) for j in range(1, n + 1)]) for n in (1, 2, 3)]
    chans += [interior_channel(n) for n in (1, 2, 3)]

    half_ = F(1, 2)
    cases = [(c, len(c) - (c.eps[-1] == half_), c.eps[-1] == half_, m) for c in chans for m in range(1, 5)]
    return [
        _check(s, "binomial identity for k <= %d" % max_k,
               [(k, a) for k in range(max_k + 1) for a in range(2**k + 1)], counting_identity),
        _check(s, "component count of the a0 fold within bound", cases,
               lambda c, n, h, m: phi(delta_m(c, m)) <= delta_count_bound(n, m, h)),
        _check(s, "component count of the a1 fold within bound", cases,
               lambda c, n, h, m: phi(nabla_m(c, m)) <= nabla_count_bound(n, m, h)),
    ]


def suite_phi_bounds(max_n: int = 4) -> list[Check]:
    out = []
    for n in range(1, max_n + 1):
        report = check_phi_bounds(interior_channel(n), 2)
        bad = [r for r in report if not r.ok]
        detail = "" if not bad else f"alpha={bad[0].alpha}: {bad[0].phi} > {bad[0].bound}"
        out.append(Check("phi-bounds", f"n={n}: component counts of depth <= 2 channels", not bad, detail))
    return out


def run_suite(name: str, depth: int = 3) -> list[Check]:
    if name == "all":
        return [c for s in SUITES for c in run_suite(s, depth)]
    if name == "algebra":
        return suite_algebra()
    if name == "oracle":
        return suite_oracle(depth)
    if name == "closed-form":
        return suite_closed_form()
    if name == "counting":
        return suite_counting()
    if name == "phi-bounds":
        return suite_phi_bounds()
    raise ValueError(f"unknown suite {name!r}")
