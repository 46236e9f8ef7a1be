"""Acceptance criteria, one test per criterion, each at its stated tolerance."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest

from rscpolar.algebra import binary_entropy, multinomial
from rscpolar.arikan import (
    BSC_FAMILIES,
    a0,
    a1,
    a_seq,
    bec_fast,
    bsc_closed_form,
    delta_closed,
    delta_m,
    delta_wpq,
    family_alpha,
    nabla_closed,
    nabla_m,
    nabla_wpq,
)
from rscpolar.channel import (
    bhattacharyya,
    canonicalize,
    capacity,
    lrp,
    make_bec,
    make_bsc,
    mix,
)
from rscpolar.construction import check_phi_bounds, construct, generator_matrix, varphi_alpha
from rscpolar.oracle import bhattacharyya_of_table, oracle_a0, oracle_a1, oracle_a_seq, table_of
from rscpolar.profile import lrp_from_table

ORACLE_CHANNELS = [
    make_bsc(F(1, 4)),
    make_bsc(F(1, 10)),
    make_bec(F(1, 2)),
    mix([(F(1, 2), make_bsc(F(1, 8))), (F(1, 2), make_bsc(F(3, 8)))]),
]
# the four-output mixture reaches 4**8 * 2**7 outputs at depth 3
ORACLE_BUDGET = 10_000_000


def alphas(max_len):
    for n in range(max_len + 1):
        for bits in itertools.product("01", repeat=n):
            yield "".join(bits)


def random_channel(rng, max_components=6):
    n = int(rng.integers(1, max_components + 1))
    eps = rng.uniform(0.0, 0.5, n)
    if rng.random() < 0.3:
        eps[0] = 0.0
    if rng.random() < 0.3:
        eps[-1] = 0.5
    w = rng.dirichlet(np.ones(n))
    return canonicalize(list(zip(eps.tolist(), w.tolist())))


def random_pairs(seed=20240611, count=100):
    rng = np.random.default_rng(seed)
    return [(random_channel(rng), random_channel(rng)) for _ in range(count)]


@pytest.mark.acceptance(1, "oracle tables and the mixture algebra give identical profiles, |alpha| <= 3")
def test_oracle_equivalence():
    for w in ORACLE_CHANNELS:
        table = table_of(w)
        for alpha in alphas(3):
            assert lrp_from_table(oracle_a_seq(alpha, table, ORACLE_BUDGET)) == lrp(a_seq(alpha, w)), (str(w), alpha)


@pytest.mark.acceptance(2, "generator matrices for k = 1, 2, 3 match the printed ones")
def test_generator_matrices():
    g1 = [[1, 0], [1, 1]]
    g2 = [[1, 0, 0, 0], [1, 0, 1, 0], [1, 1, 0, 0], [1, 1, 1, 1]]
    g3 = [
        [1, 0, 0, 0, 0, 0, 0, 0],
        [1, 0, 0, 0, 1, 0, 0, 0],
        [1, 0, 1, 0, 0, 0, 0, 0],
        [1, 0, 1, 0, 1, 0, 1, 0],
        [1, 1, 0, 0, 0, 0, 0, 0],
        [1, 1, 0, 0, 1, 1, 0, 0],
        [1, 1, 1, 1, 0, 0, 0, 0],
        [1, 1, 1, 1, 1, 1, 1, 1],
    ]
    for k, expected in ((1, g1), (2, g2), (3, g3)):
        assert generator_matrix(k).tolist() == expected


@pytest.mark.acceptance(3, "erasure fast path for 0110 matches its closed formula and the mixture algebra")
def test_bec_closed_form():
    for q in (F(1, 4), F(1, 2), F(3, 4)):
        formula = 1 - (1 - (1 - (1 - q) ** 2) ** 4) ** 2
        erasure = bec_fast("0110", q)
        assert erasure == formula
        channel = a_seq("0110", make_bec(q))
        assert channel == make_bec(erasure)
        assert dict(channel.components).get(F(1, 2), 0) == erasure
    # the quoted 30625/65536 is the non-erased mass (the capacity); the erasure
    # probability the formula yields at q = 1/2 is its complement
    assert 1 - bec_fast("0110", F(1, 2)) == F(30625, 65536)
    assert bec_fast("0110", F(1, 2)) == F(34911, 65536)


@pytest.mark.acceptance(4, "capacity is conserved by each transform pair (100 random pairs, 1e-9)")
def test_capacity_conservation():
    for w0, w1 in random_pairs():
        total = capacity(a0(w0, w1)) + capacity(a1(w0, w1))
        assert abs(total - capacity(w0) - capacity(w1)) <= 1e-9


@pytest.mark.acceptance(5, "Bhattacharyya product law and minus-transform bound, confirmed on oracle tables first")
def test_bhattacharyya_laws():
    # oracle confirmation on depth <= 2: every pair of depth <= 1 synthetic channels
    synth = [a_seq(a, w) for w in ORACLE_CHANNELS for a in alphas(1)]
    for v0, v1 in itertools.product(synth, repeat=2):
        t0, t1 = table_of(v0), table_of(v1)
        z0, z1 = bhattacharyya_of_table(t0), bhattacharyya_of_table(t1)
        assert abs(bhattacharyya_of_table(oracle_a1(t0, t1)) - z0 * z1) <= 1e-9
        assert bhattacharyya_of_table(oracle_a0(t0, t1)) <= z0 + z1 - z0 * z1 + 1e-9
    for w0, w1 in random_pairs():
        z0, z1 = bhattacharyya(w0), bhattacharyya(w1)
        assert abs(bhattacharyya(a1(w0, w1)) - z0 * z1) <= 1e-9
        assert bhattacharyya(a0(w0, w1)) <= z0 + z1 - z0 * z1 + 1e-9
    rng = np.random.default_rng(7)
    for _ in range(100):
        e0, e1 = make_bec(float(rng.random())), make_bec(float(rng.random()))
        z0, z1 = bhattacharyya(e0), bhattacharyya(e1)
        assert abs(bhattacharyya(a0(e0, e1)) - (z0 + z1 - z0 * z1)) <= 1e-9


def _closed_form_channels():
    out = []
    for n in (1, 2, 3):
        out.append(mix([(F(1, n), make_bsc(F(j, 3 * n + 1))) for j in range(1, n + 1)]))
        out.append(mix([(F(1, n + 1), make_bsc(F(j, 2 * n + 2))) for j in range(1, n + 1)]
                       + [(F(1, n + 1), make_bsc(F(1, 2)))]))
        out.append(mix([(F(1, n + 1), make_bsc(0))]
                       + [(F(1, n + 1), make_bsc(F(j, 4 * n))) for j in range(1, n + 1)]))
    return out


@pytest.mark.acceptance(6, "closed forms equal the recursive transforms exactly")
def test_closed_form_agreement():
    for w in _closed_form_channels():
        for m in range(1, 6):
            assert delta_closed(w, m) == delta_m(w, m), (str(w), m)
            assert nabla_closed(w, m) == nabla_m(w, m), (str(w), m)
    cache = {}
    for fam, eps in itertools.product(BSC_FAMILIES, (F(1, 10), F(1, 3))):
        for l, i, k, t in itertools.product(range(3), repeat=4):
            alpha = family_alpha(fam, l, i, k, t)
            if (alpha, eps) not in cache:
                cache[alpha, eps] = a_seq(alpha, make_bsc(eps))
            assert bsc_closed_form(fam, eps, l, i, k, t) == cache[alpha, eps], (fam, l, i, k, t, eps)


@pytest.mark.acceptance(7, "sum of multinomial(s, a+b, b) 2^s over s + 2b = 2^k - a equals C(2^(k+1), 2^k - a), k <= 4")
def test_counting_identity():
    for k in range(5):
        n = 2**k
        for a in range(n + 1):
            lhs = sum(multinomial((s, a + (n - a - s) // 2, (n - a - s) // 2)) * 2**s
                      for s in range(n - a + 1) if (n - a - s) % 2 == 0)
            assert lhs == math.comb(2 * n, n - a), (k, a)


@pytest.mark.acceptance(8, "component counts of depth <= 2 channels obey their explicit bounds, n = 1..4")
def test_phi_bounds():
    for n in range(1, 5):
        w = mix([(F(1, n + 1), make_bsc(F(j, 2 * n + 2))) for j in range(1, n + 1)]
                + [(F(1, n + 1), make_bsc(F(1, 2)))])
        report = check_phi_bounds(w, 2)
        assert {r.alpha for r in report} == {"0", "1", "00", "01", "10", "11"}
        assert all(r.ok for r in report), [(r.alpha, r.phi, r.bound) for r in report if not r.ok]


@pytest.mark.acceptance(9, "varphi: odd after scaling and within its power-of-two and factorial bounds, |alpha| <= 5")
def test_varphi_properties():
    for alpha in alphas(5):
        k = len(alpha)
        v = varphi_alpha(alpha)
        scaled = F(v, 2 ** (2 ** (k + 1) - 1))
        assert scaled.denominator == 1 and scaled.numerator % 2 == 1, alpha
        assert 2 ** (2 ** (k + 1) - 1) <= v <= math.factorial(2**k) * 2 ** (2**k), alpha


@pytest.mark.acceptance(10, "B(0.11), k = 10, cap 256: polarization fractions and pessimistic capacity total")
def test_polarization_bsc():
    result = construct(make_bsc(0.11), 10, cap=256)
    caps = np.array([r.capacity for r in result.records])
    assert len(caps) == 1024
    assert np.mean(caps > 0.9) >= 0.35
    assert np.mean(caps < 0.1) >= 0.35
    assert caps.sum() <= 1024 * (1 - binary_entropy(0.11))


@pytest.mark.acceptance(11, "B(0)/B(1/2) peeling forms: exact unit weight and agreement with the folds, t <= 4")
def test_wpq_forms():
    grid = (F(0), F(1, 4), F(1, 2))
    for w in (make_bsc(F(1, 10)), mix([(F(1, 2), make_bsc(F(1, 8))), (F(1, 2), make_bsc(F(3, 8)))])):
        for p, q in itertools.product(grid, repeat=2):
            r = 1 - p - q
            parts = [(p, make_bsc(0)), (q, make_bsc(F(1, 2))), (r, w)]
            full = mix([(x, c) for x, c in parts if x])
            for t in range(1, 5):
                d = delta_wpq(w, p, q, t)
                n = nabla_wpq(w, p, q, t)
                assert sum(d.weights) == 1 and sum(n.weights) == 1
                assert d == delta_m(full, t), (p, q, t)
                assert n == nabla_m(full, t), (p, q, t)
