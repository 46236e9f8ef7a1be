from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given

from rscpolar.algebra import binary_entropy
from rscpolar.arikan import a0, a1, a_seq, bec_fast
from rscpolar.channel import (
    bhattacharyya,
    capacity,
    channel_from_lrp,
    equivalent,
    lrp,
    make_bec,
    make_bsc,
    mix,
    p_error,
)
from rscpolar.errors import ResourceError
from rscpolar.oracle import (
    bhattacharyya_of_table,
    mutual_information_of_table,
    oracle_a0,
    oracle_a1,
    oracle_a_seq,
    p_error_of_table,
    projected_size,
    table_of,
)
from rscpolar.profile import GeneralChannel, lrp_from_table

from .conftest import exact_channels


def test_table_of_shapes():
    assert table_of(make_bsc(F(1, 10))).size == 2
    w = mix([(F(1, 3), make_bsc(F(1, 10))), (F(1, 3), make_bsc(F(1, 4))), (F(1, 3), make_bsc(F(1, 2)))])
    t = table_of(w)
    assert t.size == 6
    assert sum(t.p0) == 1 and sum(t.p1) == 1


def test_erasure_table_profile():
    q = F(1, 3)
    assert lrp_from_table(table_of(make_bec(q))).as_dict() == {0: (1 - q) / 2, F(1, 2): q, 1: (1 - q) / 2}


def test_pair_examples():
    t = oracle_a0(table_of(make_bsc(F(1, 10))), table_of(make_bsc(F(1, 5))))
    assert t.size == 4
    assert lrp_from_table(t) == lrp(make_bsc(F(13, 50)))
    t = oracle_a1(table_of(make_bsc(F(1, 10))), table_of(make_bsc(F(1, 10))))
    assert t.size == 8
    expected = mix([(F(41, 50), make_bsc(F(1, 82))), (F(9, 50), make_bsc(F(1, 2)))])
    assert lrp_from_table(t) == lrp(expected)


def test_absorbing_tables():
    w = mix([(F(1, 2), make_bsc(F(1, 8))), (F(1, 2), make_bsc(F(3, 8)))])
    tw = table_of(w)
    assert lrp_from_table(oracle_a0(table_of(make_bsc(0)), tw)) == lrp(w)
    assert lrp_from_table(oracle_a1(table_of(make_bsc(F(1, 2))), tw)) == lrp(w)


@given(exact_channels(max_components=2), exact_channels(max_components=2))
def test_heterogeneous_pairs_match_algebra(w0, w1):
    t0, t1 = table_of(w0), table_of(w1)
    assert lrp_from_table(oracle_a0(t0, t1)) == lrp(a0(w0, w1))
    assert lrp_from_table(oracle_a1(t0, t1)) == lrp(a1(w0, w1))


def test_asymmetric_tables_are_transformed_too():
    # a Z-channel: the oracle handles it even though the mixture algebra cannot
    z = GeneralChannel.from_probabilities([1, 0], [F(1, 4), F(3, 4)])
    t = oracle_a1(z, z)
    assert t.size == 8 and t.denom is not None
    assert sum(t.p0) == 1 and sum(t.p1) == 1


@pytest.mark.parametrize("alpha", ["", "0", "1", "01", "110", "011"])
def test_erasure_sequences(alpha):
    q = F(2, 5)
    f = bec_fast(alpha, q)
    prof = lrp_from_table(oracle_a_seq(alpha, table_of(make_bec(q)), budget=10**7)).as_dict()
    assert prof == {k: v for k, v in {0: (1 - f) / 2, F(1, 2): f, 1: (1 - f) / 2}.items() if v}


def test_output_alphabet_size():
    # B(0) and B(1/2) each contribute two outputs
    t = table_of(make_bec(F(1, 2)))
    for alpha in ("", "0", "1", "00", "01", "10", "11"):
        k = len(alpha)
        b = int(alpha, 2) if alpha else 0
        assert oracle_a_seq(alpha, t).size == projected_size(alpha, t.size) == 2**b * t.size ** (2**k)


def test_budget_is_enforced():
    t = table_of(mix([(F(1, 2), make_bsc(F(1, 8))), (F(1, 2), make_bsc(F(3, 8)))]))
    with pytest.raises(ResourceError, match="111"):
        oracle_a_seq("111", t)
    with pytest.raises(ResourceError):
        oracle_a0(t, t, budget=10)


def test_direct_metrics_examples():
    noiseless = table_of(make_bsc(F(0)))
    assert mutual_information_of_table(noiseless) == pytest.approx(1.0)
    useless = GeneralChannel.from_probabilities([F(1, 3), F(2, 3)], [F(1, 3), F(2, 3)])
    assert mutual_information_of_table(useless) == pytest.approx(0.0, abs=1e-15)
    bsc = table_of(make_bsc(0.11))
    assert mutual_information_of_table(bsc) == pytest.approx(1 - binary_entropy(0.11), abs=1e-12)
    assert mutual_information_of_table(bsc) == pytest.approx(0.500084, abs=1e-6)


@pytest.mark.parametrize("w", [
    make_bsc(F(1, 4)),
    make_bec(F(1, 2)),
    mix([(F(1, 2), make_bsc(F(1, 8))), (F(1, 2), make_bsc(F(3, 8)))]),
])
def test_direct_metrics_match_profile_formulas(w):
    for alpha in ("", "0", "1", "01", "10"):
        v = a_seq(alpha, w)
        t = oracle_a_seq(alpha, table_of(w))
        assert mutual_information_of_table(t) == pytest.approx(capacity(v), abs=1e-9)
        assert p_error_of_table(t) == p_error(v)
        assert bhattacharyya_of_table(t) == pytest.approx(bhattacharyya(v), abs=1e-9)


def test_float_tables():
    t = table_of(make_bsc(0.2))
    t2 = oracle_a1(t, t)
    assert t2.denom is None
    # both sides carry rounding noise around 1/2, so compare as canonical channels
    assert equivalent(channel_from_lrp(lrp_from_table(t2)), a1(make_bsc(0.2), make_bsc(0.2)))


def test_zero_mass_outputs_are_dropped_from_profiles():
    t = GeneralChannel.from_probabilities([F(1, 2), F(1, 2), 0], [F(1, 2), F(1, 2), 0])
    assert lrp_from_table(t).as_dict() == {F(1, 2): 1}


def test_large_denominators_switch_to_python_ints():
    t = table_of(make_bsc(F(1, 1009)))
    for _ in range(3):
        t = oracle_a1(t, t)
    assert t.num0.dtype == object
    assert lrp_from_table(t) == lrp(a_seq("111", make_bsc(F(1, 1009))))
    assert np.sum(t.num0) == t.denom
