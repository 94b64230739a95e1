from fractions import Fraction as F
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from hrhlab.errors import DomainError
from hrhlab.exactnum import INF, RationalMultiset
from hrhlab.spectrum import (
    BPSpec,
    HRHValue,
    LinkTable,
    LinkVerdict,
    MilnorVector,
    SpectrumData,
    bp_spectrum,
    check_duality,
    enumerate_bp_spectrum,
    eqmf_consistency,
    hrh_from_milnor,
    hrh_isolated_hypersurface,
    link_table_verdict,
    milnor_s,
    promote,
    sp_min_int,
    ts_spectrum,
)

# frozen from enumerate_bp_spectrum, the brute-force route over index tuples
FROZEN_SPECTRA = {
    (2, 2, 2): {F(3, 2): 1},
    (2, 3): {F(5, 6): 1, F(7, 6): 1},
    (2, 2, 2, 2): {F(2): 1},
    (3, 3): {F(2, 3): 1, F(1): 2, F(4, 3): 1},
    (2, 3, 4): {F(13, 12): 1, F(4, 3): 1, F(17, 12): 1, F(19, 12): 1, F(5, 3): 1, F(23, 12): 1},
    (3, 3, 3): {F(1): 1, F(4, 3): 3, F(5, 3): 3, F(2): 1},
}


def sp(exps):
    return bp_spectrum(BPSpec(exps))


def literal(ambient, counts):
    return SpectrumData(RationalMultiset(counts), ambient)


class TestBPSpectrum:
    @pytest.mark.parametrize("exps,expected", sorted(FROZEN_SPECTRA.items()))
    def test_frozen_spectra(self, exps, expected):
        assert sp(exps).values == RationalMultiset(expected)
        assert enumerate_bp_spectrum(BPSpec(exps)).values == RationalMultiset(expected)

    def test_exponent_below_two(self):
        with pytest.raises(DomainError):
            BPSpec((1, 2))

    def test_spec_sum_and_render(self):
        assert BPSpec((2, 3)) + BPSpec((4,)) == BPSpec((2, 3, 4))
        assert str(BPSpec((2, 2))) == "bp(2,2)"
        assert BPSpec((3, 4, 5)).milnor_number == 24

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("HRHLAB_MAX_MU", "10")
        with pytest.raises(DomainError):
            enumerate_bp_spectrum(BPSpec((3, 3, 3, 3)))
        monkeypatch.setenv("HRHLAB_MAX_MU", "zero")
        with pytest.raises(DomainError):
            sp((2, 2))

    def test_convolution_handles_large_milnor_number(self):
        # mu = 4^10 is beyond the enumeration cap, the convolution is small
        s = sp((5,) * 10)
        assert len(s) == 4**10
        assert sp_min_int(s) == 2

    def test_json_round_trip(self):
        s = sp((3, 4))
        assert SpectrumData.from_json(s.to_json()) == s

    def test_literal_range_is_checked(self):
        with pytest.raises(DomainError):
            literal(2, {F(5, 2): 1})

    def test_ts_spectrum(self):
        assert ts_spectrum(sp((2,)), sp((3,)), sp((4,))) == sp((2, 3, 4))


class TestSpMinAndHRH:
    def test_sp_min(self):
        assert sp_min_int(sp((2, 3))) == INF
        assert sp_min_int(sp((2, 2, 2, 2))) == 2
        assert sp_min_int(sp((3, 3))) == 1

    @pytest.mark.parametrize(
        "exps,hrh",
        [((2, 2, 2, 2), 0), ((2, 3), INF), ((3,) * 6, 0), ((3, 3, 3), -1), ((2,) * 6, 1)],
    )
    def test_hrh(self, exps, hrh):
        assert hrh_isolated_hypersurface(sp(exps)) == HRHValue.exact(hrh)

    def test_promotion(self):
        assert promote(1, 4) == INF
        assert promote(1, 5) == 1
        assert promote(0, 3) == 0
        assert promote(0, 2) == INF

    def test_hrh_value_forms(self):
        assert HRHValue.interval(2, 2) == HRHValue.exact(2)
        iv = HRHValue.interval(0, 1)
        assert iv.to_json() == {"kind": "interval", "lo": 0, "hi": 1}
        assert str(iv) == "[0, 1]"
        assert iv.contains(1) and not iv.contains(2)
        assert HRHValue.exact(INF).to_json() == "inf"
        assert HRHValue.exact(-1).to_json() == -1
        with pytest.raises(DomainError):
            iv.value
        with pytest.raises(DomainError):
            HRHValue.exact(-2)


class TestMilnor:
    def test_quadric_four_variables(self):
        # the single spectral number 2 lies in (1, 2], the bin of s_2
        assert milnor_s(sp((2, 2, 2, 2))) == MilnorVector(3, (0, 0, 1, 0))

    def test_a2_a2(self):
        assert milnor_s(sp((3, 3))) == MilnorVector(1, (1, 3))

    def test_empty(self):
        assert milnor_s(literal(4, {})).s == (0,) * 4

    @pytest.mark.parametrize(
        "d,s,hrh",
        [(3, (0, 1, 0, 0), 0), (3, (0, 0, 1, 0), 0), (1, (1, 3), -1), (5, (0,) * 6, INF)],
    )
    def test_hrh_from_milnor(self, d, s, hrh):
        assert hrh_from_milnor(MilnorVector(d, s)).value == hrh

    def test_bad_vector(self):
        with pytest.raises(DomainError):
            MilnorVector(2, (1, 2))


class TestDuality:
    def test_cusp(self):
        assert check_duality(sp((2, 3)))

    def test_a2_a2(self):
        assert check_duality(sp((3, 3)))

    def test_counterexample(self):
        report = check_duality(literal(3, {F(1, 2): 1}))
        assert not report
        assert report.failures == ((F(1, 2), 1, 0),)


class TestLinkTables:
    def test_all_zero_holds(self):
        for d in range(5):
            assert link_table_verdict(LinkTable(d, 0), 0) is LinkVerdict.HOLDS

    def test_serre_pair_fails(self):
        lt = LinkTable(2, 0, {(2, 0): 1, (0, 1): 1})
        assert link_table_verdict(lt, 0) is LinkVerdict.FAILS

    def test_asymmetric_table_invalid(self):
        lt = LinkTable(2, 0, {(1, 1): 1})
        assert link_table_verdict(lt, 0) is LinkVerdict.INVALID_TABLE

    def test_level_one_condition(self):
        lt = LinkTable(4, 1, {(3, 1): 1, (1, 2): 1})
        assert link_table_verdict(lt, 0) is LinkVerdict.HOLDS
        assert link_table_verdict(lt, 1) is LinkVerdict.FAILS

    def test_partner_out_of_range(self):
        # (3,4) pairs with (1,-1), which is always 0
        assert link_table_verdict(LinkTable(4, 0, {(3, 4): 1}), 1) is LinkVerdict.INVALID_TABLE

    def test_entry_validation(self):
        with pytest.raises(DomainError):
            LinkTable(2, 0, {(0, 0): -1})
        with pytest.raises(DomainError):
            LinkTable(2, 0, {(3, 0): 1})

    def test_eqmf(self):
        zero3 = LinkTable(3, 0)
        assert eqmf_consistency(LinkTable(3, 0), MilnorVector(3, (0,) * 4))
        report = eqmf_consistency(zero3, MilnorVector(3, (0, 1, 0, 0)))
        assert not report and 1 in report.failures
        fixed = LinkTable(3, 0, {(1, 2): 1, (2, 0): 1})
        assert eqmf_consistency(fixed, MilnorVector(3, (0, 1, 0, 0)))

    def test_eqmf_dimension_mismatch(self):
        with pytest.raises(DomainError):
            eqmf_consistency(LinkTable(2, 0), MilnorVector(3, (0,) * 4))


bp_specs = st.lists(st.integers(2, 7), min_size=1, max_size=4).filter(
    lambda e: prod(a - 1 for a in e) <= 2000
).map(BPSpec)


@settings(max_examples=60, deadline=None)
@given(bp_specs)
def test_spectrum_properties(spec):
    s = bp_spectrum(spec)
    n = spec.n
    assert len(s) == spec.milnor_number
    assert all(s.values.mult(a) == s.values.mult(n - a) for a in s.values.distinct())
    assert check_duality(s)
    assert hrh_from_milnor(milnor_s(s)) == hrh_isolated_hypersurface(s)
    assert s == enumerate_bp_spectrum(spec)


small_specs = st.lists(st.integers(2, 6), min_size=1, max_size=3).map(BPSpec)


@settings(max_examples=40, deadline=None)
@given(small_specs, small_specs)
def test_ts_convolution_matches_enumeration(a, b):
    assert bp_spectrum(a).ts(bp_spectrum(b)) == enumerate_bp_spectrum(a + b)
