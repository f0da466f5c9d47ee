"""Exact expansion engine: factor application, the stride expander against
the independent convolution/Newton oracle, and serialization round-trips.
"""

import io
import random

import pytest
from hypothesis import given, settings, strategies as st

from qprodasym import (CoeffSeries, ProductSpec, apply_factor, expand_spec,
                       oracle_expand, series_from_json, series_to_csv,
                       series_to_json)

from conftest import P5, RR, TG, random_spec


class TestProductSpec:
    def test_properties(self):
        assert P5.J == 1 and P5.L == 5
        assert RR.J == 2 and RR.L == 5
        assert TG.J == 3 and TG.L == 10

    def test_negated(self):
        assert RR.negated().delta == (-1, 1)
        assert RR.negated().m == RR.m

    def test_validation(self):
        with pytest.raises(ValueError):
            ProductSpec((5,), (0,), (1,))
        with pytest.raises(ValueError):
            ProductSpec((5,), (5,), (1,))
        with pytest.raises(ValueError):
            ProductSpec((5,), (1,), (0,))
        with pytest.raises(ValueError):
            ProductSpec((5, 5), (1,), (1,))
        with pytest.raises(ValueError):
            ProductSpec((), (), ())


class TestCoeffSeries:
    def test_indexing(self):
        s = CoeffSeries((1, -1, 0, 2))
        assert s.truncation_order == 3
        assert len(s) == 4
        assert s[2] == 0

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            CoeffSeries(())


class TestApplyFactor:
    def test_multiply(self):
        one = CoeffSeries((1, 0, 0, 0))
        assert apply_factor(one, 2).coeffs == (1, 0, -1, 0)

    def test_divide_is_geometric(self):
        one = CoeffSeries((1, 0, 0, 0, 0, 0))
        geo = apply_factor(one, 2, "divide")
        assert geo.coeffs == (1, 0, 1, 0, 1, 0)

    def test_roundtrip(self):
        rng = random.Random(3)
        s = CoeffSeries(tuple(rng.randint(-9, 9) for _ in range(40)))
        for t in (1, 3, 7):
            assert apply_factor(apply_factor(s, t), t, "divide").coeffs == s.coeffs
            assert apply_factor(apply_factor(s, t, "divide"), t).coeffs == s.coeffs

    def test_validation(self):
        s = CoeffSeries((1,))
        with pytest.raises(ValueError):
            apply_factor(s, 0)
        with pytest.raises(ValueError):
            apply_factor(s, 1, "conjugate")


class TestExpandSpec:
    def test_pure_product_small(self):
        # (q, q^4; q^5)_inf = 1 - q - q^4 + q^5 + ... to low order
        s = expand_spec(P5.negated(), 6)
        assert s.coeffs == (1, -1, 0, 0, -1, 1, -1)

    def test_partition_counts(self):
        # 1/(q, q^4; q^5)_inf counts partitions into parts = +-1 mod 5
        s = expand_spec(P5, 10)
        assert s.coeffs[:7] == (1, 1, 1, 1, 2, 2, 3)

    def test_product_times_inverse_is_one(self):
        for spec in (P5, RR, TG):
            combined = ProductSpec(spec.m + spec.m, spec.r + spec.r,
                                   spec.delta + spec.negated().delta)
            s = expand_spec(combined, 80)
            assert s.coeffs == (1,) + (0,) * 80

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            expand_spec(P5, -1)

    def test_matches_oracle_on_benchmarks(self):
        for spec in (P5, RR, TG):
            assert expand_spec(spec, 300).coeffs == oracle_expand(spec, 300).coeffs

    def test_matches_oracle_random_corpus(self):
        rng = random.Random(2024)
        for _ in range(25):
            spec = random_spec(rng)
            n = rng.randint(0, 120)
            assert expand_spec(spec, n).coeffs == oracle_expand(spec, n).coeffs

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_matches_oracle_property(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**9)))
        spec = random_spec(rng)
        n = data.draw(st.integers(0, 80))
        assert expand_spec(spec, n).coeffs == oracle_expand(spec, n).coeffs


class TestSerialization:
    def test_csv_layout(self):
        buf = io.StringIO()
        series_to_csv(CoeffSeries((1, -1, 0)), buf)
        assert buf.getvalue() == "n,g\n0,1\n1,-1\n2,0\n"

    def test_json_roundtrip(self):
        s = expand_spec(TG, 60)
        text = series_to_json(s)
        back = series_from_json(text)
        assert back.coeffs == s.coeffs
        # serialization is canonical: a second pass is byte-identical
        assert series_to_json(back) == text

    def test_json_uses_decimal_strings(self):
        # coefficients overflow 64 bits quickly; they must travel as strings
        s = expand_spec(P5, 2000)
        assert abs(s[2000]) > 2**64
        back = series_from_json(series_to_json(s))
        assert back[2000] == s[2000]

    def test_json_rejects_inconsistent_document(self):
        text = series_to_json(CoeffSeries((1, 2)))
        broken = text.replace('"truncation_order":1', '"truncation_order":5')
        with pytest.raises(ValueError):
            series_from_json(broken)
