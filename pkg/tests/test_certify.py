"""Closed-form bounds, entry-bound rules, and dimension certificates."""

import json
import math

import numpy as np
import pytest

import dncrit as dc
from dncrit.certify import InvalidWError, k_of_n
from dncrit.signchange import SignChangeMatrix


class TestClosedForms:
    def test_crude_bound_table(self):
        assert [dc.crude_bound(n) for n in range(3, 11)] == [
            1.0, 2.0, 5.0, 7.0, 13.0, 16.0, 25.0, 29.0]

    def test_crude_is_k_plus_one(self):
        for n in range(2, 20):
            assert dc.crude_bound(n) == k_of_n(n) + 1

    def test_k_parity_formulas(self):
        for n in range(2, 20):
            if n % 2:
                assert k_of_n(n) == (n * n - 4 * n + 3) / 2
            else:
                assert k_of_n(n) == (n * n - 5 * n + 6) / 2

    def test_lower_bound(self):
        assert dc.lower_bound(2) == 0.0
        assert dc.lower_bound(3) == 1.0
        assert dc.lower_bound(5) == 3.0

    def test_bounds_meet_at_3_and_4(self):
        assert dc.crude_bound(3) == dc.lower_bound(3) == 1.0
        assert dc.crude_bound(4) == dc.lower_bound(4) == 2.0

    def test_lower_never_exceeds_crude(self):
        for n in range(2, 40):
            assert dc.lower_bound(n) <= dc.crude_bound(n)

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            dc.crude_bound(1)
        with pytest.raises(ValueError):
            dc.lower_bound(1)


class TestEntryBounds:
    def test_path_w(self):
        W = SignChangeMatrix(n=3, w=((0, 1, 2), (1, 0, 1), (2, 1, 0)))
        bounds = dc.entry_bounds_from_w(W)
        assert bounds.bound == ((0.0, 0.0, 1.0), (0.0, 0.0, 0.0), (1.0, 0.0, 0.0))
        assert bounds.max_bound() == 1.0

    def test_trivial_2x2(self):
        W = SignChangeMatrix(n=2, w=((0, 1), (1, 0)))
        bounds = dc.entry_bounds_from_w(W)
        assert bounds.max_bound() == 0.0

    def test_toeplitz_5(self):
        W = SignChangeMatrix(
            n=5, w=tuple(tuple(abs(i - j) for j in range(5)) for i in range(5)))
        bounds = dc.entry_bounds_from_w(W)
        assert bounds.max_bound() == 3.0
        # corner entry bounded by its row: two entries exceed 2
        assert bounds.bound[0][4] == 3.0
        # (1,4): column 4 has only one entry above 2
        assert bounds.bound[0][3] == 2.0

    def test_unbounded_marker(self):
        # a count of 5 puts a >4 maximum in both its row and its column,
        # so no rule applies to that entry
        w = np.zeros((6, 6), dtype=int)
        w[0, 1] = w[1, 0] = 5
        W = SignChangeMatrix(n=6, w=tuple(map(tuple, w.tolist())))
        bounds = dc.entry_bounds_from_w(W)
        assert bounds.bound[0][1] == math.inf
        assert bounds.num_unbounded() == 2

    def test_zero_iff_w_le_1(self, class_sets):
        for n, classes in class_sets.items():
            for W in classes:
                bounds = dc.entry_bounds_from_w(W)
                for i in range(n):
                    for j in range(n):
                        if W[i, j] <= 1:
                            assert bounds.bound[i][j] == 0.0
                        else:
                            assert bounds.bound[i][j] >= 1.0

    def test_symmetric_result(self, class_sets):
        for W in class_sets[5]:
            arr = dc.entry_bounds_from_w(W).as_array()
            assert (arr == arr.T).all()
            assert (np.diag(arr) == 0).all()

    def test_invalid_w_rejected(self):
        W = SignChangeMatrix(n=2, w=((1, 1), (1, 0)))
        with pytest.raises(InvalidWError):
            dc.entry_bounds_from_w(W)


class TestCertificates:
    def test_n2(self):
        report = dc.certify_dimension(2)
        assert report.certified_upper == 0.0
        assert report.conclusion == "m(2) = 0"

    def test_n3(self):
        report = dc.certify_dimension(3)
        assert report.num_classes == 1
        assert report.certified_upper == 1.0
        assert report.conclusion == "m(3) = 1"

    def test_n4(self):
        report = dc.certify_dimension(4)
        assert report.certified_upper == 2.0
        assert report.conclusion == "m(4) = 2"
        # every 4x4 class row has at most one entry above 2
        for cert in report.classes:
            for row in cert.w.w:
                assert sum(1 for v in row if v > 2) <= 1

    def test_n5(self):
        report = dc.certify_dimension(5)
        assert report.certified_upper == 3.0
        assert report.lower == 3.0
        assert report.conclusion == "m(5) = 3"
        assert report.complete

    def test_bracketing_invariant(self):
        for n in (2, 3, 4, 5):
            report = dc.certify_dimension(n)
            assert report.lower <= report.certified_upper <= report.crude_upper

    def test_json_round_trip(self):
        report = dc.certify_dimension(3)
        data = json.loads(report.to_json())
        assert data["n"] == 3
        assert data["conclusion"] == "m(3) = 1"
        assert data["classes"][0]["max_bound"] == 1.0

    def test_caps(self):
        with pytest.raises(ValueError):
            dc.certify_dimension(1)
        from dncrit.enumeration import DimensionTooLargeError
        with pytest.raises(DimensionTooLargeError):
            dc.certify_dimension(7)


@pytest.mark.slow
class TestDimensionSix:
    def test_n6_incomplete(self):
        report = dc.certify_dimension(6)
        assert report.num_classes == 399
        assert report.num_uncertified == 201
        assert not report.complete
        assert "incomplete" in report.conclusion
        assert "m(6) <= 7" in report.conclusion
        # unbounded classes are exactly those with an entry of 5
        for cert in report.classes:
            has_five = any(v >= 5 for row in cert.w.w for v in row)
            assert cert.certified == (not has_five)
