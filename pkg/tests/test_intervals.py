from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qcvx import OpenInterval, OpenIntervalSet, contains, normalize, total_length
from qcvx.errors import MalformedIntervalError

F = Fraction


def iv(a, b):
    return OpenInterval(F(a), F(b))


endpoints = st.fractions(min_value=0, max_value=1, max_denominator=64)
raw_intervals = st.lists(
    st.tuples(endpoints, endpoints).filter(lambda p: p[0] < p[1]).map(lambda p: iv(*p)),
    max_size=10,
)


class TestNormalize:
    def test_overlap_merges(self):
        got = normalize([iv(0, "1/2"), iv("1/4", "3/4")])
        assert got == OpenIntervalSet((iv(0, "3/4"),))

    def test_shared_endpoint_stays_split(self):
        got = normalize([iv(0, "1/2"), iv("1/2", 1)])
        assert got == OpenIntervalSet((iv(0, "1/2"), iv("1/2", 1)))

    def test_idempotent_on_single(self):
        got = normalize([iv("1/3", "2/3")])
        assert got == OpenIntervalSet((iv("1/3", "2/3"),))

    def test_malformed_rejected(self):
        with pytest.raises(MalformedIntervalError):
            iv(1, 0)
        with pytest.raises(MalformedIntervalError):
            iv("1/2", "1/2")

    def test_containment_merges(self):
        got = normalize([iv(0, 1), iv("1/4", "1/2")])
        assert got == OpenIntervalSet((iv(0, 1),))

    @given(raw_intervals)
    def test_idempotent(self, raw):
        once = normalize(raw)
        assert normalize(once.intervals) == once

    @given(raw_intervals, st.randoms(use_true_random=False))
    def test_permutation_invariant(self, raw, rng):
        shuffled = list(raw)
        rng.shuffle(shuffled)
        assert normalize(shuffled) == normalize(raw)

    @given(raw_intervals, st.lists(endpoints, min_size=1, max_size=20))
    def test_contains_matches_naive_membership(self, raw, probes):
        s = normalize(raw)
        for t in probes:
            assert s.contains(t) == any(a.contains(t) for a in raw)


class TestContains:
    def test_inside(self):
        assert contains(normalize([iv("1/3", "2/3")]), F(1, 2))

    def test_endpoints_excluded(self):
        assert not contains(normalize([iv("1/3", "2/3")]), F(1, 3))

    def test_gap(self):
        s = normalize([iv(0, "1/4"), iv("3/4", 1)])
        assert not contains(s, F(1, 2))


class TestTotalLength:
    def test_single(self):
        assert total_length(normalize([iv("1/3", "2/3")])) == F(1, 3)

    def test_empty(self):
        assert total_length(normalize([])) == 0

    @given(raw_intervals)
    def test_invariant_under_normalize_when_disjoint(self, raw):
        s = normalize(raw)
        # The normalized intervals are disjoint by construction, so
        # re-normalizing them cannot change the measure.
        assert total_length(normalize(s.intervals)) == s.total_length()

    @given(raw_intervals)
    def test_never_exceeds_raw_sum(self, raw):
        assert total_length(normalize(raw)) <= sum((r.length for r in raw), F(0))


def test_serialization_sorted():
    s = normalize([iv("1/2", 1), iv(0, "1/4")])
    assert s.to_json() == [{"u": "0", "v": "1/4"}, {"u": "1/2", "v": "1"}]
