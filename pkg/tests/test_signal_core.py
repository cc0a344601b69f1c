import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from remsdenoise import (AlignmentError, BoomTemperaturePair, EmptyInputError,
                         Signal, min_combine, segment)


def make_signal(values, dt=1.0, channel=1):
    values = np.asarray(values, dtype=np.float64)
    return Signal(channel_id=channel,
                  timestamps=np.arange(len(values)) * dt,
                  samples=values)


class TestSignalValidation:
    def test_basic_construction(self):
        sig = make_signal([250.0, 251.0, 250.5])
        assert len(sig) == 3
        assert sig.samples.dtype == np.float64

    def test_arrays_are_read_only(self):
        sig = make_signal([250.0, 251.0])
        with pytest.raises(ValueError):
            sig.samples[0] = 0.0
        with pytest.raises(ValueError):
            sig.timestamps[0] = -1.0

    def test_defensive_copy(self):
        raw = np.array([250.0, 251.0])
        sig = Signal(channel_id=1, timestamps=[0.0, 1.0], samples=raw)
        raw[0] = 0.0
        assert sig.samples[0] == 250.0

    def test_empty_rejected(self):
        with pytest.raises(EmptyInputError):
            Signal(channel_id=1, timestamps=[], samples=[])

    def test_length_mismatch(self):
        with pytest.raises(AlignmentError):
            Signal(channel_id=1, timestamps=[0.0, 1.0], samples=[250.0])

    def test_non_increasing_timestamps(self):
        with pytest.raises(ValueError):
            Signal(channel_id=1, timestamps=[0.0, 1.0, 1.0],
                   samples=[1.0, 2.0, 3.0])

    def test_nan_samples(self):
        with pytest.raises(ValueError):
            Signal(channel_id=1, timestamps=[0.0, 1.0],
                   samples=[250.0, np.nan])

    @pytest.mark.parametrize("channel", [0, 7, -1])
    def test_channel_range(self, channel):
        with pytest.raises(ValueError):
            Signal(channel_id=channel, timestamps=[0.0], samples=[250.0])

    @pytest.mark.parametrize("channel", [1, 6])
    def test_channel_bounds_accepted(self, channel):
        Signal(channel_id=channel, timestamps=[0.0], samples=[250.0])


def gapped_signal(run_lengths, gap=300.0):
    ts_parts = []
    t = 0.0
    for m in run_lengths:
        ts_parts.append(t + np.arange(m, dtype=np.float64))
        t += m + gap
    ts = np.concatenate(ts_parts)
    return Signal(channel_id=2, timestamps=ts, samples=np.full(len(ts), 250.0))


class TestSegmentation:
    def test_no_gaps_single_segment(self):
        res = segment(make_signal(np.full(200, 250.0)))
        assert len(res.segments) == 1
        assert len(res.skipped) == 0
        assert len(res.segments[0]) == 200
        assert (res.segments[0].start_index, res.segments[0].end_index) == (0, 200)

    def test_gap_splits_into_two(self):
        res = segment(gapped_signal([100, 100]), min_segment_len=64)
        assert [len(s) for s in res.segments] == [100, 100]
        assert res.segments[1].start_index == 100
        assert len(res.skipped) == 0

    def test_short_run_reported_not_dropped(self):
        res = segment(gapped_signal([100, 10]), min_segment_len=64)
        assert [len(s) for s in res.segments] == [100]
        assert len(res.skipped) == 1
        assert (res.skipped[0].start_index, res.skipped[0].end_index) == (100, 110)
        assert "64" in res.skipped[0].reason

    def test_every_sample_accounted(self):
        sig = gapped_signal([100, 10, 70, 3])
        res = segment(sig, min_segment_len=64)
        assert res.covered_samples() == len(sig)

    def test_gap_threshold_boundary(self):
        # spacing exactly at the threshold does not split
        sig = Signal(channel_id=1, timestamps=[0.0, 1.5, 3.0],
                     samples=[1.0, 2.0, 3.0])
        assert len(segment(sig, min_segment_len=1).segments) == 1

    def test_invalid_parameters(self):
        sig = make_signal([1.0, 2.0])
        with pytest.raises(ValueError):
            segment(sig, gap_threshold=0.0)
        with pytest.raises(ValueError):
            segment(sig, min_segment_len=0)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(min_value=1, max_value=120),
                    min_size=1, max_size=6))
    def test_coverage_property(self, run_lengths):
        sig = gapped_signal(run_lengths)
        res = segment(sig, min_segment_len=64)
        assert res.covered_samples() == len(sig)
        covered = sorted(
            [(s.start_index, s.end_index) for s in res.segments]
            + [(r.start_index, r.end_index) for r in res.skipped])
        # half-open ranges tile [0, n) exactly
        assert covered[0][0] == 0 and covered[-1][1] == len(sig)
        assert all(a[1] == b[0] for a, b in zip(covered, covered[1:]))


class TestMinCombine:
    def test_elementwise(self):
        pair = BoomTemperaturePair(t1=[200.0, 210.0], t2=[205.0, 205.0])
        np.testing.assert_array_equal(min_combine(pair), [200.0, 205.0])

    def test_identity_when_equal(self):
        t = [201.5, 202.5, 203.5]
        np.testing.assert_array_equal(
            min_combine(BoomTemperaturePair(t1=t, t2=t)), t)

    def test_length_mismatch(self):
        with pytest.raises(AlignmentError):
            BoomTemperaturePair(t1=[180.0], t2=[181.0, 182.0])

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.floats(min_value=150.0, max_value=300.0),
                    min_size=1, max_size=32),
           st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_commutative_and_bounded(self, t1, seed):
        t2 = np.random.default_rng(seed).uniform(150.0, 300.0, len(t1))
        a = min_combine(BoomTemperaturePair(t1=t1, t2=t2))
        b = min_combine(BoomTemperaturePair(t1=t2, t2=t1))
        np.testing.assert_array_equal(a, b)
        assert np.all(a <= np.asarray(t1)) and np.all(a <= t2)
